"""Exact analysis and bit-level simulation of layered erasure channels.

The package splits into:

* `model` -- exact fading distributions, marginals, instance file format;
* `analysis` -- outer bounds, regime classification, achievable sum rates,
  all in exact rational arithmetic;
* `coding` -- seeded random linear codes over GF(2) with rank-based decoding;
* `simulator` -- the bit-exact channel and every scheme's transmit/receive
  pipeline with a Monte Carlo harness;
* `instances` -- the built-in regression instances;
* `cli` -- the `erasure-ifc` command line front end.
"""

from .analysis import (
    LemmaRow,
    LemmaTable,
    RateBounds,
    Regime,
    RegimeReport,
    best_private_split,
    classify,
    interference_set_I1,
    lemma_condition,
    lemma_simplified,
    mac_corner,
    mac_region,
    mixed_achievable,
    outer_bound,
    private_split,
    sum_capacity_formula,
)
from .coding import BinaryMatrix, Codebook, decode, encode, rank, splitmix64
from .model import (
    FadingDistribution,
    MacDistribution,
    Pmf,
    Rational,
    StateTriple,
    ccdf,
    expected_functional,
    expected_level,
    marginal,
    parse_instance,
    serialize_instance,
    shift,
    validate,
)
from .simulator import (
    MonteCarloSummary,
    Scheme,
    SchemeSpec,
    TrialResult,
    mac_receive,
    monte_carlo,
    run_scheme,
    sample_states,
    transmit_receive,
)

__all__ = [
    "BinaryMatrix",
    "Codebook",
    "FadingDistribution",
    "LemmaRow",
    "LemmaTable",
    "MacDistribution",
    "MonteCarloSummary",
    "Pmf",
    "RateBounds",
    "Rational",
    "Regime",
    "RegimeReport",
    "Scheme",
    "SchemeSpec",
    "StateTriple",
    "TrialResult",
    "best_private_split",
    "ccdf",
    "classify",
    "decode",
    "encode",
    "expected_functional",
    "expected_level",
    "interference_set_I1",
    "lemma_condition",
    "lemma_simplified",
    "mac_corner",
    "mac_receive",
    "mac_region",
    "marginal",
    "mixed_achievable",
    "monte_carlo",
    "outer_bound",
    "parse_instance",
    "private_split",
    "rank",
    "run_scheme",
    "sample_states",
    "serialize_instance",
    "shift",
    "splitmix64",
    "sum_capacity_formula",
    "transmit_receive",
    "validate",
]

__version__ = "0.1.0"
