"""Exact models of layered erasure fading instances.

A q-bit layered erasure link delivers the N most significant bits of a q-bit
input column, where N is an integer channel state with P[N >= 0] = 1 and
P[N >= q+1] = 0.  Levels are indexed 1..q with level 1 the most significant
bit.  An interference instance is a finite joint probability mass over state
triples (n11, n21, n22); the cross link into receiver 1 is identically zero,
so receiver 1 never sees interference.  A multiple-access instance is a mass
over pairs (n1, n2) feeding a single receiver.

All probabilities, expectations and rates are exact rationals
(`fractions.Fraction`); floating point never enters the analysis path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Union

import numpy as np

#: Exact scalar type used for every probability, expectation, rate and bound.
Rational = Fraction

#: A transmit column: length-q uint8 vector, index 0 holds level 1 (the most
#: significant bit) and index q-1 holds level q.
BitColumn = np.ndarray


class InvalidDistribution(ValueError):
    """A distribution violates a structural invariant."""


class NonUnitMass(InvalidDistribution):
    """Probabilities do not sum exactly to one."""


class LevelOutOfRange(InvalidDistribution):
    """A state level lies outside 0..q."""


class EmptySupport(InvalidDistribution):
    """The distribution has no atoms."""


class DuplicateState(InvalidDistribution):
    """The same state appears in more than one atom."""


class InstanceFormatError(ValueError):
    """An instance file is not syntactically or structurally well formed."""


def as_rational(value: Union[int, str, Fraction]) -> Fraction:
    """Coerce an int, Fraction, or string like "2/4" to an exact rational.

    Floats are rejected: they silently carry binary rounding and every
    consumer of this type relies on exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InstanceFormatError(f"bad rational literal {value!r}") from exc
    raise InstanceFormatError(f"expected int, str or Fraction, got {type(value).__name__}")


def pos(x):
    """Clamp at zero: max(x, 0), exact for ints and rationals."""
    return x if x > 0 else 0 * x


class StateTriple(NamedTuple):
    """Joint fading state of the three live links of a one-sided instance."""

    n11: int
    n21: int
    n22: int


class MacState(NamedTuple):
    """Joint fading state of the two links of a multiple-access instance."""

    n1: int
    n2: int


def _check_atoms(q: int, atoms, width: int) -> None:
    if q < 1:
        raise InvalidDistribution(f"q must be positive, got {q}")
    if not atoms:
        raise EmptySupport("distribution has no states")
    seen = set()
    total = Fraction(0)
    for state, prob in atoms:
        for n in state:
            if not 0 <= n <= q:
                raise LevelOutOfRange(f"level {n} outside 0..{q} in state {tuple(state)}")
        if state in seen:
            raise DuplicateState(f"state {tuple(state)} listed twice")
        seen.add(state)
        if prob <= 0:
            raise InvalidDistribution(f"probability {prob} of state {tuple(state)} not positive")
        total += prob
    if total != 1:
        raise NonUnitMass(f"probabilities sum to {total}, expected 1")
    if width and any(len(s) != width for s, _ in atoms):
        raise InvalidDistribution("state arity does not match distribution kind")


@dataclass(frozen=True, init=False)
class FadingDistribution:
    """Finite joint mass over (n11, n21, n22) state triples, max level q.

    Atoms are normalized to `(StateTriple, Fraction)` pairs in sorted state
    order, so equal distributions compare equal regardless of input order.
    Invariants (unit mass, positive probabilities, levels in 0..q, no
    duplicates) are enforced at construction; an instance of this class is
    always valid.
    """

    q: int
    atoms: tuple

    def __init__(self, q: int, atoms: Iterable) -> None:
        norm = tuple(sorted((StateTriple(*map(int, s)), as_rational(p)) for s, p in atoms))
        object.__setattr__(self, "q", int(q))
        object.__setattr__(self, "atoms", norm)
        _check_atoms(self.q, self.atoms, width=3)


@dataclass(frozen=True, init=False)
class MacDistribution:
    """Finite joint mass over (n1, n2) state pairs, max level q."""

    q: int
    atoms: tuple

    def __init__(self, q: int, atoms: Iterable) -> None:
        norm = tuple(sorted((MacState(*map(int, s)), as_rational(p)) for s, p in atoms))
        object.__setattr__(self, "q", int(q))
        object.__setattr__(self, "atoms", norm)
        _check_atoms(self.q, self.atoms, width=2)


Distribution = Union[FadingDistribution, MacDistribution]


@dataclass(frozen=True, init=False)
class Pmf:
    """Exact marginal mass of one link's state over levels 0..q."""

    q: int
    mass: tuple  # ((level, Fraction), ...) sorted, zero-mass levels dropped

    def __init__(self, q: int, mass) -> None:
        items = mass.items() if hasattr(mass, "items") else mass
        norm = tuple(sorted((int(n), as_rational(p)) for n, p in items if as_rational(p) != 0))
        object.__setattr__(self, "q", int(q))
        object.__setattr__(self, "mass", norm)
        if self.q < 1:
            raise InvalidDistribution(f"q must be positive, got {self.q}")
        if not norm:
            raise EmptySupport("pmf has no support")
        for n, p in norm:
            if not 0 <= n <= self.q:
                raise LevelOutOfRange(f"level {n} outside 0..{self.q}")
            if p < 0:
                raise InvalidDistribution(f"negative mass {p} at level {n}")
        if sum(p for _, p in norm) != 1:
            raise NonUnitMass("pmf masses do not sum to 1")

    def as_dict(self) -> dict:
        return dict(self.mass)


def validate(dist: Distribution) -> Distribution:
    """Re-check all invariants and return the distribution unchanged.

    Construction already validates, so this is mainly useful as an explicit
    gate after deserialization from untrusted callers.
    """
    width = 3 if isinstance(dist, FadingDistribution) else 2
    _check_atoms(dist.q, dist.atoms, width=width)
    return dist


_IFC_LINKS = {11: 0, 21: 1, 22: 2, "11": 0, "21": 1, "22": 2}
_MAC_LINKS = {1: 0, 2: 1, "1": 0, "2": 1}


def marginal(dist: Distribution, link) -> Pmf:
    """Exact marginal pmf of one link's state (link 11/21/22, or 1/2 for MAC)."""
    if isinstance(dist, FadingDistribution):
        idx = _IFC_LINKS.get(link)
        if idx is None:
            raise ValueError(f"unknown link {link!r}; expected one of 11, 21, 22")
    else:
        idx = _MAC_LINKS.get(link)
        if idx is None:
            raise ValueError(f"unknown link {link!r}; expected 1 or 2")
    mass: dict = {}
    for state, p in dist.atoms:
        n = state[idx]
        mass[n] = mass.get(n, Fraction(0)) + p
    return Pmf(dist.q, mass)


def ccdf(pmf: Pmf, n: int) -> Fraction:
    """Exact Pr[N >= n] for 0 <= n <= q+1."""
    if not 0 <= n <= pmf.q + 1:
        raise ValueError(f"threshold {n} outside 0..{pmf.q + 1}")
    return sum((p for level, p in pmf.mass if level >= n), Fraction(0))


def expected_level(pmf: Pmf) -> Fraction:
    """Exact E[N], evaluated as the sum of tail probabilities over 1..q."""
    return sum((ccdf(pmf, n) for n in range(1, pmf.q + 1)), Fraction(0))


def expected_functional(dist: Distribution, f: Callable) -> Fraction:
    """Exact E[f(state)] by atom enumeration; f may return int or Fraction."""
    return sum((p * f(state) for state, p in dist.atoms), Fraction(0))


def shift(column: BitColumn, n: int) -> BitColumn:
    """Erase all but the n most significant bits of a column.

    The surviving bits land in the n least significant output positions:
    output index q-n+i takes input index i for i in 0..n-1, everything above
    is zero.  shift(x, q) = x and shift(x, 0) is the all-zero column.
    """
    col = np.asarray(column, dtype=np.uint8)
    if col.ndim != 1:
        raise ValueError("expected a 1-D bit column")
    q = col.shape[0]
    if not 0 <= n <= q:
        raise ValueError(f"shift count {n} outside 0..{q}")
    out = np.zeros(q, dtype=np.uint8)
    if n:
        out[q - n:] = col[:n]
    return out


def _parse_state_record(rec: dict, kind: str, where: str):
    if not isinstance(rec, dict):
        raise InstanceFormatError(f"{where}: state record must be an object")
    if "n12" in rec:
        raise InstanceFormatError(f"{where}: two-sided instances (n12) are not supported")
    keys = ("n11", "n21", "n22") if kind == "ifc" else ("n1", "n2")
    extra = set(rec) - set(keys) - {"p"}
    if extra:
        raise InstanceFormatError(f"{where}: unknown fields {sorted(extra)}")
    try:
        levels = tuple(int(rec[k]) for k in keys)
        prob = rec["p"]
    except KeyError as exc:
        raise InstanceFormatError(f"{where}: missing field {exc.args[0]}") from exc
    except (TypeError, ValueError) as exc:
        raise InstanceFormatError(f"{where}: levels must be integers") from exc
    if isinstance(prob, float):
        raise InstanceFormatError(f"{where}: probability must be an exact string or integer")
    return levels, as_rational(prob)


def parse_instance(text: str) -> Distribution:
    """Parse an instance file (JSON text) into a validated distribution.

    Schema: {"q": int, "kind": "ifc"|"mac", "states": [{"n11": ..,
    "n21": .., "n22": .., "p": "a/b"}, ...]} with (n1, n2) records for
    kind "mac".  Probabilities are rational strings or integers and must
    sum to exactly 1 after reduction.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InstanceFormatError("top level must be an object")
    extra = set(doc) - {"q", "kind", "states"}
    if extra:
        raise InstanceFormatError(f"unknown top-level fields {sorted(extra)}")
    try:
        q = int(doc["q"])
        kind = doc["kind"]
        states = doc["states"]
    except KeyError as exc:
        raise InstanceFormatError(f"missing field {exc.args[0]}") from exc
    except (TypeError, ValueError) as exc:
        raise InstanceFormatError("q must be an integer") from exc
    if kind not in ("ifc", "mac"):
        raise InstanceFormatError(f"kind must be 'ifc' or 'mac', got {kind!r}")
    if not isinstance(states, list):
        raise InstanceFormatError("states must be a list")
    atoms = [_parse_state_record(rec, kind, f"states[{i}]") for i, rec in enumerate(states)]
    cls = FadingDistribution if kind == "ifc" else MacDistribution
    return cls(q, atoms)


def serialize_instance(dist: Distribution) -> str:
    """Serialize a distribution to canonical instance-file text.

    parse_instance(serialize_instance(d)) == d for every valid d.
    """
    if isinstance(dist, FadingDistribution):
        kind, keys = "ifc", ("n11", "n21", "n22")
    else:
        kind, keys = "mac", ("n1", "n2")
    states = []
    for state, p in dist.atoms:
        rec = {k: v for k, v in zip(keys, state)}
        rec["p"] = str(p)
        states.append(rec)
    return json.dumps({"q": dist.q, "kind": kind, "states": states}, indent=2) + "\n"
