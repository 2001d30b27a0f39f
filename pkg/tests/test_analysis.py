"""Exact bounds, regime classification and achievable-rate formulas."""

from fractions import Fraction

import numpy as np
import pytest

from erasure_ifc import instances
from erasure_ifc.analysis import (
    CollisionWithInterferedBand,
    ConditionNotSatisfied,
    QTooLarge,
    Regime,
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
    regime_holds,
    sum_capacity_formula,
)
from erasure_ifc.model import FadingDistribution, MacDistribution

from helpers import random_ifc

H = Fraction(1, 2)


# ---------------------------------------------------------------------------
# multiple access

def test_mac_region_two_state():
    # atom enumeration: E[N1] = (4+2)/2, E[N2] = (3+4)/2, E[max] = (4+4)/2
    b = mac_region(instances.mac_two_state(H))
    assert (b.r1_max, b.r2_max, b.sum_max) == (3, Fraction(7, 2), 4)


def test_mac_region_point_and_degenerate():
    b = mac_region(MacDistribution(5, [((5, 2), 1)]))
    assert (b.r1_max, b.r2_max, b.sum_max) == (5, 2, 5)
    b = mac_region(MacDistribution(4, [((4, 3), 1)]))
    assert (b.r1_max, b.r2_max, b.sum_max) == (4, 3, 4)


@pytest.mark.parametrize("p", [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)])
def test_mac_corner_general_p(p):
    assert mac_corner(instances.mac_two_state(p)) == (p, 4 - p)


def test_mac_corner_point_mass_and_swapped():
    assert mac_corner(MacDistribution(4, [((2, 3), 1)])) == (0, 3)
    # swapped decode order on the two-state instance: (E[N1], E[(N2-N1)^+])
    r1, r2 = mac_corner(instances.mac_two_state(H), decode_first=2)
    assert (r1, r2) == (3, 1)
    assert r1 + r2 == mac_region(instances.mac_two_state(H)).sum_max
    with pytest.raises(ValueError):
        mac_corner(instances.mac_two_state(H), decode_first=3)


# ---------------------------------------------------------------------------
# outer bound

def test_outer_bound_reference_instances():
    assert outer_bound(instances.ifc_private_split()).sum_max == 3
    assert outer_bound(instances.ifc_mixed_tight()).sum_max == Fraction(7, 2)


def test_outer_bound_no_interference_point_mass():
    b = outer_bound(FadingDistribution(6, [((4, 0, 2), 1)]))
    assert (b.r1_max, b.r2_max, b.sum_max) == (4, 2, 6)


# ---------------------------------------------------------------------------
# classification

def test_classify_ergodic_very_strong():
    rep = classify(instances.ifc_ergodic_very_strong())
    assert Regime.ERGODIC_VERY_STRONG in rep.satisfied
    assert rep.sum_capacity == 4
    assert rep.lower == rep.upper == 4
    assert rep.scheme_hint == "ergodic-vs"


def test_classify_mixed_tight():
    rep = classify(instances.ifc_mixed_tight())
    assert rep.satisfied == frozenset({Regime.MIXED_LEMMA})
    assert rep.sum_capacity == Fraction(7, 2)


def test_classify_very_strong_point_mass():
    rep = classify(FadingDistribution(8, [((2, 8, 3), 1)]))
    assert Regime.VERY_STRONG in rep.satisfied
    assert rep.chosen_regime is Regime.VERY_STRONG
    assert rep.sum_capacity == 5
    # the region is the full rectangle there
    b = outer_bound(FadingDistribution(8, [((2, 8, 3), 1)]))
    assert rep.sum_capacity == b.r1_max + b.r2_max


def test_classify_bracket_when_no_regime():
    rep = classify(instances.ifc_private_split())
    assert rep.satisfied == frozenset()
    assert rep.sum_capacity is None
    assert rep.chosen_regime is None
    assert (rep.lower, rep.upper) == (Fraction(5, 2), 3)
    assert rep.scheme_hint == "mixed"


def test_sum_capacity_formula_values():
    # the split-off instance from the private-split reference example
    transformed = FadingDistribution(4, [((1, 3, 1), H), ((1, 1, 1), H)])
    assert sum_capacity_formula(Regime.STRONG, transformed) == 2
    point = FadingDistribution(9, [((4, 2, 3), 1)])
    assert sum_capacity_formula(Regime.WEAK, point) == max(4, 4 + 3 - 2)
    assert sum_capacity_formula(Regime.MIXED_LEMMA, instances.ifc_mixed_tight()) == Fraction(7, 2)


def test_sum_capacity_formula_rejects_wrong_regime():
    with pytest.raises(ConditionNotSatisfied):
        sum_capacity_formula(Regime.VERY_STRONG, instances.ifc_mixed_tight())
    with pytest.raises(ConditionNotSatisfied):
        sum_capacity_formula(Regime.WEAK, instances.ifc_ergodic_very_strong())


# ---------------------------------------------------------------------------
# mixed interference machinery

def test_interference_set_reference_instances():
    # per-level enumeration: at n=4 the direct tail is 0 but the
    # interference tail is 1/2, so level 4 drops out
    assert interference_set_I1(instances.ifc_private_split()) == {1, 2, 3}
    assert interference_set_I1(instances.ifc_mixed_tight()) == {1, 2, 3}


def test_interference_set_full_without_interference():
    assert interference_set_I1(FadingDistribution(5, [((5, 0, 2), 1)])) == {1, 2, 3, 4, 5}


def test_mixed_achievable_values():
    assert mixed_achievable(instances.ifc_private_split()) == Fraction(5, 2)
    # per-level terms: E[N22] = 3/2, increments 1/2 + 1 + 1/2 + 0
    assert mixed_achievable(instances.ifc_mixed_tight()) == Fraction(3, 2) + H + 1 + H
    assert mixed_achievable(FadingDistribution(6, [((4, 0, 2), 1)])) == 6


def test_lemma_condition_tables():
    table = lemma_condition(instances.ifc_mixed_tight())
    assert table.holds
    last = table.rows[3]
    assert (last.n, last.e_a1, last.e_a2) == (4, 0, H)
    assert lemma_condition(instances.ifc_private_split()).holds


def test_lemma_condition_deterministic_n11_always_holds():
    rng = np.random.default_rng(23)
    for _ in range(50):
        dist = random_ifc(rng)
        fixed = int(rng.integers(0, dist.q + 1))
        # rebuild the instance with a constant direct link
        merged = {}
        for s, p in dist.atoms:
            key = (fixed, s.n21, s.n22)
            merged[key] = merged.get(key, Fraction(0)) + p
        assert lemma_condition(FadingDistribution(dist.q, merged.items())).holds


def test_lemma_simplified_values():
    # atom enumeration: min(3, 4)/2 + min(4, 2)/2 and min(5, 3)/2 + min(4, 4)/2
    assert lemma_simplified(instances.ifc_private_split()) == Fraction(5, 2)
    assert lemma_simplified(instances.ifc_mixed_tight()) == Fraction(7, 2)
    point = FadingDistribution(7, [((3, 0, 2), 1)])
    assert lemma_simplified(point) == 5


def test_lemma_simplified_requires_condition():
    # a two-state instance violating the condition at level 1:
    # E[A1(1)] = 1/2 from the first state, E[A2(1)] = 1/2 from the second
    bad = FadingDistribution(3, [((1, 0, 0), H), ((0, 1, 1), H)])
    assert not lemma_condition(bad).holds
    with pytest.raises(ConditionNotSatisfied):
        lemma_simplified(bad)


# ---------------------------------------------------------------------------
# private level splitting

def test_private_split_reference_example():
    bonus, transformed = private_split(instances.ifc_private_split(), {2})
    assert bonus == 1
    assert transformed == FadingDistribution(4, [((1, 3, 1), H), ((1, 1, 1), H)])


def test_private_split_empty_is_identity():
    dist = instances.ifc_mixed_tight()
    bonus, transformed = private_split(dist, set())
    assert bonus == 0
    assert transformed == dist


def test_private_split_collision_detected():
    # level 1 hits user 2's band in the weak state: 1 <= n21 = 1 but 1 > n21 - n22 = 0
    with pytest.raises(CollisionWithInterferedBand):
        private_split(instances.ifc_private_split(), {1})
    with pytest.raises(ValueError):
        private_split(instances.ifc_private_split(), {0})


def test_private_split_merges_transformed_duplicates():
    dist = FadingDistribution(3, [((2, 0, 0), H), ((1, 0, 0), H)])
    bonus, transformed = private_split(dist, {2})
    assert bonus == H
    assert transformed == FadingDistribution(3, [((1, 0, 0), 1)])


def test_best_private_split():
    assert best_private_split(instances.ifc_private_split()) == ({2}, 3)
    # already tight: no split improves on the bound, so the empty set wins
    assert best_private_split(instances.ifc_mixed_tight()) == (frozenset(), Fraction(7, 2))
    with pytest.raises(QTooLarge):
        best_private_split(FadingDistribution(17, [((1, 1, 1), 1)]))


# ---------------------------------------------------------------------------
# structural facts used by the simulator

def test_regime_containment():
    assert regime_holds(Regime.STRONG, FadingDistribution(8, [((2, 8, 3), 1)]))
    rng = np.random.default_rng(31)
    for _ in range(100):
        dist = random_ifc(rng)
        rep = classify(dist)
        if Regime.VERY_STRONG in rep.satisfied or Regime.STRONG_NOT_VERY_STRONG in rep.satisfied:
            assert Regime.STRONG in rep.satisfied


def test_satisfied_regime_formulas_agree():
    rng = np.random.default_rng(37)
    for _ in range(200):
        dist = random_ifc(rng)
        rep = classify(dist)
        values = {sum_capacity_formula(r, dist) for r in rep.satisfied}
        assert len(values) <= 1
        if rep.satisfied:
            assert rep.sum_capacity == values.pop()
