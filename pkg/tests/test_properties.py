"""Randomized structural invariants tying the formulas to each other."""

import numpy as np

from erasure_ifc.analysis import (
    Regime,
    best_private_split,
    classify,
    lemma_condition,
    lemma_simplified,
    mac_corner,
    mac_region,
    mixed_achievable,
    outer_bound,
    sum_capacity_formula,
)
from erasure_ifc.model import (
    expected_functional,
    parse_instance,
    pos,
    serialize_instance,
)

from helpers import random_ifc, random_mac


def test_achievable_rates_never_exceed_outer_bound():
    rng = np.random.default_rng(101)
    for _ in range(200):
        dist = random_ifc(rng)
        cap = outer_bound(dist).sum_max
        assert mixed_achievable(dist) <= cap
        for regime in classify(dist).satisfied:
            assert sum_capacity_formula(regime, dist) <= cap


def test_very_strong_region_is_rectangular():
    rng = np.random.default_rng(103)
    seen = 0
    for _ in range(400):
        dist = random_ifc(rng)
        rep = classify(dist)
        if Regime.VERY_STRONG in rep.satisfied:
            seen += 1
            b = outer_bound(dist)
            assert sum_capacity_formula(Regime.VERY_STRONG, dist) == b.r1_max + b.r2_max
    assert seen > 10


def test_weak_formula_identity():
    # max(a, a + c - b) = a + (c - b)^+ whenever b <= a
    rng = np.random.default_rng(104)
    seen = 0
    for _ in range(400):
        dist = random_ifc(rng)
        if Regime.WEAK in classify(dist).satisfied:
            seen += 1
            direct = expected_functional(dist, lambda s: s.n11) + expected_functional(
                dist, lambda s: pos(s.n22 - s.n21)
            )
            assert sum_capacity_formula(Regime.WEAK, dist) == direct
    assert seen > 10


def test_lemma_simplification_equals_sum_whenever_condition_holds():
    rng = np.random.default_rng(105)
    seen = 0
    for _ in range(300):
        dist = random_ifc(rng)
        if lemma_condition(dist).holds:
            seen += 1
            assert lemma_simplified(dist) == mixed_achievable(dist)
    assert seen > 30


def test_classify_bracket_consistency():
    rng = np.random.default_rng(106)
    for _ in range(200):
        dist = random_ifc(rng)
        rep = classify(dist)
        assert rep.lower <= rep.upper
        if rep.sum_capacity is None:
            assert rep.lower == mixed_achievable(dist)
            assert rep.upper == outer_bound(dist).sum_max
        else:
            assert rep.lower == rep.upper == rep.sum_capacity


def test_private_split_total_is_achievable_bound():
    rng = np.random.default_rng(107)
    for _ in range(120):
        dist = random_ifc(rng, max_q=4)
        _levels, total = best_private_split(dist)
        assert total <= outer_bound(dist).sum_max


def test_mac_corner_sum_saturates_sum_bound():
    rng = np.random.default_rng(108)
    for _ in range(200):
        mac = random_mac(rng)
        r1, r2 = mac_corner(mac)
        s1, s2 = mac_corner(mac, decode_first=2)
        bound = mac_region(mac).sum_max
        assert r1 + r2 == bound
        assert s1 + s2 == bound


def test_instance_round_trip_randomized():
    rng = np.random.default_rng(109)
    for _ in range(100):
        dist = random_ifc(rng)
        assert parse_instance(serialize_instance(dist)) == dist
        mac = random_mac(rng)
        assert parse_instance(serialize_instance(mac)) == mac
