"""Exact rate bounds and regime classification for layered erasure instances.

Everything here is pure rational arithmetic over the finite atom list of a
validated distribution.  "With probability 1" conditions are checked on every
positive-probability atom, which is exact for finite support.

Mixed-rate simplification note: the per-level achievable increment is
(Pr[N11 >= n] - Pr[N21 >= n, N21 - N22 < n])^+.  Writing the two events as A
and B, Pr(A) - Pr(B) = Pr(A\\B) - Pr(B\\A), where A\\B = (N21 < n <= N11) or
(min(N11, N21 - N22) >= n) and B\\A = (N11 < n, N21 >= n, N21 - N22 < n).
For non-negative x, y the identity (x - y)^+ = x holds iff min(x, y) = 0, so
the simplification condition is checked per level as
min(E[indicator(A\\B)], E[indicator(B\\A)]) = 0.  When it holds at every
level, the achievable sum rate collapses to
E[min(N11 + N22 + (N11 - N21)^+, max(N11, N21, N22, N11 + N22 - N21))].
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .model import (
    FadingDistribution,
    MacDistribution,
    Rational,
    StateTriple,
    expected_functional,
    pos,
)


class ConditionNotSatisfied(ValueError):
    """A regime formula was requested for an instance outside its regime."""


class CollisionWithInterferedBand(ValueError):
    """A private level would land inside receiver 2's interfered band."""


class QTooLarge(ValueError):
    """Subset search rejected: 2^q candidate sets is beyond the cap."""


class Regime(str, Enum):
    """Interference regimes with a known exact sum capacity."""

    VERY_STRONG = "VeryStrong"                  # n21 >= n11 + n22 on every atom
    STRONG_NOT_VERY_STRONG = "StrongNotVeryStrong"  # n11 <= n21 <= n11 + n22
    STRONG = "Strong"                           # n21 >= n11 on every atom
    ERGODIC_VERY_STRONG = "ErgodicVeryStrong"   # E[max(N21,N22)] >= E[N11+N22]
    WEAK = "Weak"                               # n21 <= n11 on every atom
    MIXED_LEMMA = "MixedLemma"                  # simplification condition + n21 <= n11+n22


#: When several regimes apply their formulas agree; this order picks the one
#: reported and the matching simulation scheme.
REGIME_PRECEDENCE = (
    Regime.VERY_STRONG,
    Regime.STRONG_NOT_VERY_STRONG,
    Regime.STRONG,
    Regime.ERGODIC_VERY_STRONG,
    Regime.WEAK,
    Regime.MIXED_LEMMA,
)

SCHEME_FOR_REGIME = {
    Regime.VERY_STRONG: "very-strong",
    Regime.STRONG_NOT_VERY_STRONG: "snvs",
    Regime.STRONG: "strong-joint",
    Regime.ERGODIC_VERY_STRONG: "ergodic-vs",
    Regime.WEAK: "weak",
    Regime.MIXED_LEMMA: "mixed",
}


@dataclass(frozen=True)
class RateBounds:
    """Three independent facets: R1 <= r1_max, R2 <= r2_max, R1+R2 <= sum_max."""

    r1_max: Rational
    r2_max: Rational
    sum_max: Rational


@dataclass(frozen=True)
class LemmaRow:
    """Per-level expectations of the two correction indicators."""

    n: int
    e_a1: Rational
    e_a2: Rational
    holds: bool


@dataclass(frozen=True)
class LemmaTable:
    """Simplification-condition table; holds overall iff it holds at every level."""

    rows: tuple

    @property
    def holds(self) -> bool:
        return all(row.holds for row in self.rows)


@dataclass(frozen=True)
class RegimeReport:
    """Classification outcome: satisfied regimes and the resulting sum rate.

    When any regime applies, `sum_capacity` is its exact sum capacity and
    lower == upper == sum_capacity.  Otherwise [lower, upper] brackets the
    sum capacity between the unconditional achievable rate and the outer
    bound.  `scheme_hint` names the simulation scheme matching
    `chosen_regime` (or the unconditional scheme when none applies).
    """

    satisfied: frozenset
    sum_capacity: Optional[Rational]
    lower: Rational
    upper: Rational
    chosen_regime: Optional[Regime]
    scheme_hint: str


def mac_region(dist: MacDistribution) -> RateBounds:
    """Capacity region facets of a layered erasure MAC: (E[N1], E[N2], E[max])."""
    return RateBounds(
        r1_max=expected_functional(dist, lambda s: s.n1),
        r2_max=expected_functional(dist, lambda s: s.n2),
        sum_max=expected_functional(dist, lambda s: max(s.n1, s.n2)),
    )


def mac_corner(dist: MacDistribution, decode_first: int = 1):
    """Achievable corner rate pair of the MAC region.

    With decode_first=1 the receiver decodes user 1 from its clean layers and
    cancels it, giving (E[(N1-N2)^+], E[N2]); decode_first=2 swaps the roles.
    Either corner's sum equals E[max(N1, N2)].
    """
    if decode_first == 1:
        r1 = expected_functional(dist, lambda s: pos(s.n1 - s.n2))
        r2 = expected_functional(dist, lambda s: s.n2)
    elif decode_first == 2:
        r1 = expected_functional(dist, lambda s: s.n1)
        r2 = expected_functional(dist, lambda s: pos(s.n2 - s.n1))
    else:
        raise ValueError("decode_first must be 1 or 2")
    return (r1, r2)


def outer_bound(dist: FadingDistribution) -> RateBounds:
    """Outer bound facets of the one-sided interference capacity region."""
    return RateBounds(
        r1_max=expected_functional(dist, lambda s: s.n11),
        r2_max=expected_functional(dist, lambda s: s.n22),
        sum_max=expected_functional(
            dist, lambda s: max(s.n11, s.n22, s.n21, s.n11 + s.n22 - s.n21)
        ),
    )


def _every_atom(dist: FadingDistribution, pred) -> bool:
    return all(pred(s) for s, _ in dist.atoms)


def regime_holds(regime: Regime, dist: FadingDistribution) -> bool:
    """Check one regime's defining condition exactly."""
    if regime is Regime.VERY_STRONG:
        return _every_atom(dist, lambda s: s.n21 >= s.n11 + s.n22)
    if regime is Regime.STRONG_NOT_VERY_STRONG:
        return _every_atom(dist, lambda s: s.n11 <= s.n21 <= s.n11 + s.n22)
    if regime is Regime.STRONG:
        return _every_atom(dist, lambda s: s.n21 >= s.n11)
    if regime is Regime.ERGODIC_VERY_STRONG:
        # Inclusive comparison: the boundary case is still achievable.
        return expected_functional(dist, lambda s: max(s.n21, s.n22)) >= expected_functional(
            dist, lambda s: s.n11 + s.n22
        )
    if regime is Regime.WEAK:
        return _every_atom(dist, lambda s: s.n21 <= s.n11)
    if regime is Regime.MIXED_LEMMA:
        return lemma_condition(dist).holds and _every_atom(dist, lambda s: s.n21 <= s.n11 + s.n22)
    raise ValueError(f"unknown regime {regime!r}")


def sum_capacity_formula(regime: Regime, dist: FadingDistribution) -> Rational:
    """Exact sum capacity of `dist` under the named regime.

    Raises ConditionNotSatisfied when the regime's hypothesis fails on the
    instance, since the formula is not known to be the capacity there.
    """
    if not regime_holds(regime, dist):
        raise ConditionNotSatisfied(f"{regime.value} condition fails for this instance")
    if regime in (Regime.VERY_STRONG, Regime.ERGODIC_VERY_STRONG):
        return expected_functional(dist, lambda s: s.n11 + s.n22)
    if regime is Regime.STRONG_NOT_VERY_STRONG:
        return expected_functional(dist, lambda s: max(s.n21, s.n22))
    if regime is Regime.STRONG:
        return min(
            expected_functional(dist, lambda s: s.n11 + s.n22),
            expected_functional(dist, lambda s: max(s.n21, s.n22)),
        )
    if regime is Regime.WEAK:
        return expected_functional(dist, lambda s: max(s.n11, s.n11 + s.n22 - s.n21))
    if regime is Regime.MIXED_LEMMA:
        return expected_functional(
            dist, lambda s: max(s.n11, s.n21, s.n22, s.n11 + s.n22 - s.n21)
        )
    raise ValueError(f"unknown regime {regime!r}")


def classify(dist: FadingDistribution) -> RegimeReport:
    """Classify an instance and report its sum capacity or a bracket."""
    satisfied = frozenset(r for r in Regime if regime_holds(r, dist))
    chosen = next((r for r in REGIME_PRECEDENCE if r in satisfied), None)
    if chosen is not None:
        value = sum_capacity_formula(chosen, dist)
        return RegimeReport(
            satisfied=satisfied,
            sum_capacity=value,
            lower=value,
            upper=value,
            chosen_regime=chosen,
            scheme_hint=SCHEME_FOR_REGIME[chosen],
        )
    return RegimeReport(
        satisfied=satisfied,
        sum_capacity=None,
        lower=mixed_achievable(dist),
        upper=outer_bound(dist).sum_max,
        chosen_regime=None,
        scheme_hint="mixed",
    )


def _prob(dist: FadingDistribution, pred) -> Fraction:
    return sum((p for s, p in dist.atoms if pred(s)), Fraction(0))


def direct_tail(dist: FadingDistribution, n: int) -> Fraction:
    """Pr[N11 >= n]: chance level n of user 1 reaches its own receiver."""
    return _prob(dist, lambda s: s.n11 >= n)


def interference_tail(dist: FadingDistribution, n: int) -> Fraction:
    """Pr[N21 >= n, N21 - N22 < n]: chance level n of user 1 lands on an
    occupied position at receiver 2."""
    return _prob(dist, lambda s: s.n21 >= n and s.n21 - s.n22 < n)


def interference_set_I1(dist: FadingDistribution) -> frozenset:
    """Levels more likely to reach receiver 1 than to interfere at receiver 2.

    Membership is inclusive at equality; the clamp in the achievable-rate sum
    makes the rate insensitive to that choice.
    """
    return frozenset(
        n
        for n in range(1, dist.q + 1)
        if direct_tail(dist, n) >= interference_tail(dist, n)
    )


def mixed_achievable(dist: FadingDistribution) -> Rational:
    """Unconditionally achievable sum rate: user 1 signals on favorable levels
    only, user 2 codes jointly across layers around the interference."""
    total = expected_functional(dist, lambda s: s.n22)
    for n in range(1, dist.q + 1):
        total += pos(direct_tail(dist, n) - interference_tail(dist, n))
    return total


def _a1(s: StateTriple, n: int) -> int:
    return 1 if (s.n21 < n <= s.n11) or min(s.n11, s.n21 - s.n22) >= n else 0


def _a2(s: StateTriple, n: int) -> int:
    return 1 if (s.n11 < n and s.n21 >= n and s.n21 - s.n22 < n) else 0


def lemma_condition(dist: FadingDistribution) -> LemmaTable:
    """Per-level table of the simplification condition.

    At each level n the condition requires min(E[A1(n)], E[A2(n)]) = 0 for
    the indicators A1, A2 defined in the module docstring; this is the
    clamp identity (x - y)^+ = x restated for non-negative x, y.  A
    deterministic N11 satisfies it at every level.
    """
    rows = []
    for n in range(1, dist.q + 1):
        e1 = expected_functional(dist, lambda s: _a1(s, n))
        e2 = expected_functional(dist, lambda s: _a2(s, n))
        rows.append(LemmaRow(n=n, e_a1=e1, e_a2=e2, holds=min(e1, e2) == 0))
    return LemmaTable(rows=tuple(rows))


def lemma_simplified(dist: FadingDistribution) -> Rational:
    """Closed-form value of the mixed achievable rate under the
    simplification condition; equals mixed_achievable exactly."""
    if not lemma_condition(dist).holds:
        raise ConditionNotSatisfied("simplification condition fails at some level")
    return expected_functional(
        dist,
        lambda s: min(
            s.n11 + s.n22 + pos(s.n11 - s.n21),
            max(s.n11, s.n21, s.n22, s.n11 + s.n22 - s.n21),
        ),
    )


def private_split(dist: FadingDistribution, private_levels) -> tuple:
    """Split off user-1 levels as private messages ignored by receiver 2.

    Each private level p carries its own message decoded only at receiver 1,
    contributing Pr[N11 >= p] to the sum rate.  Receiver 2 never decodes
    those levels, which is only sound when they can never collide with user
    2's band: every atom with p <= n21 must also have p <= n21 - n22.  The
    remaining levels form an equivalent instance with the private levels
    deleted from the level count of both links out of transmitter 1.

    Returns (bonus, transformed) where bonus is the private-rate total.
    """
    levels = frozenset(int(p) for p in private_levels)
    for p in levels:
        if not 1 <= p <= dist.q:
            raise ValueError(f"private level {p} outside 1..{dist.q}")
    for s, _ in dist.atoms:
        for p in levels:
            if p <= s.n21 and p > s.n21 - s.n22:
                raise CollisionWithInterferedBand(
                    f"private level {p} collides with user 2's band in state {tuple(s)}"
                )
    bonus = sum((direct_tail(dist, p) for p in levels), Fraction(0))
    merged: dict = {}
    for s, p in dist.atoms:
        key = StateTriple(
            n11=sum(1 for n in range(1, s.n11 + 1) if n not in levels),
            n21=sum(1 for n in range(1, s.n21 + 1) if n not in levels),
            n22=s.n22,
        )
        merged[key] = merged.get(key, Fraction(0)) + p
    return bonus, FadingDistribution(dist.q, merged.items())


def best_known_sum_rate(dist: FadingDistribution) -> Rational:
    """Best sum rate this library can certify as achievable for `dist`."""
    report = classify(dist)
    return report.sum_capacity if report.sum_capacity is not None else report.lower


def best_private_split(dist: FadingDistribution) -> tuple:
    """Exhaustive search over private level sets.

    Maximizes private bonus plus the best known achievable sum rate of the
    transformed instance.  Ties go to the smallest set, then lexicographic
    order.  Returns (levels, total); the total is an achievable sum rate,
    and a capacity only when it meets the outer bound.
    """
    if dist.q > 16:
        raise QTooLarge(f"q={dist.q} would enumerate 2^{dist.q} subsets")
    best_levels = frozenset()
    best_total = best_known_sum_rate(dist)
    all_levels = range(1, dist.q + 1)
    for size in range(1, dist.q + 1):
        for combo in combinations(all_levels, size):
            try:
                bonus, transformed = private_split(dist, combo)
            except CollisionWithInterferedBand:
                continue
            total = bonus + best_known_sum_rate(transformed)
            if total > best_total:
                best_total = total
                best_levels = frozenset(combo)
    return best_levels, best_total
