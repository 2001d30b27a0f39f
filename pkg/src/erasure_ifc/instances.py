"""Built-in two-state reference instances used by the regression suite.

Each instance is small enough to analyze by hand and exercises a different
interference regime, so together they cover every analysis and simulation
path: a MAC corner point, an on-average very strong mixture, a mixture whose
closed-form sum capacity is met by interference avoidance, and a mixture
where splitting off a private level is needed to meet the outer bound.
"""

from __future__ import annotations

from fractions import Fraction

from .model import FadingDistribution, MacDistribution, Rational


def mac_two_state(p: Rational = Fraction(1, 2)) -> MacDistribution:
    """q=4 MAC: states (n1, n2) = (4, 3) w.p. p and (2, 4) w.p. 1-p.

    Corner point (E[(N1-N2)^+], E[N2]) = (p, 4-p); sum bound E[max] = 4.
    """
    p = Fraction(p)
    if not 0 < p < 1:
        raise ValueError("p must lie strictly between 0 and 1")
    return MacDistribution(4, [((4, 3), p), ((2, 4), 1 - p)])


def ifc_ergodic_very_strong() -> FadingDistribution:
    """q=4 mixture of a weak state (2,1,4) and a very strong state (1,4,1).

    Neither state alone is very strong on average terms, but the mixture
    satisfies E[max(N21, N22)] >= E[N11 + N22] with equality; sum capacity 4.
    """
    return FadingDistribution(4, [((2, 1, 4), Fraction(1, 2)), ((1, 4, 1), Fraction(1, 2))])


def ifc_mixed_tight() -> FadingDistribution:
    """q=4 mixture of weak (2,1,2) and strong (3,4,1) states.

    The per-level simplification condition holds and n21 <= n11 + n22
    everywhere, so the achievable rate meets the outer bound: sum capacity 7/2.
    """
    return FadingDistribution(4, [((2, 1, 2), Fraction(1, 2)), ((3, 4, 1), Fraction(1, 2))])


def ifc_private_split() -> FadingDistribution:
    """q=4 mixture of very strong (2,4,1) and weak (2,1,1) states.

    Interference avoidance reaches only 5/2 against an outer bound of 3.
    Carrying level 2 of user 1 as a private message (rate 1) turns the rest
    into a statistically strong instance with sum capacity 2, closing the
    gap: 1 + 2 = 3.
    """
    return FadingDistribution(4, [((2, 4, 1), Fraction(1, 2)), ((2, 1, 1), Fraction(1, 2))])
