"""Bit-exact simulation of layered erasure channels and coding schemes.

The channel is deterministic given the state: with state n, a q-bit column
loses its q-n least significant levels and the surviving n most significant
levels land in the n least significant output positions.  Receiver 1 sees
only transmitter 1 (shifted by n11); receiver 2 sees the XOR of transmitter 1
shifted by n21 and transmitter 2 shifted by n22.  Position bookkeeping used
by every decoder, for a use with state (n11, n21, n22):

* user-1 level n is visible at receiver 1 iff n <= n11, at output index
  q - n11 + n - 1 (0-based);
* user-1 level n is visible at receiver 2 at index q - n21 + n - 1 iff
  n <= n21 and is free of user-2 content there iff n <= n21 - n22;
* user-2 level m sits at index q - n22 + m - 1 iff m <= n22 and is free of
  user-1 content iff m <= n22 - n21 (the colliding user-1 level is
  n21 - n22 + m when that is >= 1).

Each scheme encodes per-level or joint random linear codebooks sized at
(1 - epsilon) times its exact formula rate, runs the channel and executes
the scheme's decode pipeline.  Receivers know the realized state sequence;
transmit pipelines only ever see the distribution, never the realization.
Interference cancellation reconstructs decoded contributions exactly by XOR.

A negative `epsilon` is allowed as a diagnostic mode that deliberately
overdrives every codebook above its formula rate (codebook sizes are then
capped at the slot count); it exists for converse-side sanity checks and
skips the flooring-loss guard.

All randomness flows from a single 64-bit seed per trial: splitmix64 expands
it into a state-sampling seed, a message seed and a codebook-seed stream, so
results are reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import analysis
from .analysis import Regime, regime_holds
from .coding import Codebook, InsufficientRank, decode, encode, splitmix64
from .model import (
    FadingDistribution,
    MacDistribution,
    Rational,
    as_rational,
    expected_functional,
    pos,
)


class RegimeMismatch(ValueError):
    """The requested scheme's regime condition fails for the instance."""


class WidthMismatch(ValueError):
    """Signal arrays do not agree on length or column width."""


class ConfigurationError(ValueError):
    """Scheme parameters are unusable (bad epsilon, block length too short)."""


class Scheme(str, Enum):
    """Transmission schemes realizable by the simulator."""

    MAC_CORNER = "mac-corner"      # MAC corner point, successive cancellation
    VERY_STRONG = "very-strong"    # per-level codes, decode-and-cancel at rx2
    SNVS = "snvs"                  # per-level codes at the cross-link erasure rate
    STRONG_JOINT = "strong-joint"  # user 1 codes jointly across levels
    ERGODIC_VS = "ergodic-vs"      # joint user-1 code at the direct-link rate
    WEAK = "weak"                  # interference never decoded, only avoided
    MIXED = "mixed"                # user 1 on favorable levels, user 2 joint
    PRIVATE_SPLIT = "private-split"  # private user-1 levels + inner scheme


_REGIME_FOR_SCHEME = {
    Scheme.VERY_STRONG: Regime.VERY_STRONG,
    Scheme.SNVS: Regime.STRONG_NOT_VERY_STRONG,
    Scheme.STRONG_JOINT: Regime.STRONG,
    Scheme.ERGODIC_VS: Regime.ERGODIC_VERY_STRONG,
    Scheme.WEAK: Regime.WEAK,
}


def _coerce_epsilon(value) -> Fraction:
    if isinstance(value, float):
        value = str(value)
    eps = as_rational(value)
    if not -1 < eps < 1 or eps == 0:
        raise ConfigurationError(f"epsilon must lie in (-1, 1) and be nonzero, got {eps}")
    return eps


@dataclass(frozen=True)
class SchemeSpec:
    """A scheme plus its finite-blocklength parameters.

    `epsilon` is the fractional rate backoff: each codebook carries
    floor((1 - epsilon) * rate * T) message bits.  `block_length` is the
    number of channel uses T per trial.  For the private-split scheme,
    `private_levels` names the user-1 levels carrying private messages and
    `inner` the scheme run on the remaining levels.
    """

    scheme: Scheme
    epsilon: Fraction
    block_length: int
    private_levels: frozenset = frozenset()
    inner: Optional[Scheme] = None

    def __init__(self, scheme, epsilon, block_length, private_levels=frozenset(), inner=None):
        object.__setattr__(self, "scheme", Scheme(scheme))
        object.__setattr__(self, "epsilon", _coerce_epsilon(epsilon))
        object.__setattr__(self, "block_length", int(block_length))
        object.__setattr__(self, "private_levels", frozenset(int(p) for p in private_levels))
        object.__setattr__(self, "inner", Scheme(inner) if inner is not None else None)
        if self.block_length < 1:
            raise ConfigurationError("block length must be at least 1")
        if self.scheme is Scheme.PRIVATE_SPLIT:
            if self.inner is None:
                raise ConfigurationError("private-split needs an inner scheme")
            if self.inner in (Scheme.MAC_CORNER, Scheme.PRIVATE_SPLIT):
                raise ConfigurationError(f"{self.inner.value} cannot be an inner scheme")
        elif self.private_levels or self.inner is not None:
            raise ConfigurationError("private levels / inner apply only to private-split")


@dataclass(frozen=True)
class TrialResult:
    """Outcome of one simulated block.

    Rates are the configured codebook sizes divided by T, independent of
    decode outcome.  Diagnostics carry per-level received-slot counts
    (`rx1_user1`, `rx2_user1`, `rx2_user2` keyed by physical level), the
    receiver-2 user-1 decode flag for cancellation schemes, and total
    message bits per user.
    """

    ok_user1: bool
    ok_user2: bool
    rate1: Rational
    rate2: Rational
    diagnostics: dict


@dataclass(frozen=True)
class MonteCarloSummary:
    """Aggregate of independent trials; exact fractions, order-independent."""

    spec: SchemeSpec
    trials: int
    success1: Fraction
    success2: Fraction
    mean_rate1: Fraction
    mean_rate2: Fraction
    results: tuple


def sample_states(dist, block_length: int, seed: int) -> np.ndarray:
    """Draw i.i.d. states: (T, 3) array for interference instances, (T, 2) for MAC."""
    if block_length < 1:
        raise ConfigurationError("block length must be at least 1")
    atoms = np.array([tuple(s) for s, _ in dist.atoms], dtype=np.int64)
    probs = np.array([float(p) for _, p in dist.atoms])
    probs /= probs.sum()
    rng = np.random.default_rng(seed)
    idx = rng.choice(len(atoms), size=block_length, p=probs)
    return atoms[idx]


def _shift_batch(x: np.ndarray, n: np.ndarray) -> np.ndarray:
    """Row-wise shift: row t keeps its n[t] most significant bits, moved down."""
    T, q = x.shape
    out = np.zeros_like(x)
    for v in np.unique(n):
        if v == 0:
            continue
        idx = np.nonzero(n == v)[0]
        out[idx, q - v:] = x[idx, :v]
    return out


def _check_signals(states: np.ndarray, width: int, x1: np.ndarray, x2: np.ndarray) -> np.ndarray:
    st = np.asarray(states, dtype=np.int64)
    if st.ndim != 2 or st.shape[1] != width:
        raise WidthMismatch(f"states must be (T, {width})")
    if x1.ndim != 2 or x1.shape != x2.shape or x1.shape[0] != st.shape[0]:
        raise WidthMismatch("inputs must be (T, q) arrays matching the state sequence")
    if st.size and (st.min() < 0 or st.max() > x1.shape[1]):
        raise WidthMismatch("state level exceeds column width q")
    return st


def transmit_receive(states, x1_seq, x2_seq):
    """One-sided interference channel: returns (y1, y2) bit arrays of shape (T, q)."""
    x1 = np.asarray(x1_seq, dtype=np.uint8)
    x2 = np.asarray(x2_seq, dtype=np.uint8)
    st = _check_signals(states, 3, x1, x2)
    y1 = _shift_batch(x1, st[:, 0])
    y2 = _shift_batch(x1, st[:, 1]) ^ _shift_batch(x2, st[:, 2])
    return y1, y2


def mac_receive(states, x1_seq, x2_seq):
    """Multiple-access channel: returns the single receiver's (T, q) bit array."""
    x1 = np.asarray(x1_seq, dtype=np.uint8)
    x2 = np.asarray(x2_seq, dtype=np.uint8)
    st = _check_signals(states, 2, x1, x2)
    return _shift_batch(x1, st[:, 0]) ^ _shift_batch(x2, st[:, 1])


# ---------------------------------------------------------------------------
# codebook plans

@dataclass
class _LevelCode:
    """Per-level codebook: accounting level `inner`, physical level `real`."""

    inner: int
    real: int
    rate: Fraction
    codebook: Codebook
    message: np.ndarray


@dataclass
class _JointCode:
    """One codebook across levels; slot t*q + (j-1) belongs to inner level j."""

    real_levels: tuple  # index j-1 -> physical level, 0 if level j unmapped
    rate: Fraction
    codebook: Codebook
    message: np.ndarray


def _codebook_bits(rate: Fraction, eps: Fraction, T: int, n_slots: int) -> int:
    """floor((1 - eps) * rate * T), guarding that flooring stays negligible."""
    k = int((1 - eps) * rate * T)
    if eps > 0 and rate > 0:
        if (1 - eps) * rate - Fraction(k, T) >= eps * rate / 2:
            raise ConfigurationError(
                f"T={T} too short: flooring a rate-{rate} codebook costs more "
                f"than epsilon/2 of its rate"
            )
    return min(k, n_slots)


def _make_level_codes(rates: dict, eps: Fraction, T: int, cb_rng, msg_rng,
                      real_of=None) -> list:
    codes = []
    for inner in sorted(rates):
        rate = rates[inner]
        if rate == 0:
            continue
        k = _codebook_bits(rate, eps, T, T)
        cb = Codebook(k=k, n_slots=T, seed=int(cb_rng.integers(0, 2**64, dtype=np.uint64)))
        msg = msg_rng.integers(0, 2, size=k).astype(np.uint8)
        real = real_of[inner] if real_of else inner
        codes.append(_LevelCode(inner=inner, real=real, rate=rate, codebook=cb, message=msg))
    return codes


def _make_joint_code(rate: Fraction, q: int, eps: Fraction, T: int, cb_rng, msg_rng,
                     real_levels=None) -> _JointCode:
    k = _codebook_bits(rate, eps, T, q * T)
    cb = Codebook(k=k, n_slots=q * T, seed=int(cb_rng.integers(0, 2**64, dtype=np.uint64)))
    msg = msg_rng.integers(0, 2, size=k).astype(np.uint8)
    if real_levels is None:
        real_levels = tuple(range(1, q + 1))
    return _JointCode(real_levels=tuple(real_levels), rate=rate, codebook=cb, message=msg)


def _emit(T: int, q: int, level_codes: Sequence[_LevelCode],
          joint_codes: Sequence[_JointCode]) -> np.ndarray:
    """Superpose all codewords of one transmitter into a (T, q) bit array."""
    x = np.zeros((T, q), dtype=np.uint8)
    for c in level_codes:
        if c.codebook.k:
            x[:, c.real - 1] = encode(c.codebook, c.message)
    for c in joint_codes:
        if not c.codebook.k:
            continue
        cw = encode(c.codebook, c.message).reshape(T, q)
        for j, real in enumerate(c.real_levels, start=1):
            if real:
                x[:, real - 1] = cw[:, j - 1]
    return x


# ---------------------------------------------------------------------------
# decode helpers

def _decode_level_codes(codes, clean: np.ndarray, shift_amt: np.ndarray,
                        y: np.ndarray):
    """Decode per-level codes from uses where `clean` >= the accounting level.

    Returns (all_ok, decoded messages list aligned with codes, counts by
    physical level).  Levels are processed most significant first.
    """
    q = y.shape[1]
    ok = True
    counts = {}
    messages = []
    for c in codes:
        ts = np.nonzero(clean >= c.inner)[0]
        counts[c.real] = int(ts.size)
        bits = y[ts, q - shift_amt[ts] + (c.real - 1)]
        try:
            messages.append(decode(c.codebook, (ts, bits)))
        except InsufficientRank:
            ok = False
            messages.append(None)
    return ok, messages, counts


def _decode_joint_code(code: _JointCode, included: np.ndarray, positions: np.ndarray,
                       y: np.ndarray):
    """Decode a joint code from the (T, q) inclusion mask of inner slots.

    `positions[t, j-1]` is the output index holding inner level j at use t
    (only consulted where included).  Returns (ok, message, counts by
    physical level).
    """
    q = y.shape[1]
    counts = {}
    for j, real in enumerate(code.real_levels, start=1):
        if real:
            counts[real] = int(included[:, j - 1].sum())
    ts, js = np.nonzero(included)
    slot_ids = ts * q + js
    bits = y[ts, positions[ts, js]]
    try:
        return True, decode(code.codebook, (slot_ids, bits)), counts
    except InsufficientRank:
        return False, None, counts


def _threshold_mask(clean: np.ndarray, code: _JointCode, q: int) -> np.ndarray:
    """(T, q) inclusion mask: inner level j included iff clean >= j and mapped."""
    inner = np.arange(1, q + 1)
    mask = clean[:, None] >= inner[None, :]
    mapped = np.array([r != 0 for r in code.real_levels], dtype=bool)
    return mask & mapped[None, :]


def _user1_positions(shift_amt: np.ndarray, code: _JointCode, q: int) -> np.ndarray:
    real = np.array(code.real_levels, dtype=np.int64)
    return q - shift_amt[:, None] + (real[None, :] - 1)


def _reconstruct(T: int, q: int, level_codes, level_msgs, joint_codes, joint_msgs):
    """Rebuild transmitter 1's emission from decoded messages (exact XOR source)."""
    lcs = [
        _LevelCode(inner=c.inner, real=c.real, rate=c.rate, codebook=c.codebook, message=m)
        for c, m in zip(level_codes, level_msgs)
    ]
    jcs = [
        _JointCode(real_levels=c.real_levels, rate=c.rate, codebook=c.codebook, message=m)
        for c, m in zip(joint_codes, joint_msgs)
    ]
    return _emit(T, q, lcs, jcs)


# ---------------------------------------------------------------------------
# exact rate formulas

def _tail(dist, f) -> Fraction:
    """Pr[f(state)] for a boolean functional, exact."""
    return sum((p for s, p in dist.atoms if f(s)), Fraction(0))


def _user2_level_rates(dist, weak: bool) -> dict:
    rates = {}
    for m in range(1, dist.q + 1):
        if weak:
            rates[m] = _tail(dist, lambda s: s.n22 - s.n21 >= m)
        else:
            rates[m] = _tail(dist, lambda s: s.n22 >= m)
    return rates


def _user1_level_rates(dist, scheme: Scheme) -> dict:
    rates = {}
    for n in range(1, dist.q + 1):
        if scheme in (Scheme.VERY_STRONG, Scheme.SNVS):
            rates[n] = _tail(dist, lambda s: min(s.n11, pos(s.n21 - s.n22)) >= n)
        elif scheme is Scheme.WEAK:
            rates[n] = _tail(dist, lambda s: s.n11 >= n)
        else:
            raise ValueError(f"no per-level user-1 rates for {scheme}")
    return rates


# ---------------------------------------------------------------------------
# pipelines

def _run_mac_corner(dist: MacDistribution, spec: SchemeSpec, seed: int) -> TrialResult:
    T, q, eps = spec.block_length, dist.q, spec.epsilon
    state_seed, msg_seed, cb_seed = (int(w) for w in splitmix64(seed, 3))
    msg_rng = np.random.default_rng(msg_seed)
    cb_rng = np.random.default_rng(cb_seed)

    rates1 = {n: _tail(dist, lambda s: s.n1 - s.n2 >= n) for n in range(1, q + 1)}
    rates2 = {m: _tail(dist, lambda s: s.n2 >= m) for m in range(1, q + 1)}
    u1 = _make_level_codes(rates1, eps, T, cb_rng, msg_rng)
    u2 = _make_level_codes(rates2, eps, T, cb_rng, msg_rng)

    states = sample_states(dist, T, state_seed)
    n1, n2 = states[:, 0], states[:, 1]
    x1 = _emit(T, q, u1, [])
    x2 = _emit(T, q, u2, [])
    y = mac_receive(states, x1, x2)

    ok1, msgs1, counts1 = _decode_level_codes(u1, n1 - n2, n1, y)
    if ok1:
        resid = y ^ _shift_batch(_reconstruct(T, q, u1, msgs1, [], []), n1)
        ok2, _msgs2, counts2 = _decode_level_codes(u2, n2, n2, resid)
    else:
        ok2 = False
        counts2 = {c.real: 0 for c in u2}

    return TrialResult(
        ok_user1=ok1,
        ok_user2=ok2,
        rate1=Fraction(sum(c.codebook.k for c in u1), T),
        rate2=Fraction(sum(c.codebook.k for c in u2), T),
        diagnostics={
            "rx1_user1": counts1,
            "rx2_user1": None,
            "rx2_user2": counts2,
            "rx2_user1_ok": ok1,
            "message_bits": {1: sum(c.codebook.k for c in u1), 2: sum(c.codebook.k for c in u2)},
        },
    )


@dataclass
class _Split:
    """Level bookkeeping for the private-split wrapper (identity by default)."""

    private: tuple = ()
    phi: Optional[tuple] = None  # inner level j -> physical level

    def real_of(self, q: int) -> tuple:
        if self.phi is None:
            return tuple(range(1, q + 1))
        return tuple(self.phi) + (0,) * (q - len(self.phi))


def _run_ifc(dist: FadingDistribution, spec: SchemeSpec, seed: int,
             scheme: Scheme, acct_dist: FadingDistribution, split: _Split) -> TrialResult:
    """Shared pipeline for all one-sided interference schemes.

    `acct_dist` drives rates and decode accounting (it differs from `dist`
    only under a private split); `split.phi` maps accounting levels to
    physical levels.
    """
    T, q, eps = spec.block_length, dist.q, spec.epsilon
    state_seed, msg_seed, cb_seed = (int(w) for w in splitmix64(seed, 3))
    msg_rng = np.random.default_rng(msg_seed)
    cb_rng = np.random.default_rng(cb_seed)
    real_levels = split.real_of(q)
    real_of = {j: real_levels[j - 1] for j in range(1, q + 1)}

    # --- transmit side: codebooks at (1 - eps) of the exact formula rates
    private_codes = _make_level_codes(
        {p: analysis.direct_tail(dist, p) for p in sorted(split.private)},
        eps, T, cb_rng, msg_rng,
    ) if split.private else []

    favorable = analysis.interference_set_I1(acct_dist) if scheme is Scheme.MIXED else None

    u1_levels: list = []
    u1_joint: list = []
    if scheme in (Scheme.VERY_STRONG, Scheme.SNVS, Scheme.WEAK):
        u1_levels = _make_level_codes(
            _user1_level_rates(acct_dist, scheme), eps, T, cb_rng, msg_rng, real_of=real_of
        )
    elif scheme is Scheme.STRONG_JOINT:
        r1 = min(
            expected_functional(acct_dist, lambda s: s.n11),
            expected_functional(acct_dist, lambda s: pos(s.n21 - s.n22)),
        )
        u1_joint = [_make_joint_code(r1, q, eps, T, cb_rng, msg_rng, real_levels)]
    elif scheme is Scheme.ERGODIC_VS:
        r1 = expected_functional(acct_dist, lambda s: s.n11)
        u1_joint = [_make_joint_code(r1, q, eps, T, cb_rng, msg_rng, real_levels)]
    elif scheme is Scheme.MIXED:
        rates1 = {
            n: analysis.direct_tail(acct_dist, n) if n in favorable else Fraction(0)
            for n in range(1, q + 1)
        }
        u1_levels = _make_level_codes(rates1, eps, T, cb_rng, msg_rng, real_of=real_of)
    else:
        raise ValueError(f"unsupported scheme {scheme}")

    u2_levels: list = []
    u2_joint: list = []
    if scheme is Scheme.MIXED:
        r2 = expected_functional(acct_dist, lambda s: s.n22) - sum(
            (analysis.interference_tail(acct_dist, n) for n in sorted(favorable)), Fraction(0)
        )
        u2_joint = [_make_joint_code(r2, q, eps, T, cb_rng, msg_rng)]
    else:
        u2_levels = _make_level_codes(
            _user2_level_rates(acct_dist, weak=scheme is Scheme.WEAK), eps, T, cb_rng, msg_rng
        )

    # --- channel
    states = sample_states(dist, T, state_seed)
    n11, n21, n22 = states[:, 0], states[:, 1], states[:, 2]
    a11, a21, a22 = n11, n21, n22
    if split.private:
        a11, a21 = n11.copy(), n21.copy()
        for p in split.private:
            a11 -= (n11 >= p).astype(np.int64)
            a21 -= (n21 >= p).astype(np.int64)
    x1 = _emit(T, q, private_codes + u1_levels, u1_joint)
    x2 = _emit(T, q, u2_levels, u2_joint)
    y1, y2 = transmit_receive(states, x1, x2)

    # --- receiver 1: every user-1 code, from uses where its level is visible
    counts_rx1: dict = {}
    ok_priv = True
    for c in private_codes:
        ts = np.nonzero(n11 >= c.real)[0]
        counts_rx1[c.real] = int(ts.size)
        bits = y1[ts, q - n11[ts] + (c.real - 1)]
        try:
            decode(c.codebook, (ts, bits))
        except InsufficientRank:
            ok_priv = False
    ok_lvl1, _m, counts_l = _decode_level_codes(u1_levels, a11, n11, y1)
    counts_rx1.update(counts_l)
    ok_jnt1 = True
    for c in u1_joint:
        okj, _msg, counts_j = _decode_joint_code(
            c, _threshold_mask(a11, c, q), _user1_positions(n11, c, q), y1
        )
        ok_jnt1 = ok_jnt1 and okj
        counts_rx1.update(counts_j)
    ok1 = ok_priv and ok_lvl1 and ok_jnt1

    # --- receiver 2
    counts_rx2_u1: Optional[dict] = None
    rx2_user1_ok: Optional[bool] = None
    y2_for_user2 = y2
    if scheme in (Scheme.VERY_STRONG, Scheme.SNVS, Scheme.STRONG_JOINT, Scheme.ERGODIC_VS):
        # decode user 1 from interference-free positions, then cancel exactly
        counts_rx2_u1 = {}
        ok_l, msgs_l, cnt = _decode_level_codes(u1_levels, a21 - a22, n21, y2)
        counts_rx2_u1.update(cnt)
        ok_j, msgs_j = True, []
        for c in u1_joint:
            okj, msg, cnt = _decode_joint_code(
                c, _threshold_mask(a21 - a22, c, q), _user1_positions(n21, c, q), y2
            )
            ok_j = ok_j and okj
            msgs_j.append(msg)
            counts_rx2_u1.update(cnt)
        rx2_user1_ok = ok_l and ok_j
        if rx2_user1_ok:
            xhat = _reconstruct(T, q, u1_levels, msgs_l, u1_joint, msgs_j)
            y2_for_user2 = y2 ^ _shift_batch(xhat, n21)

    counts_rx2_u2: dict = {}
    if rx2_user1_ok is False:
        ok2 = False
        for c in u2_levels:
            counts_rx2_u2[c.real] = 0
        for c in u2_joint:
            counts_rx2_u2.update({r: 0 for r in c.real_levels if r})
    else:
        if scheme is Scheme.WEAK:
            clean2 = a22 - a21
        else:
            clean2 = a22
        ok2_l, _m2, cnt2 = _decode_level_codes(u2_levels, clean2, n22, y2_for_user2)
        counts_rx2_u2.update(cnt2)
        ok2_j = True
        for c in u2_joint:
            included = _mixed_user2_mask(a21, a22, favorable, q)
            positions = q - n22[:, None] + np.arange(q)[None, :]
            okj, _msg, cnt = _decode_joint_code(c, included, positions, y2_for_user2)
            ok2_j = ok2_j and okj
            counts_rx2_u2.update(cnt)
        ok2 = ok2_l and ok2_j

    bits1 = sum(c.codebook.k for c in private_codes + u1_levels) + sum(
        c.codebook.k for c in u1_joint
    )
    bits2 = sum(c.codebook.k for c in u2_levels) + sum(c.codebook.k for c in u2_joint)
    return TrialResult(
        ok_user1=ok1,
        ok_user2=ok2,
        rate1=Fraction(bits1, T),
        rate2=Fraction(bits2, T),
        diagnostics={
            "rx1_user1": counts_rx1,
            "rx2_user1": counts_rx2_u1,
            "rx2_user2": counts_rx2_u2,
            "rx2_user1_ok": rx2_user1_ok,
            "message_bits": {1: bits1, 2: bits2},
        },
    )


def _mixed_user2_mask(a21: np.ndarray, a22: np.ndarray, i1, q: int) -> np.ndarray:
    """User-2 slots kept by the interference-avoiding receiver.

    Level m at use t is kept iff it is visible (m <= n22) and the user-1
    level colliding with it, n21 - n22 + m, is not an active one (not in the
    favorable set i1); colliding levels below 1 do not exist.
    """
    m = np.arange(1, q + 1)
    visible = a22[:, None] >= m[None, :]
    collider = (a21 - a22)[:, None] + m[None, :]
    active = np.isin(collider, sorted(i1)) & (collider >= 1)
    return visible & ~active


def run_scheme(dist, spec: SchemeSpec, seed: int) -> TrialResult:
    """Run one block of the configured scheme and report decode outcomes.

    Raises RegimeMismatch when the scheme's regime condition fails for the
    instance, and ConfigurationError for unusable parameters.
    """
    if spec.scheme is Scheme.MAC_CORNER:
        if not isinstance(dist, MacDistribution):
            raise RegimeMismatch("mac-corner runs on a multiple-access instance")
        return _run_mac_corner(dist, spec, seed)
    if not isinstance(dist, FadingDistribution):
        raise RegimeMismatch(f"{spec.scheme.value} runs on an interference instance")

    if spec.scheme is Scheme.PRIVATE_SPLIT:
        _bonus, transformed = analysis.private_split(dist, spec.private_levels)
        inner = spec.inner
        needed = _REGIME_FOR_SCHEME.get(inner)
        if needed is not None and not regime_holds(needed, transformed):
            raise RegimeMismatch(
                f"inner scheme {inner.value} needs {needed.value} on the split instance"
            )
        phi = tuple(n for n in range(1, dist.q + 1) if n not in spec.private_levels)
        split = _Split(private=tuple(sorted(spec.private_levels)), phi=phi)
        return _run_ifc(dist, spec, seed, inner, transformed, split)

    needed = _REGIME_FOR_SCHEME.get(spec.scheme)
    if needed is not None and not regime_holds(needed, dist):
        raise RegimeMismatch(f"{spec.scheme.value} needs the {needed.value} condition")
    return _run_ifc(dist, spec, seed, spec.scheme, dist, _Split())


def monte_carlo(dist, spec: SchemeSpec, trials: int, master_seed: int) -> MonteCarloSummary:
    """Run independent trials with per-trial seeds derived from the master seed."""
    if trials < 1:
        raise ConfigurationError("trials must be at least 1")
    seeds = [int(w) for w in splitmix64(master_seed, trials)]
    results = tuple(run_scheme(dist, spec, s) for s in seeds)
    n = len(results)
    return MonteCarloSummary(
        spec=spec,
        trials=n,
        success1=Fraction(sum(r.ok_user1 for r in results), n),
        success2=Fraction(sum(r.ok_user2 for r in results), n),
        mean_rate1=sum((r.rate1 for r in results), Fraction(0)) / n,
        mean_rate2=sum((r.rate2 for r in results), Fraction(0)) / n,
        results=results,
    )
