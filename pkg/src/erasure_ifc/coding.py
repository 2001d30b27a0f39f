"""Random linear erasure codes over GF(2).

A codebook maps a k-bit message to n_slots coded bits; slot j is the inner
product mod 2 of the message with column j of a pseudorandom k x n_slots
generator matrix.  On an erasure channel the receiver knows which slots
arrived, so decoding reduces to solving a linear system: it succeeds exactly
when the generator submatrix on the received slots has rank k.  For a random
matrix with r received slots the failure probability is at most 2^(k-r),
which makes the rate of reliably decodable codebooks approach the erasure
rate -- the counting argument behind every scheme simulated in this package.

Generator bits come from the splitmix64 sequence so that codebooks are a pure
function of a 64-bit seed and reproducible across platforms and languages:
output word i (i = 0, 1, ...) is mix(seed + (i+1) * 0x9E3779B97F4A7C15) mod
2^64 with mix(z) = h(h(z, 30, 0xBF58476D1CE4E5B9), 27, 0x94D049BB133111EB)
xor'd right by 31, h(z, s, m) = ((z ^ (z >> s)) * m) mod 2^64.  Bit j of
generator row i is bit (j mod 64) of word i*ceil(n_slots/64) + j//64.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numba
import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


class LengthMismatch(ValueError):
    """Message length does not equal the codebook's k."""


class InsufficientRank(ValueError):
    """Received slots do not determine the message (rank < k)."""


class InconsistentSystem(ValueError):
    """Received bits contradict every message; upstream reconstruction bug."""


def splitmix64(seed: int, count: int) -> np.ndarray:
    """First `count` outputs of the splitmix64 sequence for `seed`, vectorized."""
    idx = np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + idx * _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        return z ^ (z >> np.uint64(31))


def _pack_rows(bits: np.ndarray) -> np.ndarray:
    """Pack a (rows, cols) 0/1 array into (rows, ceil(cols/64)) uint64 words."""
    rows, cols = bits.shape
    pad = (-cols) % 64
    if pad:
        bits = np.hstack([bits, np.zeros((rows, pad), dtype=np.uint8)])
    packed = np.packbits(bits, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view(np.uint64)


@numba.njit(cache=True)
def _eliminate_forward(mat: np.ndarray, n_cols: int) -> np.ndarray:
    """Forward Gaussian elimination over GF(2) on packed rows.

    Considers only the first n_cols columns.  On return the first `rank`
    rows are in row echelon form (pivot column of row i is pivots[i],
    strictly increasing) and every later row is zero on those columns.
    Returns the pivot column array.
    """
    rows, words = mat.shape
    pivots = np.empty(min(rows, n_cols), dtype=np.int64)
    one = np.uint64(1)
    n_piv = 0
    for c in range(n_cols):
        w = c >> 6
        b = np.uint64(c & 63)
        p = -1
        for i in range(n_piv, rows):
            if (mat[i, w] >> b) & one:
                p = i
                break
        if p < 0:
            continue
        if p != n_piv:
            for j in range(words):
                tmp = mat[n_piv, j]
                mat[n_piv, j] = mat[p, j]
                mat[p, j] = tmp
        # While every column so far has been a pivot, all unreduced rows are
        # zero left of word w, so the XOR can skip those words.
        j0 = w if n_piv == c else 0
        for i in range(n_piv + 1, rows):
            if (mat[i, w] >> b) & one:
                for j in range(j0, words):
                    mat[i, j] ^= mat[n_piv, j]
        pivots[n_piv] = c
        n_piv += 1
        if n_piv == rows:
            break
    return pivots[:n_piv]


@numba.njit(cache=True)
def _back_substitute(mat: np.ndarray, k: int) -> np.ndarray:
    """Solve an echelon system whose pivot column of row i is i, i in 0..k-1.

    Column k holds the right-hand side.  Returns the k solution bits.
    """
    words = mat.shape[1]
    x = np.zeros(words, dtype=np.uint64)  # solution, packed over columns 0..k-1
    out = np.zeros(k, dtype=np.uint8)
    wk = k >> 6
    bk = np.uint64(k & 63)
    one = np.uint64(1)
    for i in range(k - 1, -1, -1):
        acc = np.uint64(0)
        for j in range(words):
            acc ^= mat[i, j] & x[j]
        acc ^= acc >> np.uint64(32)
        acc ^= acc >> np.uint64(16)
        acc ^= acc >> np.uint64(8)
        acc ^= acc >> np.uint64(4)
        acc ^= acc >> np.uint64(2)
        acc ^= acc >> np.uint64(1)
        bit = (acc & one) ^ ((mat[i, wk] >> bk) & one)
        if bit:
            out[i] = 1
            x[i >> 6] |= one << np.uint64(i & 63)
    return out


class BinaryMatrix:
    """Dense GF(2) matrix held as rows packed into 64-bit words."""

    def __init__(self, bits) -> None:
        arr = np.asarray(bits, dtype=np.uint8)
        if arr.ndim != 2:
            raise ValueError("expected a 2-D array of bits")
        if arr.size and arr.max() > 1:
            raise ValueError("entries must be 0 or 1")
        self.n_rows, self.n_cols = arr.shape
        self._words = _pack_rows(arr) if arr.size else np.zeros((self.n_rows, 0), np.uint64)

    def to_dense(self) -> np.ndarray:
        if self.n_rows == 0 or self.n_cols == 0:
            return np.zeros((self.n_rows, self.n_cols), dtype=np.uint8)
        b = np.unpackbits(self._words.view(np.uint8), axis=1, bitorder="little")
        return b[:, : self.n_cols]

    def rank(self) -> int:
        if self.n_rows == 0 or self.n_cols == 0:
            return 0
        work = self._words.copy()
        return len(_eliminate_forward(work, self.n_cols))


def rank(matrix) -> int:
    """Rank over GF(2) of a 0/1 matrix (array-like or BinaryMatrix)."""
    if isinstance(matrix, BinaryMatrix):
        return matrix.rank()
    return BinaryMatrix(matrix).rank()


@dataclass(frozen=True)
class Codebook:
    """Random linear code: k message bits spread over n_slots coded slots.

    The generator matrix is a pure function of `seed`, so encoder and decoder
    can be instantiated independently and agree bit for bit.
    """

    k: int
    n_slots: int
    seed: int

    def __post_init__(self) -> None:
        if not 0 <= self.k <= self.n_slots:
            raise ValueError(f"need 0 <= k <= n_slots, got k={self.k}, n_slots={self.n_slots}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")

    @cached_property
    def generator(self) -> np.ndarray:
        """The k x n_slots generator bit matrix (uint8)."""
        words_per_row = (self.n_slots + 63) // 64
        words = splitmix64(self.seed, self.k * words_per_row)
        if self.k == 0:
            return np.zeros((0, self.n_slots), dtype=np.uint8)
        raw = words.reshape(self.k, words_per_row).astype("<u8").view(np.uint8)
        bits = np.unpackbits(raw, axis=1, bitorder="little")
        return bits[:, : self.n_slots]


def encode(codebook: Codebook, message) -> np.ndarray:
    """Encode a k-bit message into n_slots coded bits."""
    msg = np.asarray(message, dtype=np.uint8)
    if msg.shape != (codebook.k,):
        raise LengthMismatch(f"message length {msg.shape} != ({codebook.k},)")
    rows = codebook.generator[msg != 0]
    if rows.shape[0] == 0:
        return np.zeros(codebook.n_slots, dtype=np.uint8)
    return np.bitwise_xor.reduce(rows, axis=0)


def decode(codebook: Codebook, received) -> np.ndarray:
    """Recover the message from (slot index, bit) observations.

    `received` is an iterable of (slot, bit) pairs, or a (slots, bits) pair
    of equal-length arrays.  Decoding succeeds iff the generator columns of
    the received slots span all k message coordinates; then the message is
    the unique solution of the linear system and equals whatever was
    encoded.  Raises InsufficientRank when the observations underdetermine
    the message and InconsistentSystem when no message matches them at all
    (the latter cannot happen for bits that actually came out of `encode`).
    """
    if isinstance(received, tuple) and len(received) == 2:
        slots = np.asarray(received[0], dtype=np.int64)
        bits = np.asarray(received[1], dtype=np.uint8)
    else:
        pairs = list(received)
        slots = np.fromiter((s for s, _ in pairs), dtype=np.int64, count=len(pairs))
        bits = np.fromiter((b for _, b in pairs), dtype=np.uint8, count=len(pairs))
    if slots.shape != bits.shape or slots.ndim != 1:
        raise ValueError("slots and bits must be 1-D and equal length")
    if slots.size:
        if slots.min() < 0 or slots.max() >= codebook.n_slots:
            raise ValueError("slot index out of range")
        if np.unique(slots).size != slots.size:
            raise ValueError("duplicate slot indices")
        if bits.max(initial=0) > 1:
            raise ValueError("received bits must be 0 or 1")
    if codebook.k == 0:
        return np.zeros(0, dtype=np.uint8)
    if slots.size < codebook.k:
        raise InsufficientRank(f"{slots.size} slots cannot determine {codebook.k} bits")
    aug = np.empty((slots.size, codebook.k + 1), dtype=np.uint8)
    aug[:, : codebook.k] = codebook.generator[:, slots].T  # one equation per slot
    aug[:, codebook.k] = bits
    work = _pack_rows(aug)
    pivots = _eliminate_forward(work, codebook.k)
    rank_ = len(pivots)
    # Rows beyond the pivots are zero on every message column; a surviving
    # one on the right-hand side means the observations are contradictory.
    w, b = divmod(codebook.k, 64)
    leftover = (work[rank_:, w] >> np.uint64(b)) & np.uint64(1)
    if leftover.any():
        raise InconsistentSystem("received bits match no message")
    if rank_ < codebook.k:
        raise InsufficientRank(f"rank {rank_} < k = {codebook.k}")
    return _back_substitute(work, codebook.k)
