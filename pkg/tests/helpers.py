"""Shared test oracles: independent reimplementations kept deliberately naive."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from erasure_ifc.model import FadingDistribution, MacDistribution


def gf2_rank_bitset(rows, n_cols):
    """Rank over GF(2) by textbook elimination on int bitsets.

    Independent of the packed-matrix implementation under test: rows are
    plain Python ints, bit j of a row is column j.
    """
    work = [int(r) for r in rows]
    rank = 0
    for col in range(n_cols):
        pivot = None
        for i in range(rank, len(work)):
            if (work[i] >> col) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for i in range(len(work)):
            if i != rank and ((work[i] >> col) & 1):
                work[i] ^= work[rank]
        rank += 1
        if rank == len(work):
            break
    return rank


def dense_to_bitset_rows(bits):
    """Convert a (rows, cols) 0/1 array into int bitsets, bit j = column j."""
    out = []
    for row in np.asarray(bits):
        val = 0
        for j, b in enumerate(row):
            if b:
                val |= 1 << j
        out.append(val)
    return out


def splitmix64_reference(seed, count):
    """Pure-int splitmix64, the ground truth for the vectorized version."""
    mask = (1 << 64) - 1
    out = []
    state = seed & mask
    for _ in range(count):
        state = (state + 0x9E3779B97F4A7C15) & mask
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
        out.append(z ^ (z >> 31))
    return out


def expected_by_definition(pmf):
    """E[N] straight from the definition, Sum n * Pr[N = n]."""
    return sum((Fraction(n) * p for n, p in pmf.mass), Fraction(0))


def random_ifc(rng, max_q=5, max_atoms=4) -> FadingDistribution:
    """Random small interference instance with exact rational probabilities."""
    q = int(rng.integers(1, max_q + 1))
    n_atoms = int(rng.integers(1, max_atoms + 1))
    triples = set()
    while len(triples) < n_atoms:
        triples.add(tuple(int(v) for v in rng.integers(0, q + 1, size=3)))
    weights = [int(rng.integers(1, 10)) for _ in triples]
    total = sum(weights)
    return FadingDistribution(q, [(t, Fraction(w, total)) for t, w in zip(sorted(triples), weights)])


def random_mac(rng, max_q=5, max_atoms=4) -> MacDistribution:
    """Random small multiple-access instance."""
    q = int(rng.integers(1, max_q + 1))
    n_atoms = int(rng.integers(1, max_atoms + 1))
    pairs = set()
    while len(pairs) < n_atoms:
        pairs.add(tuple(int(v) for v in rng.integers(0, q + 1, size=2)))
    weights = [int(rng.integers(1, 10)) for _ in pairs]
    total = sum(weights)
    return MacDistribution(q, [(t, Fraction(w, total)) for t, w in zip(sorted(pairs), weights)])
