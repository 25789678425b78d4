"""Koszul complexes on a sequence of polynomials and sections of their duals."""

from __future__ import annotations

from itertools import combinations
from math import comb
from typing import Sequence

from .free_linalg import FreeModuleSpec, PolyMatrix
from .groebner import ResolutionData
from .scalar_poly import Polynomial


def _check_sequence(seq: Sequence[Polynomial]):
    seq = tuple(seq)
    if not seq:
        raise ValueError("a Koszul complex needs a nonempty sequence")
    if any(not s for s in seq):
        raise ValueError("Koszul sequence entries must be nonzero")
    ring = seq[0].ring
    if any(s.ring != ring for s in seq):
        raise ValueError("sequence entries from different rings")
    return seq, ring


def _subset_degrees(seq, subsets):
    if not all(s.is_homogeneous() for s in seq):
        return None
    degs = [s.degree() for s in seq]
    return tuple(sum(degs[i] for i in S) for S in subsets)


def exterior_basis(n: int, k: int) -> list[tuple[int, ...]]:
    """Index subsets of size k in lexicographic order."""
    return list(combinations(range(n), k))


def koszul_differential(seq: Sequence[Polynomial], k: int) -> PolyMatrix:
    """``d_k: ∧^k R^n -> ∧^(k-1) R^n``, ``e_S -> Σ (-1)^pos s_i e_(S - i)``."""
    seq, ring = _check_sequence(seq)
    n = len(seq)
    if not 1 <= k <= n:
        raise ValueError(f"exterior power {k} out of range 1..{n}")
    src = exterior_basis(n, k)
    tgt = exterior_basis(n, k - 1)
    index = {S: i for i, S in enumerate(tgt)}
    z = ring.zero()
    rows = [[z] * len(src) for _ in tgt]
    for j, S in enumerate(src):
        for pos, i in enumerate(S):
            T = S[:pos] + S[pos + 1:]
            rows[index[T]][j] = seq[i] if pos % 2 == 0 else -seq[i]
    sdeg = _subset_degrees(seq, src)
    tdeg = _subset_degrees(seq, tgt)
    return PolyMatrix(ring, FreeModuleSpec(len(src), sdeg), FreeModuleSpec(len(tgt), tdeg), rows)


def koszul_complex(seq: Sequence[Polynomial]) -> ResolutionData:
    """``0 -> ∧^n -> ... -> ∧^1 -> R``; ``F_k = ∧^k R^n`` sits in degree k."""
    seq, _ = _check_sequence(seq)
    n = len(seq)
    return ResolutionData(tuple(koszul_differential(seq, k) for k in range(1, n + 1)))


def koszul_section(seq: Sequence[Polynomial], from_power: int, to_power: int) -> ResolutionData:
    """The dual Koszul maps ``∧^a -> ∧^(a+1) -> ... -> ∧^b`` as a complex.

    Re-indexed so that ``F_0 = ∧^b`` and ``F_(b-a) = ∧^a``; the map out of
    ``∧^k`` wedges with ``Σ s_i e_i`` (the transpose of ``d_(k+1)``).
    """
    seq, ring = _check_sequence(seq)
    n = len(seq)
    if not 0 <= from_power < to_power <= n:
        raise ValueError(f"need 0 <= from < to <= {n}, got {from_power}..{to_power}")
    homogeneous = all(s.is_homogeneous() for s in seq)
    degs = [s.degree() for s in seq]
    top = max(sum(degs[i] for i in S) for S in exterior_basis(n, to_power)) if homogeneous else 0

    def spec(k):
        basis = exterior_basis(n, k)
        if not homogeneous:
            return FreeModuleSpec(len(basis))
        return FreeModuleSpec(len(basis), tuple(top - sum(degs[i] for i in S) for S in basis))

    diffs = []
    for k in range(to_power, from_power, -1):
        d = koszul_differential(seq, k)
        rows = [list(col) for col in d.columns()]
        diffs.append(PolyMatrix(ring, spec(k - 1), spec(k), rows))
    return ResolutionData(tuple(diffs))


def koszul_rank(n: int, k: int) -> int:
    """Rank of ``d_k`` on a regular sequence of length n."""
    return comb(n - 1, k - 1)
