"""Free modules and matrices over a polynomial ring.

A ``PolyMatrix`` is a homomorphism ``source -> target`` stored densely with
``target.rank`` rows and ``source.rank`` columns.  Generator degrees are
optional; when both sides carry them every nonzero entry must be homogeneous
of degree ``source_deg[j] - target_deg[i]``.
"""

from __future__ import annotations

import random

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .scalar_poly import Polynomial, RingMismatchError, RingSpec


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class FreeModuleSpec:
    rank: int
    degrees: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        if self.degrees is not None:
            object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
            if len(self.degrees) != self.rank:
                raise ValueError("degrees must have one entry per generator")

    @property
    def graded(self) -> bool:
        return self.degrees is not None

    def dual(self) -> "FreeModuleSpec":
        if self.degrees is None:
            return self
        return FreeModuleSpec(self.rank, tuple(-d for d in self.degrees))

    def select(self, indices: Sequence[int]) -> "FreeModuleSpec":
        degs = None if self.degrees is None else tuple(self.degrees[i] for i in indices)
        return FreeModuleSpec(len(indices), degs)

    def __add__(self, other: "FreeModuleSpec") -> "FreeModuleSpec":
        if self.degrees is None or other.degrees is None:
            return FreeModuleSpec(self.rank + other.rank)
        return FreeModuleSpec(self.rank + other.rank, self.degrees + other.degrees)

    def compatible(self, other: "FreeModuleSpec") -> bool:
        if self.rank != other.rank:
            return False
        return self.degrees is None or other.degrees is None or self.degrees == other.degrees


@dataclass(frozen=True)
class IdealData:
    """An ideal given by nonzero generators, deduplicated up to unit scaling."""

    ring: RingSpec
    generators: tuple[Polynomial, ...]

    def __post_init__(self):
        kept = []
        seen = set()
        for g in self.generators:
            if g.ring != self.ring:
                raise RingMismatchError("generator from a different ring")
            if g and g.monic() not in seen:
                seen.add(g.monic())
                kept.append(g)
        object.__setattr__(self, "generators", tuple(kept))

    @classmethod
    def unit(cls, ring: RingSpec) -> "IdealData":
        return cls(ring, (ring.one(),))

    def is_zero(self) -> bool:
        return not self.generators

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def infer_chain_degrees(ring: RingSpec, grids: Sequence[Sequence[Sequence[Polynomial]]]):
    """Degrees for ``F_0, F_1, ...`` making every map in the chain homogeneous.

    ``grids[k]`` maps ``F_(k+1) -> F_k``.  Returns None when some entry is not
    homogeneous or the constraints are inconsistent.  Each connected component
    is normalised so that its first basis element (in ``F_0``-first order)
    has degree 0.
    """
    sizes = [len(grids[0])] if grids else []
    for g in grids:
        sizes.append(len(g[0]) if g else 0)
    for k in range(1, len(grids)):
        if len(grids[k]) != sizes[k]:
            return None
    adj: dict[tuple[int, int], list[tuple[tuple[int, int], int]]] = {}
    for k, g in enumerate(grids):
        for i, row in enumerate(g):
            for j, e in enumerate(row):
                if not e:
                    continue
                if not e.is_homogeneous():
                    return None
                a, b = (k, i), (k + 1, j)
                # deg F_(k+1)[j] = deg F_k[i] + deg e
                adj.setdefault(a, []).append((b, e.degree()))
                adj.setdefault(b, []).append((a, -e.degree()))
    degs: dict[tuple[int, int], int] = {}
    for k, n in enumerate(sizes):
        for i in range(n):
            start = (k, i)
            if start in degs:
                continue
            degs[start] = 0
            queue = deque([start])
            while queue:
                node = queue.popleft()
                for nxt, w in adj.get(node, ()):
                    want = degs[node] + w
                    if nxt not in degs:
                        degs[nxt] = want
                        queue.append(nxt)
                    elif degs[nxt] != want:
                        return None
    return [tuple(degs[(k, i)] for i in range(n)) for k, n in enumerate(sizes)]


class PolyMatrix:
    __slots__ = ("ring", "source", "target", "entries", "_rank")

    def __init__(self, ring: RingSpec, source: FreeModuleSpec, target: FreeModuleSpec,
                 entries: Iterable[Iterable[Polynomial]], check: bool = True):
        self.ring = ring
        self.source = source
        self.target = target
        self.entries = tuple(tuple(row) for row in entries)
        self._rank = None
        if check:
            self._validate()

    def _validate(self):
        if len(self.entries) != self.target.rank:
            raise DimensionError(
                f"{len(self.entries)} rows for a target of rank {self.target.rank}")
        for row in self.entries:
            if len(row) != self.source.rank:
                raise DimensionError(
                    f"row of length {len(row)} for a source of rank {self.source.rank}")
            for e in row:
                if e.ring != self.ring:
                    raise RingMismatchError("matrix entry from a different ring")
        if self.source.graded and self.target.graded:
            for i, row in enumerate(self.entries):
                for j, e in enumerate(row):
                    if e and not (e.is_homogeneous()
                                  and e.degree() == self.source.degrees[j] - self.target.degrees[i]):
                        raise ValueError(
                            f"entry ({i},{j}) = {e} is not homogeneous of degree "
                            f"{self.source.degrees[j] - self.target.degrees[i]}")

    # construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, ring: RingSpec, rows: Sequence[Sequence[Polynomial | int | str]],
                  ncols: int | None = None, source_degrees=None, target_degrees=None):
        """Build from row lists; polynomials may be given as strings or ints.

        Without explicit degrees a grading is inferred when every entry is
        homogeneous and the constraints are consistent.
        """
        conv = []
        for row in rows:
            out = []
            for e in row:
                if isinstance(e, str):
                    e = ring.parse(e)
                elif isinstance(e, int):
                    e = ring.constant(e)
                out.append(e)
            conv.append(out)
        if ncols is None:
            ncols = len(conv[0]) if conv else 0
        if source_degrees is None and target_degrees is None and conv and ncols:
            degs = infer_chain_degrees(ring, [conv])
            if degs is not None:
                target_degrees, source_degrees = degs
        return cls(ring, FreeModuleSpec(ncols, source_degrees),
                   FreeModuleSpec(len(conv), target_degrees), conv)

    @classmethod
    def zero(cls, ring: RingSpec, source: FreeModuleSpec, target: FreeModuleSpec):
        z = ring.zero()
        return cls(ring, source, target,
                   [[z] * source.rank for _ in range(target.rank)], check=False)

    @classmethod
    def identity(cls, ring: RingSpec, spec: FreeModuleSpec | int):
        if isinstance(spec, int):
            spec = FreeModuleSpec(spec)
        z, o = ring.zero(), ring.one()
        rows = [[o if i == j else z for j in range(spec.rank)] for i in range(spec.rank)]
        return cls(ring, spec, spec, rows, check=False)

    @classmethod
    def from_columns(cls, ring: RingSpec, columns: Sequence[Sequence[Polynomial]],
                     target: FreeModuleSpec, source: FreeModuleSpec | None = None):
        if source is None:
            source = FreeModuleSpec(len(columns))
        rows = [[columns[j][i] for j in range(len(columns))] for i in range(target.rank)]
        return cls(ring, source, target, rows)

    # shape --------------------------------------------------------------

    @property
    def nrows(self) -> int:
        return self.target.rank

    @property
    def ncols(self) -> int:
        return self.source.rank

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> tuple[Polynomial, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[Polynomial, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)

    @property
    def graded(self) -> bool:
        return self.source.graded and self.target.graded

    def with_specs(self, source: FreeModuleSpec, target: FreeModuleSpec) -> "PolyMatrix":
        return PolyMatrix(self.ring, source, target, self.entries)

    def ungraded(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, FreeModuleSpec(self.ncols), FreeModuleSpec(self.nrows),
                          self.entries, check=False)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.source.select(cols), self.target.select(rows),
                          [[self.entries[i][j] for j in cols] for i in rows], check=False)

    def hstack(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.nrows != other.nrows:
            raise DimensionError("hstack needs equal row counts")
        return PolyMatrix(self.ring, self.source + other.source, self.target,
                          [a + b for a, b in zip(self.entries, other.entries)], check=False)

    def vstack(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.ncols:
            raise DimensionError("vstack needs equal column counts")
        return PolyMatrix(self.ring, self.source, self.target + other.target,
                          self.entries + other.entries, check=False)

    def apply(self, vector: Sequence[Polynomial]) -> tuple[Polynomial, ...]:
        if len(vector) != self.ncols:
            raise DimensionError("vector length does not match the source rank")
        z = self.ring.zero()
        out = []
        for row in self.entries:
            acc = z
            for a, b in zip(row, vector):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def evaluate(self, point: Sequence[int]) -> list[list[int]]:
        return [[e.evaluate(point) for e in row] for row in self.entries]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.ring == other.ring and self.entries == other.entries
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        return hash((self.entries, self.source, self.target))

    def __repr__(self):
        rows = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"PolyMatrix({self.nrows}x{self.ncols}: [{rows}])"


# operations -------------------------------------------------------------


def compose(f: PolyMatrix, g: PolyMatrix) -> PolyMatrix:
    """The composite ``f o g`` (matrix product ``f * g``)."""
    if f.ring != g.ring:
        raise RingMismatchError("cannot compose maps over different rings")
    if f.source.rank != g.target.rank:
        raise DimensionError(
            f"source of f ({f.source.rank}) does not match target of g ({g.target.rank})")
    source, target = g.source, f.target
    if not f.source.compatible(g.target):
        # gradings agreeing up to a uniform shift are re-aligned; otherwise dropped
        shifts = {a - b for a, b in zip(f.source.degrees, g.target.degrees)}
        if len(shifts) == 1:
            c = shifts.pop()
            source = FreeModuleSpec(g.source.rank, tuple(d + c for d in g.source.degrees))
        else:
            source, target = FreeModuleSpec(g.source.rank), FreeModuleSpec(f.target.rank)
    z = f.ring.zero()
    gcols = g.columns()
    rows = []
    for frow in f.entries:
        out = []
        for col in gcols:
            acc = z
            for a, b in zip(frow, col):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        rows.append(out)
    return PolyMatrix(f.ring, source, target, rows, check=False)


def dual(f: PolyMatrix) -> PolyMatrix:
    """Transpose, with source and target swapped and degrees negated."""
    rows = [list(col) for col in f.columns()]
    return PolyMatrix(f.ring, f.target.dual(), f.source.dual(), rows, check=False)


def _pivot_key(entry: Polynomial, i: int, j: int):
    return (entry.degree(), i, j)


def _bareiss(rows: list[list[Polynomial]], ncols: int, stop_at: int | None = None):
    """Fraction-free elimination with full pivoting, in place.

    Returns ``(rank, sign, last_pivot)``; for a square nonsingular matrix the
    determinant is ``sign * last_pivot``.
    """
    nrows = len(rows)
    if not nrows or not ncols:
        return 0, 1, None
    ring = rows[0][0].ring
    prev = ring.one()
    sign = 1
    k = 0
    limit = min(nrows, ncols) if stop_at is None else min(nrows, ncols, stop_at)
    while k < limit:
        best = None
        for i in range(k, nrows):
            row = rows[i]
            for j in range(k, ncols):
                e = row[j]
                if e:
                    key = _pivot_key(e, i, j)
                    if best is None or key < best[0]:
                        best = (key, i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != k:
            rows[k], rows[pi] = rows[pi], rows[k]
            sign = -sign
        if pj != k:
            for row in rows:
                row[k], row[pj] = row[pj], row[k]
            sign = -sign
        piv = rows[k][k]
        pivrow = rows[k]
        for i in range(k + 1, nrows):
            row = rows[i]
            a = row[k]
            for j in range(k + 1, ncols):
                v = piv * row[j]
                if a and pivrow[j]:
                    v = v - a * pivrow[j]
                row[j] = v.divexact(prev) if v else v
            row[k] = ring.zero()
        prev = piv
        k += 1
    return k, sign, prev


def bareiss_rank(f: PolyMatrix) -> int:
    """Rank over the fraction field by fraction-free elimination alone."""
    rows = [list(r) for r in f.entries]
    rank, _, _ = _bareiss(rows, f.ncols)
    return rank


def matrix_rank(f: PolyMatrix) -> int:
    """Rank over the fraction field, by Bareiss elimination.

    The rank at any point is a lower bound, so a full-rank evaluation settles
    the answer exactly without elimination.  Results are cached on ``f``.
    """
    if f._rank is not None:
        return f._rank
    full = min(f.nrows, f.ncols)
    rng = random.Random(full)
    point = [rng.randrange(1, f.ring.characteristic) for _ in range(f.ring.ngens)]
    if full and evaluation_rank(f, point) == full:
        rank = full
    else:
        rank = bareiss_rank(f)
    f._rank = rank
    return rank


def determinant(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    ring = rows[0][0].ring
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    work = [list(r) for r in rows]
    rank, sign, last = _bareiss(work, n)
    if rank < n:
        return ring.zero()
    return last if sign == 1 else -last


def iter_minors(f: PolyMatrix, t: int) -> Iterator[Polynomial]:
    """All ``t x t`` minors, rows-combination major, in lexicographic order."""
    for rs in combinations(range(f.nrows), t):
        sub_rows = [f.entries[i] for i in rs]
        for cs in combinations(range(f.ncols), t):
            yield determinant([[row[j] for j in cs] for row in sub_rows])


def minor_ideal(f: PolyMatrix, t: int) -> IdealData:
    """Ideal of all ``t x t`` minors, zero minors dropped."""
    if t < 1 or t > min(f.nrows, f.ncols):
        raise ValueError(f"minor size {t} out of range for a {f.nrows}x{f.ncols} matrix")
    return IdealData(f.ring, tuple(m for m in iter_minors(f, t) if m))


def evaluation_rank(f: PolyMatrix, point: Sequence[int]) -> int:
    """Rank of the scalar matrix obtained by substituting ``point``."""
    p = f.ring.characteristic
    a = f.evaluate(point)
    rank = 0
    ncols = f.ncols
    for c in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], -1, p)
        for i in range(rank + 1, len(a)):
            if a[i][c]:
                factor = a[i][c] * inv % p
                a[i] = [(x - factor * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank
