"""Gröbner bases for submodules of free modules over F_p[x_1..x_d].

Module terms are pairs ``(position, exponents)`` ordered position-over-term:
a lower position index is larger, ties broken by the ring's monomial order.
Internally module elements are dicts ``{(pos, exps): coef}``; the public
surface works with ``ModuleElement`` and ``PolyMatrix``.

Syzygies are read off a Gröbner basis of the lifted module generated by the
columns of ``[f; I]``; under position-over-term the basis elements whose
leading position lies in the identity block generate ``Ker f``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .free_linalg import (
    DimensionError,
    FreeModuleSpec,
    IdealData,
    PolyMatrix,
    compose,
)
from .scalar_poly import Polynomial, RingMismatchError, RingSpec


@dataclass(frozen=True)
class ModuleElement:
    components: tuple[Polynomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def rank(self) -> int:
        return len(self.components)

    def is_zero(self) -> bool:
        return not any(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        return ModuleElement(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return ModuleElement(tuple(a - b for a, b in zip(self.components, other.components)))

    def scale(self, c: Polynomial) -> "ModuleElement":
        return ModuleElement(tuple(c * a for a in self.components))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def _to_dict(components: Sequence[Polynomial], offset: int = 0) -> dict:
    d = {}
    for pos, poly in enumerate(components):
        for m, c in poly._d.items():
            d[(pos + offset, m)] = c
    return d


def _from_dict(ring: RingSpec, d: dict, rank: int, offset: int = 0) -> tuple[Polynomial, ...]:
    parts: list[dict] = [{} for _ in range(rank)]
    for (pos, m), c in d.items():
        parts[pos - offset][m] = c
    return tuple(Polynomial._raw(ring, part) for part in parts)


class _Elt:
    __slots__ = ("d", "lead", "sugar")

    def __init__(self, d, lead, sugar):
        self.d = d
        self.lead = lead
        self.sugar = sugar


class _Context:
    """Arithmetic on module dicts for a fixed ring, rank and grading."""

    def __init__(self, ring: RingSpec, rank: int, pos_degrees: Sequence[int] | None = None):
        self.ring = ring
        self.p = ring.characteristic
        self.rank = rank
        self.pos_degrees = tuple(pos_degrees) if pos_degrees is not None else None
        mk = ring.monomial_key
        self.key = lambda t: (-t[0], mk(t[1]))
        self._heap_keys: dict = {}

    def degree(self, term) -> int:
        pos, m = term
        base = self.pos_degrees[pos] if self.pos_degrees is not None else 0
        return base + sum(m)

    def lead(self, d):
        return max(d, key=self.key)

    def sugar(self, d) -> int:
        return max(self.degree(t) for t in d)

    def make(self, d) -> _Elt:
        lead = self.lead(d)
        inv = pow(d[lead], -1, self.p)
        if inv != 1:
            p = self.p
            d = {t: c * inv % p for t, c in d.items()}
        return _Elt(d, lead, self.sugar(d))

    def sub_mul(self, d, c, shift, g):
        """d -= c * x^shift * g, in place."""
        p = self.p
        for (pos, m), gc in g.items():
            t = (pos, tuple(a + b for a, b in zip(m, shift)))
            v = (d.get(t, 0) - c * gc) % p
            if v:
                d[t] = v
            else:
                d.pop(t, None)

    def find_reducer(self, term, by_pos):
        pos, m = term
        for g in by_pos.get(pos, ()):
            gm = g.lead[1]
            if all(a <= b for a, b in zip(gm, m)):
                return g
        return None

    def heap_key(self, t):
        """Key whose minimum is the largest term."""
        hk = self._heap_keys.get(t)
        if hk is None:
            pos, m = t
            if self.ring.order == "grevlex":
                hk = (pos, -sum(m), m[::-1])
            else:
                hk = (pos, tuple(-e for e in m))
            self._heap_keys[t] = hk
        return hk

    def reduce(self, d, by_pos, full: bool = True):
        """Remainder of ``d`` on division by the elements in ``by_pos``."""
        d = dict(d)
        rem = {}
        p = self.p
        hkey = self.heap_key
        heap = [(hkey(t), t) for t in d]
        heapq.heapify(heap)
        while heap:
            _, t = heapq.heappop(heap)
            c = d.pop(t, None)
            if c is None:
                continue
            g = self.find_reducer(t, by_pos)
            if g is None:
                if not full:
                    rem[t] = c
                    rem.update(d)
                    return rem
                rem[t] = c
                continue
            shift = tuple(a - b for a, b in zip(t[1], g.lead[1]))
            lead = g.lead
            # terms produced here are all below t, so lazy deletion is safe
            for (pos, m), gc in g.d.items():
                if (pos, m) == lead:
                    continue
                s = (pos, tuple(a + b for a, b in zip(m, shift)))
                old = d.get(s)
                if old is None:
                    d[s] = -c * gc % p
                    heapq.heappush(heap, (hkey(s), s))
                else:
                    v = (old - c * gc) % p
                    if v:
                        d[s] = v
                    else:
                        del d[s]
        return rem


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


class _Buchberger:
    """Incremental Buchberger with the Gebauer-Möller pair criteria."""

    def __init__(self, ctx: _Context):
        self.ctx = ctx
        self.G: list[_Elt] = []
        self.by_pos: dict[int, list[_Elt]] = {}
        self.pairs: list = []
        self.live: set = set()
        self.product_criterion = ctx.rank == 1

    def _pair_entry(self, i, j):
        gi, gj = self.G[i], self.G[j]
        lcm = _lcm(gi.lead[1], gj.lead[1])
        si = gi.sugar + sum(lcm) - sum(gi.lead[1])
        sj = gj.sugar + sum(lcm) - sum(gj.lead[1])
        return (max(si, sj), i, j)

    def _insert(self, elt: _Elt):
        t = len(self.G)
        self.G.append(elt)
        self.by_pos.setdefault(elt.lead[0], []).append(elt)
        pos, lm = elt.lead
        # chain criterion on existing pairs
        dead = []
        for (i, j) in self.live:
            gi, gj = self.G[i], self.G[j]
            if gi.lead[0] != pos:
                continue
            lij = _lcm(gi.lead[1], gj.lead[1])
            if (_divides(lm, lij) and _lcm(gi.lead[1], lm) != lij
                    and _lcm(gj.lead[1], lm) != lij):
                dead.append((i, j))
        for pr in dead:
            self.live.discard(pr)
        # new pairs, pruned by the M and F criteria
        cands = []
        for i in range(t):
            gi = self.G[i]
            if gi.lead[0] == pos:
                cands.append((i, _lcm(gi.lead[1], lm)))
        kept = []
        seen_lcm = set()
        for i, l in cands:
            if any(l2 != l and _divides(l2, l) for _, l2 in cands):
                continue
            if l in seen_lcm:
                continue
            seen_lcm.add(l)
            kept.append((i, l))
        for i, l in kept:
            if self.product_criterion and l == tuple(a + b for a, b in zip(self.G[i].lead[1], lm)):
                continue
            self.live.add((i, t))
            heapq.heappush(self.pairs, self._pair_entry(i, t))

    def add(self, d) -> None:
        rem = self.ctx.reduce(d, self.by_pos)
        if rem:
            self._insert(self.ctx.make(rem))
        self.complete()

    def add_many(self, ds: Iterable[dict]) -> None:
        for d in ds:
            rem = self.ctx.reduce(d, self.by_pos)
            if rem:
                self._insert(self.ctx.make(rem))
        self.complete()

    def _spoly(self, i, j):
        gi, gj = self.G[i], self.G[j]
        lcm = _lcm(gi.lead[1], gj.lead[1])
        si = tuple(a - b for a, b in zip(lcm, gi.lead[1]))
        sj = tuple(a - b for a, b in zip(lcm, gj.lead[1]))
        d = {}
        for (pos, m), c in gi.d.items():
            d[(pos, tuple(a + b for a, b in zip(m, si)))] = c
        self.ctx.sub_mul(d, 1, sj, gj.d)
        return d

    def complete(self) -> None:
        ctx = self.ctx
        while self.pairs:
            _, i, j = heapq.heappop(self.pairs)
            if (i, j) not in self.live:
                continue
            self.live.discard((i, j))
            s = self._spoly(i, j)
            if not s:
                continue
            rem = ctx.reduce(s, self.by_pos)
            if rem:
                self._insert(ctx.make(rem))

    def reduced(self) -> list[_Elt]:
        """Reduced Gröbner basis, sorted by decreasing leading term."""
        ctx = self.ctx
        G = self.G
        minimal = []
        for idx, g in enumerate(G):
            redundant = False
            for jdx, h in enumerate(G):
                if jdx == idx or h.lead[0] != g.lead[0]:
                    continue
                if _divides(h.lead[1], g.lead[1]):
                    if h.lead[1] != g.lead[1] or jdx < idx:
                        redundant = True
                        break
            if not redundant:
                minimal.append(g)
        out = []
        for g in minimal:
            others: dict[int, list[_Elt]] = {}
            for h in minimal:
                if h is not g:
                    others.setdefault(h.lead[0], []).append(h)
            rem = ctx.reduce(g.d, others)
            out.append(ctx.make(rem))
        out.sort(key=lambda e: ctx.key(e.lead), reverse=True)
        return out


# public types -------------------------------------------------------------


class GroebnerBasisData:
    """A reduced Gröbner basis of a submodule of a free module."""

    order = "pot"

    def __init__(self, ring: RingSpec, ambient: FreeModuleSpec, elts: list[_Elt],
                 ctx: _Context):
        self.ring = ring
        self.ambient = ambient
        self._elts = elts
        self._ctx = ctx
        self._by_pos: dict[int, list[_Elt]] = {}
        for e in elts:
            self._by_pos.setdefault(e.lead[0], []).append(e)
        self.generators = tuple(
            ModuleElement(_from_dict(ring, e.d, ambient.rank)) for e in elts)

    def __len__(self):
        return len(self.generators)

    def leading_terms(self) -> list[tuple[int, tuple[int, ...]]]:
        return [e.lead for e in self._elts]

    def contains(self, v: ModuleElement | Sequence[Polynomial]) -> bool:
        return normal_form(v, self).is_zero()

    def is_unit(self) -> bool:
        """True when the basis generates the whole ambient module."""
        zero = (0,) * self.ring.ngens
        leads = {e.lead for e in self._elts}
        return all((i, zero) in leads for i in range(self.ambient.rank))


def _context_for(ring: RingSpec, ambient: FreeModuleSpec) -> _Context:
    return _Context(ring, ambient.rank, ambient.degrees)


def _check_element(v, ring: RingSpec, rank: int) -> tuple[Polynomial, ...]:
    comps = tuple(v.components if isinstance(v, ModuleElement) else v)
    if len(comps) != rank:
        raise DimensionError(f"element of rank {len(comps)} in an ambient of rank {rank}")
    for c in comps:
        if c.ring != ring:
            raise RingMismatchError("element from a different ring")
    return comps


def buchberger(gens: Iterable[ModuleElement | Sequence[Polynomial]], ambient: FreeModuleSpec,
               ring: RingSpec) -> GroebnerBasisData:
    """Reduced Gröbner basis of the submodule generated by ``gens``."""
    ctx = _context_for(ring, ambient)
    bb = _Buchberger(ctx)
    dicts = []
    for g in gens:
        comps = _check_element(g, ring, ambient.rank)
        d = _to_dict(comps)
        if d:
            dicts.append(d)
    dicts.sort(key=lambda d: (ctx.sugar(d), len(d)))
    bb.add_many(dicts)
    return GroebnerBasisData(ring, ambient, bb.reduced(), ctx)


def column_basis(f: PolyMatrix) -> GroebnerBasisData:
    """Gröbner basis of the image of ``f`` inside its target."""
    return buchberger(f.columns(), f.target, f.ring)


def normal_form(v: ModuleElement | Sequence[Polynomial], basis: GroebnerBasisData) -> ModuleElement:
    comps = _check_element(v, basis.ring, basis.ambient.rank)
    rem = basis._ctx.reduce(_to_dict(comps), basis._by_pos)
    return ModuleElement(_from_dict(basis.ring, rem, basis.ambient.rank))


def ideal_basis(ideal: IdealData) -> GroebnerBasisData:
    return buchberger([(g,) for g in ideal.generators], FreeModuleSpec(1), ideal.ring)


# lifting and syzygies ------------------------------------------------------


class _LiftedModule:
    """Gröbner basis of the columns of ``[f; I]`` under position-over-term."""

    def __init__(self, f: PolyMatrix):
        self.f = f
        ring = f.ring
        k, n = f.nrows, f.ncols
        self.k, self.n = k, n
        if f.graded:
            pos_deg = tuple(f.target.degrees) + tuple(f.source.degrees)
        else:
            pos_deg = None
        self.ctx = _Context(ring, k + n, pos_deg)
        bb = _Buchberger(self.ctx)
        one = (0,) * ring.ngens
        dicts = []
        for j, col in enumerate(f.columns()):
            d = _to_dict(col)
            d[(k + j, one)] = 1
            dicts.append(d)
        dicts.sort(key=lambda d: (self.ctx.sugar(d), len(d)))
        bb.add_many(dicts)
        self.elts = bb.reduced()
        self.by_pos: dict[int, list[_Elt]] = {}
        for e in self.elts:
            self.by_pos.setdefault(e.lead[0], []).append(e)

    def kernel_elements(self) -> list[dict]:
        k = self.k
        return [e.d for e in self.elts if e.lead[0] >= k]

    def lift(self, v: Sequence[Polynomial]) -> tuple[Polynomial, ...] | None:
        """Coefficients ``a`` with ``f a = v``, or None if ``v`` is not in the image."""
        rem = self.ctx.reduce(_to_dict(v), self.by_pos)
        if any(pos < self.k for pos, _ in rem):
            return None
        p = self.ctx.p
        neg = {t: p - c for t, c in rem.items()}
        return _from_dict(self.f.ring, neg, self.n, offset=self.k)


def lift(f: PolyMatrix, v: Sequence[Polynomial]) -> tuple[Polynomial, ...] | None:
    """Solve ``f a = v``; None when ``v`` is outside the column span."""
    _check_element(v, f.ring, f.nrows)
    return _LiftedModule(f).lift(v)


class _EchelonSpan:
    """Incremental row echelon form of sparse vectors over F_p."""

    def __init__(self, p: int, key):
        self.p = p
        self.key = key
        self.rows: dict = {}

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        p = self.p
        out = {}
        while v:
            t = max(v, key=self.key)
            row = self.rows.get(t)
            if row is None:
                out[t] = v.pop(t)
                continue
            c = v[t]
            for s, rc in row.items():
                x = (v.get(s, 0) - c * rc) % p
                if x:
                    v[s] = x
                else:
                    v.pop(s, None)
        return out

    def add(self, v: dict) -> bool:
        """Insert ``v``; False when it already lies in the span."""
        rem = self.reduce(v)
        if not rem:
            return False
        t = max(rem, key=self.key)
        inv = pow(rem[t], -1, self.p)
        self.rows[t] = {s: c * inv % self.p for s, c in rem.items()}
        return True


def _graded_minimal_subset(ring: RingSpec, ambient: FreeModuleSpec,
                           cols: list[tuple[Polynomial, ...]], degrees: list[int]) -> list[int]:
    # a degree-δ generator is redundant iff it lies in the span of the
    # degree-δ multiples of the generators kept so far
    ctx = _context_for(ring, ambient)
    order = sorted((j for j in range(len(cols)) if any(cols[j])), key=lambda j: degrees[j])
    keep: list[int] = []
    dicts = {j: _to_dict(cols[j]) for j in order}
    idx = 0
    while idx < len(order):
        delta = degrees[order[idx]]
        span = _EchelonSpan(ctx.p, ctx.key)
        for j in keep:
            for shift in ring.monomials_of_degree(delta - degrees[j]):
                span.add({(pos, tuple(a + b for a, b in zip(m, shift))): c
                          for (pos, m), c in dicts[j].items()})
        while idx < len(order) and degrees[order[idx]] == delta:
            j = order[idx]
            if span.add(dicts[j]):
                keep.append(j)
            idx += 1
    return keep


def _minimal_subset(ring: RingSpec, ambient: FreeModuleSpec, cols: list[tuple[Polynomial, ...]],
                    degrees: list[int] | None) -> list[int]:
    """Indices of a generating subset; minimal when everything is graded."""
    if degrees is not None and ambient.graded:
        return _graded_minimal_subset(ring, ambient, cols, degrees)
    ctx = _context_for(ring, ambient)
    bb = _Buchberger(ctx)
    keep = []
    for j in range(len(cols)):
        d = _to_dict(cols[j])
        if d and ctx.reduce(d, bb.by_pos):
            keep.append(j)
            bb.add(d)
    return keep


def _column_degree(f_ambient: FreeModuleSpec, col: Sequence[Polynomial]) -> int | None:
    for i, e in enumerate(col):
        if e:
            return e.degree() + f_ambient.degrees[i]
    return None


def minimal_generators(f: PolyMatrix) -> PolyMatrix:
    """Drop redundant columns of ``f``; the result generates the same image."""
    cols = f.columns()
    degrees = list(f.source.degrees) if f.graded else None
    keep = _minimal_subset(f.ring, f.target, cols, degrees)
    return f.submatrix(range(f.nrows), keep)


def syzygies(f: PolyMatrix, minimize: bool = True) -> PolyMatrix:
    """A matrix ``S`` with ``f S = 0`` whose columns generate ``Ker f``.

    When ``f`` is graded the columns of ``S`` are homogeneous, ``S`` carries
    the induced source degrees, and (with ``minimize``) form a minimal
    generating set.
    """
    ring = f.ring
    n = f.ncols
    if n == 0:
        return PolyMatrix.zero(ring, FreeModuleSpec(0, () if f.graded else None),
                               f.source)
    lifted = _LiftedModule(f)
    cols = [_from_dict(ring, d, n, offset=f.nrows) for d in lifted.kernel_elements()]
    degrees = None
    if f.graded:
        degrees = [_column_degree(f.source, c) for c in cols]
    if minimize and cols:
        keep = _minimal_subset(ring, f.source, cols, degrees)
        cols = [cols[j] for j in keep]
        if degrees is not None:
            degrees = [degrees[j] for j in keep]
    src = FreeModuleSpec(len(cols), degrees)
    return PolyMatrix.from_columns(ring, cols, f.source, src)


# resolutions ----------------------------------------------------------------


@dataclass(frozen=True)
class ResolutionData:
    """A finite free complex ``... -> F_2 -> F_1 -> F_0`` (``f_1`` first).

    ``base`` records ``F_0`` when there are no differentials.  ``complete``
    is False when a resolution was cut off before its kernel vanished.
    """

    differentials: tuple[PolyMatrix, ...]
    minimal: bool = False
    base: FreeModuleSpec | None = None
    complete: bool = True
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        diffs = tuple(self.differentials)
        object.__setattr__(self, "differentials", diffs)
        if self.base is None and diffs:
            object.__setattr__(self, "base", diffs[0].target)
        if self.base is None:
            raise ValueError("an empty complex needs an explicit base module")
        if not self.check:
            return
        for lower, upper in zip(diffs, diffs[1:]):
            if lower.ncols != upper.nrows:
                raise DimensionError("adjacent differentials are not composable")
            if not compose(lower, upper).is_zero():
                raise ValueError("adjacent differentials do not compose to zero")
        if self.minimal:
            for d in diffs:
                if any(e and e.is_constant() for row in d.entries for e in row):
                    raise ValueError("a minimal resolution has no unit entries")

    @property
    def ring(self) -> RingSpec | None:
        return self.differentials[0].ring if self.differentials else None

    @property
    def length(self) -> int:
        return len(self.differentials)

    def module(self, k: int) -> FreeModuleSpec:
        if k == 0:
            return self.base
        return self.differentials[k - 1].source

    @property
    def ranks(self) -> tuple[int, ...]:
        """``(rank F_0, rank F_1, ..., rank F_n)``."""
        return (self.base.rank,) + tuple(d.ncols for d in self.differentials)

    @property
    def graded(self) -> bool:
        return all(d.graded for d in self.differentials)

    def __iter__(self):
        return iter(self.differentials)


def hilbert_bound(ring: RingSpec) -> int:
    # a non-minimal presentation over one variable can need two steps
    return max(ring.ngens, 2)


def resolve(presentation: PolyMatrix, max_length: int | None = None) -> ResolutionData:
    """Free resolution by iterated syzygies, starting from ``presentation``.

    Stops when a kernel vanishes, at ``max_length`` differentials, or at the
    syzygy bound of the ring, whichever comes first.
    """
    if max_length is not None and max_length < 0:
        raise ValueError("max_length must be non-negative")
    bound = hilbert_bound(presentation.ring)
    limit = bound if max_length is None else max(1, min(max_length, bound))
    diffs = [presentation]
    complete = False
    while True:
        syz = syzygies(diffs[-1])
        if syz.ncols == 0:
            complete = True
            break
        if len(diffs) >= limit:
            break
        diffs.append(syz)
    return ResolutionData(tuple(diffs), complete=complete, check=False)


def _prune_lists(mats: list[list[list[Polynomial]]], specs: list[FreeModuleSpec], ring: RingSpec,
                 track: bool):
    """Cancel unit entries in place.  ``specs[k]`` is F_k, ``mats[k-1]`` is f_k."""
    p = ring.characteristic
    n0 = specs[0].rank
    alpha = [[ring.one() if a == b else ring.zero() for b in range(n0)] for a in range(n0)] if track else None
    beta_cols = list(range(n0))
    while True:
        found = None
        for k, A in enumerate(mats):
            for i, row in enumerate(A):
                for j, e in enumerate(row):
                    if e and e.is_constant():
                        found = (k, i, j)
                        break
                if found:
                    break
            if found:
                break
        if found is None:
            break
        k, i, j = found
        A = mats[k]
        u = A[i][j].constant_term()
        uinv = pow(u, -1, p)
        pivrow = A[i]
        colj = [A[a][j] for a in range(len(A))]
        if track and k == 0:
            new_alpha = []
            for a in range(len(alpha)):
                if a == i:
                    continue
                if colj[a]:
                    fac = colj[a].scale(uinv)
                    new_alpha.append([x - fac * y for x, y in zip(alpha[a], alpha[i])])
                else:
                    new_alpha.append(alpha[a])
            alpha = new_alpha
            del beta_cols[i]
        newA = []
        for a in range(len(A)):
            if a == i:
                continue
            row = A[a]
            if colj[a]:
                fac = colj[a].scale(uinv)
                newrow = [x - fac * y if y else x for x, y in zip(row, pivrow)]
            else:
                newrow = list(row)
            del newrow[j]
            newA.append(newrow)
        mats[k] = newA
        if k >= 1:
            for row in mats[k - 1]:
                del row[i]
        if k + 1 < len(mats):
            del mats[k + 1][j]
        specs[k] = specs[k].select([a for a in range(specs[k].rank) if a != i])
        specs[k + 1] = specs[k + 1].select([b for b in range(specs[k + 1].rank) if b != j])
    return alpha, beta_cols


def prune_with_comparison(res: ResolutionData):
    """Prune and also return comparison maps ``alpha: F_0 -> F_0'`` and
    ``beta: F_0' -> F_0`` between the old and new presented modules."""
    if not res.base.graded or not res.graded:
        raise ValueError("prune needs graded free modules")
    ring = res.ring
    if ring is None:
        return res, None, None
    mats = [[list(row) for row in d.entries] for d in res.differentials]
    specs = [res.base] + [d.source for d in res.differentials]
    alpha, beta_cols = _prune_lists(mats, specs, ring, track=True)
    diffs = [PolyMatrix(ring, specs[k + 1], specs[k], mats[k], check=False)
             for k in range(len(mats))]
    while diffs and diffs[-1].ncols == 0:
        diffs.pop()
    pruned = ResolutionData(tuple(diffs), minimal=True, base=specs[0],
                            complete=res.complete, check=False)
    n0 = res.base.rank
    alpha_m = PolyMatrix(ring, res.base, specs[0], alpha, check=False)
    one, zero = ring.one(), ring.zero()
    beta_rows = [[one if beta_cols[c] == r else zero for c in range(len(beta_cols))]
                 for r in range(n0)]
    beta_m = PolyMatrix(ring, specs[0], res.base, beta_rows, check=False)
    return pruned, alpha_m, beta_m


def prune(res: ResolutionData) -> ResolutionData:
    """Cancel unit entries of a graded complex, leaving a minimal one."""
    return prune_with_comparison(res)[0]


def is_minimal(res: ResolutionData) -> bool:
    return not any(e and e.is_constant() for d in res.differentials
                   for row in d.entries for e in row)


# dimension --------------------------------------------------------------------


def _independent_dimension(leads: list[tuple[int, ...]], d: int) -> int:
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in leads]
    for size in range(d, -1, -1):
        for subset in combinations(range(d), size):
            s = frozenset(subset)
            if not any(sup <= s for sup in supports):
                return size
    return -1


def quotient_dimension(ideal: IdealData) -> int:
    """Krull dimension of R/I from the leading monomials of a Gröbner basis.

    Returns -1 for the unit ideal.
    """
    d = ideal.ring.ngens
    if ideal.is_zero():
        return d
    gb = ideal_basis(ideal)
    leads = [m for _, m in gb.leading_terms()]
    if any(not any(m) for m in leads):
        return -1
    return _independent_dimension(leads, d)
