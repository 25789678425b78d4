"""Rewriting finite free resolutions so that they end in ``R^3 -> R``.

Every existence step is replaced by a Las Vegas choice: draw generic
coefficients, then certify the required properties exactly (ranks, grades
of Buchsbaum-Eisenbud ideals, kernels by syzygies) and redraw on failure.
A certification failure is raised, never returned.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .free_linalg import FreeModuleSpec, IdealData, PolyMatrix, compose, determinant, dual, matrix_rank
from .groebner import ModuleElement, ResolutionData, column_basis, normal_form, prune, syzygies
from .invariants import (
    ExactnessCertificate,
    PresentedModule,
    TorsionlessCertificate,
    check_exactness,
    check_torsionless,
    minimal_generator_count,
)
from .koszul import koszul_section
from .scalar_poly import DEFAULT_PRIME, RingSpec, random_form


class ConstructionError(Exception):
    pass


class PreconditionError(ConstructionError, ValueError):
    pass


class NotTorsionlessError(ConstructionError):
    pass


class CertificationError(ConstructionError):
    pass


class SearchExhaustedError(ConstructionError):
    def __init__(self, what: str, attempts: int):
        super().__init__(f"{what}: no certified choice in {attempts} attempts; try another seed")
        self.attempts = attempts


@dataclass(frozen=True)
class SearchConfig:
    seed: int = 0
    max_attempts: int = 8
    coefficient_degree_policy: str = "scalar-when-degrees-equal"

    def __post_init__(self):
        if self.max_attempts < 1:
            raise ValueError("max_attempts must be at least 1")
        if self.coefficient_degree_policy != "scalar-when-degrees-equal":
            raise ValueError(f"unknown policy {self.coefficient_degree_policy!r}")

    def rng(self) -> random.Random:
        return random.Random(self.seed)


def _rng(cfg: SearchConfig, rng: random.Random | None) -> random.Random:
    return rng if rng is not None else cfg.rng()


def _coefficient(ring: RingSpec, delta: int | None, rng: random.Random):
    """Generic coefficient raising a generator of degree ``d`` to ``d + delta``."""
    if delta is None or delta == 0:
        return random_form(ring, 0, rng)
    if delta < 0:
        return ring.zero()
    return random_form(ring, delta, rng)


def _require_torsionless(M: PresentedModule, m: int) -> TorsionlessCertificate:
    cert = M.certificate(m)
    if cert is None:
        cert = check_torsionless(M, m)
    if not cert.passed:
        raise NotTorsionlessError(f"module is not certified {m}-torsionless")
    return cert


# Auslander transpose and embeddings ---------------------------------------------


def transpose_module(M: PresentedModule) -> PresentedModule:
    """Cokernel of the dual of M's presentation."""
    return PresentedModule(dual(M.presentation))


@dataclass
class EmbeddingStep:
    embedding: PolyMatrix
    cokernel: PresentedModule
    torsionless_level: int
    certificate: TorsionlessCertificate | None = None


def _image_contains_kernel(f: PolyMatrix, A: PolyMatrix) -> bool:
    """True when ``Ker f`` lies in the column span of ``A``."""
    S = syzygies(f)
    if S.ncols == 0:
        return True
    if A.ncols == 0:
        return False
    gb = column_basis(A)
    return all(normal_form(col, gb).is_zero() for col in S.columns())


def embed_in_free(M: PresentedModule, m: int) -> EmbeddingStep:
    """Embed an m-torsionless ``M`` into a free module with (m-1)-torsionless cokernel.

    With ``A`` presenting ``M`` and ``B`` generating the syzygies of ``A^T``,
    the map ``B^T`` sends ``M`` into a free module; it is injective exactly
    when ``M`` is torsionless, which is verified by comparing ``Ker B^T``
    with the relations of ``M``.
    """
    if m < 1:
        raise PreconditionError("embedding needs m >= 1")
    _require_torsionless(M, m)
    A = M.presentation
    B = syzygies(dual(A))
    E = dual(B)
    if not compose(E, A).is_zero():
        raise CertificationError("embedding does not vanish on the relations")
    if not _image_contains_kernel(E, A):
        raise NotTorsionlessError("the natural map into the bidual has a kernel")
    N = PresentedModule(E)
    cert = check_torsionless(N, m - 1)
    if not cert.passed:
        raise CertificationError(f"cokernel of the embedding is not {m - 1}-torsionless")
    return EmbeddingStep(E, N, m - 1, cert)


# basic elements and rank reduction ------------------------------------------------


@dataclass
class BasicChoice:
    element: ModuleElement
    pivot: int
    compression: PolyMatrix
    quotient: PresentedModule
    certificate: TorsionlessCertificate
    attempts: int


def _pivot(cover: FreeModuleSpec) -> int:
    if cover.degrees is None:
        return cover.rank - 1
    top = max(cover.degrees)
    return max(i for i, d in enumerate(cover.degrees) if d == top)


def find_basic_combination(M: PresentedModule, m: int, cfg: SearchConfig = SearchConfig(),
                           rng: random.Random | None = None) -> BasicChoice:
    """Pick ``x = e_p + Σ a_i e_i`` so that ``M / R g(x)`` is m-torsionless of rank one less.

    ``e_p`` is a generator of largest degree; each ``a_i`` is a random scalar
    when degrees agree and a random form of the compensating degree otherwise.
    """
    rng = _rng(cfg, rng)
    r = M.rank
    if r <= m:
        raise PreconditionError(f"rank {r} must exceed m = {m}")
    _require_torsionless(M, m)
    ring = M.ring
    A = M.presentation
    cover = M.cover
    n = cover.rank
    p = _pivot(cover)
    kept = [i for i in range(n) if i != p]
    one, zero = ring.one(), ring.zero()
    for attempt in range(1, cfg.max_attempts + 1):
        coeffs = []
        for i in range(n):
            if i == p:
                coeffs.append(one)
            else:
                delta = None if cover.degrees is None else cover.degrees[p] - cover.degrees[i]
                coeffs.append(_coefficient(ring, delta, rng))
        rows = []
        for row_index, i in enumerate(kept):
            row = [zero] * n
            row[i] = one
            row[p] = -coeffs[i]
            rows.append(row)
        c = PolyMatrix(ring, cover, cover.select(kept), rows)
        quotient = PresentedModule(compose(c, A))
        if quotient.rank != r - 1:
            continue
        cert = check_torsionless(quotient, m)
        if cert.passed:
            return BasicChoice(ModuleElement(tuple(coeffs)), p, c, quotient, cert, attempt)
    raise SearchExhaustedError("basic element search", cfg.max_attempts)


@dataclass
class RankReduction:
    basis_change: PolyMatrix
    quotient: PresentedModule
    compression: PolyMatrix
    elements: tuple[ModuleElement, ...]
    certificate: TorsionlessCertificate
    attempts_used: int


def reduce_rank(M: PresentedModule, m: int, cfg: SearchConfig = SearchConfig(),
                rng: random.Random | None = None) -> RankReduction:
    """Quotient M by ``rank(M) - m`` generic cover elements, keeping m-torsionlessness.

    Returns the unimodular basis change of the cover, the rank-m quotient
    ``M'``, the projection ``c`` of the cover onto the cover of ``M'`` and
    the quotiented elements.  The independence of their images and the
    isomorphism ``Ker(g) -> Ker(g')`` are verified before returning.
    """
    rng = _rng(cfg, rng)
    r = M.rank
    if r < m:
        raise PreconditionError(f"rank {r} is below m = {m}")
    cert = _require_torsionless(M, m)
    ring = M.ring
    A = M.presentation
    n = M.cover.rank
    kept = list(range(n))
    current = M
    total = PolyMatrix.identity(ring, M.cover)
    chosen: list[tuple[int, tuple]] = []
    attempts = 0
    for _ in range(r - m):
        choice = find_basic_combination(current, m, cfg, rng)
        attempts += choice.attempts
        zero = ring.zero()
        x = [zero] * n
        for local, orig in enumerate(kept):
            x[orig] = choice.element[local]
        chosen.append((kept[choice.pivot], tuple(x)))
        del kept[choice.pivot]
        total = compose(choice.compression, total)
        current = choice.quotient
        cert = choice.certificate

    one, zero = ring.one(), ring.zero()
    pivots = {pivot: x for pivot, x in chosen}
    cols = [pivots[j] if j in pivots else tuple(one if i == j else zero for i in range(n))
            for j in range(n)]
    basis_change = PolyMatrix.from_columns(ring, cols, M.cover, M.cover)
    elements = tuple(ModuleElement(x) for _, x in chosen)
    _verify_reduction(A, basis_change, total, elements, current, m)
    return RankReduction(basis_change, current, total, elements, cert, attempts)


def _verify_reduction(A: PolyMatrix, basis_change: PolyMatrix, compression: PolyMatrix,
                      elements: Sequence[ModuleElement], quotient: PresentedModule, m: int):
    ring = A.ring
    n = A.nrows
    if n:
        det = determinant([list(row) for row in basis_change.entries])
        if not (det and det.is_constant()):
            raise CertificationError("basis change is not unimodular")
    if elements:
        X = PolyMatrix.from_columns(ring, [e.components for e in elements], A.target)
        if matrix_rank(A.ungraded().hstack(X)) != matrix_rank(A) + len(elements):
            raise CertificationError("quotiented elements are not independent in M")
    if quotient.rank != m:
        raise CertificationError(f"quotient has rank {quotient.rank}, expected {m}")
    cA = compose(compression, A)
    if matrix_rank(cA) != matrix_rank(A):
        raise CertificationError("projection changes the rank of the relation module")
    S = syzygies(cA)
    if S.ncols and not compose(A, S).is_zero():
        raise CertificationError("projection does not preserve the kernel of the cover")


def bourbaki_split(M: PresentedModule, m: int, cfg: SearchConfig = SearchConfig(),
                   rng: random.Random | None = None):
    """Free submodule ``F`` of ``M`` with ``M/F`` m-torsionless of rank m.

    Returns the generators of ``F`` (as cover elements) and the quotient.
    """
    red = reduce_rank(M, m, cfg, rng)
    return list(red.elements), red.quotient


# ideals and chains -------------------------------------------------------------------


@dataclass
class IdealRealization:
    ideal: IdealData
    map: PolyMatrix
    embedding: EmbeddingStep
    attempts: int


def _realize(M: PresentedModule, cfg: SearchConfig, rng: random.Random) -> IdealRealization:
    if M.rank != 1:
        raise PreconditionError(f"only rank-1 modules are ideals, got rank {M.rank}")
    step = embed_in_free(M, 1)
    E = step.embedding
    ring = M.ring
    q = E.nrows
    G = E.target
    target_degree = None if G.degrees is None else (min(G.degrees) if q else 0)
    target = FreeModuleSpec(1, None if target_degree is None else (target_degree,))
    for attempt in range(1, cfg.max_attempts + 1):
        if q == 1:
            lam = [ring.one()]
        else:
            lam = [_coefficient(ring, None if G.degrees is None else G.degrees[i] - target_degree, rng)
                   for i in range(q)]
        functional = PolyMatrix(ring, G, target, [lam])
        h = compose(functional, E)
        if h.is_zero():
            continue
        if _image_contains_kernel(h, M.presentation):
            return IdealRealization(IdealData(ring, h.entries[0]), h, step, attempt)
    raise SearchExhaustedError("ideal realization", cfg.max_attempts)


def realize_as_ideal(M: PresentedModule, cfg: SearchConfig = SearchConfig(),
                     rng: random.Random | None = None):
    """An ideal isomorphic to the rank-1 torsionless module ``M``.

    Returns the ideal and the 1-row matrix sending M's generators to it.
    """
    out = _realize(M, cfg, _rng(cfg, rng))
    return out.ideal, out.map


@dataclass
class _Chain:
    maps: list[PolyMatrix]
    certificates: list[TorsionlessCertificate]
    attempts: int
    ideal: IdealData | None


def _pad(E: PolyMatrix, extra: int) -> PolyMatrix:
    if extra <= 0:
        return E
    ring = E.ring
    degs = E.target.degrees
    pad_spec = FreeModuleSpec(extra, None if degs is None else (max(degs, default=0),) * extra)
    return E.vstack(PolyMatrix.zero(ring, E.source, pad_spec))


def _chain(M: PresentedModule, m: int, cfg: SearchConfig, rng: random.Random) -> _Chain:
    if m < 1:
        raise PreconditionError("the chain needs m >= 1")
    _require_torsionless(M, m)
    maps: list[PolyMatrix] = []
    certs: list[TorsionlessCertificate] = []
    attempts = 0
    current, level = M, m
    ideal = None
    while level >= 1:
        if level == 1 and current.rank == 1:
            out = _realize(current, cfg, rng)
            attempts += out.attempts
            certs.append(out.embedding.certificate)
            maps.append(out.map)
            ideal = out.ideal
            break
        step = embed_in_free(current, level)
        certs.append(step.certificate)
        target_rank = current.rank + level - 1
        E = _pad(step.embedding, target_rank - step.embedding.nrows)
        N = PresentedModule(E) if E is not step.embedding else step.cokernel
        red = reduce_rank(N, level - 1, cfg, rng)
        attempts += red.attempts_used
        certs.append(red.certificate)
        maps.append(compose(red.compression, E))
        current, level = red.quotient, level - 1
        if level == 0:
            break
    return _Chain(maps, certs, attempts, ideal)


def corollary1_chain(M: PresentedModule, m: int, cfg: SearchConfig = SearchConfig(),
                     rng: random.Random | None = None) -> ResolutionData:
    """Exact ``0 -> M -> R^(r+m-1) -> R^(2m-3) -> ... -> R^3 -> R``.

    The result lists the maps with the one into ``R`` first; the top map has
    M's cover as its source and kills exactly M's relations.
    """
    chain = _chain(M, m, cfg, _rng(cfg, rng))
    return ResolutionData(tuple(reversed(chain.maps)))


# rewriting resolutions -------------------------------------------------------------


@dataclass
class BrunsResult:
    complex: ResolutionData
    compression: PolyMatrix
    ideal: IdealData | None
    exactness: ExactnessCertificate
    torsionless: tuple[TorsionlessCertificate, ...]
    attempts_used: int
    image_rank: int
    padded: bool

    @property
    def certificates(self):
        return (self.exactness,) + self.torsionless


def _rewrite_tail(tail: Sequence[PolyMatrix], m: int, cfg: SearchConfig,
                  rng: random.Random) -> BrunsResult:
    """Rewrite a resolution ``tail = (f_(m+1), ..., f_n)`` of ``M = Coker f_(m+1)``."""
    tail = list(tail)
    if m < 1 or not tail:
        raise PreconditionError("need m >= 1 and a nonempty resolution of M")
    tail_res = ResolutionData(tuple(tail))
    tail_cert = check_exactness(tail_res)
    if not tail_cert.passed:
        raise PreconditionError(
            f"input is not acyclic above F_{m} (position {tail_cert.failing_position})")
    f = tail[0]
    M = PresentedModule(f)
    cert_M = check_torsionless(M, m, resolution=tail_res)
    if not cert_M.passed:
        raise NotTorsionlessError(f"Coker f_{m + 1} is not {m}-torsionless")
    ring = f.ring
    r = matrix_rank(f)
    u = f.nrows
    attempts = 0
    certs = [cert_M]
    if u <= r + m:
        extra = r + m - u
        degs = f.target.degrees
        target = f.target + FreeModuleSpec(
            extra, None if degs is None else (max(degs, default=0),) * extra)
        one, zero = ring.one(), ring.zero()
        c = PolyMatrix(ring, f.target, target,
                       [[one if i == j else zero for j in range(u)] for i in range(u + extra)])
        new_top = compose(c, f)
        M_prime = PresentedModule(new_top)
        cert = check_torsionless(M_prime, m,
                                 resolution=ResolutionData((new_top,) + tuple(tail[1:])))
        if not cert.passed or M_prime.rank != m:
            raise CertificationError("padded module is not m-torsionless of rank m")
        padded = True
    else:
        red = reduce_rank(M, m, cfg, rng)
        attempts += red.attempts_used
        c = red.compression
        new_top = compose(c, f)
        M_prime = red.quotient
        cert = red.certificate
        padded = False
    certs.append(cert)
    chain = _chain(M_prime, m, cfg, rng)
    attempts += chain.attempts
    certs.extend(chain.certificates)
    diffs = tuple(reversed(chain.maps)) + (new_top,) + tuple(tail[1:])
    rewritten = ResolutionData(diffs)
    exact = check_exactness(rewritten)
    if not exact.passed:
        raise CertificationError(
            f"rewritten complex fails at position {exact.failing_position} ({exact.failure_reason})")
    return BrunsResult(rewritten, c, chain.ideal, exact, tuple(certs), attempts, r, padded)


def brunsify(res: ResolutionData, m: int, cfg: SearchConfig = SearchConfig(),
             rng: random.Random | None = None) -> BrunsResult:
    """Replace ``f_1 .. f_m`` of ``res`` by a chain ending ``R^3 -> R`` (for m >= 2).

    ``M = Coker f_(m+1)`` must be m-torsionless.  The new complex is
    ``F_n -> ... -> F_(m+1) -> R^(r+m) -> R^(2m-1) -> ... -> R^3 -> R`` with
    ``r = rank f_(m+1)``; for m = 1 it ends ``R^(r+1) -> R``.
    """
    n = res.length
    if not 1 <= m < n:
        raise PreconditionError(f"need 1 <= m < length = {n}, got m = {m}")
    return _rewrite_tail(res.differentials[m:], m, cfg, _rng(cfg, rng))


# modules of prescribed projective dimension ---------------------------------------------

_NAMES = ("x", "y", "z", "w", "v", "u", "t", "s")


def default_variables(d: int) -> tuple[str, ...]:
    if d <= len(_NAMES):
        return _NAMES[:d]
    return tuple(f"x{i}" for i in range(1, d + 1))


@dataclass
class PdModule:
    module: PresentedModule
    resolution: ResolutionData
    ring: RingSpec
    rewrite: BrunsResult | None = None
    certificate: TorsionlessCertificate | None = None


def build_pd_module(s: int, m: int, cfg: SearchConfig = SearchConfig(),
                    characteristic: int = DEFAULT_PRIME,
                    rng: random.Random | None = None) -> PdModule:
    """An m-torsionless module of rank m, projective dimension s, at most 2m+1 generators.

    Works over ``F_p`` in ``s + m`` variables.
    """
    if s < 1 or m < 1:
        raise PreconditionError("s and m must be positive")
    rng = _rng(cfg, rng)
    d = s + m
    ring = RingSpec(characteristic, default_variables(d))
    xs = ring.gens()
    if s == 1:
        col = PolyMatrix(ring, FreeModuleSpec(1, (1,)), FreeModuleSpec(d, (0,) * d),
                         [[x] for x in xs])
        M = PresentedModule(col)
        res = ResolutionData((col,))
        cert = check_torsionless(M, m, resolution=res)
        rewrite = None
    else:
        section = koszul_section(xs, 0, s - 1)
        rewrite = _rewrite_tail(section.differentials, m + 1, cfg, rng)
        diffs = rewrite.complex.differentials[m:]
        M = PresentedModule(diffs[0])
        res = ResolutionData(diffs)
        cert = check_torsionless(M, m, resolution=res)
    if not cert.passed:
        raise CertificationError(f"constructed module is not {m}-torsionless")
    if M.rank != m:
        raise CertificationError(f"constructed module has rank {M.rank}, expected {m}")
    if minimal_generator_count(M) > 2 * m + 1:
        raise CertificationError("constructed module needs more than 2m+1 generators")
    if prune(res).length != s:
        raise CertificationError("constructed resolution splits at the top")
    return PdModule(M, res, ring, rewrite, cert)
