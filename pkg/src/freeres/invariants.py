"""Grade, Buchsbaum-Eisenbud ideals, and exactness / torsionless certificates.

Grades are computed as ``d - dim R/I``, which is valid because the ambient
polynomial ring is Cohen-Macaulay.  A complex ``0 -> F_n -> ... -> F_0`` is
certified exact when ranks are additive at each ``F_k`` and
``grade I(f_k) >= k``.  A module with free resolution ``g_1, g_2, ...`` is
certified m-torsionless when ``grade I(g_i) >= m + i`` for every ``i``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .free_linalg import IdealData, PolyMatrix, iter_minors, matrix_rank, minor_ideal
from .groebner import ResolutionData, is_minimal, prune, quotient_dimension, resolve


@functools.total_ordering
class _Infinity:
    """Grade of the unit ideal; compares above every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("grade-infinity")

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"


INFINITY = _Infinity()


def grade_to_json(g):
    return "inf" if g is INFINITY else g


def grade(ideal: IdealData):
    """Grade of ``ideal``: an int, or ``INFINITY`` for the unit ideal."""
    if ideal.is_zero():
        return 0
    dim = quotient_dimension(ideal)
    if dim < 0:
        return INFINITY
    return ideal.ring.ngens - dim


def be_ideal(f: PolyMatrix) -> IdealData:
    """Ideal of ``rank(f)``-minors; the unit ideal when ``f`` has rank 0."""
    r = matrix_rank(f)
    if r == 0:
        return IdealData.unit(f.ring)
    return minor_ideal(f, r)


def grade_lower_bound(f: PolyMatrix, required: int, batch: int = 8):
    """Grade of a growing subset of the ``rank(f)``-minors, stopping early.

    Returns the grade of the first subideal reaching ``required`` (or of the
    full ideal).  Grade is monotone, so the value is a lower bound for
    ``grade(be_ideal(f))``.
    """
    r = matrix_rank(f)
    if r == 0:
        return INFINITY
    gens = []
    g = 0
    for m in iter_minors(f, r):
        if m and m not in gens:
            gens.append(m)
            if len(gens) % batch == 0:
                g = grade(IdealData(f.ring, tuple(gens)))
                if g >= required:
                    return g
    return grade(IdealData(f.ring, tuple(gens)))


# certificates ------------------------------------------------------------------


@dataclass(frozen=True)
class PositionRecord:
    position: int
    rank_module: int
    rank_map: int
    rank_next: int
    grade: object

    @property
    def rank_ok(self) -> bool:
        return self.rank_map + self.rank_next == self.rank_module

    @property
    def grade_ok(self) -> bool:
        return self.grade >= self.position

    def to_json(self) -> dict:
        return {
            "position": self.position,
            "rank_F": self.rank_module,
            "rank_f": self.rank_map,
            "rank_f_next": self.rank_next,
            "grade": grade_to_json(self.grade),
            "required_grade": self.position,
            "rank_ok": self.rank_ok,
            "grade_ok": self.grade_ok,
        }


@dataclass(frozen=True)
class ExactnessCertificate:
    records: tuple[PositionRecord, ...]
    failing_position: int | None = field(init=False)

    def __post_init__(self):
        bad = next((r.position for r in self.records if not (r.rank_ok and r.grade_ok)), None)
        object.__setattr__(self, "failing_position", bad)

    @property
    def passed(self) -> bool:
        return self.failing_position is None

    @property
    def failure_reason(self) -> str | None:
        if self.passed:
            return None
        rec = self.records[self.failing_position - 1]
        return "rank additivity" if not rec.rank_ok else "grade bound"

    @property
    def grades(self) -> tuple:
        return tuple(r.grade for r in self.records)

    def to_json(self) -> dict:
        return {
            "kind": "exactness",
            "verdict": "pass" if self.passed else "fail",
            "failing_position": self.failing_position,
            "failure_reason": self.failure_reason,
            "positions": [r.to_json() for r in self.records],
        }


def check_exactness(complex: ResolutionData) -> ExactnessCertificate:
    """Acyclicity test for ``0 -> F_n -> ... -> F_1 -> F_0``."""
    diffs = complex.differentials
    ranks = [matrix_rank(d) for d in diffs] + [0]
    records = []
    for k, d in enumerate(diffs, start=1):
        g = grade(be_ideal(d))
        records.append(PositionRecord(k, d.ncols, ranks[k - 1], ranks[k], g))
    return ExactnessCertificate(tuple(records))


@dataclass(frozen=True)
class TorsionlessStep:
    index: int
    rank_map: int
    grade: object
    required: int

    @property
    def ok(self) -> bool:
        return self.grade >= self.required

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "rank_g": self.rank_map,
            "grade": grade_to_json(self.grade),
            "required_grade": self.required,
            "ok": self.ok,
        }


@dataclass(frozen=True)
class TorsionlessCertificate:
    m: int
    resolution: ResolutionData
    steps: tuple[TorsionlessStep, ...]
    resolution_complete: bool = True

    @property
    def passed(self) -> bool:
        if self.m == 0:
            return True
        return self.resolution_complete and all(s.ok for s in self.steps)

    @property
    def failing_index(self) -> int | None:
        return next((s.index for s in self.steps if not s.ok), None)

    def to_json(self) -> dict:
        return {
            "kind": "torsionless",
            "m": self.m,
            "verdict": "pass" if self.passed else "fail",
            "failing_index": self.failing_index,
            "resolution_ranks": list(self.resolution.ranks),
            "resolution_complete": self.resolution_complete,
            "steps": [s.to_json() for s in self.steps],
        }


class PresentedModule:
    """The cokernel of ``presentation``, with lazily cached invariants."""

    def __init__(self, presentation: PolyMatrix):
        self.presentation = presentation
        self._rank = None
        self._resolution = None
        self._certificates: dict[int, TorsionlessCertificate] = {}

    @property
    def ring(self):
        return self.presentation.ring

    @property
    def cover(self):
        return self.presentation.target

    @property
    def num_generators(self) -> int:
        return self.presentation.nrows

    @property
    def rank(self) -> int:
        if self._rank is None:
            self._rank = self.presentation.nrows - matrix_rank(self.presentation)
        return self._rank

    @property
    def graded(self) -> bool:
        return self.presentation.graded

    def resolution(self) -> ResolutionData:
        if self._resolution is None:
            res = resolve(self.presentation)
            if res.graded:
                res = prune(res)
            self._resolution = res
        return self._resolution

    def set_resolution(self, res: ResolutionData) -> None:
        if not res.differentials or res.differentials[0] != self.presentation:
            raise ValueError("a resolution must start with the module's presentation")
        self._resolution = res

    def certificate(self, m: int) -> TorsionlessCertificate | None:
        return self._certificates.get(m)

    def remember(self, cert: TorsionlessCertificate) -> None:
        self._certificates[cert.m] = cert

    def certified(self, m: int) -> bool:
        """True when some cached certificate of level >= m passes."""
        return any(c.passed and c.m >= m for c in self._certificates.values()) or m == 0

    def __repr__(self):
        return f"PresentedModule(coker of {self.presentation.nrows}x{self.presentation.ncols})"


def torsionless_from_resolution(res: ResolutionData, m: int) -> TorsionlessCertificate:
    steps = []
    if m > 0:
        for i, g in enumerate(res.differentials, start=1):
            steps.append(TorsionlessStep(i, matrix_rank(g), grade(be_ideal(g)), m + i))
    return TorsionlessCertificate(m, res, tuple(steps), res.complete)


def check_torsionless(M: PresentedModule, m: int,
                      resolution: ResolutionData | None = None) -> TorsionlessCertificate:
    """Decide whether ``M`` is m-torsionless from a free resolution of it.

    Uses ``resolution`` when given (it must start with M's presentation),
    otherwise M's own resolution, pruned when graded.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    if resolution is not None:
        M.set_resolution(resolution)
    cert = torsionless_from_resolution(M.resolution(), m)
    M.remember(cert)
    return cert


def minimal_generator_count(M: PresentedModule) -> int:
    """Number of minimal generators of a graded module."""
    if not M.graded:
        raise ValueError("minimal generator counts need a graded presentation")
    pruned = prune(ResolutionData((M.presentation,), check=False))
    return pruned.base.rank


def projective_dimension(M: PresentedModule) -> int:
    """Length of the minimal resolution of a graded module."""
    res = M.resolution()
    if not is_minimal(res):
        raise ValueError("projective dimension needs a graded module")
    return res.length
