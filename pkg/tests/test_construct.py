
import pytest

from freeres import (
    FreeModuleSpec,
    NotTorsionlessError,
    PolyMatrix,
    PreconditionError,
    PresentedModule,
    ResolutionData,
    RingSpec,
    SearchConfig,
    SearchExhaustedError,
    bourbaki_split,
    brunsify,
    build_pd_module,
    check_exactness,
    check_torsionless,
    compose,
    corollary1_chain,
    determinant,
    embed_in_free,
    find_basic_combination,
    grade,
    IdealData,
    koszul_complex,
    matrix_rank,
    minimal_generator_count,
    prune,
    realize_as_ideal,
    reduce_rank,
    resolve,
    syzygies,
    transpose_module,
)

from conftest import free_module, omega3


# Auslander transpose -----------------------------------------------------------


def test_transpose_examples(r3):
    rx = PresentedModule(PolyMatrix.from_rows(r3, [["x"]]))
    assert transpose_module(rx).presentation.entries == ((r3.gen(0),),)
    D = transpose_module(free_module(r3, 3))
    assert D.presentation.nrows == 0 and D.rank == 0
    row = PresentedModule(PolyMatrix.from_rows(r3, [r3.gens()]))
    assert transpose_module(row).presentation.entries == tuple((v,) for v in r3.gens())


# embeddings -----------------------------------------------------------------------


def test_embed_free_module(r3):
    step = embed_in_free(free_module(r3, 2), 1)
    E = step.embedding
    assert (E.nrows, E.ncols) == (2, 2)
    assert determinant([list(r) for r in E.entries]).is_constant()
    assert step.cokernel.rank == 0


def test_embed_omega3(r4):
    step = embed_in_free(omega3(r4), 3)
    assert step.embedding.nrows == 6
    assert step.cokernel.rank == 3 and step.torsionless_level == 2
    assert check_torsionless(step.cokernel, 2).passed


def test_embed_ideal(r3):
    M = PresentedModule(PolyMatrix.from_rows(r3, [["-y"], ["x"]]))
    step = embed_in_free(M, 1)
    assert step.embedding.nrows == 1
    assert set(step.embedding.entries[0]) in ({r3.gen(0), r3.gen(1)}, {-r3.gen(0), -r3.gen(1)})
    assert step.cokernel.rank == 0
    assert grade(IdealData(r3, step.embedding.entries[0])) == 2


def test_embed_requires_torsionless(r3):
    with pytest.raises(NotTorsionlessError):
        embed_in_free(PresentedModule(PolyMatrix.from_rows(r3, [["x"]])), 1)
    with pytest.raises(PreconditionError):
        embed_in_free(free_module(r3, 1), 0)


# basic elements and rank reduction ---------------------------------------------------


def test_basic_combination_free(r3):
    choice = find_basic_combination(free_module(r3, 3), 1, SearchConfig(seed=3))
    assert choice.element.components[choice.pivot] == r3.one()
    assert all(c.is_constant() for c in choice.element.components)
    assert choice.quotient.rank == 2


def test_basic_combination_omega3(r4):
    choice = find_basic_combination(omega3(r4), 2, SearchConfig(seed=1))
    assert all(c.is_constant() and c for c in choice.element.components)
    Q = choice.quotient
    assert Q.rank == 2 and check_torsionless(Q, 2).passed
    col = Q.presentation
    assert (col.nrows, col.ncols) == (3, 1)
    assert all(e.is_homogeneous() and e.degree() == 1 for e in col.column(0))


def test_basic_combination_needs_rank_above_m(r3):
    col = PresentedModule(PolyMatrix.from_rows(r3, [["x"], ["y"], ["z"]]))
    with pytest.raises(PreconditionError):
        find_basic_combination(col, 2)


def test_reduce_rank_base_case(r4):
    M = omega3(r4)
    red = reduce_rank(M, 3)
    assert red.elements == ()
    assert red.quotient.rank == 3 and red.compression.nrows == 4


def test_reduce_rank_omega3_m2(r4):
    red = reduce_rank(omega3(r4), 2, SearchConfig(seed=4))
    assert len(red.elements) == 1
    assert (red.compression.nrows, red.compression.ncols) == (3, 4)
    assert red.quotient.rank == 2
    assert determinant([list(r) for r in red.basis_change.entries]).is_constant()


def test_reduce_rank_free(r3):
    red = reduce_rank(free_module(r3, 4), 1, SearchConfig(seed=2))
    assert len(red.elements) == 3
    assert red.quotient.rank == 1 and red.quotient.num_generators == 1


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_rank_reduction_postconditions(r4, m, seed):
    M = omega3(r4)
    red = reduce_rank(M, m, SearchConfig(seed=seed))
    A = M.presentation
    assert red.quotient.rank == m
    assert check_torsionless(red.quotient, m).passed
    assert determinant([list(r) for r in red.basis_change.entries]).is_constant()
    if red.elements:
        X = PolyMatrix.from_columns(r4, [e.components for e in red.elements], A.target)
        assert matrix_rank(A.ungraded().hstack(X)) == matrix_rank(A) + len(red.elements)
    cA = compose(red.compression, A)
    assert matrix_rank(cA) == matrix_rank(A)
    S = syzygies(cA)
    assert S.ncols == 0 or compose(A, S).is_zero()


def test_bourbaki_split(r3, r4):
    free, Q = bourbaki_split(free_module(r3, 3), 1)
    assert len(free) == 2 and Q.rank == 1
    col = PresentedModule(PolyMatrix.from_rows(r3, [["x"], ["y"], ["z"]]))
    free, Q = bourbaki_split(col, 2)
    assert free == [] and Q is col
    free, Q = bourbaki_split(omega3(r4), 2)
    assert len(free) == 1 and Q.rank == 2
    A = omega3(r4).presentation
    X = PolyMatrix.from_columns(r4, [free[0].components], A.target)
    assert matrix_rank(A.ungraded().hstack(X)) == 2


# ideals and chains -------------------------------------------------------------------


def test_realize_ideal_examples(r3):
    M = PresentedModule(PolyMatrix.from_rows(r3, [["-y"], ["x"]]))
    I, h = realize_as_ideal(M)
    gens = I.generators
    assert len(gens) == 2
    ratio = {g.monic() for g in gens}
    assert ratio == {r3.gen(0), r3.gen(1)}
    I, _ = realize_as_ideal(free_module(r3, 1))
    assert I.generators == (r3.one(),)
    with pytest.raises(PreconditionError):
        realize_as_ideal(free_module(r3, 2))


def test_chain_m1_is_a_single_map(r3):
    M = PresentedModule(PolyMatrix.from_rows(r3, [["-y"], ["x"]]))
    chain = corollary1_chain(M, 1)
    assert chain.length == 1 and chain.differentials[0].nrows == 1


def test_chain_m2_over_three_variables(r3):
    kos = koszul_complex(r3.gens())
    M = PresentedModule(kos.differentials[2])
    chain = corollary1_chain(M, 2)
    assert chain.ranks == (1, 3, 3)
    full = ResolutionData(chain.differentials + (kos.differentials[2],))
    assert check_exactness(full).passed
    assert grade(IdealData(r3, chain.differentials[0].entries[0])) >= 1


@pytest.mark.parametrize("seed", [0, 5])
def test_chain_m3_over_four_variables(r4, seed):
    M = omega3(r4)
    chain = corollary1_chain(M, 3, SearchConfig(seed=seed))
    assert chain.ranks == (1, 3, 5, 4)
    full = ResolutionData(chain.differentials + (M.presentation,))
    assert check_exactness(full).passed


# brunsify --------------------------------------------------------------------------


@pytest.fixture(scope="module")
def flagship():
    ring = RingSpec(32003, ("x", "y", "z", "w"))
    kos = koszul_complex(ring.gens())
    return kos, brunsify(kos, 2, SearchConfig(seed=7))


def test_flagship_complex(flagship):
    kos, out = flagship
    # ranks listed from F_0 upward: R <- R^3 <- R^5 <- R^4 <- R
    assert out.complex.ranks == (1, 3, 5, 4, 1)
    assert tuple(reversed(out.complex.ranks)) == (1, 4, 5, 3, 1)
    assert out.exactness.passed
    assert all(c.passed for c in out.torsionless)
    assert out.image_rank == 3 and not out.padded


def test_flagship_ideal(flagship):
    kos, out = flagship
    assert len(out.ideal.generators) == 3
    row = PolyMatrix.from_rows(out.ideal.ring, [list(out.ideal.generators)])
    minimal = prune(resolve(row))
    assert minimal.ranks[:2] == (1, 3)
    assert minimal.length == 4


def test_flagship_is_graded_and_minimal(flagship):
    kos, out = flagship
    assert out.complex.graded
    pruned = prune(out.complex)
    assert pruned.ranks == out.complex.ranks
    assert pruned.length == kos.length


def test_flagship_rank_bookkeeping(flagship):
    _, out = flagship
    m, r = 2, out.image_rank
    chain_ranks = out.complex.ranks[: m + 1]
    assert chain_ranks == (1, 2 * m - 1, r + m)
    quotient = PresentedModule(out.complex.differentials[m])
    assert quotient.rank == m


def test_brunsify_m1_padding_case(r3):
    kos = koszul_complex(r3.gens())
    out = brunsify(kos, 1)
    assert out.padded
    assert out.complex.ranks == (1, 3, 3, 1)
    assert out.complex.differentials[1:] == kos.differentials[1:]
    assert {g.monic() for g in out.ideal.generators} == set(r3.gens())
    row = PolyMatrix.from_rows(r3, [list(out.ideal.generators)])
    assert prune(resolve(row)).length == 3


def test_brunsify_preconditions(r3):
    kos = koszul_complex(r3.gens())
    with pytest.raises(PreconditionError):
        brunsify(kos, 0)
    with pytest.raises(PreconditionError):
        brunsify(kos, 3)
    x = PolyMatrix.from_rows(r3, [["x"]])
    zero = PolyMatrix.zero(r3, FreeModuleSpec(1, (1,)), x.source)
    with pytest.raises(PreconditionError):
        brunsify(ResolutionData((x, zero, PolyMatrix.zero(r3, FreeModuleSpec(1, (1,)), zero.source))), 1)


def _small_field_column_module():
    # scalars are nonzero, so over F_3 each coefficient is 1 or 2; the two
    # constant choices leave a grade-1 column, the other six succeed
    ring = RingSpec(3, ("x", "y", "z"))
    return PresentedModule(PolyMatrix.from_rows(ring, [["x"], ["x"], ["x"], ["y"]]))


def test_search_exhaustion_is_reported():
    M = _small_field_column_module()
    with pytest.raises(SearchExhaustedError, match="seed") as info:
        find_basic_combination(M, 1, SearchConfig(seed=2, max_attempts=1))
    assert info.value.attempts == 1
    choice = find_basic_combination(M, 1, SearchConfig(seed=2, max_attempts=8))
    assert choice.attempts > 1
    assert check_torsionless(choice.quotient, 1).passed


def test_retries_cover_small_fields():
    M = _small_field_column_module()
    outcomes = set()
    for seed in range(20):
        try:
            find_basic_combination(M, 1, SearchConfig(seed=seed, max_attempts=1))
            outcomes.add("ok")
        except SearchExhaustedError:
            outcomes.add("exhausted")
    assert outcomes == {"ok", "exhausted"}


def test_determinism(r4):
    kos = koszul_complex(r4.gens())
    a = brunsify(kos, 2, SearchConfig(seed=11))
    b = brunsify(kos, 2, SearchConfig(seed=11))
    assert a.complex.differentials == b.complex.differentials
    assert a.ideal == b.ideal and a.attempts_used == b.attempts_used
    assert a.exactness == b.exactness


# modules of prescribed projective dimension -------------------------------------------


@pytest.mark.parametrize("m", [1, 2, 3])
def test_pd_module_s1(m):
    out = build_pd_module(1, m)
    ring = out.ring
    assert ring.ngens == m + 1
    assert out.module.presentation.entries == tuple((v,) for v in ring.gens())
    assert out.module.rank == m
    assert prune(out.resolution).length == 1


def test_pd_module_burch_case():
    out = build_pd_module(2, 1, SearchConfig(seed=0))
    M = out.module
    assert out.ring.ngens == 3
    assert M.rank == 1 and minimal_generator_count(M) == 3
    assert check_torsionless(M, 1).passed
    assert prune(out.resolution).length == 2
    I, _ = realize_as_ideal(M)
    row = PolyMatrix.from_rows(out.ring, [list(I.generators)])
    assert prune(resolve(row)).length == 3


def test_pd_module_s2_m2():
    out = build_pd_module(2, 2, SearchConfig(seed=1))
    M = out.module
    assert M.rank == 2 and minimal_generator_count(M) <= 5
    assert check_torsionless(M, 2).passed
    assert prune(out.resolution).length == 2


def test_pd_module_rejects_bad_input():
    with pytest.raises(PreconditionError):
        build_pd_module(0, 1)
