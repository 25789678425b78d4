import random

import pytest

from freeres import (
    DimensionError,
    FreeModuleSpec,
    IdealData,
    PolyMatrix,
    bareiss_rank,
    compose,
    dual,
    koszul_differential,
    matrix_rank,
    minor_ideal,
)
from freeres.free_linalg import iter_minors

from conftest import random_matrix
from oracles import low_rank_matrix, max_evaluation_rank, seeded_matrix_corpus


def test_identity_law(r3):
    f = PolyMatrix.from_rows(r3, [["x", "y^2"], ["z", "0"]])
    assert compose(PolyMatrix.identity(r3, f.target), f).entries == f.entries


def test_koszul_composites_vanish(r3_101):
    xs = r3_101.gens()
    assert compose(koszul_differential(xs, 1), koszul_differential(xs, 2)).is_zero()


def test_koszul_relation(r3):
    row = PolyMatrix.from_rows(r3, [["x", "y"]])
    col = PolyMatrix.from_rows(r3, [["y"], ["-x"]])
    prod = compose(row, col)
    assert (prod.nrows, prod.ncols) == (1, 1) and prod.is_zero()


def test_compose_dimension_mismatch(r3):
    with pytest.raises(DimensionError):
        compose(PolyMatrix.from_rows(r3, [["x", "y"]]), PolyMatrix.from_rows(r3, [["x"]]))


def test_dual(r3):
    row = PolyMatrix.from_rows(r3, [["x", "y", "z"]])
    d = dual(row)
    assert (d.nrows, d.ncols) == (3, 1)
    assert d.source.degrees == (0,) and d.target.degrees == (-1, -1, -1)
    assert dual(dual(row)).entries == row.entries
    z = PolyMatrix.zero(r3, FreeModuleSpec(2), FreeModuleSpec(3))
    assert dual(z).is_zero() and (dual(z).nrows, dual(z).ncols) == (2, 3)


def test_grading_is_validated(r3):
    with pytest.raises(ValueError):
        PolyMatrix(r3, FreeModuleSpec(1, (1,)), FreeModuleSpec(1, (0,)), [[r3.parse("x^2")]])


def test_rank_examples(r3):
    xs = r3.gens()
    assert matrix_rank(koszul_differential(xs, 1)) == 1
    assert matrix_rank(PolyMatrix.zero(r3, FreeModuleSpec(3), FreeModuleSpec(2))) == 0
    d2 = koszul_differential(xs, 2)
    assert matrix_rank(d2) == bareiss_rank(d2) == 2
    assert max_evaluation_rank(d2) == 2


def test_minor_ideal_examples(r3):
    xs = r3.gens()
    assert set(minor_ideal(koszul_differential(xs, 1), 1).generators) == set(xs)
    assert minor_ideal(PolyMatrix.identity(r3, 2), 2).generators == (r3.one(),)
    squares = {r3.parse(t) for t in ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]}
    got = {g.monic() for g in minor_ideal(koszul_differential(xs, 2), 2).generators}
    assert got == squares
    with pytest.raises(ValueError):
        minor_ideal(koszul_differential(xs, 1), 2)


def test_bareiss_rank_matches_evaluation_rank():
    for f in seeded_matrix_corpus(100, 7):
        assert bareiss_rank(f) == max_evaluation_rank(f) == matrix_rank(f)


def test_rank_invariants():
    mats = seeded_matrix_corpus(40, 11)
    for f in mats:
        r = matrix_rank(f)
        assert r == matrix_rank(dual(f))
        if r:
            assert not minor_ideal(f, r).is_zero()
        if r < min(f.nrows, f.ncols):
            assert minor_ideal(f, r + 1).is_zero()
    ring = mats[0].ring
    rng = random.Random(3)
    for _ in range(25):
        n, k, m = (rng.randint(1, 4) for _ in range(3))
        f = random_matrix(ring, rng, n, k, 1).ungraded()
        g = low_rank_matrix(ring, rng, k, m, rng.randint(0, min(k, m)))
        assert matrix_rank(compose(f, g)) <= min(matrix_rank(f), matrix_rank(g))


def test_minor_enumeration_order(r3):
    f = PolyMatrix.from_rows(r3, [["x", "y", "z"], ["y", "z", "x"]])
    minors = list(iter_minors(f, 2))
    assert minors[0] == r3.parse("x*z-y^2")
    assert len(minors) == 3


def test_ideal_data_normalises(r3):
    x = r3.gen(0)
    I = IdealData(r3, (x, r3.zero(), x))
    assert I.generators == (x,)
    assert IdealData(r3, ()).is_zero()
