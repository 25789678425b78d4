from math import comb

import pytest

from freeres import (
    RingSpec,
    be_ideal,
    check_exactness,
    compose,
    grade,
    koszul_complex,
    koszul_differential,
    koszul_section,
    matrix_rank,
)
from freeres.koszul import exterior_basis

VARS = ("x", "y", "z", "w", "v")


def ring(n):
    return RingSpec(32003, VARS[:n])


def test_single_element():
    R = ring(1)
    k = koszul_complex(R.gens())
    assert k.length == 1 and k.differentials[0].entries == ((R.gen(0),),)


@pytest.mark.parametrize("n,ranks", [(3, (1, 3, 3, 1)), (4, (1, 4, 6, 4, 1))])
def test_ranks(n, ranks):
    k = koszul_complex(ring(n).gens())
    assert k.ranks == ranks


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_differential_ranks_are_binomial(n):
    xs = ring(n).gens()
    for k in range(1, n + 1):
        assert matrix_rank(koszul_differential(xs, k)) == comb(n - 1, k - 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_exact_with_full_grade(n):
    kos = koszul_complex(ring(n).gens())
    assert check_exactness(kos).passed
    assert all(grade(be_ideal(d)) == n for d in kos.differentials)


def test_generators_of_wedge_k_sit_in_degree_k():
    kos = koszul_complex(ring(3).gens())
    for k in range(4):
        assert set(kos.module(k).degrees) == {k}


def test_section_examples():
    R = ring(3)
    s = koszul_section(R.gens(), 0, 1)
    assert s.length == 1
    assert s.differentials[0].entries == tuple((v,) for v in R.gens())
    s5 = koszul_section(ring(5).gens(), 0, 2)
    # listed from the bottom exterior power up
    assert tuple(reversed(s5.ranks)) == (1, 5, 10)
    assert all(compose(a, b).is_zero() for a, b in zip(s5.differentials, s5.differentials[1:]))


@pytest.mark.parametrize("lo,hi", [(-1, 2), (2, 2), (3, 2), (0, 4)])
def test_section_bounds(lo, hi):
    with pytest.raises(ValueError):
        koszul_section(ring(3).gens(), lo, hi)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_full_section_is_the_koszul_complex_up_to_signed_permutation(n):
    xs = ring(n).gens()
    kos = koszul_complex(xs)
    sec = koszul_section(xs, 0, n)
    assert sec.ranks == kos.ranks
    assert check_exactness(sec).passed
    # complementing index subsets identifies the two complexes entry by entry up to sign
    full = frozenset(range(n))
    for j in range(1, n + 1):
        d, s = kos.differentials[j - 1], sec.differentials[j - 1]
        rows_k = exterior_basis(n, j - 1)
        cols_k = exterior_basis(n, j)
        rows_s = {frozenset(S): i for i, S in enumerate(exterior_basis(n, n - j + 1))}
        cols_s = {frozenset(S): i for i, S in enumerate(exterior_basis(n, n - j))}
        for a, T in enumerate(rows_k):
            for b, S in enumerate(cols_k):
                e = d.entries[a][b]
                f = s.entries[rows_s[full - frozenset(T)]][cols_s[full - frozenset(S)]]
                assert e == f or e == -f


def test_empty_or_zero_sequences_rejected():
    R = ring(2)
    with pytest.raises(ValueError):
        koszul_complex(())
    with pytest.raises(ValueError):
        koszul_complex((R.gen(0), R.zero()))
