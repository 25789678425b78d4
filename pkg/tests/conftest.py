import random

import pytest

from freeres import FreeModuleSpec, PolyMatrix, PresentedModule, RingSpec


@pytest.fixture
def r3():
    return RingSpec(32003, ("x", "y", "z"))


@pytest.fixture
def r3_101():
    return RingSpec(101, ("x", "y", "z"))


@pytest.fixture
def r4():
    return RingSpec(32003, ("x", "y", "z", "w"))


def free_module(ring, rank):
    """R^rank presented by the empty matrix."""
    return PresentedModule(PolyMatrix.zero(ring, FreeModuleSpec(0, ()), FreeModuleSpec(rank, (0,) * rank)))


def omega3(ring):
    """Coker of the column of variables, the top syzygy of the residue field."""
    return PresentedModule(PolyMatrix.from_rows(ring, [[v] for v in ring.gens()]))


def random_poly(ring, rng, max_degree=2, terms=3):
    out = ring.zero()
    for _ in range(terms):
        d = rng.randint(0, max_degree)
        mons = ring.monomials_of_degree(d)
        out = out + ring.poly({rng.choice(mons): rng.randrange(ring.characteristic)})
    return out


def random_matrix(ring, rng, nrows, ncols, max_degree=2):
    rows = [[random_poly(ring, rng, max_degree) for _ in range(ncols)] for _ in range(nrows)]
    return PolyMatrix.from_rows(ring, rows, ncols=ncols)


def seeded(seed):
    return random.Random(seed)


def random_linear_matrix(ring, rng, nrows, ncols):
    """Matrix of random linear forms, graded with all entries of degree 1."""
    from freeres import random_form

    return PolyMatrix.from_rows(ring, [[random_form(ring, 1, rng) for _ in range(ncols)]
                                       for _ in range(nrows)])
