import random

import pytest

from lindef.groebner import GradedRing
from lindef.linalg import (extend_basis, kernel_linear, mat, nullspace_cols, rank_rows,
                           rref_rows)
from lindef.modules import kernel
from oracles import rank_mod_p

P = 32003


def _sparse(rows):
    return [{j: c for j, c in enumerate(r) if c} for r in rows]


@pytest.mark.parametrize("seed", range(8))
def test_rank_against_naive_elimination(seed):
    rng = random.Random(seed)
    n, m = rng.randint(1, 9), rng.randint(1, 9)
    base = [[rng.randint(-3, 3) for _ in range(m)] for _ in range(rng.randint(1, n))]
    # rows in the span of a few base rows, so ranks are often deficient
    rows = [[sum(rng.randint(0, 2) * b[j] for b in base) for j in range(m)] for _ in range(n)]
    assert rank_rows(_sparse([[x % P for x in r] for r in rows]), m, P) == rank_mod_p(rows)


def test_rref_pivots_and_nullspace():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    red, piv = rref_rows(_sparse(rows), 3, P)
    assert piv == [0, 1]
    A = mat(rows, 3, P)
    ker = nullspace_cols(A)
    assert len(ker) == 1
    for r in rows:
        assert sum(a * b for a, b in zip(r, ker[0])) % P == 0


def test_extend_basis_complement():
    span = [{0: 1}]
    cand = [{0: 1, 1: 1}, {0: 2}, {2: 5}]
    ext = extend_basis(span, cand, 3, P)
    assert len(ext) == 2
    assert rank_rows(span + ext, 3, P) == 3


def test_kernel_routes_agree_on_artinian_ring():
    R = GradedRing(["x", "y", "z", "t"], ["x^2", "x*y", "y^2", "z^2", "z*t", "t^2"])
    # columns of the presentation matrix y z / x+3t -t / t x+t
    cols = [{(0, (0, 1, 0, 0)): 1, (1, (0, 0, 1, 0)): 1},
            {(0, (1, 0, 0, 0)): 1, (0, (0, 0, 0, 1)): 3, (1, (0, 0, 0, 1)): P - 1},
            {(0, (0, 0, 0, 1)): 1, (1, (1, 0, 0, 0)): 1, (1, (0, 0, 0, 1)): 1}]
    g = kernel(R, (1, 1, 1), (0, 0), cols, method="groebner")
    lin = kernel(R, (1, 1, 1), (0, 0), cols, method="linear")
    assert sorted(d for d, _ in g) == sorted(d for d, _ in lin)
    assert kernel_linear(R, (1, 1, 1), (0, 0), cols, 3) == lin
