"""Independent reference computations used by the tests.  Nothing here calls
into the engine's linear algebra or Groebner code."""
from __future__ import annotations

import itertools
from math import comb

P = 32003


def monomials(n, d):
    for c in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in c:
            e[i] += 1
        yield tuple(e)


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def monomial_quotient_hilbert(n, gens, d):
    """dim_k (k[x_1..x_n]/(monomials))_d by counting standard monomials."""
    return sum(1 for e in monomials(n, d) if not any(divides(g, e) for g in gens))


def poly_hilbert(n, d):
    return comb(n + d - 1, d) if d >= 0 else 0


def rank_mod_p(rows, p=P):
    """Plain Gaussian elimination on dense rows."""
    A = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], p - 2, p)
        A[rank] = [x * inv % p for x in A[rank]]
        for i in range(len(A)):
            if i != rank and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


def koszul_betti(n):
    """Betti numbers of k over the polynomial ring in n variables."""
    return [comb(n, i) for i in range(n + 1)]


def euler_hilbert(betti, ring_hilbert, d):
    """sum_i (-1)^i sum_j beta_{i,j} H_R(d - j)."""
    return sum((-1) ** i * c * ring_hilbert(d - j) for (i, j), c in betti.items())
