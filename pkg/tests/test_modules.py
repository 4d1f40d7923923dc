import random

from lindef.groebner import GradedRing
from lindef.modules import (GradedModule, Ideal, colon, contains_module, equal, intersect,
                            maximal_ideal, plus, power_times, quotient_by, residue_field, times,
                            truncate_component)
from oracles import monomial_quotient_hilbert


def _S(n=3):
    return GradedRing(["x", "y", "z"][:n])


def test_monomial_intersection_and_colon():
    S = _S()
    I = Ideal(S, ["x^2", "x*y"])
    J = Ideal(S, ["y^2", "x*z"])
    assert equal(intersect(I, J), Ideal(S, ["x*y^2", "x^2*z", "x*y*z"]))
    assert equal(colon(I, "x"), Ideal(S, ["x", "y"]))
    assert equal(colon(I, "y"), Ideal(S, ["x"]))
    assert equal(colon(Ideal(S, ["x^2"]), "x^2"), Ideal(S, ["1"]))


def test_quotient_hilbert_matches_counting():
    S = _S()
    gens = [(2, 0, 0), (0, 1, 1), (0, 3, 0)]
    I = Ideal(S, ["x^2", "y*z", "y^3"])
    Q = I.quotient_module()
    for d in range(6):
        assert Q.hilbert(d) == monomial_quotient_hilbert(3, gens, d)


def test_hilbert_additive_on_quotients():
    rng = random.Random(3)
    R = GradedRing(["x", "y", "z"], ["x*y"])
    for _ in range(5):
        P = GradedModule.free(R, (0, 1))
        M = GradedModule(R, (0, 1), [(2, {(0, (0, 1, 1)): rng.randint(1, 9), (1, (0, 0, 1)): 1}),
                                     (3, {(0, (0, 0, 3)): 1})])
        N = quotient_by(P, M)
        for d in range(6):
            assert P.hilbert(d) == M.hilbert(d) + N.hilbert(d)


def test_maximal_ideal_powers_and_products():
    S = _S()
    m = maximal_ideal(S)
    m2 = power_times(1, m)
    assert [m2.hilbert(d) for d in range(4)] == [0, 0, 6, 10]
    assert equal(times(m, m), m2)
    assert contains_module(m, m2) and not contains_module(m2, m)
    k = residue_field(S)
    assert [k.hilbert(d) for d in range(3)] == [1, 0, 0]


def test_plus_and_truncation():
    S = _S(2)
    I = plus(Ideal(S, ["x^2"]), Ideal(S, ["y^3"]))
    assert equal(I, Ideal(S, ["x^2", "y^3"]))
    T = truncate_component(I, 2)
    assert equal(T, Ideal(S, ["x^2"]))


def test_minimal_generators_drop_redundancy():
    S = _S()
    I = Ideal(S, ["x", "x*y", "y^2", "x*z + y^2"])
    assert sorted(d for d, _ in I.minimal_gens()) == [1, 2]


def test_contains_and_membership_modulo_relations():
    R = GradedRing(["x", "y"])
    M = GradedModule.coker(R, (0, 0), [["x", "y"]])
    # e_1 * x = -e_2 * y in M, so x*e_1 lies in the submodule generated by y*e_2
    sub = GradedModule(R, (0, 0), [(1, {(1, (0, 1)): 1})], M.rels)
    assert sub.contains((1, {(0, (1, 0)): 1}))
    assert not sub.contains((1, {(0, (0, 1)): 1}))
