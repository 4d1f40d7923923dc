import random

import pytest

from lindef.groebner import GradedRing
from lindef.modules import GradedModule, Ideal, residue_field
from lindef.resolution import betti, betti_json, invariants, resolve, syzygy_module
from oracles import euler_hilbert, koszul_betti, poly_hilbert


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_koszul_complex_ranks(n):
    S = GradedRing(["a", "b", "c", "d"][:n])
    res = resolve(residue_field(S), n + 1)
    assert res.ranks()[:n + 1] == koszul_betti(n)
    assert res.terminated
    assert all(a == i for i in range(n + 1) for a in res.shifts_at(i))
    assert res.is_complex() and res.is_minimal() and res.is_exact()


@pytest.mark.parametrize("seed", range(6))
def test_euler_characteristic_matches_hilbert(seed):
    rng = random.Random(seed)
    S = GradedRing(["x", "y", "z"])
    mons = {2: ["x^2", "y^2", "z^2", "x*y", "y*z", "x*z"], 3: ["x^3", "x*y*z", "y^2*z", "z^3"]}
    gens = []
    for _ in range(rng.randint(2, 4)):
        a, b = rng.sample(mons[rng.choice([2, 3])], 2)
        gens.append(f"{a} + {rng.randint(0, 9)}*{b}")
    Q = Ideal(S, gens).quotient_module()
    res = resolve(Q, 4)
    assert res.terminated
    bt = betti(res).entries
    for d in range(8):
        assert euler_hilbert(bt, lambda e: poly_hilbert(3, e), d) == Q.hilbert(d)


def test_periodic_resolution_over_xy():
    R = GradedRing(["x", "y"], ["x*y"])
    res = resolve(residue_field(R), 4)
    assert res.ranks() == [1, 2, 2, 2, 2]
    assert not res.terminated
    for i in range(1, 5):
        assert set(res.shifts_at(i)) == {i}
    assert res.is_complex() and res.is_minimal()


def test_hypersurface_x2():
    R = GradedRing(["x"], ["x^2"])
    res = resolve(residue_field(R), 5)
    assert res.ranks() == [1] * 6


def test_invariants_of_two_quadrics():
    S = GradedRing(["x", "y", "z", "t"])
    res = resolve(Ideal(S, ["x*y", "z*t"]), 4)
    inv = invariants(res)
    assert inv.projective_dimension == (1, "exact")
    assert inv.regularity == (3, "exact")
    j = betti_json(res)
    assert j["betti"] == {"0,2": 2, "1,4": 1}


def test_syzygy_module_of_free_presentation():
    S = GradedRing(["x", "y", "z"])
    M = GradedModule.coker(S, (0,), [["x"], ["y"], ["z"]])
    res = resolve(M, 3)
    Om = syzygy_module(res, 1)
    assert sorted(d for d, _ in Om.minimal_gens()) == [1, 1, 1]
    res2 = resolve(Om, 2)
    assert res2.ranks()[:3] == [3, 3, 1]
