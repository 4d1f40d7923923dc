import pytest

from lindef.core import StructuralError
from lindef.groebner import GradedRing
from lindef.lindefect import EXACT, tor_dim
from lindef.modules import GradedModule, Ideal, maximal_ideal, residue_field
from lindef.resolution import apply_map, resolve, syzygy_module
from lindef.structure import (HOLDS, INCONCLUSIVE, VIOLATED, FiltrationSpec, Iv,
                              ShortExactSequence, analyze_ses, change_of_rings,
                              conca_gen_filtration, eq_verdict, le_verdict, lift_chain_map,
                              lift_generators, linear_quotients, pure_condition,
                              ring_koszul_filtration, small_condition, three_ideals, tor_k_rank,
                              verify_koszul_filtration)


def test_interval_verdicts():
    assert le_verdict(Iv(1, 1), Iv(2, 2)) == HOLDS
    assert le_verdict(Iv(3, 3), Iv(2, 2)) == VIOLATED
    assert le_verdict(Iv(1), Iv(2, 2)) == INCONCLUSIVE
    assert le_verdict(Iv(3), Iv(2, 2)) == VIOLATED
    assert eq_verdict(Iv(2, 2), Iv(2, 2)) == HOLDS
    assert eq_verdict(Iv(2), Iv(0, 0)) == VIOLATED
    assert eq_verdict(Iv(2), Iv(2, 2)) == INCONCLUSIVE


def _chain(M, P, h):
    rM, rP = resolve(M, h), resolve(P, h)
    phi0 = lift_generators(M, list(zip(rM.shifts_at(0), rM.maps[0])), P,
                           list(zip(rP.shifts_at(0), rP.maps[0])))
    return rM, rP, lift_chain_map(rM, rP, phi0, h)


def test_lifted_chain_map_commutes():
    R = GradedRing(["x", "y"], ["x*y"])
    M, P = Ideal(R, ["x^3", "y^2"]), Ideal(R, ["x^2", "y^2"])
    rM, rP, phi = _chain(M, P, 4)
    for i in range(1, 5):
        for k, col in enumerate(rM.differential(i)):
            left = apply_map(R, rP.differential(i), phi[i][k])
            right = apply_map(R, phi[i - 1], col)
            assert left == right


def test_periodic_tor_dimensions_and_kernel():
    R = GradedRing(["x", "y"], ["x*y"])
    M, P = Ideal(R, ["x^3", "y^2"]), Ideal(R, ["x^2", "y^2"])
    rM, rP, phi = _chain(M, P, 6)
    for i in (2, 3):
        assert sum(tor_dim(rP, 2 * i, 1, d) for d in range(2 * i, 2 * i + 4)) == 2
        assert tor_k_rank(rM, rP, phi[2 * i], 2 * i) < rM.rank(2 * i)


def test_identity_induces_identity_on_tor():
    S = GradedRing(["x", "y", "z"])
    I = Ideal(S, ["x^2", "y*z"])
    rM, rP, phi = _chain(I, I, 3)
    for i in range(3):
        assert tor_k_rank(rM, rP, phi[i], i) == rM.rank(i)


def test_ses_requires_containment():
    S = GradedRing(["x", "y"])
    with pytest.raises((StructuralError, ValueError)):
        ShortExactSequence(Ideal(S, ["x"]), Ideal(S, ["x^2"]))


def test_ses_exactness_and_conditions():
    S = GradedRing(["x", "y"])
    E = ShortExactSequence(Ideal(S, ["x^2"]), Ideal(S, ["x^2", "y"]))
    assert E.check_exact()
    # x^2*y lies in m^2 P but not in m^2 M
    assert pure_condition(E, 1) and not pure_condition(E, 2)
    F = ShortExactSequence(Ideal(S, ["x*y"]), GradedModule.free(S, (0,)))
    # M ∩ m^2 R = (xy) is not m(xy), matching lind R/(xy) = 1
    assert small_condition(F, 0) and not small_condition(F, 1)
    G = ShortExactSequence(Ideal(S, ["x"]), Ideal(S, ["x", "y"]))
    assert pure_condition(G, 1)


def test_small_inclusion_on_first_syzygy():
    S = GradedRing(["x", "y", "z"])
    N = Ideal(S, ["x*y", "y*z"]).quotient_module()
    res = resolve(N, 3)
    E = ShortExactSequence(syzygy_module(res, 1), GradedModule.free(S, res.shifts_at(0)))
    rep = analyze_ses(E, 4, 3)
    assert rep.hypotheses["small"]
    assert rep.theorems["small_inclusion"]["applies"]
    assert rep.violations() == []
    assert set(rep.verdicts) >= {"i", "ii", "iii"}
    assert rep.verdicts["i"] != VIOLATED


def test_ring_filtration_of_polynomial_ring():
    S = GradedRing(["x", "y", "z"])
    fam = ring_koszul_filtration(S)
    assert len(fam) == 8


def test_verify_filtration_and_failures():
    T = GradedRing(["x", "y"], ["x*y"])
    ideals = {"(0)": Ideal(T, []), "(x)": Ideal(T, ["x"]), "(y)": Ideal(T, ["y"]),
              "(x,y)": Ideal(T, ["x", "y"])}
    F = FiltrationSpec(T, ideals, {"(x)": ["x"], "(y)": ["y"], "(x,y)": ["x", "y"]})
    rep = verify_koszul_filtration(F, 4)
    assert rep.valid and rep.f1
    assert rep.conclusions["k"] == {"lind": 0, "status": EXACT}
    bad = FiltrationSpec(T, {"(0)": Ideal(T, []), "(x)": Ideal(T, ["x"])}, {"(x)": ["x"]})
    rep = verify_koszul_filtration(bad, 4)
    assert not rep.valid
    assert any(f.startswith("F1") for f in rep.failures)


def test_conca_generators():
    U = GradedRing(["x", "y"], ["x^2", "x*y", "y^2"])
    r = conca_gen_filtration(U, maximal_ideal(U), modules=[residue_field(U)])
    assert r["accepted"] and r["modules"][0]["colons_contain_q"]
    V = GradedRing(["x", "y"], ["x^2"])
    r = conca_gen_filtration(V, Ideal(V, ["x"]))
    assert r == {"accepted": False, "failed_identity": ["m^2 = qm"]}
    W = GradedRing(["x", "y"], ["x*y", "y^2"])
    r = conca_gen_filtration(W, Ideal(W, ["x"]))
    assert not r["accepted"]
    assert "q^2 = 0" in r["failed_identity"]


def test_linear_quotients_formulas():
    S = GradedRing(["x", "y"])
    r = linear_quotients(maximal_ideal(S))
    assert r["betti"] == {"0,1": 2, "1,2": 1}
    assert r["betti_additivity"] and r["regularity_formula"] and r["pd_formula"]
    S3 = GradedRing(["x", "y", "z"])
    r = linear_quotients(Ideal(S3, ["x*y", "x*z", "y*z"]))
    assert [q["colon"] for q in r["quotients"]] == [[], ["y"], ["x"]]
    assert r["verdict"] == HOLDS
    with pytest.raises(ValueError):
        linear_quotients(maximal_ideal(S), ordered_generators=[(1, {(0, (1, 0)): 1})])


def test_change_of_rings_guard():
    R = GradedRing(["x", "y"])
    S = GradedRing(["x", "y"], ["x^3"])
    r = change_of_rings(R, ["x^3"], residue_field(S), 4)
    assert r["theorem_applies"] is False
    assert r["equality"] == INCONCLUSIVE
    S1 = GradedRing(["x", "y"], ["x"])
    r = change_of_rings(R, ["x"], residue_field(S1), 4)
    assert r["equality"] == HOLDS
    with pytest.raises(ValueError):
        change_of_rings(R, ["y"], residue_field(S1), 4)


def test_three_ideals_rejects_nonlinear():
    S = GradedRing(["x", "y"])
    with pytest.raises(ValueError):
        three_ideals(Ideal(S, ["x^2"]), Ideal(S, ["y"]), Ideal(S, ["x"]))
    r = three_ideals(Ideal(S, ["x"]), Ideal(S, ["y"]), Ideal(S, ["x - y"]))
    assert r["koszul"] == HOLDS and r["reg_le_3"] == HOLDS
