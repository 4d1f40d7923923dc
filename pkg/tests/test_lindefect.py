import pytest

from lindef.groebner import GradedRing
from lindef.lindefect import (AT_LEAST, EXACT, ZERO_UP_TO_WINDOW, componentwise_linear,
                              is_koszul, koszul_syzygy_index, linear_part, linearity_defect,
                              sega_check, strand_homology, tor_dim)
from lindef.modules import GradedModule, Ideal, maximal_ideal, power_times, residue_field
from lindef.resolution import resolve


def _lind(M, h=5, **kw):
    r = linearity_defect(M, h, **kw)
    return r.value, r.status


def test_residue_field_over_polynomial_ring_is_koszul():
    S = GradedRing(["x", "y", "z"])
    r = linearity_defect(residue_field(S), 4)
    assert (r.value, r.status) == (0, EXACT)
    assert r.certificate["kind"] == "terminated"
    assert r.agreement is True


def test_linear_part_of_linear_resolution_is_itself():
    R = GradedRing(["x", "y"], ["x*y"])
    res = resolve(residue_field(R), 4)
    lin = linear_part(res)
    assert lin.equals_source(res)
    assert lin.is_complex()
    assert all(not strand_homology(lin, i) for i in range(1, 4))


def test_small_known_values():
    S2 = GradedRing(["x", "y"])
    assert _lind(Ideal(S2, ["x^2"]).quotient_module()) == (1, EXACT)
    S3 = GradedRing(["x", "y", "z"])
    assert _lind(Ideal(S3, ["x^2", "y^2", "x*z"])) == (1, EXACT)
    S4 = GradedRing(["x", "y", "z", "t"])
    assert _lind(Ideal(S4, ["x*y", "z*t"])) == (1, EXACT)


@pytest.mark.parametrize("n", [2, 3])
def test_complete_intersection_of_squares(n):
    names = ["x1", "x2", "x3"][:n]
    S = GradedRing(names)
    Q = Ideal(S, [f"{v}^2" for v in names]).quotient_module()
    assert _lind(Q, h=n + 1) == (n, EXACT)


def test_hypersurface_quotient_has_lind_one():
    R = GradedRing(["x", "y"], ["x^2"])
    M = Ideal(R, ["y^2"]).quotient_module()
    r = linearity_defect(M, 5)
    assert (r.value, r.status) == (1, EXACT)
    assert r.nonzero_h == [1]


def test_cyclic_quotient_certificate_over_artinian_ring():
    R = GradedRing(["x", "y", "z", "t"], ["x^2", "x*y", "y^2", "z^2", "z*t", "t^2"])
    Q = power_times(1, maximal_ideal(R))
    M = GradedModule.coker(R, (0,), [[str(f)] for f in Ideal.from_module(Q).polys])
    r = linearity_defect(M, 4, sega=False)
    assert (r.value, r.status) == (1, EXACT)
    assert r.certificate == {"kind": "cyclic_quotients", "index": 1}


def test_ideal_summand_certificate():
    # m over an Artinian Koszul ring: Koszul syzygies mix rows, so no cyclic split
    R = GradedRing(["x", "y", "z", "t"], ["x^2", "x*y", "y^2", "z^2", "z*t", "t^2"])
    r = linearity_defect(maximal_ideal(R), 3, sega=False)
    assert (r.value, r.status) == (0, EXACT)
    assert r.certificate == {"kind": "ideal_summands", "index": 0}


def test_roos_module_nonzero_in_every_index():
    R = GradedRing(["x", "y", "z", "t"], ["x^2", "x*y", "y^2", "z^2", "z*t", "t^2"])
    N = GradedModule.coker(R, (0, 0), [["y", "z"], ["x+3*t", "-t"], ["t", "x+t"]])
    r = linearity_defect(N, 4)
    assert r.status == AT_LEAST
    assert r.nonzero_h == [1, 2, 3, 4]
    assert r.agreement is True
    res = resolve(N, 4)
    assert koszul_syzygy_index(res, 4) is None


def test_zero_up_to_window_status():
    # Koszul ring, module without certificate but with acyclic linear part
    R = GradedRing(["x", "y", "z"], ["x^2 - y*z"])
    r = linearity_defect(Ideal(R, ["x", "y"]).quotient_module(), 3, sega=False)
    assert r.value == 0
    assert r.status in (EXACT, ZERO_UP_TO_WINDOW)


def test_periodic_certificate_pins_finite_value():
    R = GradedRing(["x", "y"], ["x^2"])
    r = linearity_defect(Ideal(R, ["x", "y^2"]).quotient_module(), 4, sega=False)
    assert (r.value, r.status) == (1, EXACT)
    assert r.certificate["kind"] == "periodic" and r.certificate["period"] == 1


def test_periodic_certificate_proves_infinite():
    # k over k[x]/(x^3): alternating degree jumps 1, 2 never straighten out
    R = GradedRing(["x"], ["x^3"])
    r = linearity_defect(residue_field(R), 4, sega=False)
    assert r.status == AT_LEAST
    assert r.certificate["kind"] == "periodic" and r.certificate.get("infinite") is True
    assert r.nonzero_h


def test_tor_dims_of_residue_field():
    R = GradedRing(["x", "y"], ["x*y"])
    res = resolve(residue_field(R), 4)
    # Tor_i(R/m, k) is concentrated in degree i with dimension beta_i
    assert [tor_dim(res, i, 1, i) for i in range(5)] == [1, 2, 2, 2, 2]
    rep = sega_check(residue_field(R), 4, 2)
    assert rep.bound == 0


def test_is_koszul_and_componentwise_linear():
    S = GradedRing(["x", "y"])
    assert is_koszul(Ideal(S, ["x^2", "x*y"])) == (True, "exact")
    assert is_koszul(Ideal(S, ["x^2", "y^2"]).quotient_module())[0] is False
    v, st, _ = componentwise_linear(Ideal(S, ["x^2", "x*y"]))
    assert (v, st) == (True, "exact")
    v, _, _ = componentwise_linear(Ideal(S, ["x^2", "y^2"]))
    assert v is False
