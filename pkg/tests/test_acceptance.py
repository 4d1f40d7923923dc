"""Acceptance criteria 1-11, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``.
"""
import sys
import time
from math import comb

import pytest

from lindef.fuzz import run_corpus
from lindef.groebner import GradedRing
from lindef.lindefect import AT_LEAST, EXACT, linear_part, linearity_defect, tor_dim
from lindef.modules import Ideal, power_times, residue_field
from lindef.paper import roos_module, roos_ring, run_case
from lindef.resolution import invariants, resolve
from lindef.structure import (lift_chain_map, lift_generators, linear_quotients, three_ideals,
                              tor_k_rank)


def _case(name, labels=None):
    r = run_case(name)
    checks = [c for c in r["checks"] if labels is None or c["check"] in labels]
    bad = [c["check"] for c in checks if not c["ok"]]
    return checks and not bad, bad


def crit_1():
    t = time.perf_counter()
    R = GradedRing(["x", "y"], ["x*y"])
    k = residue_field(R)
    res = resolve(k, 4)
    linear = linear_part(res).equals_source(res)
    r = linearity_defect(k, 4, res=res, sega=False)
    dt = time.perf_counter() - t
    ok = res.ranks() == [1, 2, 2, 2, 2] and linear and (r.value, r.status) == (0, EXACT)
    return ok and dt < 1, f"ranks {res.ranks()}, linear {linear}, lind {r.value} {r.status}", dt


def crit_2():
    t = time.perf_counter()
    R = GradedRing(["x", "y"], ["x*y"])
    M, P = Ideal(R, ["x^3", "y^2"]), Ideal(R, ["x^2", "y^2"])
    rM, rP = resolve(M, 6), resolve(P, 6)
    dims = [sum(tor_dim(rP, 2 * i, 1, d) for d in range(2 * i, 2 * i + 4)) for i in (2, 3)]
    phi0 = lift_generators(M, list(zip(rM.shifts_at(0), rM.maps[0])), P,
                           list(zip(rP.shifts_at(0), rP.maps[0])))
    phi = lift_chain_map(rM, rP, phi0, 6)
    kernels = [tor_k_rank(rM, rP, phi[i], i) < rM.rank(i) for i in (4, 6)]
    dt = time.perf_counter() - t
    ok = dims == [2, 2] and all(kernels)
    return ok and dt < 5, f"dim Tor_4, Tor_6 = {dims}, kernels {kernels}", dt


def crit_3():
    t = time.perf_counter()
    R = roos_ring()
    # oracle: 10 quadratic monomials in 4 variables minus 6 independent monomial relations
    dim2 = comb(4 + 1, 2) - 6
    cube = R.hilbert(3) == 0
    r = linearity_defect(roos_module(R), 5)
    m2 = Ideal.from_module(power_times(2, Ideal(R, ["1"])))
    q = linearity_defect(m2.quotient_module(), 5, sega=False)
    dt = time.perf_counter() - t
    ok = (cube and R.hilbert(2) == dim2 == 4 and r.status == AT_LEAST
          and r.nonzero_h == [1, 2, 3, 4, 5] and (q.value, q.status) == (1, EXACT))
    return ok and dt < 60, (f"dim R_2 {R.hilbert(2)}, m^3=0 {cube}, N nonzero {r.nonzero_h} "
                            f"{r.status}, lind R/m^2 {q.value} {q.status}"), dt


def crit_4():
    t = time.perf_counter()
    c = run_corpus("hypersurface", 20, seed=1)
    items = c["instances"]
    certified = all(i["status"] == EXACT for i in items)
    bounded = all(i["lind"] <= 1 for i in items)
    attained = any(i["lind"] == 1 for i in items)
    dt = time.perf_counter() - t
    ok = len(items) == 20 and certified and bounded and attained and not c["failures"]
    return ok, (f"20 instances, all exact {certified}, max lind {max(i['lind'] for i in items)}, "
                f"glind >= {c['glind_lower_bound']} (sampled lower bound)"), dt


def crit_5():
    times, bad = [], []
    S2, S3, S4 = (GradedRing(v) for v in (["x", "y"], ["x", "y", "z"], ["x", "y", "z", "t"]))
    cases = [("R/(x^2)", lambda: Ideal(S2, ["x^2"]).quotient_module(), 1),
             ("(x^2,y^2,xz)", lambda: Ideal(S3, ["x^2", "y^2", "x*z"]), 1),
             ("(xy,zt)", lambda: Ideal(S4, ["x*y", "z*t"]), 1)]
    for n in (2, 3):
        R = GradedRing([f"x{i}" for i in range(1, n + 1)])
        cases.append((f"k[x]/(x_i^2) n={n}",
                      lambda R=R, n=n: Ideal(R, [f"x{i}^2" for i in range(1, n + 1)]).quotient_module(),
                      n))
    for name, build, want in cases:
        t = time.perf_counter()
        r = linearity_defect(build(), 6)
        good = (r.value, r.status) == (want, EXACT)
        if name == "(xy,zt)":
            inv = invariants(r.resolution)
            good = good and inv.projective_dimension[0] == 1 and inv.regularity[0] == 3
        dt = time.perf_counter() - t
        times.append(dt)
        if not good or dt >= 5:
            bad.append(name)
    return not bad, f"{len(cases)} examples, slowest {max(times):.2f}s, failing {bad}", sum(times)


def crit_6():
    t = time.perf_counter()
    c = run_corpus("sega", 50, seed=1)
    agree = sum(1 for i in c["instances"] if i["ok"] and i["sega_bound"] == i["lind"])
    dt = time.perf_counter() - t
    return agree == 50, f"{agree}/50 agree", dt


def crit_7():
    t = time.perf_counter()
    c = run_corpus("ses", 100, seed=1)
    cert = [i for i in c["instances"] if i.get("certified")][:100]
    triple = all(i["verdicts"][k] == "holds" for i in cert for k in ("i", "ii", "iii"))
    theorems = all(i[k] == "holds" for i in cert for k in ("pure", "small") if i[f"{k}_applies"])
    guards, bad = _case("roos_guards")
    pure_guard, bad2 = _case("ses", {"guard: pure_extension refused", "guard: reason names M"})
    conclusions, bad3 = _case("ses")
    dt = time.perf_counter() - t
    ok = (len(cert) == 100 and triple and theorems and not c["failures"] and guards
          and pure_guard and conclusions)
    return ok and dt < 600, (f"{len(cert)} certified of {c['drawn']} drawn, (i)-(iii) {triple}, "
                             f"theorems {theorems} (pure {c['pure_applied']}, small "
                             f"{c['small_applied']}), guards refused {guards and pure_guard}"
                             + (f", failing {bad + bad2 + bad3}" if bad or bad2 or bad3 else "")), dt


def crit_8():
    t = time.perf_counter()
    ok, bad = _case("filtrations")
    dt = time.perf_counter() - t
    return ok, "filtrations verified, conca_gen accepts m^2=0 and rejects (x)" if ok else f"{bad}", dt


def crit_9():
    t = time.perf_counter()
    S2 = GradedRing(["x", "y"])
    r = linear_quotients(Ideal(S2, ["x", "y"]))
    m_ok = r["betti"] == {"0,1": 2, "1,2": 1} and r["betti_additivity"] and r["regularity_formula"]
    S3 = GradedRing(["x", "y", "z"])
    r3 = linear_quotients(Ideal(S3, ["x*y", "x*z", "y*z"]))
    other = r3["betti_additivity"] and r3["regularity_formula"]
    case_ok, bad = _case("quotients")
    dt = time.perf_counter() - t
    return m_ok and other and case_ok, f"m=(x,y) betti {r['betti']}, formulas hold {m_ok and other}", dt


def crit_10():
    t = time.perf_counter()
    c = run_corpus("threeideals", 20, seed=1)
    good = sum(1 for i in c["instances"]
               if i["lind"]["value"] == 0 and i["lind"]["status"] == EXACT
               and i["reg"]["value"] is not None and i["reg"]["value"] <= 3)
    R = GradedRing(["x1", "x2", "y1", "y2"])
    r = three_ideals(Ideal(R, ["x1", "x2"]), Ideal(R, ["y1", "y2"]),
                     Ideal(R, ["x1+y1", "x2+y2"]), minors=(["x1", "x2"], ["y1", "y2"]))
    h2 = r["H2_equals_minors"] == "holds"
    four, bad = _case("threeideals", {"four ideals", "four ideals lind"})
    dt = time.perf_counter() - t
    ok = good == 20 and h2 and four
    return ok and dt < 300, f"{good}/20 lind 0 reg<=3, H_<2> {r['H2']}, four-ideal lind 1 {four}", dt


def crit_11():
    t = time.perf_counter()
    c = run_corpus("chrings", 20, seed=1)
    eq = sum(1 for i in c["instances"]
             if i["lind_R_S"] == {"value": 0, "status": EXACT} and i["equality"] == "holds")
    guards, bad = _case("chrings", {"x^3 guard: lind_R S", "x^3 guard: equality not asserted",
                                    "x^2 guard: lind_R S", "x^2 guard: equality not asserted"})
    dt = time.perf_counter() - t
    return eq == 20 and guards, f"{eq}/20 equality, guards {guards}", dt


CRITERIA = [crit_1, crit_2, crit_3, crit_4, crit_5, crit_6, crit_7, crit_8, crit_9, crit_10,
            crit_11]


def _report(n, fn):
    ok, detail, dt = fn()
    print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail} [{dt:.2f}s]", flush=True)
    return ok


@pytest.mark.parametrize("n", range(1, 12))
def test_criterion(n, capsys):
    with capsys.disabled():
        ok = _report(n, CRITERIA[n - 1])
    assert ok


if __name__ == "__main__":
    results = [_report(n, fn) for n, fn in enumerate(CRITERIA, 1)]
    sys.exit(0 if all(results) else 1)
