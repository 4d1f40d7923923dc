"""Golden cases with pinned expected values."""
from __future__ import annotations

from typing import Callable, Dict, List

from .groebner import FreeVector, GradedRing
from .lindefect import (EXACT, componentwise_linear, is_koszul, linear_part, linearity_defect,
                        tor_dim)
from .modules import (GradedModule, Ideal, intersect, kernel, maximal_ideal, power_times,
                      residue_field)
from .resolution import invariants, resolve, syzygy_module
from .structure import (FiltrationSpec, ShortExactSequence, analyze_ses, change_of_rings,
                        conca_gen_filtration, lift_chain_map, lift_generators, linear_quotients,
                        three_ideals, tor_k_rank, verify_koszul_filtration)


class Checks:
    def __init__(self):
        self.items: List[dict] = []

    def eq(self, name, got, expected):
        self.items.append({"check": name, "expected": expected, "got": got, "ok": got == expected})

    def true(self, name, got):
        self.eq(name, bool(got), True)

    @property
    def ok(self):
        return all(c["ok"] for c in self.items)


def roos_ring() -> GradedRing:
    return GradedRing(["x", "y", "z", "t"], ["x^2", "x*y", "y^2", "z^2", "z*t", "t^2"])


ROOS_MATRIX = [["y", "z"], ["x+3*t", "-t"], ["t", "x+t"]]


def roos_module(R: GradedRing) -> GradedModule:
    return GradedModule.coker(R, (0, 0), ROOS_MATRIX, "N")


def case_periodic(c: Checks):
    R = GradedRing(["x", "y"], ["x*y"])
    k = residue_field(R)
    res = resolve(k, 4)
    c.eq("ranks", res.ranks(), [1, 2, 2, 2, 2])
    lin = linear_part(res)
    c.true("differentials are linear", lin.equals_source(res))
    r = linearity_defect(k, 4)
    c.eq("lind k", [r.value, r.status], [0, EXACT])
    c.true("sega agrees", r.agreement)
    M, P = Ideal(R, ["x^3", "y^2"]), Ideal(R, ["x^2", "y^2"])
    rM, rP = resolve(M, 6), resolve(P, 6)
    for i in (2, 3):
        dim = sum(tor_dim(rP, 2 * i, 1, d) for d in range(2 * i, 2 * i + 4))
        c.eq(f"dim Tor_{2 * i}(k, P)", dim, 2)
    phi0 = lift_generators(M, list(zip(rM.shifts_at(0), rM.maps[0])), P,
                           list(zip(rP.shifts_at(0), rP.maps[0])))
    phi = lift_chain_map(rM, rP, phi0, 6)
    for i in (4, 6):
        c.true(f"Tor_{i}(k, phi) has a kernel", tor_k_rank(rM, rP, phi[i], i) < rM.rank(i))
    rep = analyze_ses(ShortExactSequence(M, P), 6, 3)
    for d in ("d_M", "d_P", "d_N"):
        c.true(f"{d} fails at every tested index", not any(rep.d[d].holds))
    c.eq("lind N", [rep.lind["N"].value, rep.lind["N"].status], [0, EXACT])
    c.true("M and P Koszul", rep.lind["M"].value == 0 and rep.lind["P"].value == 0)
    c.eq("violations", rep.violations(), [])


def case_roos(c: Checks):
    R = roos_ring()
    c.eq("dim R_2", R.hilbert(2), 4)
    c.eq("dim R_3", R.hilbert(3), 0)
    N = roos_module(R)
    c.eq("generator degrees of N", N.generator_degrees(), [0, 0])
    r = linearity_defect(N, 5)
    c.eq("lind N status", r.status, "at_least")
    c.eq("nonzero homology indices", r.nonzero_h, [1, 2, 3, 4, 5])
    c.true("sega agrees on N", r.agreement)
    m2 = power_times(2, Ideal(R, ["1"]))
    q = linearity_defect(Ideal.from_module(m2).quotient_module(), 5)
    c.eq("lind R/m^2", [q.value, q.status], [1, EXACT])


def case_small(c: Checks):
    S2 = GradedRing(["x", "y"])
    S3 = GradedRing(["x", "y", "z"])
    S4 = GradedRing(["x", "y", "z", "t"])
    r = linearity_defect(Ideal(S2, ["x^2"]).quotient_module(), 6)
    c.eq("lind R/(x^2)", [r.value, r.status], [1, EXACT])
    r = linearity_defect(Ideal(S3, ["x^2", "y^2", "x*z"]), 6)
    c.eq("lind (x^2,y^2,xz)", [r.value, r.status], [1, EXACT])
    H = Ideal(S4, ["x*y", "z*t"])
    r = linearity_defect(H, 6)
    inv = invariants(r.resolution)
    c.eq("lind (xy,zt)", [r.value, r.status], [1, EXACT])
    c.eq("pd (xy,zt)", inv.projective_dimension[0], 1)
    c.eq("reg (xy,zt)", inv.regularity[0], 3)
    for n in (2, 3):
        R = GradedRing([f"x{i}" for i in range(1, n + 1)])
        Q = Ideal(R, [f"x{i}^2" for i in range(1, n + 1)]).quotient_module()
        r = linearity_defect(Q, 6)
        c.eq(f"lind k[x]/(x_i^2), n={n}", [r.value, r.status], [n, EXACT])
    v, st = is_koszul(Ideal(GradedRing(["x", "y"], ["x*y"]), ["x^2", "y^2"]), 6)
    c.true("(x^2,y^2) Koszul over k[x,y]/(xy)", v)
    v, st = is_koszul(Ideal(S3, ["x^2", "y^2"]), 6)
    c.eq("(x^2,y^2) over k[x,y,z]", [v, st], [False, EXACT])
    v, st, _ = componentwise_linear(Ideal(S2, ["x", "y^2"]), 6)
    c.eq("(x,y^2) componentwise linear", [v, st], [True, EXACT])
    v, st, _ = componentwise_linear(H, 6)
    c.eq("(xy,zt) componentwise linear", v, False)


def case_ses(c: Checks):
    S2 = GradedRing(["x", "y"])
    rep = analyze_ses(ShortExactSequence(Ideal(S2, ["x^2"]), Ideal(S2, ["x^2", "y"])), 6, 4)
    pe = rep.theorems["pure_extension"]
    c.true("pure hypothesis", rep.hypotheses["pure"])
    c.eq("lind P', lind N'", [rep.lind["P"].value, rep.lind["N"].value], [0, 1])
    c.eq("pure_extension verdict", pe["verdict"], "holds")
    S3 = GradedRing(["x", "y", "z"])
    rep = analyze_ses(ShortExactSequence(Ideal(S3, ["x^2", "y^2"]), Ideal(S3, ["x^2", "y^2", "x*z"])),
                      6, 4)
    pe = rep.theorems["pure_extension"]
    c.eq("guard: pure_extension refused", [pe["applies"], pe["verdict"]], [False, "inconclusive"])
    c.true("guard: reason names M", any("M is not" in f for f in pe["failing"]))
    c.eq("guard: lind P'", rep.lind["P"].value, 1)
    # Ω_1 inside F_0 for N = R/(x^2)
    N = Ideal(S2, ["x^2"]).quotient_module()
    res = resolve(N, 4)
    F0 = GradedModule.free(S2, res.shifts_at(0))
    Om = syzygy_module(res, 1)
    rep = analyze_ses(ShortExactSequence(Om, F0), 6, 4)
    si = rep.theorems["small_inclusion"]
    c.eq("small_inclusion verdict", si["verdict"], "holds")
    c.eq("lind N, lind M", [rep.lind["N"].value, rep.lind["M"].value], [1, 0])
    c.true("d_P <= 1 and d_N <= 1", rep.d["d_P"].value <= 1 and rep.d["d_N"].value <= 1)
    # m M inside M with M Koszul over a Koszul ring
    T = GradedRing(["x", "y"], ["x*y"])
    M = Ideal(T, ["x^2", "y^2"])
    rep = analyze_ses(ShortExactSequence(power_times(1, M), M), 6, 3)
    c.eq("lind(mM)", [rep.lind["M"].value, rep.lind["M"].status], [0, EXACT])
    c.eq("violations", rep.violations(), [])


def roos_guards(h: int = 4):
    """The two sequences over the Roos ring used as refusal guards."""
    R = roos_ring()
    cols = [FreeVector.from_entries(R, (0, 0), col).terms for col in ROOS_MATRIX]
    ker = kernel(R, (1, 1, 1), (0, 0), cols)
    F = GradedModule.free(R, (1, 1, 1))
    m2F = power_times(2, F)
    P = GradedModule(R, (1, 1, 1), F.gens, m2F.gens, "P")
    D = GradedModule(R, (1, 1, 1), [g for g in ker if g[0] == 2], m2F.gens, "D")
    G = GradedModule.free(R, (0, 0))
    img = GradedModule(R, (0, 0), [(1, t) for t in cols], [], "Img")
    return (ShortExactSequence(D, P, "D in (R/m^2)(-1)^3"),
            ShortExactSequence(img, power_times(1, G), "M in mF"))


def case_roos_guards(c: Checks):
    g2, g3 = roos_guards()
    rep = analyze_ses(g2, 4, 3)
    si = rep.theorems["small_inclusion"]
    c.true("D inside mP", rep.hypotheses["small"])
    c.eq("P = (R/m^2)(-1)^3 lind", [rep.lind["P"].value, rep.lind["P"].status], [1, EXACT])
    c.eq("small_inclusion refused", [si["applies"], si["failing"]], [False, ["P is not certified Koszul"]])
    c.eq("lind N status", rep.lind["N"].status, "at_least")
    rep = analyze_ses(g3, 4, 3)
    si, pe = rep.theorems["small_inclusion"], rep.theorems["pure_extension"]
    c.true("M not inside m(mF)", not rep.hypotheses["small"])
    c.eq("small_inclusion refused", si["applies"], False)
    c.eq("pure_extension refused", pe["applies"], False)
    c.eq("mF and mN Koszul", [rep.lind["P"].value, rep.lind["P"].status, rep.lind["N"].value,
                              rep.lind["N"].status], [0, EXACT, 0, EXACT])
    c.eq("lind M status", rep.lind["M"].status, "at_least")


def case_filtrations(c: Checks):
    S2 = GradedRing(["x", "y"])
    F = FiltrationSpec(S2, {"(0)": Ideal(S2, []), "(x)": Ideal(S2, ["x"]),
                            "(x,y)": Ideal(S2, ["x", "y"])}, {"(x)": ["x"], "(x,y)": ["x", "y"]})
    rep = verify_koszul_filtration(F, 6)
    c.true("filtration over k[x,y]", rep.valid and not rep.failures)
    T = GradedRing(["x", "y"], ["x*y"])
    F = FiltrationSpec(T, {"(0)": Ideal(T, []), "(x)": Ideal(T, ["x"]), "(y)": Ideal(T, ["y"]),
                           "(x,y)": Ideal(T, ["x", "y"])},
                       {"(x)": ["x"], "(y)": ["y"], "(x,y)": ["x", "y"]})
    rep = verify_koszul_filtration(F, 6)
    c.true("filtration over k[x,y]/(xy)", rep.valid and not rep.failures)
    c.eq("lind k over k[x,y]/(xy)", rep.conclusions["k"]["lind"], 0)
    U = GradedRing(["x", "y"], ["x^2", "x*y", "y^2"])
    r = conca_gen_filtration(U, maximal_ideal(U), modules=[residue_field(U)])
    c.true("conca_gen q = m", r["accepted"])
    c.true("conca_gen module colons contain q", r["modules"][0]["colons_contain_q"])
    r = conca_gen_filtration(U, Ideal(U, []))
    c.true("conca_gen q = 0", r["accepted"])
    V = GradedRing(["x", "y"], ["x^2"])
    r = conca_gen_filtration(V, Ideal(V, ["x"]))
    c.eq("conca_gen rejects", [r["accepted"], r["failed_identity"]], [False, ["m^2 = qm"]])


def case_quotients(c: Checks):
    S2 = GradedRing(["x", "y"])
    r = linear_quotients(maximal_ideal(S2))
    c.eq("m: colons", [q["colon"] for q in r["quotients"]], [[], ["x"]])
    c.eq("m: betti", r["betti"], {"0,1": 2, "1,2": 1})
    c.eq("m: verdict", r["verdict"], "holds")
    r = linear_quotients(Ideal(S2, ["x^2", "x*y"]))
    c.eq("(x^2,xy): I_2", r["quotients"][1]["colon"], ["x"])
    c.eq("(x^2,xy): verdict", r["verdict"], "holds")


def case_chrings(c: Checks):
    R = GradedRing(["x", "y", "z"])
    S = GradedRing(["x", "y", "z"], ["z"])
    r = change_of_rings(R, ["z"], Ideal(S, ["x^2"]).quotient_module(), 6)
    c.eq("lind_R S", r["lind_R_S"]["value"], 0)
    c.eq("lind_R N = lind_S N = 1", [r["lind_R_N"]["value"], r["lind_S_N"]["value"]], [1, 1])
    c.eq("equality", r["equality"], "holds")
    R2 = GradedRing(["x", "y"])
    S = GradedRing(["x", "y"], ["x^3"])
    r = change_of_rings(R2, ["x^3"], residue_field(S), 5)
    c.eq("x^3 guard: lind_R S", r["lind_R_S"], {"value": 1, "status": EXACT})
    c.eq("x^3 guard: equality not asserted", r["equality"], "inconclusive")
    c.eq("x^3 guard: lind_S k status", r["lind_S_N"]["status"], "at_least")
    c.eq("x^3 guard: lind_R k", [r["lind_R_N"]["value"], r["lind_R_N"]["status"]], [0, EXACT])
    S = GradedRing(["x", "y"], ["x^2"])
    r = change_of_rings(R2, ["x^2"], residue_field(S), 5)
    c.eq("x^2 guard: lind_R S", r["lind_R_S"]["value"], 1)
    c.eq("x^2 guard: equality not asserted", r["equality"], "inconclusive")


def case_threeideals(c: Checks):
    R = GradedRing(["x1", "x2", "y1", "y2"])
    r = three_ideals(Ideal(R, ["x1", "x2"]), Ideal(R, ["y1", "y2"]),
                     Ideal(R, ["x1+y1", "x2+y2"]), minors=(["x1", "x2"], ["y1", "y2"]))
    c.eq("H_<2> = 2-minors", r["H2_equals_minors"], "holds")
    c.eq("H_<2>", r["H2"], ["x2*y1 - x1*y2"])
    c.eq("lind H", r["lind"]["value"], 0)
    c.eq("reg H <= 3", r["reg_le_3"], "holds")
    Q = GradedRing(["x", "y", "z", "t"])
    H = intersect(Ideal(Q, ["x", "z"]), Ideal(Q, ["x", "t"]), Ideal(Q, ["y", "z"]),
                  Ideal(Q, ["y", "t"]))
    c.eq("four ideals", [str(f) for f in Ideal.from_module(H).polys], ["x*y", "z*t"])
    r = linearity_defect(H, 6)
    c.eq("four ideals lind", [r.value, r.status], [1, EXACT])


CASES: Dict[str, Callable[[Checks], None]] = {
    "periodic": case_periodic,
    "roos": case_roos,
    "small": case_small,
    "ses": case_ses,
    "roos_guards": case_roos_guards,
    "filtrations": case_filtrations,
    "quotients": case_quotients,
    "chrings": case_chrings,
    "threeideals": case_threeideals,
}


def run_case(name: str) -> dict:
    if name not in CASES:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(CASES)} or all")
    c = Checks()
    CASES[name](c)
    return {"example": name, "ok": c.ok, "checks": c.items}


__all__ = ["CASES", "run_case", "roos_ring", "roos_module", "roos_guards"]
