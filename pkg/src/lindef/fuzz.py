"""Random corpora.  Every instance is generated from (seed, index) alone, so
runs are reproducible and can be spread over worker processes."""
from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List

from .core import format_polynomial, monomials_of_degree
from .groebner import GradedRing, vec_axpy, vec_mul_mono, vec_nf
from .lindefect import EXACT, linearity_defect
from .modules import GradedModule, Ideal
from .resolution import resolve, syzygy_module
from .structure import (HOLDS, ShortExactSequence, analyze_ses, change_of_rings,
                        three_ideals)


def _rng(seed: int, idx: int, tag: str) -> random.Random:
    return random.Random(f"{tag}:{seed}:{idx}")


def random_form(rng: random.Random, R: GradedRing, d: int, terms: int | None = None,
                binomial: bool = False) -> str:
    monos = monomials_of_degree(R.nvars, d)
    k = terms or rng.randint(1, min(3, len(monos)))
    if binomial:
        k = rng.randint(1, min(2, len(monos)))
    pick = rng.sample(monos, k)
    parts = []
    for e in pick:
        c = rng.choice([1, -1]) if binomial else rng.randint(1, 9) * rng.choice([1, -1])
        parts.append(f"({c})*" + "*".join(f"{v}^{a}" for v, a in zip(R.variables, e) if a)
                     if d else str(c))
    return " + ".join(parts)


def random_linear_form(rng: random.Random, R: GradedRing, support: int | None = None) -> str:
    n = R.nvars
    k = support or rng.randint(1, n)
    idx = rng.sample(range(n), k)
    return " + ".join(f"({rng.randint(1, 9) * rng.choice([1, -1])})*{R.variables[i]}" for i in idx)


# ---------------------------------------------------------------- corpora

def hypersurface_instance(seed: int, idx: int, h: int = 5, s_max: int = 4) -> dict:
    rng = _rng(seed, idx, "hyp")
    R = GradedRing(["x", "y"], ["x^2"])
    gens = []
    for _ in range(rng.randint(1, 3)):
        gens.append(random_form(rng, R, rng.randint(1, 3)))
    I = Ideal(R, gens)
    if I.is_unit() or I.is_zero():
        I = Ideal(R, ["y^2"])
    r = linearity_defect(I.quotient_module(), h, s_max, sega=False)
    ok = r.value <= 1 and all(i <= 1 for i in r.nonzero_h)
    return {"U": [format_polynomial(f) for f in I.polys], "lind": r.value, "status": r.status,
            "nonzero_h": r.nonzero_h, "ok": ok}


_SEGA_RINGS = [((("x", "y")), ()), (("x", "y"), ("x*y",)), (("x", "y"), ("x^2",)),
               (("x", "y", "z"), ()), (("x", "y", "z"), ("x*y",)), (("x", "y", "z"), ("x^2 - y*z",)),
               (("x", "y", "z"), ("x*z - y^2",)), (("x", "y", "z"), ("z^2",))]


def sega_instance(seed: int, idx: int, h: int = 4, s_max: int = 4) -> dict:
    rng = _rng(seed, idx, "sega")
    vs, rel = _SEGA_RINGS[rng.randrange(len(_SEGA_RINGS))]
    R = GradedRing(list(vs), list(rel))
    kind = rng.choice(["cyclic", "cyclic", "ideal", "coker"])
    if kind == "coker":
        # 2 x 2 presentation with monomial/binomial entries of degree 1 or 2
        tgt = (0, 0)
        cols = []
        for _ in range(2):
            d = rng.randint(1, 2)
            cols.append([random_form(rng, R, d, binomial=True) if rng.random() < 0.8 else "0"
                         for _ in tgt])
        M = GradedModule.coker(R, tgt, cols)
        desc = {"coker": [[format_polynomial(R.parse(e)) for e in c] for c in cols]}
    else:
        gens = [random_form(rng, R, rng.randint(1, 3), binomial=True)
                for _ in range(rng.randint(1, 3))]
        I = Ideal(R, gens)
        M = I.quotient_module() if kind == "cyclic" else I
        desc = {kind: [format_polynomial(f) for f in I.polys]}
    r = linearity_defect(M, h, s_max, sega=True)
    return {"ring": {"vars": list(vs), "relations": list(rel)}, "module": desc,
            "lind": r.value, "status": r.status, "nonzero_h": r.nonzero_h,
            "sega_bound": r.sega.bound, "sega_s": r.sega.s_max, "ok": bool(r.agreement)}


_SES_RINGS = [(("x", "y"), ()), (("x", "y", "z"), ()), (("x", "y"), ("x*y",)),
              (("x", "y"), ("x^2",))]


def _random_element(rng, R, P: GradedModule, deg: int, positive: bool = False):
    """Random homogeneous element of P of degree deg; inside mP when positive."""
    t: Dict = {}
    for d, g in P.minimal_gens():
        if d > deg or (positive and d == deg) or rng.random() < 0.4:
            continue
        f = R.parse(random_form(rng, R, deg - d)) if deg > d else R.poly.const(rng.randint(1, 9))
        for e, c in f.term_dict.items():
            vec_axpy(R.p, t, vec_mul_mono(R, g, e), c)
    return deg, vec_nf(R, t)


def ses_instance(seed: int, idx: int, h: int = 4, s_max: int = 3) -> dict:
    rng = _rng(seed, idx, "ses")
    vs, rel = _SES_RINGS[rng.randrange(len(_SES_RINGS))]
    R = GradedRing(list(vs), list(rel))
    kind = rng.choice(["random", "random", "pure", "small", "syzygy"])
    if kind == "syzygy":
        gens = [random_form(rng, R, rng.randint(1, 2)) for _ in range(rng.randint(1, 2))]
        N = Ideal(R, gens).quotient_module()
        res = resolve(N, 1)
        P = GradedModule.free(R, res.shifts_at(0))
        M = syzygy_module(res, 1)
    elif kind == "pure":
        # direct summand inside a second coordinate plus a mixed generator
        I = Ideal(R, [random_form(rng, R, rng.randint(1, 2)) for _ in range(rng.randint(1, 2))])
        J = Ideal(R, [random_form(rng, R, rng.randint(1, 2)) for _ in range(rng.randint(1, 2))])
        gi = [(d, {(0, e): c for (_, e), c in t.items()}) for d, t in I.minimal_gens()]
        gj = [(d, {(1, e): c for (_, e), c in t.items()}) for d, t in J.minimal_gens()]
        P = GradedModule(R, (0, 0), gi + gj)
        M = GradedModule(R, (0, 0), gi)
    else:
        r = rng.randint(1, 2)
        shifts = tuple(rng.randint(0, 1) for _ in range(r))
        if rng.random() < 0.5:
            P = GradedModule.free(R, shifts)
        else:
            P = GradedModule(R, shifts, [_random_element(rng, R, GradedModule.free(R, shifts),
                                                         rng.randint(1, 2)) for _ in range(r + 1)])
        small = kind == "small"
        lo = min(P.generator_degrees() or [0])
        elems = [_random_element(rng, R, P, rng.randint(lo + small, lo + 2), small)
                 for _ in range(rng.randint(1, 2))]
        M = GradedModule(R, P.shifts, [v for v in elems if v[1]])
    if M.is_zero() or P.is_zero():
        return {"kind": kind, "skipped": "degenerate", "certified": False, "ok": True}
    S = ShortExactSequence(M, P)
    rep = analyze_ses(S, h, s_max)
    certified = all(rep.lind[k].status == EXACT for k in "MPN")
    viol = rep.violations()
    pe, si = rep.theorems["pure_extension"], rep.theorems["small_inclusion"]
    return {"kind": kind, "ring": {"vars": list(vs), "relations": list(rel)},
            "certified": certified, "verdicts": rep.verdicts,
            "lind": {k: [v.value, v.status] for k, v in rep.lind.items()},
            "d": {k: [v.value, v.status] for k, v in rep.d.items()},
            "pure": pe.get("verdict"), "pure_applies": pe.get("applies"),
            "small": si.get("verdict"), "small_applies": si.get("applies"),
            "violations": viol, "ok": not viol}


def threeideals_instance(seed: int, idx: int, h: int = 4, s_max: int = 4) -> dict:
    rng = _rng(seed, idx, "three")
    n = rng.randint(3, 6)
    R = GradedRing([f"x{i}" for i in range(1, n + 1)])
    ids = []
    for _ in range(3):
        k = rng.randint(1, max(1, n // 2))
        ids.append(Ideal(R, [random_linear_form(rng, R, rng.randint(1, min(3, n)))
                             for _ in range(k)]))
    r = three_ideals(*ids, h=h, s_max=s_max)
    ok = r["lind"]["value"] == 0 and r["koszul"] == HOLDS and r["reg_le_3"] == HOLDS
    return {"nvars": n, "ideals": [[format_polynomial(f) for f in I.polys] for I in ids],
            "lind": r["lind"], "reg": r["reg"], "ok": ok}


def chrings_instance(seed: int, idx: int, h: int = 4, s_max: int = 4) -> dict:
    rng = _rng(seed, idx, "chr")
    n = rng.randint(2, 4)
    vs = ["x", "y", "z", "w"][:n]
    R = GradedRing(vs)
    J = [random_linear_form(rng, R) for _ in range(rng.randint(1, n - 1))]
    S = GradedRing(vs, J)
    gens = [random_form(rng, S, rng.randint(1, 3)) for _ in range(rng.randint(1, 3))]
    I = Ideal(S, gens)
    if I.is_unit():
        I = Ideal(S, [])
    r = change_of_rings(R, J, I.quotient_module(), h, s_max)
    applies = r["theorem_applies"]
    ok = applies and r["equality"] == HOLDS and not r["violated"]
    return {"J": J, "U": [format_polynomial(f) for f in I.polys],
            "lind_R_S": r["lind_R_S"], "lind_R_N": r["lind_R_N"]["value"],
            "lind_S_N": r["lind_S_N"]["value"], "equality": r["equality"], "ok": ok}


CORPORA: Dict[str, Callable] = {
    "hypersurface": hypersurface_instance,
    "sega": sega_instance,
    "ses": ses_instance,
    "threeideals": threeideals_instance,
    "chrings": chrings_instance,
}

DEFAULT_COUNTS = {"hypersurface": 20, "sega": 50, "ses": 100, "threeideals": 20, "chrings": 20}


def _call(args):
    name, seed, idx, h, s_max = args
    kw = {}
    if h is not None:
        kw["h"] = h
    if s_max is not None:
        kw["s_max"] = s_max
    return CORPORA[name](seed, idx, **kw)


def jobs_from_env(jobs: int | None = None) -> int:
    if jobs is None:
        jobs = int(os.environ.get("LINDEF_JOBS", "1") or 1)
    return max(1, jobs)


def run_corpus(name: str, count: int | None = None, seed: int = 0, h: int | None = None,
               s_max: int | None = None, jobs: int | None = None) -> dict:
    if name not in CORPORA:
        raise KeyError(f"unknown corpus {name!r}; choose from {', '.join(CORPORA)}")
    count = DEFAULT_COUNTS[name] if count is None else count
    jobs = jobs_from_env(jobs)
    if name == "ses":
        return _run_ses(count, seed, h, s_max, jobs)
    args = [(name, seed, i, h, s_max) for i in range(count)]
    items = _map(args, jobs)
    out = {"corpus": name, "seed": seed, "count": count, "instances": items,
           "failures": [i for i, r in enumerate(items) if not r["ok"]]}
    if name == "hypersurface":
        out["glind_lower_bound"] = max(r["lind"] for r in items) if items else 0
    return out


def _run_ses(count, seed, h, s_max, jobs):
    """Draw until `count` certified sequences were seen (bounded number of draws)."""
    items: List[dict] = []
    idx = 0
    batch = 16
    while sum(1 for r in items if r.get("certified")) < count and idx < count * 4:
        args = [("ses", seed, i, h, s_max) for i in range(idx, idx + batch)]
        items.extend(_map(args, jobs))
        idx += batch
    cert = [r for r in items if r.get("certified")][:count]
    return {"corpus": "ses", "seed": seed, "count": count, "drawn": len(items),
            "certified": len(cert), "instances": items,
            "failures": [i for i, r in enumerate(items) if not r["ok"]],
            "pure_applied": sum(1 for r in items if r.get("pure_applies")),
            "small_applied": sum(1 for r in items if r.get("small_applies"))}


def _map(args, jobs):
    if jobs <= 1:
        return [_call(a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(_call, args))


__all__ = ["CORPORA", "run_corpus", "random_form", "random_linear_form", "DEFAULT_COUNTS"]
