"""Command line entry point: ``lindef COMMAND [SESSION] [options]``."""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .core import PolynomialSyntaxError, StructuralError
from .fuzz import CORPORA, jobs_from_env, run_corpus
from .lindefect import AT_LEAST, EXACT, linearity_defect, sega_check
from .paper import CASES, run_case
from .resolution import betti, betti_json, resolve
from .session import Session, SessionError, parse_session
from .structure import (HOLDS, INCONCLUSIVE, VIOLATED, analyze_ses, change_of_rings,
                        conca_gen_filtration, linear_quotients, three_ideals,
                        verify_koszul_filtration)

SCHEMA = "lindef/1"
OK, VIOLATION, INPUT_ERROR, ALL_INCONCLUSIVE = 0, 1, 2, 3


class InputError(Exception):
    pass


# ---------------------------------------------------------------- helpers

def _load(args) -> Session:
    path = args.session_opt or args.session
    if not path:
        raise InputError("a session file is required (positional or --session)")
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read session: {exc}") from None
    return parse_session(text, prime=args.prime, order=args.order, path=path)


def _names(value, available, kind):
    if value:
        out = []
        for v in value:
            out.extend(x.strip() for x in v.split(",") if x.strip())
        for n in out:
            if n not in available:
                raise InputError(f"unknown {kind} {n!r}")
        return out
    if not available:
        raise InputError(f"the session declares no {kind}")
    return [list(available)[-1]]


def _module_names(args, S: Session):
    avail = {d.name: None for d in S.decls if d.kind in ("module", "ideal")}
    return _names(args.module, avail, "module")


def _lind_outcome(status: str, agreement) -> str:
    if agreement is False:
        return VIOLATED
    return HOLDS if status in (EXACT, AT_LEAST) else INCONCLUSIVE


# ---------------------------------------------------------------- commands

def cmd_resolve(args, S):
    res_out = {}
    for n in _module_names(args, S):
        res = resolve(S.module(n), args.steps)
        r = betti_json(res)
        r["ranks"] = res.ranks()
        r["betti_table"] = betti(res).pretty()
        r["verified"] = {"complex": res.is_complex(), "minimal": res.is_minimal()}
        res_out[n] = r
    outcomes = [HOLDS if all(r["verified"].values()) else VIOLATED for r in res_out.values()]
    return res_out, outcomes


def cmd_lind(args, S):
    out, outcomes = {}, []
    for n in _module_names(args, S):
        r = linearity_defect(S.module(n), args.steps, args.smax, sega=not args.no_sega)
        j = r.to_json()
        j["ranks"] = r.resolution.ranks()
        out[n] = j
        outcomes.append(_lind_outcome(r.status, r.agreement))
    return out, outcomes


def cmd_sega(args, S):
    out, outcomes = {}, []
    for n in _module_names(args, S):
        M = S.module(n)
        rep = sega_check(M, args.steps, args.smax)
        r = linearity_defect(M, args.steps, args.smax, sega=True)
        j = rep.to_json()
        j["linear_part_nonzero"] = r.nonzero_h
        j["agrees"] = r.agreement
        out[n] = j
        outcomes.append(VIOLATED if r.agreement is False else HOLDS)
    return out, outcomes


def cmd_ses(args, S):
    out, outcomes = {}, []
    for n in _names(args.ses, S.sequences, "ses"):
        rep = analyze_ses(S.sequences[n], args.steps, args.smax)
        out[n] = rep.to_json()
        if rep.violations():
            outcomes.append(VIOLATED)
        elif all(v == INCONCLUSIVE for v in rep.verdicts.values()):
            outcomes.append(INCONCLUSIVE)
        else:
            outcomes.append(HOLDS)
    return out, outcomes


def cmd_filtration(args, S):
    out, outcomes = {}, []
    if args.conca:
        q = S.ideal(args.conca)
        mods = [S.module(n) for n in (args.module or [])]
        r = conca_gen_filtration(q.ring, q, modules=mods, h=args.steps, s_max=args.smax)
        r.pop("spec", None)
        out[f"conca_gen({args.conca})"] = r
        if not r["accepted"]:
            outcomes.append(HOLDS if r["failed_identity"] else VIOLATED)
        elif any(m.get("verdict") == VIOLATED for m in r["modules"]):
            outcomes.append(VIOLATED)
        else:
            outcomes.append(HOLDS)
        return out, outcomes
    for n in _names(args.filtration, S.filtrations, "filtration"):
        rep = verify_koszul_filtration(S.filtrations[n], args.steps, args.smax)
        out[n] = rep.to_json()
        if any(f.startswith("conclusion") for f in rep.failures):
            outcomes.append(VIOLATED)
        elif rep.valid and rep.status != EXACT:
            outcomes.append(INCONCLUSIVE)
        else:
            outcomes.append(HOLDS)
    return out, outcomes


def cmd_quotients(args, S):
    out, outcomes = {}, []
    for n in _module_names(args, S):
        r = linear_quotients(S.module(n), h=args.steps)
        r.pop("colon_ideals_obj", None)
        out[n] = r
        outcomes.append(r["verdict"])
    return out, outcomes


def cmd_chrings(args, S):
    if not (args.ring and args.ideal and args.module):
        raise InputError("chrings needs --ring R --ideal J --module N")
    R = S.ring(args.ring)
    J = S.ideal(args.ideal)
    if J.ring != R:
        raise InputError(f"ideal {args.ideal} does not live over {args.ring}")
    out, outcomes = {}, []
    for n in _module_names(args, S):
        try:
            r = change_of_rings(R, [str(f) for f in J.polys], S.module(n), args.steps, args.smax)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        out[n] = r
        if r.get("violated"):
            outcomes.append(VIOLATED)
        else:
            outcomes.append(r["equality"])
    return out, outcomes


def cmd_threeideals(args, S):
    names = _names(args.ideals, S.ideals, "ideal") if args.ideals else []
    if len(names) != 3:
        raise InputError("threeideals needs --ideals I,J,K")
    minors = None
    if args.minors:
        rows = [r.split(",") for r in args.minors.split(";")]
        if len(rows) != 2 or len(rows[0]) != len(rows[1]):
            raise InputError("--minors expects two comma lists separated by ';'")
        minors = ([x.strip() for x in rows[0]], [x.strip() for x in rows[1]])
    ids = [S.ideal(n) for n in names]
    try:
        r = three_ideals(*ids, h=args.steps, s_max=args.smax, minors=minors)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    verdicts = [r["koszul"], r["reg_le_3"]] + ([r["H2_equals_minors"]] if minors else [])
    return {",".join(names): r}, [VIOLATED if VIOLATED in verdicts else (
        HOLDS if all(v == HOLDS for v in verdicts) else INCONCLUSIVE)]


def cmd_paper(args, S):
    names = list(CASES) if args.example in (None, "all") else [args.example]
    for n in names:
        if n not in CASES:
            raise InputError(f"unknown example {n!r}; choose from {', '.join(CASES)} or all")
    jobs = jobs_from_env(args.jobs)
    if jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            res = list(ex.map(run_case, names))
    else:
        res = [run_case(n) for n in names]
    return {r["example"]: r for r in res}, [HOLDS if r["ok"] else VIOLATED for r in res]


def cmd_fuzz(args, S):
    names = list(CORPORA) if args.corpus in (None, "all") else [args.corpus]
    for n in names:
        if n not in CORPORA:
            raise InputError(f"unknown corpus {n!r}; choose from {', '.join(CORPORA)} or all")
    out, outcomes = {}, []
    for n in names:
        kw = {}
        if args.steps_given:
            kw["h"] = args.steps
        if args.smax_given:
            kw["s_max"] = args.smax
        r = run_corpus(n, args.count, args.seed, jobs=args.jobs, **kw)
        out[n] = r
        outcomes.append(VIOLATED if r["failures"] else HOLDS)
    return out, outcomes


COMMANDS = {
    "resolve": (cmd_resolve, True, "minimal graded free resolution and Betti table"),
    "lind": (cmd_lind, True, "linearity defect with status and the Tor cross-check"),
    "sega": (cmd_sega, True, "maps Tor(m^s M) -> Tor(m^{s-1} M) per (i, s)"),
    "ses": (cmd_ses, True, "short exact sequence analysis"),
    "filtration": (cmd_filtration, True, "Koszul filtration check (or --conca q)"),
    "quotients": (cmd_quotients, True, "linear quotients with Betti/regularity formulas"),
    "chrings": (cmd_chrings, True, "lind over R versus over S = R/J"),
    "threeideals": (cmd_threeideals, True, "intersection of three linear ideals"),
    "paper": (cmd_paper, False, "pinned golden examples"),
    "fuzz": (cmd_fuzz, False, "random corpora"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lindef", description="Linearity defect of graded modules over F_p.")
    p.add_argument("--version", action="version", version=f"lindef {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, needs, helptext) in COMMANDS.items():
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("session", nargs="?", help="session file")
        sp.add_argument("--session", dest="session_opt", help="session file")
        sp.add_argument("--module", action="append", help="module or ideal name (repeatable)")
        sp.add_argument("--steps", type=int, default=None, help="resolution window h (default 6)")
        sp.add_argument("--smax", type=int, default=None, help="largest s for Tor maps (default 4)")
        sp.add_argument("--prime", type=int, help="override the characteristic")
        sp.add_argument("--order", choices=["degrevlex", "deglex"], help="monomial order")
        sp.add_argument("--out", help="write JSON here instead of stdout")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--jobs", type=int, default=None, help="worker processes (env LINDEF_JOBS)")
        sp.add_argument("--timing", action="store_true", help="include wall time in the report")
        if name == "lind":
            sp.add_argument("--no-sega", action="store_true")
        if name == "ses":
            sp.add_argument("--ses", action="append")
        if name == "filtration":
            sp.add_argument("--filtration", action="append")
            sp.add_argument("--conca", help="ideal q for the m^2 = qm construction")
        if name == "chrings":
            sp.add_argument("--ring")
            sp.add_argument("--ideal")
        if name == "threeideals":
            sp.add_argument("--ideals", action="append")
            sp.add_argument("--minors", help="two rows, e.g. 'x1,x2;y1,y2'")
        if name == "paper":
            sp.add_argument("--example", default="all")
        if name == "fuzz":
            sp.add_argument("--corpus", default="all")
            sp.add_argument("--count", type=int, default=None)
    return p


def _overall(outcomes) -> int:
    if VIOLATED in outcomes:
        return VIOLATION
    if outcomes and all(o == INCONCLUSIVE for o in outcomes):
        return ALL_INCONCLUSIVE
    return OK


def _emit(report: dict, path: str | None):
    text = json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.steps_given = args.steps is not None
    args.smax_given = args.smax is not None
    args.steps = 6 if args.steps is None else args.steps
    args.smax = 4 if args.smax is None else args.smax
    if args.jobs is None and os.environ.get("LINDEF_JOBS"):
        args.jobs = int(os.environ["LINDEF_JOBS"])
    fn, needs_session, _ = COMMANDS[args.command]
    t0 = time.perf_counter()
    try:
        if args.steps < 1 or args.smax < 1:
            raise InputError("--steps and --smax must be positive")
        S = _load(args) if needs_session else None
        results, outcomes = fn(args, S)
    except (InputError, SessionError, PolynomialSyntaxError, StructuralError) as exc:
        err = {"schema": SCHEMA, "command": args.command, "error": str(exc)}
        if isinstance(exc, SessionError):
            err.update({"line": exc.line, "column": exc.col, "declaration": exc.name})
        sys.stderr.write(f"lindef: {exc}\n")
        _emit(err, args.out)
        return INPUT_ERROR
    code = _overall(outcomes)
    S_ring = None
    if S is not None and S.rings:
        S_ring = next(iter(S.rings.values()))
    report = {
        "schema": SCHEMA,
        "command": args.command,
        "engine": f"lindef {__version__}",
        "parameters": {"p": S_ring.p if S_ring else args.prime or 32003,
                       "order": str(S_ring.order.kind) if S_ring else args.order or "degrevlex",
                       "h": args.steps if needs_session or args.steps_given else None,
                       "s_max": args.smax if needs_session or args.smax_given else None,
                       "seed": args.seed},
        "results": results,
        "outcomes": outcomes,
        "exit_code": code,
    }
    if args.timing:
        report["wall_time"] = round(time.perf_counter() - t0, 3)
    _emit(report, args.out)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
