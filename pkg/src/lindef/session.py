"""Session language: named rings, ideals, modules, sequences and filtrations.

    ring R = poly(p=32003; x,y,z,t) / (x^2, x*y);
    ideal I = (x^2, y);
    module N = coker R(-1)^3 -> R^2 [[y, x+3*t, t],[z, -t, x+t]];
    ses S = (M in P);
    filtration F = { (0); (x) by x; (x,y) by x, y };

Statements end with ``;`` (outside brackets); ``#`` starts a comment.  Ideals
and modules without an explicit ring use the last declared ring (``use R;``
switches)."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .core import PolynomialSyntaxError, format_polynomial
from .groebner import FreeVector, GradedRing
from .modules import (GradedModule, Ideal, _to_poly, colon, intersect, maximal_ideal, plus,
                      power_times, quotient_by, residue_field, times)
from .resolution import resolve, syzygy_module
from .structure import FiltrationSpec, ShortExactSequence


class SessionError(ValueError):
    def __init__(self, msg: str, line: int = 0, col: int = 0, name: str | None = None):
        where = f"line {line}" + (f", column {col}" if col else "")
        super().__init__(f"{where}: {msg}" if line else msg)
        self.line, self.col, self.name = line, col, name


@dataclass
class Decl:
    kind: str
    name: str
    line: int
    source: str
    ring: str | None = None


@dataclass
class Session:
    rings: Dict[str, GradedRing] = field(default_factory=dict)
    ideals: Dict[str, Ideal] = field(default_factory=dict)
    modules: Dict[str, GradedModule] = field(default_factory=dict)
    sequences: Dict[str, ShortExactSequence] = field(default_factory=dict)
    filtrations: Dict[str, FiltrationSpec] = field(default_factory=dict)
    decls: List[Decl] = field(default_factory=list)
    ring_of: Dict[str, str] = field(default_factory=dict)
    path: str | None = None

    def names(self):
        return [d.name for d in self.decls]

    def ring(self, name: str) -> GradedRing:
        return _lookup(self.rings, name, "ring")

    def ideal(self, name: str) -> Ideal:
        return _lookup(self.ideals, name, "ideal")

    def module(self, name: str) -> GradedModule:
        """Modules by name; ideals are accepted as submodules of R."""
        if name in self.modules:
            return self.modules[name]
        if name in self.ideals:
            return self.ideals[name]
        raise SessionError(f"unknown module {name!r}")

    def dump(self) -> str:
        return dump_session(self)


def _lookup(table, name, kind):
    if name not in table:
        raise SessionError(f"unknown {kind} {name!r}")
    return table[name]


# ---------------------------------------------------------------- lexing

def _statements(text: str):
    """Yield (line, column, statement, positions) split at top-level
    semicolons; positions[k] is the (line, column) of statement character k."""
    depth = 0
    buf: List[str] = []
    pos: List[Tuple[int, int]] = []
    line, col = 1, 0
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "\n":
            buf.append(" ")
            pos.append((line, col + 1))
            line += 1
            col = 0
            i += 1
            continue
        col += 1
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
            if depth < 0:
                raise SessionError(f"unbalanced {ch!r}", line, col)
        if ch == ";" and depth == 0:
            raw = "".join(buf)
            stmt = raw.strip()
            if stmt:
                lead = len(raw) - len(raw.lstrip())
                p = pos[lead:]
                yield p[0][0], p[0][1], stmt, p
            buf, pos = [], []
        else:
            buf.append(ch)
            pos.append((line, col))
        i += 1
    rest = "".join(buf).strip()
    if rest:
        if depth:
            raise SessionError("unbalanced brackets at end of input", line, col)
        raise SessionError("missing ';' at end of input", line, col)


def _locate(stmt: str, positions, exc: PolynomialSyntaxError):
    """Line and column of a polynomial syntax error inside a statement."""
    if exc.text:
        k = stmt.find(exc.text)
        if k >= 0 and k + exc.col < len(positions):
            return positions[k + exc.col]
    return positions[0]


def split_top(text: str, sep: str = ",") -> List[str]:
    out, depth, buf = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(buf).strip())
            buf = []
        else:
            buf.append(ch)
    last = "".join(buf).strip()
    if last or out:
        out.append(last)
    return out


def _strip_parens(text: str, open_="(", close=")") -> str:
    t = text.strip()
    if not (t.startswith(open_) and t.endswith(close)):
        raise ValueError(f"expected {open_}...{close}, got {text!r}")
    depth = 0
    for k, ch in enumerate(t):
        if ch == open_:
            depth += 1
        elif ch == close:
            depth -= 1
            if depth == 0 and k != len(t) - 1:
                raise ValueError(f"expected a single {open_}...{close} group in {text!r}")
    return t[1:-1].strip()


_STMT = re.compile(r"^(ring|ideal|module|ses|filtration)\s+([A-Za-z_]\w*)\s*=\s*(.*)$", re.S)
_USE = re.compile(r"^use\s+([A-Za-z_]\w*)$")
_SHIFT = re.compile(r"^([A-Za-z_]\w*)\s*(?:\(\s*([+-]?\s*\d+)\s*\))?\s*(?:\^\s*(\d+))?$")
_CALL = re.compile(r"^([a-z_]+)\s*\((.*)\)$", re.S)


# ---------------------------------------------------------------- parsing

def parse_session(text: str, prime: int | None = None, order: str | None = None,
                  path: str | None = None) -> Session:
    S = Session(path=path)
    current = None
    for line, col, stmt, positions in _statements(text):
        m = _USE.match(stmt)
        if m:
            current = m.group(1)
            if current not in S.rings:
                raise SessionError(f"unknown ring {current!r}", line, col)
            continue
        m = _STMT.match(stmt)
        if not m:
            raise SessionError(f"cannot parse statement {stmt[:40]!r}", line, col)
        kind, name, rhs = m.group(1), m.group(2), m.group(3).strip()
        if name in S.names():
            raise SessionError(f"name {name!r} declared twice", line, col, name)
        try:
            if kind == "ring":
                S.rings[name] = _parse_ring(S, rhs, prime, order)
                current = name
                rname = name
            elif kind == "ideal":
                rname = _need_ring(current)
                S.ideals[name] = _parse_ideal(S, S.rings[rname], rhs, name)
            elif kind == "module":
                M, rname = _parse_module(S, current, rhs, name)
                S.modules[name] = M
            elif kind == "ses":
                sub, amb = _parse_ses(rhs)
                Mv, Pv = S.module(sub), S.module(amb)
                S.sequences[name] = ShortExactSequence(Mv, Pv, name)
                rname = S.ring_of.get(amb)
            else:
                rname = _need_ring(current)
                S.filtrations[name] = _parse_filtration(S.rings[rname], rhs)
        except SessionError as exc:
            if exc.line:
                raise
            raise SessionError(str(exc), line, col, name) from None
        except PolynomialSyntaxError as exc:
            eline, ecol = _locate(stmt, positions, exc)
            raise SessionError(f"in {name}: {exc}", eline, ecol, name) from None
        except ValueError as exc:
            raise SessionError(f"in {name}: {exc}", line, col, name) from None
        S.ring_of[name] = rname
        S.decls.append(Decl(kind, name, line, stmt, rname))
    return S


def _need_ring(current):
    if current is None:
        raise SessionError("no ring declared yet")
    return current


def _parse_ring(S: Session, rhs: str, prime, order) -> GradedRing:
    base, rels = rhs, []
    parts = split_top(rhs, "/")
    if len(parts) == 2:
        base, rels = parts[0], [r for r in split_top(_strip_parens(parts[1])) if r]
    elif len(parts) > 2:
        raise SessionError("ring takes at most one quotient")
    m = _CALL.match(base.strip())
    if m and m.group(1) == "poly":
        args = split_top(m.group(2), ";")
        p, kind, perm, variables = 32003, "degrevlex", None, None
        for a in args:
            if "=" in a:
                k, v = (x.strip() for x in a.split("=", 1))
                if k == "p":
                    p = int(v)
                elif k == "order":
                    kind = v
                elif k == "perm":
                    perm = [int(x) for x in v.split(",")]
                else:
                    raise SessionError(f"unknown ring option {k!r}")
            else:
                variables = [v.strip() for v in a.split(",") if v.strip()]
        if not variables:
            raise SessionError("ring without variables")
        if prime is not None:
            p = prime
        if order is not None:
            kind = order
        return GradedRing(variables, rels, p=p, order=kind, permutation=perm)
    name = base.strip()
    if name in S.rings:
        R0 = S.rings[name]
        return GradedRing(R0.poly, [format_polynomial(f) for f in R0.defining_gb] + rels)
    raise SessionError(f"cannot parse ring {rhs!r}")


def _parse_ideal(S: Session, R: GradedRing, rhs: str, name) -> Ideal:
    t = rhs.strip()
    if t.startswith("("):
        gens = [g for g in split_top(_strip_parens(t)) if g and g != "0"]
        return Ideal(R, gens, name)
    if t in ("maxideal", "max"):
        return maximal_ideal(R)
    m = _CALL.match(t)
    if not m:
        if t in S.ideals:
            return S.ideals[t]
        raise SessionError(f"cannot parse ideal {rhs!r}")
    fn, args = m.group(1), split_top(m.group(2))
    if fn == "intersect":
        out = intersect(*[_ideal_arg(S, R, a) for a in args], name=name)
        return Ideal.from_module(out)
    if fn == "colon":
        return colon(_ideal_arg(S, R, args[0]), args[1], name)
    if fn == "plus":
        out = _ideal_arg(S, R, args[0])
        for a in args[1:]:
            out = plus(out, _ideal_arg(S, R, a))
        return Ideal.from_module(out)
    if fn == "times":
        out = _ideal_arg(S, R, args[0])
        for a in args[1:]:
            out = times(out, _ideal_arg(S, R, a))
        return Ideal.from_module(out)
    if fn == "power":
        I = _ideal_arg(S, R, args[0])
        out = I
        for _ in range(int(args[1]) - 1):
            out = times(out, I)
        return Ideal.from_module(out)
    raise SessionError(f"unknown ideal operation {fn!r}")


def _ideal_arg(S: Session, R: GradedRing, text: str) -> Ideal:
    """A declared ideal name or an inline ideal expression over R."""
    t = text.strip()
    if t in S.ideals:
        return S.ideals[t]
    return _parse_ideal(S, R, t, None)


def parse_shifts(S: Session, text: str) -> Tuple[str, Tuple[int, ...]]:
    """``R(-1)^3 + R^2`` -> (ring name, (1, 1, 1, 0, 0))."""
    rname = None
    out: List[int] = []
    for part in split_top(text, "+"):
        m = _SHIFT.match(part.strip())
        if not m:
            raise SessionError(f"cannot parse free module {part!r}")
        r, d, k = m.group(1), m.group(2), m.group(3)
        if r not in S.rings:
            raise SessionError(f"unknown ring {r!r}")
        if rname is not None and r != rname:
            raise SessionError("free module mixes rings")
        rname = r
        shift = -int(d.replace(" ", "")) if d else 0
        out.extend([shift] * (int(k) if k else 1))
    return rname, tuple(out)


def _parse_matrix(R: GradedRing, text: str, src, tgt, name) -> List[FreeVector]:
    body = _strip_parens(text.strip(), "[", "]")
    rows = [split_top(_strip_parens(r, "[", "]")) for r in split_top(body)] if body else []
    if len(rows) != len(tgt):
        raise SessionError(f"matrix has {len(rows)} rows, target has rank {len(tgt)}")
    for r in rows:
        if len(r) != len(src):
            raise SessionError(f"matrix row has {len(r)} entries, source has rank {len(src)}")
    cols = []
    for c, a in enumerate(src):
        entries = [R.poly.parse(rows[r][c]) for r in range(len(tgt))]
        for r, f in enumerate(entries):
            if not f:
                continue
            ok, d = f.is_homogeneous()
            if not ok or d != a - tgt[r]:
                raise SessionError(f"entry ({r + 1},{c + 1}) = {f} is not homogeneous of degree "
                                   f"{a - tgt[r]} (declaration {name})")
        v = FreeVector.from_entries(R, tgt, entries, degree=a)
        cols.append(FreeVector(R, tgt, v.reduced().terms, a))
    return cols


def _parse_map(S: Session, text: str, name):
    m = re.match(r"^(.*?)->(.*?)(\[.*\])\s*$", text.strip(), re.S)
    if not m:
        raise SessionError(f"expected SOURCE -> TARGET [[...]] in {text!r}")
    r1, src = parse_shifts(S, m.group(1))
    r2, tgt = parse_shifts(S, m.group(2))
    if r1 != r2:
        raise SessionError("source and target over different rings")
    R = S.rings[r1]
    return r1, src, tgt, _parse_matrix(R, m.group(3), src, tgt, name)


def _parse_module(S: Session, current, rhs: str, name):
    t = rhs.strip()
    for kw in ("coker", "image", "subquotient"):
        if t.startswith(kw + " "):
            body = t[len(kw):].strip()
            if kw == "subquotient":
                parts = re.split(r"\bmod\b", body, maxsplit=1)
                r, _, tgt, gens = _parse_map(S, parts[0], name)
                rels = []
                if len(parts) == 2:
                    r2, _, tgt2, rels = _parse_map(S, parts[1], name)
                    if tgt2 != tgt or r2 != r:
                        raise SessionError("generators and relations live in different modules")
                return GradedModule(S.rings[r], tgt, gens, rels, name), r
            r, src, tgt, cols = _parse_map(S, body, name)
            if kw == "coker":
                return GradedModule.coker(S.rings[r], tgt, cols, name), r
            return GradedModule(S.rings[r], tgt, cols, [], name), r
        if t.startswith("free "):
            r, tgt = parse_shifts(S, t[5:])
            return GradedModule.free(S.rings[r], tgt, name), r
    if t in ("residue", "k"):
        r = _need_ring(current)
        return residue_field(S.rings[r], name), r
    m = _CALL.match(t)
    if m:
        fn, args = m.group(1), split_top(m.group(2))
        if fn == "residue":
            return residue_field(S.ring(args[0]), name), args[0]
        if fn == "quotient":
            if args[0] in S.ideals:
                return S.ideals[args[0]].quotient_module(name), S.ring_of[args[0]]
            r = _need_ring(current)
            return _ideal_arg(S, S.rings[r], args[0]).quotient_module(name), r
        if fn == "power":
            M = S.module(args[0])
            return power_times(int(args[1]), M, name), S.ring_of[args[0]]
        if fn == "times":
            M = S.module(args[1])
            I = _ideal_arg(S, M.ring, args[0])
            return times(I, M, name), S.ring_of[args[1]]
        if fn == "syzygy":
            M = S.module(args[0])
            i = int(args[1])
            res = resolve(M, max(i, 1))
            return syzygy_module(res, i, name), S.ring_of[args[0]]
        if fn in ("intersect", "plus"):
            mods = [S.module(a) for a in args]
            out = intersect(*mods, name=name) if fn == "intersect" else mods[0]
            if fn == "plus":
                for B in mods[1:]:
                    out = plus(out, B, name)
            return GradedModule(out.ring, out.shifts, out.gens, out.rels, name), S.ring_of[args[0]]
        raise SessionError(f"unknown module operation {fn!r}")
    parts = split_top(t, "/")
    if len(parts) == 2:
        P, M = S.module(parts[0].strip()), S.module(parts[1].strip())
        return quotient_by(P, M, name), S.ring_of[parts[0].strip()]
    if t in S.ideals:
        I = S.ideals[t]
        return GradedModule(I.ring, I.shifts, I.gens, I.rels, name), S.ring_of[t]
    if t in S.modules:
        return S.modules[t], S.ring_of[t]
    raise SessionError(f"cannot parse module {rhs!r}")


def _parse_ses(rhs: str):
    m = re.match(r"^\(\s*([A-Za-z_]\w*)\s+in\s+([A-Za-z_]\w*)\s*\)$", rhs.strip())
    if not m:
        raise SessionError("expected (SUB in AMBIENT)")
    return m.group(1), m.group(2)


def _parse_filtration(R: GradedRing, rhs: str) -> FiltrationSpec:
    body = _strip_parens(rhs.strip(), "{", "}")
    ideals: Dict[str, Ideal] = {}
    chains: Dict[str, list] = {}
    for entry in split_top(body, ";"):
        if not entry:
            continue
        label = None
        m = re.match(r"^([A-Za-z_]\w*)\s*=\s*(.*)$", entry, re.S)
        if m:
            label, entry = m.group(1), m.group(2)
        parts = re.split(r"\bby\b", entry, maxsplit=1)
        gens_txt = parts[0].strip()
        gens = [R.poly.parse(g) for g in split_top(_strip_parens(gens_txt)) if g and g != "0"]
        I = Ideal(R, gens)
        key = label or "(" + (",".join(format_polynomial(g) for g in gens) or "0") + ")"
        if key in ideals:
            raise SessionError(f"filtration member {key} listed twice")
        ideals[key] = I
        if len(parts) == 2:
            chains[key] = [c.strip() for c in split_top(parts[1]) if c.strip()]
    return FiltrationSpec(R, ideals, chains)


# ---------------------------------------------------------------- serialization

def _fmt_shifts(rname: str, shifts) -> str:
    if not shifts:
        return f"{rname}^0"
    out = []
    k = 0
    while k < len(shifts):
        a = shifts[k]
        r = 1
        while k + r < len(shifts) and shifts[k + r] == a:
            r += 1
        base = rname if a == 0 else f"{rname}({-a})"
        out.append(base if r == 1 else f"{base}^{r}")
        k += r
    return " + ".join(out)


def _fmt_matrix(R: GradedRing, shifts, cols) -> str:
    rows = []
    for j in range(len(shifts)):
        ent = []
        for t in cols:
            f = _to_poly(R, {(0, e): c for (jj, e), c in t.items() if jj == j})
            ent.append(format_polynomial(f) if f else "0")
        rows.append("[" + ", ".join(ent) + "]")
    return "[" + ",".join(rows) + "]"


def dump_ring(name: str, R: GradedRing) -> str:
    opts = [f"p={R.p}", ",".join(R.variables)]
    if R.order.kind != "degrevlex":
        opts.append(f"order={R.order.kind}")
    perm = getattr(R.order, "permutation", None)
    if perm is not None and tuple(perm) != tuple(range(R.nvars)):
        opts.append("perm=" + ",".join(str(x) for x in perm))
    out = f"ring {name} = poly({'; '.join(opts)})"
    if R.defining_gb:
        out += " / (" + ", ".join(format_polynomial(f) for f in R.defining_gb) + ")"
    return out + ";"


def dump_module(name: str, rname: str, M: GradedModule) -> str:
    R = M.ring
    out = (f"module {name} = subquotient {_fmt_shifts(rname, [d for d, _ in M.gens])} -> "
           f"{_fmt_shifts(rname, M.shifts)} {_fmt_matrix(R, M.shifts, [t for _, t in M.gens])}")
    if M.rels:
        out += (f" mod {_fmt_shifts(rname, [d for d, _ in M.rels])} -> {_fmt_shifts(rname, M.shifts)} "
                f"{_fmt_matrix(R, M.shifts, [t for _, t in M.rels])}")
    return out + ";"


def dump_session(S: Session) -> str:
    lines = []
    current = None
    for d in S.decls:
        if d.kind == "ring":
            lines.append(dump_ring(d.name, S.rings[d.name]))
            current = d.name
            continue
        if d.ring is not None and d.ring != current:
            lines.append(f"use {d.ring};")
            current = d.ring
        if d.kind == "ideal":
            I = S.ideals[d.name]
            gens = [format_polynomial(_to_poly(I.ring, t)) for _, t in I.gens if t]
            lines.append(f"ideal {d.name} = ({', '.join(gens)});")
        elif d.kind == "module":
            lines.append(dump_module(d.name, d.ring, S.modules[d.name]))
        elif d.kind == "ses":
            sub, amb = _ses_names(S, d)
            lines.append(f"ses {d.name} = ({sub} in {amb});")
        elif d.kind == "filtration":
            F = S.filtrations[d.name]
            parts = []
            for key, I in F.ideals.items():
                gens = ", ".join(format_polynomial(_to_poly(I.ring, t)) for _, t in I.gens if t)
                entry = f"({gens or 0})"
                if re.match(r"^[A-Za-z_]\w*$", key):
                    entry = f"{key} = {entry}"
                if key in F.chains:
                    entry += " by " + ", ".join(format_polynomial(F.ring.poly.parse(x))
                                                for x in F.chains[key])
                parts.append(entry)
            lines.append(f"filtration {d.name} = {{ {'; '.join(parts)} }};")
    return "\n".join(lines) + "\n"


def _ses_names(S: Session, d: Decl):
    m = re.search(r"\(\s*(\w+)\s+in\s+(\w+)\s*\)", d.source)
    return m.group(1), m.group(2)


def same_ring(A: GradedRing, B: GradedRing) -> bool:
    return A.poly == B.poly and tuple(A._gb_terms) == tuple(B._gb_terms)


def same_module(A: GradedModule, B: GradedModule) -> bool:
    return (same_ring(A.ring, B.ring) and A.shifts == B.shifts and A.gens == B.gens
            and A.rels == B.rels)


__all__ = ["Session", "SessionError", "parse_session", "dump_session", "parse_shifts",
           "same_module", "same_ring"]
