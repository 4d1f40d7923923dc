"""Gröbner bases for ideals and submodules of graded free modules over S/I.

Vectors are dicts keyed by ``(position, exponent)``.  The module order is
position-over-term with position 0 largest, refined by the ring's monomial
order.  Arithmetic over the quotient ring is done by keeping every vector in
normal form modulo the defining ideal; S-pairs against the (implicit)
elements ``g * e_k`` with ``g`` in the defining Gröbner basis are generated
explicitly, which is the same as appending ``I * e_k`` to the generators.
"""
from __future__ import annotations

import heapq
from collections import defaultdict
from typing import Dict, List, Sequence, Tuple

from .core import (Exp, Polynomial, PolynomialRing, StructuralError, format_terms,
                   mono_div, mono_divides, mono_lcm, mono_mul, monomials_of_degree)

Key = Tuple[int, Exp]
VecDict = Dict[Key, int]


# ---------------------------------------------------------------- rings

class GradedRing:
    """Standard graded quotient S/I of a polynomial ring by a homogeneous ideal."""

    def __init__(self, variables: Sequence[str] | PolynomialRing, defining_ideal=(),
                 p: int = 32003, order: str = "degrevlex", permutation=None):
        if isinstance(variables, PolynomialRing):
            self.poly = variables
        else:
            self.poly = PolynomialRing(variables, p, order, permutation)
        gens = [self.poly.parse(f) for f in defining_ideal]
        for f in gens:
            ok, d = f.is_homogeneous()
            if not ok:
                raise ValueError(f"defining generator {f} is not homogeneous")
            if d == 0:
                raise ValueError("defining ideal contains a unit")
        self.defining_ideal = tuple(f for f in gens if f)
        self._nf_cache: Dict[Exp, Dict[Exp, int]] = {}
        self._basis_cache: Dict[int, list] = {}
        self._index_cache: Dict[int, dict] = {}
        self.gb_lms: Tuple[Exp, ...] = ()
        self._gb_terms: List[Dict[Exp, int]] = []
        if self.defining_ideal:
            gb = _ideal_gb(self.poly, [f.term_dict for f in self.defining_ideal])
            self._gb_terms = gb
            key = self.poly.order.key
            self.gb_lms = tuple(max(g, key=key) for g in gb)
        self.defining_gb = tuple(Polynomial(self.poly, dict(g), _clean=True) for g in self._gb_terms)

    # -- basic data
    @property
    def field(self):
        return self.poly.field

    @property
    def p(self) -> int:
        return self.poly.p

    @property
    def variables(self):
        return self.poly.variables

    @property
    def nvars(self) -> int:
        return self.poly.nvars

    @property
    def order(self):
        return self.poly.order

    def __eq__(self, other):
        return (isinstance(other, GradedRing) and self.poly == other.poly
                and self._gb_terms == other._gb_terms)

    def __hash__(self):
        return hash((self.poly, len(self._gb_terms)))

    def __repr__(self):
        rel = ", ".join(str(g) for g in self.defining_gb) or "0"
        return f"GradedRing({list(self.variables)}, p={self.p}, I=({rel}))"

    def parse(self, text) -> Polynomial:
        return self.poly.parse(text)

    def is_polynomial_ring(self) -> bool:
        return not self._gb_terms

    # -- normal forms modulo I
    def is_standard(self, e: Exp) -> bool:
        for lm in self.gb_lms:
            if mono_divides(lm, e):
                return False
        return True

    def nf_mono(self, e: Exp) -> Dict[Exp, int]:
        if not self._gb_terms:
            return {e: 1}
        r = self._nf_cache.get(e)
        if r is None:
            r = self._reduce_poly({e: 1})
            self._nf_cache[e] = r
        return r

    def _reduce_poly(self, f: Dict[Exp, int]) -> Dict[Exp, int]:
        p = self.p
        key = self.poly.order.key
        work = dict(f)
        heap = [(_neg(key(e)), e) for e in work]
        heapq.heapify(heap)
        out = {}
        while heap:
            _, e = heapq.heappop(heap)
            c = work.pop(e, None)
            if c is None:
                continue
            for g, lm in zip(self._gb_terms, self.gb_lms):
                if mono_divides(lm, e):
                    break
            else:
                out[e] = c
                continue
            m = mono_div(e, lm)
            for ge, gc in g.items():
                if ge == lm:
                    continue
                ne = mono_mul(ge, m)
                v = (work.get(ne, 0) - c * gc) % p
                if v:
                    if ne not in work:
                        heapq.heappush(heap, (_neg(key(ne)), ne))
                    work[ne] = v
                else:
                    work.pop(ne, None)
        return out

    def nf_poly(self, f: Polynomial) -> Polynomial:
        if f.ring != self.poly:
            raise StructuralError("polynomial from another ring")
        if not self._gb_terms:
            return f
        acc: Dict[Exp, int] = {}
        p = self.p
        for e, c in f.term_dict.items():
            for e2, c2 in self.nf_mono(e).items():
                acc[e2] = (acc.get(e2, 0) + c * c2) % p
        return Polynomial(self.poly, {e: c for e, c in acc.items() if c}, _clean=True)

    # -- graded pieces
    def basis(self, d: int) -> list:
        """Standard monomials of degree d, descending in the monomial order."""
        b = self._basis_cache.get(d)
        if b is None:
            key = self.poly.order.key
            b = [e for e in monomials_of_degree(self.nvars, d) if self.is_standard(e)]
            b.sort(key=key, reverse=True)
            self._basis_cache[d] = b
        return b

    def basis_index(self, d: int) -> dict:
        idx = self._index_cache.get(d)
        if idx is None:
            idx = {e: i for i, e in enumerate(self.basis(d))}
            self._index_cache[d] = idx
        return idx

    def hilbert(self, d: int) -> int:
        return len(self.basis(d)) if d >= 0 else 0

    def is_artinian(self) -> bool:
        pure = set()
        for lm in self.gb_lms:
            nz = [i for i, a in enumerate(lm) if a]
            if len(nz) == 1:
                pure.add(nz[0])
        return len(pure) == self.nvars

    def top_degree(self) -> int | None:
        """Largest d with R_d != 0 for Artinian rings, None otherwise."""
        if not self.is_artinian():
            return None
        d = 0
        while self.hilbert(d + 1):
            d += 1
        return d

    def linear_forms_rank(self) -> int:
        return self.hilbert(1)


def _neg(k: tuple) -> tuple:
    return tuple(-a for a in k)


# ---------------------------------------------------------------- free vectors

class FreeVector:
    """Element of a graded free module ⊕ R(-d_j) over a GradedRing.

    Terms are stored as ``{(j, exponent): coeff}``.  The zero vector carries an
    explicit degree so that it can stand in for a generator."""

    __slots__ = ("ring", "shifts", "terms", "degree")

    def __init__(self, ring: GradedRing, shifts: Sequence[int], terms: VecDict,
                 degree: int | None = None, _clean: bool = False):
        self.ring = ring
        self.shifts = tuple(shifts)
        if not _clean:
            p = ring.p
            clean = {}
            for (j, e), c in terms.items():
                if not 0 <= j < len(self.shifts):
                    raise StructuralError("term position outside the ambient module")
                c %= p
                if c:
                    clean[(j, tuple(e))] = c
            terms = clean
        self.terms = terms
        degs = {sum(e) + self.shifts[j] for (j, e) in terms}
        if len(degs) > 1:
            raise ValueError("vector is not homogeneous")
        if degs:
            d = degs.pop()
            if degree is not None and degree != d:
                raise ValueError(f"vector has degree {d}, not {degree}")
            degree = d
        self.degree = degree

    @classmethod
    def from_entries(cls, ring: GradedRing, shifts, entries, degree=None) -> "FreeVector":
        terms: VecDict = {}
        for j, f in enumerate(entries):
            f = ring.parse(f)
            for e, c in f.term_dict.items():
                terms[(j, e)] = c
        if len(entries) != len(tuple(shifts)):
            raise StructuralError("entry count differs from shift count")
        return cls(ring, shifts, terms, degree)

    @classmethod
    def unit(cls, ring: GradedRing, shifts, j: int) -> "FreeVector":
        return cls(ring, shifts, {(j, (0,) * ring.nvars): 1})

    def entries(self) -> List[Polynomial]:
        per = [dict() for _ in self.shifts]
        for (j, e), c in self.terms.items():
            per[j][e] = c
        return [Polynomial(self.ring.poly, t, _clean=True) for t in per]

    def is_zero(self) -> bool:
        return not self.terms

    def _same(self, other: "FreeVector"):
        if self.shifts != other.shifts or self.ring.poly != other.ring.poly:
            raise StructuralError("vectors live in different free modules")

    def __add__(self, other: "FreeVector") -> "FreeVector":
        self._same(other)
        p = self.ring.p
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = (out.get(k, 0) + c) % p
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        deg = self.degree if self.degree is not None else other.degree
        return FreeVector(self.ring, self.shifts, out, deg, _clean=True)

    def __neg__(self):
        p = self.ring.p
        return FreeVector(self.ring, self.shifts, {k: p - c for k, c in self.terms.items()},
                          self.degree, _clean=True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "FreeVector":
        p = self.ring.p
        c %= p
        return FreeVector(self.ring, self.shifts,
                          {k: v * c % p for k, v in self.terms.items()} if c else {},
                          self.degree, _clean=True)

    def times(self, f: Polynomial) -> "FreeVector":
        f = self.ring.parse(f)
        ok, d = f.is_homogeneous()
        if not ok:
            raise ValueError("multiplier is not homogeneous")
        out = vec_mul_poly(self.ring, self.terms, f.term_dict)
        deg = None if self.degree is None or d is None else self.degree + d
        return FreeVector(self.ring, self.shifts, out, deg, _clean=True)

    def reduced(self) -> "FreeVector":
        """Normal form modulo the defining ideal."""
        return FreeVector(self.ring, self.shifts, vec_nf(self.ring, self.terms),
                          self.degree, _clean=True)

    def __eq__(self, other):
        return (isinstance(other, FreeVector) and self.shifts == other.shifts
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.shifts, frozenset(self.terms.items())))

    def __repr__(self):
        return "FreeVector(" + ", ".join(str(f) for f in self.entries()) + ")"

    def __str__(self):
        return "[" + ", ".join(str(f) for f in self.entries()) + "]"


def vec_nf(R: GradedRing, v: VecDict) -> VecDict:
    if R.is_polynomial_ring():
        return dict(v)
    p = R.p
    out: VecDict = {}
    for (j, e), c in v.items():
        for e2, c2 in R.nf_mono(e).items():
            k = (j, e2)
            out[k] = (out.get(k, 0) + c * c2) % p
    return {k: c for k, c in out.items() if c}


def vec_mul_mono(R: GradedRing, v: VecDict, m: Exp, c: int = 1) -> VecDict:
    """c * m * v reduced modulo I."""
    p = R.p
    if R.is_polynomial_ring():
        return {(j, mono_mul(e, m)): a * c % p for (j, e), a in v.items()}
    out: VecDict = {}
    for (j, e), a in v.items():
        for e2, c2 in R.nf_mono(mono_mul(e, m)).items():
            k = (j, e2)
            out[k] = (out.get(k, 0) + a * c * c2) % p
    return {k: x for k, x in out.items() if x}


def vec_mul_poly(R: GradedRing, v: VecDict, f: Dict[Exp, int]) -> VecDict:
    p = R.p
    out: VecDict = {}
    for m, c in f.items():
        for k, a in vec_mul_mono(R, v, m, c).items():
            out[k] = (out.get(k, 0) + a) % p
    return {k: x for k, x in out.items() if x}


def vec_axpy(p: int, acc: VecDict, v: VecDict, c: int) -> None:
    """acc += c * v in place."""
    for k, a in v.items():
        x = (acc.get(k, 0) + a * c) % p
        if x:
            acc[k] = x
        else:
            acc.pop(k, None)


def format_vector(R: GradedRing, shifts, v: VecDict) -> str:
    per = [[] for _ in shifts]
    for (j, e), c in v.items():
        per[j].append((e, c))
    key = R.order.key
    return "[" + ", ".join(format_terms(R.variables, R.field, sorted(t, key=lambda x: key(x[0]), reverse=True))
                           for t in per) + "]"


# ---------------------------------------------------------------- engine

class _Elem:
    __slots__ = ("t", "s", "pos", "lm", "deg")

    def __init__(self, t, s, pos, lm, deg):
        self.t = t
        self.s = s
        self.pos = pos
        self.lm = lm
        self.deg = deg


class _Engine:
    """Homogeneous Buchberger over S/I with optional tracking of a second
    (source) block.  Syzygies are the source parts of S-pairs and inputs
    whose target part reduces to zero."""

    def __init__(self, R: GradedRing, shifts: Sequence[int], track: bool = False,
                 product_criterion: bool = False):
        self.R = R
        self.p = R.p
        self.shifts = tuple(shifts)
        self.track = track
        self.product_criterion = product_criterion and not track and R.is_polynomial_ring()
        self.G: List[_Elem] = []
        self.by_pos: Dict[int, List[int]] = defaultdict(list)
        self.queue: list = []
        self._seq = 0
        self.syz: List[Tuple[int, VecDict]] = []
        self._okey = R.order.key
        self._nk_cache: Dict[Key, tuple] = {}
        self.stats = {"pairs": 0, "zero": 0}

    def nkey(self, k: Key) -> tuple:
        r = self._nk_cache.get(k)
        if r is None:
            r = (k[0],) + _neg(self._okey(k[1]))
            self._nk_cache[k] = r
        return r

    def lead(self, t: VecDict) -> Key:
        return min(t, key=self.nkey)

    def _push(self, deg: int, item):
        self._seq += 1
        heapq.heappush(self.queue, (deg, self._seq, item))

    def add_input(self, t: VecDict, s: VecDict | None, deg: int):
        self._push(deg, ("in", t, s))

    # -- reduction
    def find_reducer(self, pos: int, e: Exp) -> int:
        for i in self.by_pos.get(pos, ()):
            if mono_divides(self.G[i].lm, e):
                return i
        return -1

    def reduce(self, t: VecDict, s: VecDict | None, full: bool = True):
        p = self.p
        R = self.R
        poly = R.is_polynomial_ring()
        nk = self.nkey
        heap = [(nk(k), k) for k in t]
        heapq.heapify(heap)
        out: VecDict = {}
        while heap:
            _, k = heapq.heappop(heap)
            c = t.get(k)
            if c is None:
                continue
            pos, e = k
            r = self.find_reducer(pos, e)
            if r < 0:
                out[k] = c
                del t[k]
                if not full:
                    out.update(t)
                    t.clear()
                    break
                continue
            g = self.G[r]
            m = mono_div(e, g.lm)
            del t[k]
            for (gp, ge), gc in g.t.items():
                if gp == pos and ge == g.lm:
                    continue
                ne = mono_mul(ge, m)
                if poly:
                    items = ((ne, 1),)
                else:
                    items = R.nf_mono(ne).items()
                for e2, c2 in items:
                    kk = (gp, e2)
                    old = t.get(kk)
                    v = ((old or 0) - c * gc * c2) % p
                    if v:
                        if old is None:
                            heapq.heappush(heap, (nk(kk), kk))
                        t[kk] = v
                    elif old is not None:
                        del t[kk]
            if s is not None and g.s:
                vec_axpy(p, s, vec_mul_mono(R, g.s, m), -c)
        return out, s

    # -- pairs
    def _spoly(self, i: int, j):
        gi = self.G[i]
        R = self.R
        if isinstance(j, tuple):   # pair with g * e_pos, g in the defining GB
            lmg = R.gb_lms[j[1]]
            L = mono_lcm(gi.lm, lmg)
            m = mono_div(L, gi.lm)
            t = vec_mul_mono(R, gi.t, m)
            s = vec_mul_mono(R, gi.s, m) if gi.s is not None else None
            return t, s
        gj = self.G[j]
        L = mono_lcm(gi.lm, gj.lm)
        mi = mono_div(L, gi.lm)
        mj = mono_div(L, gj.lm)
        t = vec_mul_mono(R, gi.t, mi)
        vec_axpy(self.p, t, vec_mul_mono(R, gj.t, mj), -1)
        s = None
        if self.track:
            s = vec_mul_mono(R, gi.s, mi)
            vec_axpy(self.p, s, vec_mul_mono(R, gj.s, mj), -1)
        return t, s

    def _insert(self, t: VecDict, s: VecDict | None, deg: int):
        p = self.p
        lk = self.lead(t)
        inv = pow(t[lk], p - 2, p)
        if inv != 1:
            t = {k: c * inv % p for k, c in t.items()}
            if s is not None:
                s = {k: c * inv % p for k, c in s.items()}
        h = len(self.G)
        pos, lm = lk
        self.G.append(_Elem(t, s, pos, lm, deg))
        self._update(h)
        self.by_pos[pos].append(h)

    def _update(self, h: int):
        """Gebauer-Möller pair update."""
        gh = self.G[h]
        pos, lmh = gh.pos, gh.lm
        sh = self.shifts[pos]
        # drop queued pairs made redundant by the new leading term
        kept = []
        changed = False
        for item in self.queue:
            it = item[2]
            if it[0] == "pair" and it[3] == pos:
                i, j, L = it[1], it[2], it[4]
                if (mono_divides(lmh, L) and mono_lcm(self.G[i].lm, lmh) != L
                        and mono_lcm(self.G[j].lm, lmh) != L):
                    changed = True
                    continue
            kept.append(item)
        if changed:
            heapq.heapify(kept)
            self.queue = kept
        # new pairs
        cands = []
        for i in self.by_pos.get(pos, ()):
            L = mono_lcm(self.G[i].lm, lmh)
            cands.append((i, L))
        keep = []
        for a, (i, L) in enumerate(cands):
            bad = False
            for b, (k, L2) in enumerate(cands):
                if b != a and L2 != L and mono_divides(L2, L):
                    bad = True
                    break
            if not bad:
                keep.append((i, L))
        seen = set()
        for i, L in keep:
            if L in seen:
                continue
            seen.add(L)
            if self.product_criterion and sum(L) == sum(self.G[i].lm) + sum(lmh):
                continue
            self._push(sum(L) + sh, ("pair", i, h, pos, L))
        for gi, lmg in enumerate(self.R.gb_lms):
            L = mono_lcm(lmh, lmg)
            self._push(sum(L) + sh, ("ipair", h, gi))

    def run(self, max_degree: int | None = None):
        while self.queue:
            deg, _, item = self.queue[0]
            if max_degree is not None and deg > max_degree:
                break
            heapq.heappop(self.queue)
            if item[0] == "in":
                t, s = dict(item[1]), (dict(item[2]) if item[2] is not None else None)
            elif item[0] == "pair":
                t, s = self._spoly(item[1], item[2])
                self.stats["pairs"] += 1
            else:
                t, s = self._spoly(item[1], ("I", item[2]))
                self.stats["pairs"] += 1
            t, s = self.reduce(t, s)
            if t:
                self._insert(t, s, deg)
            else:
                self.stats["zero"] += 1
                if s:
                    self.syz.append((deg, s))
        return self

    def interreduce(self):
        """Return reduced GB elements (target parts only), sorted."""
        keep = []
        for i, g in enumerate(self.G):
            if any(j != i and mono_divides(self.G[j].lm, g.lm) and
                   (self.G[j].lm != g.lm or j < i)
                   for j in self.by_pos[g.pos]):
                continue
            keep.append(i)
        out = []
        for i in keep:
            g = self.G[i]
            lk = (g.pos, g.lm)
            tail = {k: c for k, c in g.t.items() if k != lk}
            # reduce the tail by the kept elements
            saved = self.by_pos
            self.by_pos = defaultdict(list)
            for j in keep:
                self.by_pos[self.G[j].pos].append(j)
            red, _ = self.reduce(tail, None)
            self.by_pos = saved
            red[lk] = g.t[lk]
            out.append((g.deg, lk, red))
        out.sort(key=lambda x: (x[0], self.nkey(x[1])))
        return out


def _ideal_gb(S: PolynomialRing, gens: List[Dict[Exp, int]]) -> List[Dict[Exp, int]]:
    """Reduced Gröbner basis of a homogeneous ideal of S (rank-1 engine)."""
    R0 = GradedRing(S)
    eng = _Engine(R0, (0,), product_criterion=True)
    for f in gens:
        if f:
            eng.add_input({(0, e): c for e, c in f.items()}, None, max(sum(e) for e in f))
    eng.run()
    return [{e: c for (_, e), c in v.items()} for _, _, v in eng.interreduce()]


# ---------------------------------------------------------------- public API

class ModuleGB:
    """Reduced Gröbner basis of a submodule of a graded free module over R."""

    def __init__(self, ring: GradedRing, shifts, generators: List[FreeVector], reduced=True):
        self.ring = ring
        self.shifts = tuple(shifts)
        self.generators = generators
        self.reduced = reduced

    def leading_terms(self):
        return [min(g.terms, key=lambda k: (k[0],) + _neg(self.ring.order.key(k[1])))
                for g in self.generators]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def _engine(self) -> _Engine:
        eng = _Engine(self.ring, self.shifts)
        for g in self.generators:
            t = dict(g.terms)
            eng.G.append(_Elem(t, None, *eng.lead(t), g.degree))
            eng.by_pos[eng.G[-1].pos].append(len(eng.G) - 1)
        return eng


def _check_gens(R: GradedRing, gens: Sequence[FreeVector]):
    if not gens:
        return None
    shifts = gens[0].shifts
    for g in gens:
        if g.shifts != shifts or g.ring.poly != R.poly:
            raise StructuralError("generators live in different free modules")
        if g.degree is None:
            raise ValueError("generator without a degree")
    return shifts


def buchberger(gens: Sequence[FreeVector], R: GradedRing, shifts=None) -> ModuleGB:
    """Reduced GB of the submodule generated by gens (plus I times the ambient)."""
    sh = _check_gens(R, gens)
    shifts = tuple(sh if sh is not None else (shifts or (0,)))
    eng = _Engine(R, shifts, product_criterion=len(shifts) == 1)
    for g in gens:
        t = vec_nf(R, g.terms)
        if t:
            eng.add_input(t, None, g.degree)
    eng.run()
    out = [FreeVector(R, shifts, v, d, _clean=True) for d, _, v in eng.interreduce()]
    return ModuleGB(R, shifts, out, True)


def normal_form(v: FreeVector, G: ModuleGB, R: GradedRing | None = None) -> FreeVector:
    R = R or G.ring
    if v.shifts != G.shifts:
        raise StructuralError("vector and basis live in different free modules")
    eng = G._engine()
    t, _ = eng.reduce(vec_nf(R, v.terms), None)
    return FreeVector(R, v.shifts, t, v.degree, _clean=True)


def s_pairs_reduce_to_zero(G: ModuleGB) -> bool:
    """Post-hoc Buchberger criterion check (all pairs, no criteria)."""
    eng = G._engine()
    n = len(eng.G)
    for h in range(n):
        for i in range(h):
            if eng.G[i].pos != eng.G[h].pos:
                continue
            t, _ = eng._spoly(i, h)
            if eng.reduce(t, None)[0]:
                return False
        for gi in range(len(G.ring.gb_lms)):
            t, _ = eng._spoly(h, ("I", gi))
            if eng.reduce(t, None)[0]:
                return False
    return True


def raw_syzygies(R: GradedRing, tgt_shifts, columns: Sequence[VecDict], degrees: Sequence[int]):
    """Generators (not minimal) of {a : sum a_j columns_j = 0 in R}.

    Returns a list of (degree, dict over source positions)."""
    eng = _Engine(R, tgt_shifts, track=True)
    for j, (col, d) in enumerate(zip(columns, degrees)):
        eng.add_input(vec_nf(R, col), {(j, (0,) * R.nvars): 1}, d)
    eng.run()
    out = []
    for d, s in eng.syz:
        s = vec_nf(R, s)
        if s:
            out.append((d, s))
    return out


def syzygy_basis(gens: Sequence[FreeVector], R: GradedRing) -> List[FreeVector]:
    """Minimal homogeneous generators of the syzygy module of gens over R."""
    from .linalg import minimalize
    if not gens:
        return []
    shifts = _check_gens(R, gens)
    src = tuple(g.degree for g in gens)
    raw = raw_syzygies(R, shifts, [g.terms for g in gens], src)
    return [FreeVector(R, src, v, d, _clean=True) for d, v in minimalize(R, src, raw)]
