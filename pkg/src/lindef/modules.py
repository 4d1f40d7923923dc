"""Graded modules as subquotients (U + K) / K of a graded free module.

``U`` are the generators, ``K`` the relations; a presentation coker(K) is the
case U = unit vectors, and a submodule of a free module is the case K = [].
All vectors are kept in normal form modulo the defining ideal.
"""
from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple

from .core import Polynomial, StructuralError
from .groebner import (FreeVector, GradedRing, VecDict, raw_syzygies, vec_mul_mono,
                       vec_nf)
from .linalg import Piece, in_span, kernel_linear, minimalize, multiples_in_degree, rref_rows

DVec = Tuple[int, VecDict]


def _as_dvecs(R: GradedRing, shifts, items) -> List[DVec]:
    out = []
    for v in items:
        if isinstance(v, FreeVector):
            if v.shifts != tuple(shifts):
                raise StructuralError("vector lives in another free module")
            if v.degree is None:
                raise ValueError("vector without a degree")
            out.append((v.degree, vec_nf(R, v.terms)))
        else:
            d, t = v
            out.append((d, vec_nf(R, t)))
    return out


def _degree_of(shifts, t: VecDict):
    for (j, e) in t:
        return sum(e) + shifts[j]
    return None


def kernel(R: GradedRing, src_shifts, tgt_shifts, columns: Sequence[VecDict],
           method: str = "auto") -> List[DVec]:
    """Minimal generators of ker(F_src -> F_tgt, e_k -> columns[k])."""
    src_shifts = tuple(src_shifts)
    if not src_shifts:
        return []
    if method == "auto":
        method = "groebner"
    if method == "linear":
        top = R.top_degree()
        if top is None:
            raise ValueError("linear kernel route needs an Artinian ring")
        return kernel_linear(R, src_shifts, tgt_shifts, columns, max(src_shifts) + top)
    raw = raw_syzygies(R, tuple(tgt_shifts), columns, src_shifts)
    return minimalize(R, src_shifts, raw)


class GradedModule:
    """Finitely generated graded module (U + K)/K inside ⊕ R(-shifts[j])."""

    def __init__(self, ring: GradedRing, shifts: Sequence[int], generators: Iterable = (),
                 relations: Iterable = (), name: str | None = None):
        self.ring = ring
        self.shifts = tuple(shifts)
        self.gens: List[DVec] = [g for g in _as_dvecs(ring, self.shifts, generators)]
        self.rels: List[DVec] = [r for r in _as_dvecs(ring, self.shifts, relations) if r[1]]
        self.name = name
        self._mingens = None

    # -- constructors
    @classmethod
    def free(cls, R: GradedRing, shifts, name=None):
        shifts = tuple(shifts)
        z = (0,) * R.nvars
        return cls(R, shifts, [(a, {(j, z): 1}) for j, a in enumerate(shifts)], [], name)

    @classmethod
    def coker(cls, R: GradedRing, tgt_shifts, columns, name=None):
        """Cokernel of the map given by columns (FreeVectors or polynomial lists)."""
        tgt_shifts = tuple(tgt_shifts)
        rels = []
        for c in columns:
            if isinstance(c, FreeVector):
                rels.append(c)
            else:
                v = FreeVector.from_entries(R, tgt_shifts, list(c))
                if v.degree is None:
                    continue
                rels.append(v)
        M = cls.free(R, tgt_shifts, name)
        M.rels = [r for r in _as_dvecs(R, tgt_shifts, rels) if r[1]]
        return M

    @classmethod
    def submodule(cls, R: GradedRing, shifts, gens, name=None):
        return cls(R, shifts, gens, [], name)

    # -- basic queries
    @property
    def generators(self) -> List[FreeVector]:
        return [FreeVector(self.ring, self.shifts, t, d, _clean=True) for d, t in self.gens]

    @property
    def relations(self) -> List[FreeVector]:
        return [FreeVector(self.ring, self.shifts, t, d, _clean=True) for d, t in self.rels]

    def minimal_gens(self) -> List[DVec]:
        if self._mingens is None:
            self._mingens = minimalize(self.ring, self.shifts, self.gens, self.rels)
        return self._mingens

    def minimal_generators(self) -> List[FreeVector]:
        return [FreeVector(self.ring, self.shifts, t, d, _clean=True)
                for d, t in self.minimal_gens()]

    def is_zero(self) -> bool:
        return not self.minimal_gens()

    def generator_degrees(self) -> List[int]:
        return [d for d, _ in self.minimal_gens()]

    def is_submodule_of_free(self) -> bool:
        return not self.rels

    def same_ambient(self, other: "GradedModule"):
        if self.ring.poly != other.ring.poly or self.shifts != other.shifts:
            raise StructuralError("modules live in different ambient modules")

    def with_ring(self, R: GradedRing, extra_relations=()) -> "GradedModule":
        """Same generators over another ring on the same variables."""
        if R.poly.variables != self.ring.poly.variables:
            raise StructuralError("rings have different variables")
        rels = [(d, vec_nf(R, t)) for d, t in self.rels] + list(extra_relations)
        return GradedModule(R, self.shifts, [(d, vec_nf(R, t)) for d, t in self.gens], rels,
                            self.name)

    def hilbert(self, d: int) -> int:
        """dim_k M_d."""
        R = self.ring
        P = Piece(R, self.shifts, d)
        rel = [P.row(v) for v in multiples_in_degree(R, self.rels, d)]
        allr = rel + [P.row(v) for v in multiples_in_degree(R, self.gens, d)]
        return _rank(allr, len(P), R.p) - _rank(rel, len(P), R.p)

    def contains(self, v) -> bool:
        """v in U + K (v a FreeVector or (degree, dict))."""
        d, t = _as_dvecs(self.ring, self.shifts, [v])[0]
        if not t:
            return True
        P = Piece(self.ring, self.shifts, d)
        rows = [P.row(w) for w in multiples_in_degree(self.ring, self.gens + self.rels, d)]
        return in_span(P, rref_rows(rows, len(P), self.ring.p), t, self.ring.p)

    def __repr__(self):
        nm = f"{self.name}: " if self.name else ""
        return (f"GradedModule({nm}{len(self.gens)} gens, {len(self.rels)} rels, "
                f"shifts={list(self.shifts)})")

    def presentation(self):
        """(generator degrees, relation columns over F_0) of a minimal presentation."""
        from .resolution import first_step
        return first_step(self)


def _rank(rows, n, p):
    from .linalg import rank_rows
    return rank_rows(rows, n, p)


class Ideal(GradedModule):
    """Homogeneous ideal of a GradedRing (submodule of R with shift 0)."""

    def __init__(self, ring: GradedRing, gens=(), name: str | None = None):
        vecs = []
        for g in gens:
            if isinstance(g, tuple) and len(g) == 2 and isinstance(g[1], dict):
                vecs.append(g)
                continue
            f = ring.parse(g)
            ok, d = f.is_homogeneous()
            if not ok:
                raise ValueError(f"generator {f} is not homogeneous")
            if f:
                vecs.append((d, {(0, e): c for e, c in f.term_dict.items()}))
        super().__init__(ring, (0,), vecs, [], name)

    @classmethod
    def from_module(cls, M: GradedModule) -> "Ideal":
        if M.shifts != (0,) or M.rels:
            raise StructuralError("not an ideal")
        I = cls(M.ring, [], M.name)
        I.gens = list(M.gens)
        return I

    @property
    def polys(self) -> List[Polynomial]:
        return [_to_poly(self.ring, t) for _, t in self.minimal_gens()]

    def is_unit(self) -> bool:
        return any(d == 0 for d, _ in self.minimal_gens())

    def is_linear(self) -> bool:
        return all(d == 1 for d, _ in self.minimal_gens())

    def contains_poly(self, f) -> bool:
        return self.contains(_poly_vec(self.ring, f))

    def quotient_module(self, name=None) -> GradedModule:
        """R/I as a cyclic module."""
        R = self.ring
        return GradedModule(R, (0,), [(0, {(0, (0,) * R.nvars): 1})], list(self.gens), name)

    def __repr__(self):
        return "Ideal(" + ", ".join(str(f) for f in self.polys) + ")"


def _to_poly(R: GradedRing, t: VecDict) -> Polynomial:
    return Polynomial(R.poly, {e: c for (_, e), c in t.items()}, _clean=True)


def _poly_vec(R: GradedRing, f) -> DVec:
    f = R.parse(f)
    ok, d = f.is_homogeneous()
    if not ok:
        raise ValueError(f"{f} is not homogeneous")
    f = R.nf_poly(f)
    return (d, {(0, e): c for e, c in f.term_dict.items()})


def residue_field(R: GradedRing, name="k") -> GradedModule:
    return maximal_ideal(R).quotient_module(name)


def maximal_ideal(R: GradedRing) -> Ideal:
    return Ideal(R, list(R.variables), "m")


def quotient_by(P: GradedModule, M: GradedModule, name=None) -> GradedModule:
    """P / M for a submodule M of P (same ambient)."""
    P.same_ambient(M)
    return GradedModule(P.ring, P.shifts, P.gens, P.rels + M.gens, name)


# ---------------------------------------------------------------- operations

def minimal_generators(M: GradedModule) -> List[FreeVector]:
    return M.minimal_generators()


def membership(v, M: GradedModule) -> bool:
    if isinstance(v, Polynomial):
        v = _poly_vec(M.ring, v)
    elif isinstance(v, str):
        v = _poly_vec(M.ring, v)
    return M.contains(v)


def contains_module(A: GradedModule, B: GradedModule) -> bool:
    """B ⊆ A (as submodules of the common ambient modulo A's relations)."""
    A.same_ambient(B)
    return all(A.contains(g) for g in B.gens)


def equal(A: GradedModule, B: GradedModule) -> bool:
    """A == B as submodules of the ambient (relations compared too)."""
    A.same_ambient(B)
    ra = GradedModule(A.ring, A.shifts, A.rels)
    rb = GradedModule(B.ring, B.shifts, B.rels)
    if not (contains_module(ra, rb) and contains_module(rb, ra)):
        return False
    ua = GradedModule(A.ring, A.shifts, A.gens + A.rels)
    ub = GradedModule(B.ring, B.shifts, B.gens + B.rels)
    return contains_module(ua, ub) and contains_module(ub, ua)


def _result(M: GradedModule, gens: List[DVec], name=None, cls=None) -> GradedModule:
    R = M.ring
    gens = minimalize(R, M.shifts, gens, M.rels)
    if isinstance(M, Ideal) or cls is Ideal:
        I = Ideal(R, [], name)
        I.gens = gens
        return I
    return GradedModule(R, M.shifts, gens, M.rels, name)


def plus(A: GradedModule, B: GradedModule, name=None) -> GradedModule:
    A.same_ambient(B)
    return _result(A, A.gens + B.gens, name)


def times(I: Ideal, M: GradedModule, name=None) -> GradedModule:
    """I * M."""
    R = M.ring
    gens = []
    for d, f in I.minimal_gens():
        fpoly = {e: c for (_, e), c in f.items()}
        for e, u in M.minimal_gens():
            acc: VecDict = {}
            for mono, c in fpoly.items():
                for k, a in vec_mul_mono(R, u, mono, c).items():
                    acc[k] = (acc.get(k, 0) + a) % R.p
            acc = {k: a for k, a in acc.items() if a}
            gens.append((d + e, acc))
    return _result(M, gens, name)


def power_times(s: int, M: GradedModule, name=None) -> GradedModule:
    """m^s M."""
    if s < 0:
        raise ValueError("s must be non-negative")
    R = M.ring
    gens = []
    for d, u in M.minimal_gens():
        for mu in R.basis(s):
            v = vec_mul_mono(R, u, mu)
            if v:
                gens.append((d + s, v))
    return _result(M, gens, name)


def maximal_power(R: GradedRing, s: int) -> Ideal:
    """m^s as an ideal."""
    return power_times(s, Ideal(R, ["1"]), f"m^{s}")


def truncate_component(M: GradedModule, d: int, name=None) -> GradedModule:
    """M_<d>: the submodule generated by the degree-d piece of M."""
    R = M.ring
    P = Piece(R, M.shifts, d)
    rows = [P.row(v) for v in multiples_in_degree(R, M.gens, d)]
    basis, _ = rref_rows(rows, len(P), R.p)
    return _result(M, [(d, P.vec(r)) for r in basis], name)


def truncate_above(M: GradedModule, d: int, name=None) -> GradedModule:
    """M_{>=d}."""
    R = M.ring
    gens = []
    for e, u in M.minimal_gens():
        if e >= d:
            gens.append((e, u))
        else:
            for mu in R.basis(d - e):
                v = vec_mul_mono(R, u, mu)
                if v:
                    gens.append((d, v))
    return _result(M, gens, name)


def intersect(*mods: GradedModule, name=None) -> GradedModule:
    """Intersection of submodules of a common ambient (modulo common relations)."""
    if not mods:
        raise ValueError("nothing to intersect")
    cur = mods[0]
    for B in mods[1:]:
        cur = _intersect2(cur, B, name)
    return cur


def _intersect2(A: GradedModule, B: GradedModule, name=None) -> GradedModule:
    A.same_ambient(B)
    R = A.ring
    ga, gb, K = A.minimal_gens(), B.minimal_gens(), A.rels
    if not ga or not gb:
        return _result(A, [], name)
    cols = [t for _, t in ga] + [t for _, t in gb] + [t for _, t in K]
    degs = [d for d, _ in ga] + [d for d, _ in gb] + [d for d, _ in K]
    syz = kernel(R, degs, A.shifts, cols)
    na = len(ga)
    gens = []
    for d, s in syz:
        acc: VecDict = {}
        for (j, e), c in s.items():
            if j < na:
                for k, a in vec_mul_mono(R, ga[j][1], e, c).items():
                    acc[k] = (acc.get(k, 0) + a) % R.p
        acc = {k: a for k, a in acc.items() if a}
        if acc:
            gens.append((d, acc))
    return _result(A, gens, name)


def colon_module(A: GradedModule, m, name=None) -> Ideal:
    """(A :_R m) = {r : r m in A}, for m in A's ambient."""
    R = A.ring
    d0, t0 = _as_dvecs(R, A.shifts, [m])[0]
    if not t0:
        # every r kills the zero element: unit ideal, flagged
        I = Ideal(R, ["1"], name)
        I.degenerate = True
        return I
    gens = A.minimal_gens() + list(A.rels)
    cols = [t0] + [t for _, t in gens]
    degs = [d0] + [d for d, _ in gens]
    syz = kernel(R, degs, A.shifts, cols)
    out = []
    for d, s in syz:
        f = {(0, e): c for (j, e), c in s.items() if j == 0}
        if f:
            out.append((d - d0, f))
    I = Ideal(R, [], name)
    I.gens = minimalize(R, (0,), out)
    return I


def colon(I: GradedModule, f, name=None) -> Ideal:
    """(I : f) for an ideal I and a homogeneous element f."""
    R = I.ring
    if I.shifts != (0,):
        raise StructuralError("colon expects an ideal")
    return colon_module(I, _poly_vec(R, f), name)


def ideal_equal(I: GradedModule, J: GradedModule) -> bool:
    return equal(I, J)


def hilbert(M: GradedModule, d: int) -> int:
    return M.hilbert(d)


__all__ = ["GradedModule", "Ideal", "kernel", "intersect", "colon", "colon_module",
           "power_times", "truncate_component", "truncate_above", "minimal_generators",
           "membership", "plus", "times", "equal", "contains_module", "residue_field",
           "maximal_ideal", "maximal_power", "quotient_by", "hilbert", "ideal_equal"]
