"""Linear part of a minimal resolution, linearity defect, and the Tor-map
criterion comparing Tor_i(R/m^{s+1}, M) -> Tor_i(R/m^s, M)."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .groebner import GradedRing, VecDict
from .linalg import Piece, map_matrix, nullspace_cols, rank_rows
from .modules import GradedModule, Ideal, equal, kernel
from .resolution import MinimalResolution, compose_zero, invariants, resolve

EXACT, AT_LEAST, ZERO_UP_TO_WINDOW = "exact", "at_least", "zero_up_to_window"
SEGA_CAP = 8


class NotMinimalError(ValueError):
    pass


# ---------------------------------------------------------------- linear part

@dataclass
class LinearPartComplex:
    ring: GradedRing
    shifts: List[Tuple[int, ...]]
    maps: List[List[VecDict]]      # maps[i]: lin F_i -> lin F_{i-1}, i >= 1

    def strands(self, i: int) -> Dict[int, List[int]]:
        """strand c -> indices of generators of F_i with shift c + i."""
        out: Dict[int, List[int]] = {}
        if i < len(self.shifts):
            for k, a in enumerate(self.shifts[i]):
                out.setdefault(a - i, []).append(k)
        return out

    def is_complex(self) -> bool:
        return all(compose_zero(self.ring, self.maps[i - 1], self.maps[i])
                   for i in range(2, len(self.maps)))

    def equals_source(self, res: MinimalResolution) -> bool:
        return all(self.maps[i] == res.maps[i] for i in range(1, len(res.maps)))


def linear_part(res: MinimalResolution) -> LinearPartComplex:
    """Keep exactly the degree-one entries of each differential."""
    z = (0,) * res.ring.nvars
    maps: List[List[VecDict]] = [list(res.maps[0])]
    for i in range(1, len(res.maps)):
        cols = []
        for col in res.maps[i]:
            keep = {}
            for (j, e), c in col.items():
                de = sum(e)
                if e == z:
                    raise NotMinimalError(f"unit entry in differential {i}")
                if de == 1:
                    keep[(j, e)] = c
            cols.append(keep)
        maps.append(cols)
    lin = LinearPartComplex(res.ring, list(res.shifts), maps)
    if not lin.is_complex():
        raise AssertionError("linear part is not a complex")
    return lin


def _restrict(cols: List[VecDict], src: List[int], tgt: List[int]) -> List[VecDict]:
    pos = {j: n for n, j in enumerate(tgt)}
    out = []
    for k in src:
        v = {}
        for (j, e), c in cols[k].items():
            if j in pos:
                v[(pos[j], e)] = c
        out.append(v)
    return out


def strand_homology(lin: LinearPartComplex, i: int) -> Dict[int, Dict[int, int]]:
    """dim_k H_i(lin F)_d per strand c: {c: {d: dim}} (nonzero entries only).

    Degrees are scanned up to the largest degree of a minimal generator of
    ker(lin ∂_i) on the strand, so an empty answer certifies H_i = 0."""
    R = lin.ring
    out: Dict[int, Dict[int, int]] = {}
    if i < 1 or i >= len(lin.shifts):
        return out
    s_i = lin.strands(i)
    s_im1 = lin.strands(i - 1)
    s_ip1 = lin.strands(i + 1) if i + 1 < len(lin.shifts) else {}
    top = R.top_degree()
    for c, src in sorted(s_i.items()):
        a = c + i
        tgt = s_im1.get(c, [])
        up = s_ip1.get(c, [])
        A = _restrict(lin.maps[i], src, tgt)
        B = _restrict(lin.maps[i + 1], up, src) if up else []
        sh_src = (a,) * len(src)
        sh_tgt = (a - 1,) * len(tgt)
        sh_up = (a + 1,) * len(up)
        if top is not None:
            dmax = a + top
        else:
            ker = kernel(R, sh_src, sh_tgt, A)
            if not ker:
                continue
            dmax = max(d for d, _ in ker)
        dims = {}
        for d in range(a, dmax + 1):
            if R.hilbert(d - a) == 0:
                continue
            Ma, Ps, _ = map_matrix(R, sh_src, sh_tgt, A, d)
            kdim = len(Ps) - (Ma.rank() if Ma.nrows() and Ma.ncols() else 0)
            if kdim == 0:
                continue
            if up:
                Mb, _, _ = map_matrix(R, sh_up, sh_src, B, d)
                brank = Mb.rank() if Mb.nrows() and Mb.ncols() else 0
            else:
                brank = 0
            if kdim - brank:
                dims[d] = kdim - brank
        if dims:
            out[c] = dims
    return out


# ---------------------------------------------------------------- Tor maps

def _rmax_ok(R: GradedRing, s: int) -> bool:
    """False when R/m^s = R (then Tor_i(R/m^s, -) vanishes for i >= 1)."""
    top = R.top_degree()
    return top is None or s - 1 < top


def _z_and_b(res: MinimalResolution, i: int, s: int, d: int):
    """Cycles of F_i ⊗ R/m^{s+1} projected to F_i ⊗ R/m^s, and boundaries of
    F_i ⊗ R/m^s, in degree d, as sparse rows over Piece(F_i, d, s-1)."""
    R = res.ring
    Fi, Fim1 = res.shifts_at(i), res.shifts_at(i - 1)
    Q = Piece(R, Fi, d, s - 1)
    A, Ps, _ = map_matrix(R, Fi, Fim1, res.differential(i), d, s, s)
    if len(Ps) == 0:
        return Q, [], []
    Z = nullspace_cols(A) if A.nrows() else [[1 if a == b else 0 for a in range(len(Ps))]
                                              for b in range(len(Ps))]
    qidx = Q.index
    keep = [(n, qidx[k]) for n, k in enumerate(Ps.keys) if k in qidx]
    zrows = []
    for z in Z:
        r = {q: z[n] for n, q in keep if z[n]}
        if r:
            zrows.append(r)
    brows = []
    if i + 1 < len(res.maps) and res.shifts_at(i + 1):
        B, Pb, _ = map_matrix(R, res.shifts_at(i + 1), Fi, res.differential(i + 1), d, s - 1, s - 1)
        if B.ncols() and B.nrows():
            Bt = B.transpose()
            ent = [int(x) for x in Bt.entries()]
            nc = Bt.ncols()
            for r in range(Bt.nrows()):
                row = {c: ent[r * nc + c] for c in range(nc) if ent[r * nc + c]}
                if row:
                    brows.append(row)
    return Q, zrows, brows


def tor_dim(res: MinimalResolution, i: int, s: int, d: int) -> int:
    """dim_k Tor_i(R/m^s, M)_d from the truncated complex F ⊗ R/m^s."""
    R = res.ring
    if s <= 0 or (i >= 1 and not _rmax_ok(R, s)):
        return 0
    Fi = res.shifts_at(i)
    Q = Piece(R, Fi, d, s - 1)
    if len(Q) == 0:
        return 0
    if i == 0:
        zdim = len(Q)
    else:
        A, Ps, _ = map_matrix(R, Fi, res.shifts_at(i - 1), res.differential(i), d, s - 1, s - 1)
        zdim = len(Ps) - (A.rank() if A.nrows() and A.ncols() else 0)
    bdim = 0
    if i + 1 < len(res.maps) and res.shifts_at(i + 1):
        B, _, _ = map_matrix(R, res.shifts_at(i + 1), Fi, res.differential(i + 1), d, s - 1, s - 1)
        bdim = B.rank() if B.nrows() and B.ncols() else 0
    return zdim - bdim


def sega_map_zero(res: MinimalResolution, i: int, s: int) -> bool:
    """Whether Tor_i(R/m^{s+1}, M) -> Tor_i(R/m^s, M) is the zero map."""
    R = res.ring
    if i < 1 or s < 1 or not res.shifts_at(i) or not _rmax_ok(R, s):
        return True
    Fi = res.shifts_at(i)
    for d in range(min(Fi), max(Fi) + s):
        Q, zrows, brows = _z_and_b(res, i, s, d)
        if not zrows:
            continue
        rb = rank_rows(brows, len(Q), R.p)
        if rank_rows(brows + zrows, len(Q), R.p) > rb:
            return False
    return True


@dataclass
class SegaReport:
    window: int
    s_max: int
    maps: List[dict]                         # {"i", "s", "zero"}
    tor_dims: Dict[str, Dict[str, int]] = field(default_factory=dict)

    @property
    def bound(self) -> int:
        nz = [m["i"] for m in self.maps if not m["zero"]]
        return max(nz) if nz else 0

    def nonzero_indices(self) -> List[int]:
        return sorted({m["i"] for m in self.maps if not m["zero"]})

    def to_json(self) -> dict:
        return {"maps": self.maps, "bound": self.bound, "s_max": self.s_max,
                "tor_dims": self.tor_dims}


def sega_report(res: MinimalResolution, h: int, s_max: int, s_min: int = 1,
                dims: bool = True) -> SegaReport:
    maps = []
    tdims: Dict[str, Dict[str, int]] = {}
    for i in range(1, h + 1):
        for s in range(s_min, s_max + 1):
            maps.append({"i": i, "s": s, "zero": sega_map_zero(res, i, s)})
    if dims:
        for i in range(0, h + 1):
            Fi = res.shifts_at(i)
            if not Fi:
                continue
            for s in range(1, s_max + 1):
                row = {}
                for d in range(min(Fi), max(Fi) + s):
                    v = tor_dim(res, i, s, d)
                    if v:
                        row[str(d)] = v
                if row:
                    tdims[f"{i},{s}"] = row
    return SegaReport(h, s_max, maps, tdims)


def sega_check(M, h: int = 6, s_max: int = 4) -> SegaReport:
    res = M if isinstance(M, MinimalResolution) else resolve(M, h)
    return sega_report(res, min(h, res.computed_to), s_max)


# ---------------------------------------------------------------- lind

@dataclass
class LindResult:
    value: int
    status: str
    nonzero_h: List[int]
    window: int
    evidence: Dict[int, Dict[int, int]] = field(default_factory=dict)
    certificate: dict | None = None
    sega: SegaReport | None = None
    agreement: bool | None = None
    resolution: MinimalResolution | None = None

    @property
    def certified(self) -> bool:
        return self.status == EXACT

    def interval(self):
        """Possible values as (lo, hi); hi None means unbounded."""
        if self.status == EXACT:
            return (self.value, self.value)
        if self.status == AT_LEAST:
            return (self.value, None)
        return (0, None)

    def to_json(self, with_sega=True) -> dict:
        out = {"lind": {"value": self.value, "status": self.status,
                        "nonzero_h": self.nonzero_h, "window": self.window}}
        if self.certificate:
            out["lind"]["certificate"] = self.certificate
        out["lind"]["evidence"] = {str(i): {str(d): v for d, v in sorted(e.items())}
                                   for i, e in sorted(self.evidence.items())}
        if with_sega and self.sega is not None:
            out["sega"] = self.sega.to_json()
            out["sega"]["agrees"] = self.agreement
        return out


def _row_split(cols: List[VecDict], nrows: int):
    """Group columns by their single supporting row; None if some column
    touches two rows."""
    rows: Dict[int, list] = {k: [] for k in range(nrows)}
    for col in cols:
        support = {k for (k, _) in col}
        if len(support) > 1:
            return None
        if support:
            k = support.pop()
            rows[k].append({(0, e): c for (_, e), c in col.items()})
    return rows


def _rows_in_family(R, rows, filt) -> bool:
    for gens in rows.values():
        if not gens:
            continue
        I = Ideal(R, [], None)
        I.gens = [(sum(next(iter(g))[1]), g) for g in gens]
        if not any(equal(I, J) for J in filt):
            return False
    return True


def koszul_syzygy_index(res: MinimalResolution, h: int) -> dict | None:
    """Smallest j <= h such that Ω_j(M) is certified Koszul.

    Two splittings are recognised.  If every column of ∂_{j+1} lives in one
    row, Ω_j = coker ∂_{j+1} is ⊕ R/I_row(-a).  If every generator of Ω_j
    (columns of ∂_j, or the generators of M itself when it is a submodule of
    a free module) lives in one row, Ω_j is ⊕ I_row(-a).  Either way each
    summand is Koszul when I_row is zero or belongs to a verified Koszul
    filtration of R, since then R/I and I = Ω_1(R/I) are Koszul."""
    from .structure import ring_koszul_filtration
    R = res.ring
    filt = None
    M = res.module
    for j in range(0, h + 1):
        if j + 1 >= len(res.maps):
            break
        Fj = res.shifts_at(j)
        if not Fj:
            return {"kind": "terminated", "index": j}
        splits = []
        quo = _row_split(res.differential(j + 1), len(Fj))
        if quo is not None:
            splits.append(("cyclic_quotients", quo))
        if j >= 1:
            sub = _row_split(res.differential(j), len(res.shifts_at(j - 1)))
        elif not M.rels:
            sub = _row_split([t for _, t in M.minimal_gens()], len(M.shifts))
        else:
            sub = None
        if sub is not None:
            splits.append(("ideal_summands", sub))
        for kind, rows in splits:
            if filt is None:
                filt = ring_koszul_filtration(R)
                if not filt:
                    return None
            if _rows_in_family(R, rows, filt):
                return {"kind": kind, "index": j}
    return None


def _same_map(res: MinimalResolution, a: int, b: int):
    """Shift c with ∂_b = ∂_a and F_b = F_a(-c), F_{b-1} = F_{a-1}(-c); else None."""
    Sa, Sb = res.shifts_at(a), res.shifts_at(b)
    Ta, Tb = res.shifts_at(a - 1), res.shifts_at(b - 1)
    if len(Sa) != len(Sb) or len(Ta) != len(Tb) or not Sa or not Ta:
        return None
    c = Sb[0] - Sa[0]
    if any(y - x != c for x, y in zip(Sa + Ta, Sb + Tb)):
        return None
    return c if res.differential(a) == res.differential(b) else None


def periodic_certificate(res: MinimalResolution, nz: List[int], h: int) -> dict | None:
    """Equal presentation matrices ∂_{j+1} and ∂_{j+1+p} give Ω_{j+p} ≅ Ω_j(-c),
    so H_i(lin F) repeats with period p beyond j.  One vanishing period inside
    the window then pins lind down; a nonzero one makes it infinite."""
    top = len(res.maps) - 1          # ∂_{h+1} is stored as well
    for j in range(0, h):
        for p in range(1, min(top - j - 1, h - j) + 1):
            if _same_map(res, j + 1, j + 1 + p) is None:
                continue
            block = [i for i in nz if j + 1 <= i <= j + p]
            if not block:
                return {"kind": "periodic", "index": j, "period": p}
            return {"kind": "periodic", "index": j, "period": p, "infinite": True}
    return None


def linearity_defect(M, h: int = 6, s_max: int = 4, sega: bool = True,
                     res: MinimalResolution | None = None) -> LindResult:
    """lind(M) from the homology of the linear part, with certification."""
    if h < 1:
        raise ValueError("h must be at least 1")
    if res is None:
        if isinstance(M, MinimalResolution):
            res = M
        else:
            res = resolve(M, h)
    h = min(h, res.computed_to)
    if not res.shifts_at(0):
        out = LindResult(0, EXACT, [], h, certificate={"kind": "zero_module"}, resolution=res)
        if sega:
            out.sega = SegaReport(h, s_max, [])
            out.agreement = True
        return out
    lin = linear_part(res)
    cert = None
    if res.terminated:
        cert = {"kind": "terminated", "index": len([s for s in res.shifts if s])}
        top = h
    else:
        cert = koszul_syzygy_index(res, h)
        # past a Koszul syzygy the linear part is acyclic, so stop there
        top = h if cert is None else min(h, cert["index"])
    evidence: Dict[int, Dict[int, int]] = {}
    nz = []
    for i in range(1, top + 1):
        hs = strand_homology(lin, i)
        if hs:
            nz.append(i)
            agg: Dict[int, int] = {}
            for dims in hs.values():
                for d, v in dims.items():
                    agg[d] = agg.get(d, 0) + v
            evidence[i] = agg
    value = max(nz) if nz else 0
    if cert is None:
        cert = periodic_certificate(res, nz, h)
    if cert is not None and cert.get("infinite"):
        status = AT_LEAST
    elif cert is not None:
        status = EXACT
    elif nz:
        status = AT_LEAST
    else:
        status = ZERO_UP_TO_WINDOW
    out = LindResult(value, status, nz, h, evidence, cert, resolution=res)
    if sega:
        attach_sega(out, res, h, s_max)
    return out


def attach_sega(out: LindResult, res: MinimalResolution, h: int, s_max: int):
    """Compute the Tor-map report, raising s_max up to the cap until the
    supremum of nonzero indices matches the linear-part value."""
    rep = sega_report(res, h, s_max)
    s = s_max
    while rep.nonzero_indices() != out.nonzero_h and s < SEGA_CAP and _rmax_ok(res.ring, s + 1):
        s += 1
        extra = sega_report(res, h, s, s_min=s, dims=False)
        rep = SegaReport(h, s, rep.maps + extra.maps, rep.tor_dims)
    out.sega = rep
    out.agreement = rep.bound == out.value


def is_koszul(M, h: int = 6, s_max: int = 4):
    """(verdict, status): status 'exact' or 'up_to_window'."""
    r = linearity_defect(M, h, s_max, sega=False)
    if r.value == 0 and r.status == EXACT:
        return True, "exact"
    if r.status == ZERO_UP_TO_WINDOW:
        return True, "up_to_window"
    return False, "exact" if r.status == EXACT else "at_least"


def has_linear_resolution(res: MinimalResolution, d: int) -> bool:
    return all(a - i == d for i in range(res.computed_to + 1) for a in res.shifts_at(i))


def componentwise_linear(M: GradedModule, h: int = 6):
    """Check that M_<d> has a d-linear resolution (in window) for every
    relevant d.  Returns (verdict, status, evidence)."""
    from .modules import truncate_component
    R = M.ring
    kres = linearity_defect(_residue(R), h, sega=False)
    if kres.value != 0:
        return None, "inconclusive", {"ring": "not Koszul in window"}
    if M.is_zero():
        return True, "exact", {}
    degs = M.generator_degrees()
    full = resolve(M, h)
    reg = invariants(full).regularity[0]
    top = max(max(degs), reg if reg is not None else max(degs))
    ev = {}
    verdict = True
    all_term = full.terminated
    for d in range(min(degs), top + 1):
        T = truncate_component(M, d)
        if T.is_zero():
            continue
        r = resolve(T, h)
        lin = has_linear_resolution(r, d)
        ev[d] = {"linear": lin, "terminated": r.terminated}
        all_term = all_term and r.terminated
        if not lin:
            verdict = False
    status = "exact" if (not verdict or (all_term and kres.status == EXACT)) else "up_to_window"
    return verdict, status, ev


def _residue(R):
    from .modules import residue_field
    return residue_field(R)


__all__ = ["LinearPartComplex", "LindResult", "SegaReport", "linear_part", "strand_homology",
           "linearity_defect", "sega_check", "sega_report", "sega_map_zero", "tor_dim",
           "is_koszul", "componentwise_linear", "koszul_syzygy_index", "EXACT", "AT_LEAST",
           "ZERO_UP_TO_WINDOW", "NotMinimalError"]
