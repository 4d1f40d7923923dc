"""Degree-wise linear algebra over F_p on graded pieces of free modules.

A graded piece (F)_d of F = ⊕ R(-a_j) has the basis e_j * mu with mu a
standard monomial of degree d - a_j; coordinates are ordered by position,
then by descending monomial order.
"""
from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from flint import nmod_mat

from .core import monomials_of_degree, mono_mul
from .groebner import GradedRing, VecDict, vec_mul_mono


def mat(rows: Sequence[Sequence[int]], ncols: int, p: int) -> nmod_mat:
    flat = []
    for r in rows:
        flat.extend(r)
    return nmod_mat(len(rows), ncols, flat, p)


def mat_from_sparse(rows: Sequence[Dict[int, int]], ncols: int, p: int) -> nmod_mat:
    M = nmod_mat(len(rows), ncols, p)
    for i, r in enumerate(rows):
        for j, c in r.items():
            M[i, j] = c
    return M


def to_rows(M: nmod_mat, nrows: int | None = None) -> List[List[int]]:
    n = M.nrows() if nrows is None else nrows
    c = M.ncols()
    ent = [int(x) for x in M.entries()]
    return [ent[i * c:(i + 1) * c] for i in range(n)]


def rref_rows(rows: List[Dict[int, int]], ncols: int, p: int) -> Tuple[List[Dict[int, int]], List[int]]:
    """Row-reduced echelon basis of the span, as sparse rows, with pivots."""
    if not rows or not ncols:
        return [], []
    R, r = mat_from_sparse(rows, ncols, p).rref()
    out, piv = [], []
    dense = to_rows(R, r)
    for row in dense:
        d = {j: c for j, c in enumerate(row) if c}
        out.append(d)
        piv.append(min(d))
    return out, piv


def rank_rows(rows: List[Dict[int, int]], ncols: int, p: int) -> int:
    if not rows or not ncols:
        return 0
    return mat_from_sparse(rows, ncols, p).rank()


def nullspace_cols(A: nmod_mat) -> List[List[int]]:
    """Basis of the right kernel {x : A x = 0}, as lists, in rref-transposed form."""
    if A.ncols() == 0:
        return []
    if A.nrows() == 0:
        n = A.ncols()
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    X, k = A.nullspace()
    if k == 0:
        return []
    cols = to_rows(X.transpose(), k)
    # canonical basis: rref of the kernel rows
    R, r = mat(cols, A.ncols(), int(A.modulus())).rref()
    return to_rows(R, r)


def extend_basis(span: List[Dict[int, int]], cand: List[Dict[int, int]], ncols: int, p: int):
    """Canonical complement of span inside span + cand: rows of rref(span + cand)
    whose pivots are not pivots of span."""
    if not cand:
        return []
    _, pv = rref_rows(span, ncols, p)
    allrows, pa = rref_rows(span + cand, ncols, p)
    ps = set(pv)
    return [r for r, c in zip(allrows, pa) if c not in ps]


# ---------------------------------------------------------------- graded pieces

class Piece:
    """Coordinates of (F)_d for F = ⊕ R(-shifts[j])."""

    __slots__ = ("R", "shifts", "d", "keys", "index", "blocks")

    def __init__(self, R: GradedRing, shifts: Sequence[int], d: int, rdeg_max: int | None = None):
        self.R = R
        self.shifts = tuple(shifts)
        self.d = d
        keys = []
        blocks = []
        for j, a in enumerate(self.shifts):
            e = d - a
            start = len(keys)
            if e >= 0 and (rdeg_max is None or e <= rdeg_max):
                for mu in R.basis(e):
                    keys.append((j, mu))
            blocks.append((start, len(keys)))
        self.keys = keys
        self.index = {k: i for i, k in enumerate(keys)}
        self.blocks = blocks

    def __len__(self):
        return len(self.keys)

    def row(self, v: VecDict) -> Dict[int, int]:
        idx = self.index
        out = {}
        for k, c in v.items():
            i = idx.get(k)
            if i is None:
                raise KeyError(f"term {k} outside the graded piece of degree {self.d}")
            out[i] = c
        return out

    def row_partial(self, v: VecDict) -> Dict[int, int]:
        """Like row but silently drops coordinates outside the piece (truncation)."""
        idx = self.index
        return {idx[k]: c for k, c in v.items() if k in idx}

    def vec(self, row) -> VecDict:
        if isinstance(row, dict):
            return {self.keys[i]: c for i, c in row.items() if c}
        return {self.keys[i]: c for i, c in enumerate(row) if c}


def multiples_in_degree(R: GradedRing, gens: Sequence[Tuple[int, VecDict]], d: int) -> List[VecDict]:
    """All mu * g with g of degree e <= d and mu standard of degree d - e."""
    out = []
    for e, g in gens:
        if e > d or not g:
            continue
        for mu in R.basis(d - e):
            v = vec_mul_mono(R, g, mu)
            if v:
                out.append(v)
    return out


def span_in_degree(R: GradedRing, shifts, gens, d: int):
    """rref rows and pivots of (submodule generated by gens)_d."""
    P = Piece(R, shifts, d)
    rows = [P.row(v) for v in multiples_in_degree(R, gens, d)]
    return P, rref_rows(rows, len(P), R.p)


def in_span(P: Piece, rref: Tuple[List[Dict[int, int]], List[int]], v: VecDict, p: int) -> bool:
    rows, piv = rref
    r = dict(P.row(v))
    for row, c in zip(rows, piv):
        a = r.get(c)
        if a:
            for j, b in row.items():
                x = (r.get(j, 0) - a * b) % p
                if x:
                    r[j] = x
                else:
                    r.pop(j, None)
    return not r


def minimalize(R: GradedRing, shifts, cands: Sequence[Tuple[int, VecDict]], base=()) -> List[Tuple[int, VecDict]]:
    """Minimal generators of the submodule generated by cands, modulo the
    submodule generated by base (both lists of (degree, vector)).

    Degree by degree, the new generators are the canonical complement of
    (m * previous + base)_d inside (previous + base + cands)_d."""
    p = R.p
    by_deg: Dict[int, List[VecDict]] = {}
    for d, v in cands:
        if v:
            by_deg.setdefault(d, []).append(v)
    chosen: List[Tuple[int, VecDict]] = []
    base = [(d, v) for d, v in base if v]
    for d in sorted(by_deg):
        P = Piece(R, shifts, d)
        span = [P.row(v) for v in multiples_in_degree(R, chosen, d)]
        span += [P.row(v) for v in multiples_in_degree(R, base, d)]
        cand = [P.row(v) for v in by_deg[d]]
        for row in extend_basis(span, cand, len(P), p):
            chosen.append((d, P.vec(row)))
    return chosen


# ---------------------------------------------------------------- maps

def map_matrix(R: GradedRing, src_shifts, tgt_shifts, columns: Sequence[VecDict], d: int,
               src_rmax: int | None = None, tgt_rmax: int | None = None):
    """Matrix of the degree-d component of the map e_k -> columns[k].

    Rows index the target piece, columns the source piece; optional bounds
    restrict to R-degrees <= rmax (truncation modulo a power of m)."""
    Ps = Piece(R, src_shifts, d, src_rmax)
    Pt = Piece(R, tgt_shifts, d, tgt_rmax)
    p = R.p
    M = nmod_mat(len(Pt), len(Ps), p)
    idx = Pt.index
    for ci, (k, mu) in enumerate(Ps.keys):
        img = vec_mul_mono(R, columns[k], mu)
        for key, c in img.items():
            ri = idx.get(key)
            if ri is not None:
                M[ri, ci] = c
            elif tgt_rmax is None:
                raise KeyError("image term outside target piece")
    return M, Ps, Pt


def kernel_linear(R: GradedRing, src_shifts, tgt_shifts, columns: Sequence[VecDict], dmax: int):
    """Minimal generators of the kernel of F_src -> F_tgt, by linear algebra in
    every degree up to dmax (exact when R_e = 0 for e > dmax - min source shift)."""
    p = R.p
    if not src_shifts:
        return []
    chosen: List[Tuple[int, VecDict]] = []
    prev_basis: List[VecDict] = []
    nv = R.nvars
    lin = []
    for i in range(nv):
        e = [0] * nv
        e[i] = 1
        lin.append(tuple(e))
    for d in range(min(src_shifts), dmax + 1):
        A, Ps, Pt = map_matrix(R, src_shifts, tgt_shifts, columns, d)
        if len(Ps) == 0:
            prev_basis = []
            continue
        ker = nullspace_cols(A) if len(Pt) else [[1 if i == j else 0 for i in range(len(Ps))]
                                                  for j in range(len(Ps))]
        kvecs = [Ps.vec(r) for r in ker]
        span = []
        for z in prev_basis:
            for x in lin:
                v = vec_mul_mono(R, z, x)
                if v:
                    span.append(Ps.row(v))
        for row in extend_basis(span, [Ps.row(v) for v in kvecs], len(Ps), p):
            chosen.append((d, Ps.vec(row)))
        prev_basis = kvecs
    return chosen


def monomials(n: int, d: int):
    return monomials_of_degree(n, d)


__all__ = ["Piece", "mat", "rref_rows", "rank_rows", "nullspace_cols", "extend_basis",
           "minimalize", "map_matrix", "kernel_linear", "multiples_in_degree",
           "span_in_degree", "in_span", "mono_mul"]
