"""Minimal graded free resolutions, Betti tables and invariants."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .core import Polynomial
from .groebner import GradedRing, VecDict, vec_mul_mono
from .linalg import minimalize
from .modules import GradedModule, kernel


def first_step(M: GradedModule):
    """Minimal generators of M and minimal relations among them.

    Returns (gens, rels) with gens a list of (degree, vector in M's ambient)
    and rels a list of (degree, vector in F_0 = ⊕ R(-deg gens))."""
    R = M.ring
    gens = M.minimal_gens()
    f0 = tuple(d for d, _ in gens)
    if not gens:
        return [], []
    if not M.rels:
        return gens, kernel(R, f0, M.shifts, [t for _, t in gens])
    z = (0,) * R.nvars
    pos = {}
    for i, (_, t) in enumerate(gens):
        if len(t) == 1:
            (j, e), c = next(iter(t.items()))
            if e == z and c == 1 and j not in pos:
                pos[j] = i
    if len(pos) == len(M.shifts) == len(gens):
        # M = F / K with K inside mF: the relations are K itself, re-indexed
        rels = [(d, {(pos[j], e): c for (j, e), c in t.items()}) for d, t in M.rels]
        return gens, minimalize(R, f0, rels)
    cols = [t for _, t in gens] + [t for _, t in M.rels]
    degs = f0 + tuple(d for d, _ in M.rels)
    n = len(gens)
    syz = kernel(R, degs, M.shifts, cols)
    proj = []
    for d, s in syz:
        v = {(j, e): c for (j, e), c in s.items() if j < n}
        if v:
            proj.append((d, v))
    return gens, minimalize(R, f0, proj)


@dataclass
class MinimalResolution:
    """Truncated minimal graded free resolution.

    ``shifts[i]`` are the generator degrees of F_i and ``maps[i]`` (i >= 1)
    the columns of the differential F_i -> F_{i-1}; ``maps[0]`` holds the
    minimal generators of the module (the augmentation F_0 -> M).  The
    window is 0..computed_to; one extra differential is kept so that
    homology at computed_to is available."""

    module: GradedModule
    shifts: List[Tuple[int, ...]]
    maps: List[List[VecDict]]
    computed_to: int
    terminated: bool

    @property
    def ring(self) -> GradedRing:
        return self.module.ring

    def rank(self, i: int) -> int:
        return len(self.shifts[i]) if 0 <= i < len(self.shifts) else 0

    def ranks(self) -> List[int]:
        return [self.rank(i) for i in range(self.computed_to + 1)]

    def shifts_at(self, i: int) -> Tuple[int, ...]:
        return self.shifts[i] if 0 <= i < len(self.shifts) else ()

    def differential(self, i: int) -> List[VecDict]:
        return self.maps[i] if 1 <= i < len(self.maps) else []

    def matrix(self, i: int) -> List[List[Polynomial]]:
        """Differential F_i -> F_{i-1} as rows of polynomials."""
        R = self.ring
        cols = self.differential(i)
        rows = [[dict() for _ in cols] for _ in self.shifts_at(i - 1)]
        for k, col in enumerate(cols):
            for (j, e), c in col.items():
                rows[j][k][e] = c
        return [[Polynomial(R.poly, t, _clean=True) for t in row] for row in rows]

    def is_minimal(self) -> bool:
        z = (0,) * self.ring.nvars
        for i in range(1, len(self.maps)):
            for col in self.maps[i]:
                if any(e == z for (_, e) in col):
                    return False
        return True

    def is_complex(self) -> bool:
        R = self.ring
        for i in range(2, len(self.maps)):
            if not compose_zero(R, self.maps[i - 1], self.maps[i]):
                return False
        return True

    def is_exact(self) -> bool:
        """Image of each differential equals the kernel of the previous one
        (re-derived independently)."""
        R = self.ring
        from .modules import contains_module
        for i in range(1, len(self.maps)):
            ker = kernel(R, self.shifts[i], self.shifts[i - 1], self.maps[i])
            K = GradedModule(R, self.shifts[i], ker)
            if i + 1 < len(self.maps):
                I = GradedModule(R, self.shifts[i],
                                 [(self.shifts[i + 1][k], c) for k, c in enumerate(self.maps[i + 1])])
                if not (contains_module(K, I) and contains_module(I, K)):
                    return False
        return True


def compose_zero(R: GradedRing, outer: List[VecDict], inner: List[VecDict]) -> bool:
    """outer ∘ inner == 0 where inner columns live in outer's source."""
    for col in inner:
        acc: VecDict = {}
        for (k, e), c in col.items():
            for key, a in vec_mul_mono(R, outer[k], e, c).items():
                acc[key] = (acc.get(key, 0) + a) % R.p
        if any(acc.values()):
            return False
    return True


def apply_map(R: GradedRing, cols: List[VecDict], v: VecDict) -> VecDict:
    acc: VecDict = {}
    for (k, e), c in v.items():
        for key, a in vec_mul_mono(R, cols[k], e, c).items():
            acc[key] = (acc.get(key, 0) + a) % R.p
    return {k: a for k, a in acc.items() if a}


def resolve(M: GradedModule, h: int = 6) -> MinimalResolution:
    """Minimal graded free resolution of M through homological degree h."""
    if h < 0:
        raise ValueError("h must be non-negative")
    R = M.ring
    gens, rels = first_step(M)
    if not gens:
        return MinimalResolution(M, [()], [[]], h, True)
    shifts = [tuple(d for d, _ in gens), tuple(d for d, _ in rels)]
    maps: List[List[VecDict]] = [[t for _, t in gens], [t for _, t in rels]]
    i = 1
    while shifts[i] and i <= h:
        ker = kernel(R, shifts[i], shifts[i - 1], maps[i])
        shifts.append(tuple(d for d, _ in ker))
        maps.append([t for _, t in ker])
        i += 1
    terminated = any(not s for s in shifts[1:h + 2])
    return MinimalResolution(M, shifts, maps, h, terminated)


# ---------------------------------------------------------------- reports

@dataclass
class BettiTable:
    entries: Dict[Tuple[int, int], int]
    window: int
    terminated: bool = False

    def beta(self, i: int, j: int | None = None) -> int:
        if j is None:
            return sum(c for (a, _), c in self.entries.items() if a == i)
        return self.entries.get((i, j), 0)

    def to_json(self) -> dict:
        return {f"{i},{j}": c for (i, j), c in sorted(self.entries.items())}

    def pretty(self) -> str:
        if not self.entries:
            return "0"
        cols = range(0, max(i for i, _ in self.entries) + 1)
        rows = sorted({j - i for i, j in self.entries})
        lines = ["      " + " ".join(f"{i:>4}" for i in cols)]
        for r in rows:
            vals = [self.entries.get((i, i + r), 0) for i in cols]
            lines.append(f"{r:>4}: " + " ".join(f"{v if v else '.':>4}" for v in vals))
        return "\n".join(lines)


@dataclass
class InvariantReport:
    projective_dimension: Tuple[int, str]
    regularity: Tuple[int | None, str]

    def to_json(self) -> dict:
        return {"pd": {"value": self.projective_dimension[0], "status": self.projective_dimension[1]},
                "reg": {"value": self.regularity[0], "status": self.regularity[1]}}


def betti(res: MinimalResolution) -> BettiTable:
    ent: Dict[Tuple[int, int], int] = {}
    for i in range(min(res.computed_to, len(res.shifts) - 1) + 1):
        for a in res.shifts[i]:
            ent[(i, a)] = ent.get((i, a), 0) + 1
    return BettiTable(ent, res.computed_to, res.terminated)


def invariants(res: MinimalResolution) -> InvariantReport:
    st = "exact" if res.terminated else "at_least"
    pd = max((i for i in range(res.computed_to + 1) if res.rank(i)), default=0)
    regs = [a - i for i in range(res.computed_to + 1) for a in res.shifts_at(i)]
    reg = max(regs) if regs else None
    return InvariantReport((pd, st), (reg, st))


def betti_json(res: MinimalResolution) -> dict:
    out = {"betti": betti(res).to_json()}
    out.update(invariants(res).to_json())
    out["terminated"] = res.terminated
    out["window"] = res.computed_to
    return out


def syzygy_module(res: MinimalResolution, i: int, name=None) -> GradedModule:
    """Ω_i: image of the i-th differential inside F_{i-1} (Ω_0 = M)."""
    if i < 0 or i > res.computed_to + 1:
        raise IndexError(f"syzygy index {i} outside the computed window")
    if i == 0:
        return res.module
    return GradedModule(res.ring, res.shifts_at(i - 1),
                        [(a, c) for a, c in zip(res.shifts_at(i), res.differential(i))],
                        [], name)


__all__ = ["MinimalResolution", "BettiTable", "InvariantReport", "resolve", "betti",
           "invariants", "syzygy_module", "first_step", "compose_zero", "apply_map",
           "betti_json"]
