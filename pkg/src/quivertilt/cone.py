"""Polyhedral cones ``{x : Ex = 0, Ax <= 0}`` by exact double description."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from .lattice import primitive, rational_inverse


def _echelon(rows: list[list[Fraction]], ncols: int):
    """Reduced echelon form and pivot columns."""
    R = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(R)) if R[i][c] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    if not rows:
        return 0
    return len(_echelon([[Fraction(x) for x in r] for r in rows], ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : r.x = 0 for all rows r}``."""
    R, pivots = _echelon([[Fraction(x) for x in r] for r in rows], ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        out.append(v)
    return out


def rowspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    if not rows:
        return []
    return _echelon([[Fraction(x) for x in r] for r in rows], ncols)[0]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class ConeResult:
    ambient_dim: int
    equalities: tuple[tuple[int, ...], ...]
    rays: tuple[tuple[int, ...], ...]
    lineality: tuple[tuple[int, ...], ...]
    facets: tuple[tuple[int, ...], ...]
    dimension: int

    def contains(self, x: Sequence[int]) -> bool:
        return all(_dot(e, x) == 0 for e in self.equalities) and all(_dot(f, x) <= 0 for f in self.facets)


def _double_description(C: list[list[Fraction]], d: int) -> list[tuple[list[Fraction], frozenset]]:
    """Extreme rays of the pointed cone ``{z : C z <= 0}`` (``C`` has rank ``d``)."""
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    for i, c in enumerate(C):
        if rank(basis + [c], d) > len(basis):
            basis.append(c)
            chosen.append(i)
        if len(chosen) == d:
            break
    inv = rational_inverse(basis)
    rays = []
    for j in range(d):
        r = [-inv[i][j] for i in range(d)]
        tight = frozenset(chosen[k] for k in range(d) if k != j)
        rays.append((r, tight))
    done = set(chosen)
    for i, c in enumerate(C):
        if i in done:
            continue
        done.add(i)
        vals = [_dot(c, r) for r, _ in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zero = [k for k, v in enumerate(vals) if v == 0]
        new = [rays[k] for k in neg]
        new += [(rays[k][0], rays[k][1] | {i}) for k in zero]
        for p in pos:
            rp, tp = rays[p]
            for n in neg:
                rn, tn = rays[n]
                common = tp & tn
                if len(common) < d - 2:
                    continue
                if rank([C[j] for j in common], d) != d - 2:
                    continue
                vp, vn = vals[p], vals[n]
                r = [vp * a - vn * b for a, b in zip(rn, rp)]
                new.append((r, common | {i}))
        rays = new
    return rays


def polyhedral_cone(
    ambient_dim: int, equalities: Sequence[Sequence[int]], inequalities: Sequence[Sequence[int]]
) -> ConeResult:
    """Extreme rays, lineality space and facets of ``{x : Ex = 0, Ax <= 0}``."""
    n = ambient_dim
    eqs = [tuple(int(x) for x in e) for e in equalities]
    V = nullspace(eqs, n) if eqs else [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    V = [[Fraction(x) for x in primitive(v)] for v in V]
    k = len(V)
    A = [[_dot(a, v) for v in V] for a in inequalities]
    lin = nullspace(A, k) if A else [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    W = rowspace(A, k)
    d = len(W)
    C = [[_dot(a, w) for w in W] for a in A]

    def to_ambient(z):
        y = [sum(z[j] * W[j][i] for j in range(d)) for i in range(k)]
        return [sum(y[i] * V[i][c] for i in range(k)) for c in range(n)]

    raw = _double_description(C, d) if d else []
    rays = []
    seen = set()
    zrays = []
    for z, _ in raw:
        r = primitive(to_ambient(z))
        if any(r) and r not in seen:
            seen.add(r)
            rays.append(r)
            zrays.append(z)
    lineality = [primitive([sum(y[i] * V[i][c] for i in range(k)) for c in range(n)]) for y in lin]
    facets = []
    fseen = set()
    for idx, a in enumerate(inequalities):
        tight = [z for z in zrays if _dot(C[idx], z) == 0]
        if d and rank(tight, d) == d - 1 and any(x != 0 for x in C[idx]):
            key = primitive(A[idx])
            if key not in fseen:
                fseen.add(key)
                facets.append(tuple(int(x) for x in a))
    return ConeResult(
        ambient_dim=n,
        equalities=tuple(eqs),
        rays=tuple(sorted(rays)),
        lineality=tuple(lineality),
        facets=tuple(facets),
        dimension=d + len(lin),
    )
