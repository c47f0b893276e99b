"""Generic stability of dimension vectors, G-ample cones, walls and fundamental ranks."""

from __future__ import annotations

import itertools
import random
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .cone import nullspace, polyhedral_cone
from .field import Field
from .lattice import Quiver, Vector, euler_context, leq, primitive, vec_gcd
from .rep import (
    IntertwinerSystem,
    build_extension,
    generic_hom_ext,
    generic_rank_vector,
    random_cocycle,
    random_rep,
)

DEFAULT_CAP = 10**6

STABLE = "stable"
SEMISTABLE = "strictly-semistable"
UNSTABLE = "unstable"


class EnumerationCapError(ValueError):
    pass


class WeightNotOrthogonalError(ValueError):
    """The weight does not vanish on the dimension vector."""


class OutsideConeError(ValueError):
    pass


def _box(alpha: Sequence[int], cap: int):
    size = prod(a + 1 for a in alpha)
    if size > cap:
        raise EnumerationCapError(f"{size} candidate subvectors exceed the cap of {cap}")
    return itertools.product(*(range(a + 1) for a in alpha))


def generic_end_dim(quiver: Quiver, alpha: Sequence[int], field: Field, rng: random.Random, trials: int = 3) -> int:
    best = None
    for _ in range(trials):
        M = random_rep(quiver, alpha, field, rng)
        h = IntertwinerSystem(M, M).hom_dim
        best = h if best is None else min(best, h)
        if best <= 1:
            break
    return best


def is_schur_root(quiver: Quiver, alpha: Sequence[int], field: Field, rng: random.Random, trials: int = 3) -> bool:
    return any(alpha) and generic_end_dim(quiver, alpha, field, rng, trials) == 1


def generic_subdims(
    quiver: Quiver,
    alpha: Sequence[int],
    field: Field,
    rng: random.Random,
    trials: int = 3,
    cap: int = DEFAULT_CAP,
) -> list[Vector]:
    """All ``0 <= gamma <= alpha`` with generic ``ext(gamma, alpha - gamma) = 0``, in lexicographic order."""
    alpha = tuple(int(a) for a in alpha)
    ctx = euler_context(quiver)
    out = []
    for g in _box(alpha, cap):
        rest = tuple(a - b for a, b in zip(alpha, g))
        if not any(g) or not any(rest):
            out.append(tuple(g))
            continue
        # ext >= -<g, rest>, so a negative pairing rules g out without sampling
        if ctx.euler_form(g, rest) < 0:
            continue
        _, ext = generic_hom_ext(quiver, g, rest, field, rng, trials)
        if ext == 0:
            out.append(tuple(g))
    return out


def _proper(alpha, subdims):
    alpha = tuple(alpha)
    return [g for g in subdims if any(g) and tuple(g) != alpha]


def dimvec_stability(
    quiver: Quiver,
    alpha: Sequence[int],
    sigma: Sequence[int],
    field: Field | None = None,
    rng: random.Random | None = None,
    subdims: Sequence[Vector] | None = None,
    trials: int = 3,
) -> str:
    """King's criterion at the generic point of ``Rep_alpha``."""
    ctx = euler_context(quiver)
    if ctx.pair(sigma, alpha) != 0:
        raise WeightNotOrthogonalError(f"sigma(alpha) = {ctx.pair(sigma, alpha)} is nonzero")
    if subdims is None:
        subdims = generic_subdims(quiver, alpha, field or Field(), rng or random.Random(0), trials)
    vals = [ctx.pair(sigma, g) for g in _proper(alpha, subdims)]
    if not vals or max(vals) < 0:
        return STABLE
    if max(vals) == 0:
        return SEMISTABLE
    return UNSTABLE


@dataclass(frozen=True)
class ConeDescription:
    ambient_dim: int
    equalities: tuple[tuple[int, ...], ...]
    facets: tuple[tuple[int, ...], ...]
    rays: tuple[tuple[int, ...], ...]
    rays_beta: tuple[tuple[int, ...], ...]
    lineality: tuple[tuple[int, ...], ...]
    subdims: tuple[Vector, ...]

    def contains(self, sigma: Sequence[int]) -> bool:
        if any(sum(a * b for a, b in zip(e, sigma)) != 0 for e in self.equalities):
            return False
        return all(sum(a * b for a, b in zip(g, sigma)) <= 0 for g in _proper(self.equalities[0], self.subdims))

    def to_dict(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "equalities": [list(e) for e in self.equalities],
            "facets": [list(f) for f in self.facets],
            "rays_weight": [list(r) for r in self.rays],
            "rays_beta": [list(r) for r in self.rays_beta],
            "lineality": [list(r) for r in self.lineality],
        }


def g_ample_cone(
    quiver: Quiver,
    alpha: Sequence[int],
    field: Field | None = None,
    rng: random.Random | None = None,
    subdims: Sequence[Vector] | None = None,
    trials: int = 3,
    cap: int = DEFAULT_CAP,
) -> ConeDescription:
    """``{sigma : sigma(alpha) = 0, sigma(gamma) <= 0 for generic subdims gamma}``."""
    alpha = tuple(int(a) for a in alpha)
    ctx = euler_context(quiver)
    if subdims is None:
        subdims = generic_subdims(quiver, alpha, field or Field(), rng or random.Random(0), trials, cap)
    ineq = _proper(alpha, subdims)
    res = polyhedral_cone(quiver.n, [alpha], ineq)
    rays_beta = tuple(ctx.dimvec_of(r) for r in res.rays)
    return ConeDescription(
        ambient_dim=quiver.n,
        equalities=(alpha,),
        facets=res.facets,
        rays=res.rays,
        rays_beta=rays_beta,
        lineality=res.lineality,
        subdims=tuple(subdims),
    )


@dataclass(frozen=True)
class WallCrossing:
    gamma: Vector
    t: Fraction
    hyperplane: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"gamma": list(self.gamma), "t": str(self.t), "hyperplane": list(self.hyperplane)}


def hyperplane_key(alpha: Sequence[int], functional: Sequence[int]) -> tuple[int, ...]:
    """Canonical form of a functional restricted to ``{sigma : sigma(alpha) = 0}``.

    Functionals that agree on that subspace up to scaling (``gamma`` and
    ``alpha - gamma``, for instance) get the same key.
    """
    n = len(alpha)
    V = nullspace([list(alpha)], n)
    coords = primitive([sum(Fraction(f) * v[i] for i, f in enumerate(functional)) for v in V])
    first = next((x for x in coords if x), 0)
    return tuple(-x for x in coords) if first < 0 else coords


def root_candidates(
    quiver: Quiver,
    alpha: Sequence[int],
    field: Field,
    rng: random.Random,
    schur_only: bool = True,
    trials: int = 3,
    cap: int = DEFAULT_CAP,
) -> list[Vector]:
    """Indivisible ``0 < omega < alpha`` with ``<omega, omega> <= 1``, optionally Schur."""
    ctx = euler_context(quiver)
    out = []
    for w in _box(alpha, cap):
        if not any(w) or tuple(w) == tuple(alpha) or vec_gcd(w) != 1:
            continue
        if ctx.euler_form(w, w) > 1:
            continue
        if schur_only and not is_schur_root(quiver, w, field, rng, trials):
            continue
        out.append(tuple(w))
    return out


def wall_scan(
    quiver: Quiver,
    alpha: Sequence[int],
    sigma0: Sequence[int],
    sigma1: Sequence[int],
    field: Field | None = None,
    rng: random.Random | None = None,
    candidates: str = "subdims",
    closed: bool = False,
    subdims: Sequence[Vector] | None = None,
    trials: int = 3,
) -> list[WallCrossing]:
    """Crossings of the segment ``sigma_t = (1 - t) sigma0 + t sigma1`` with candidate hyperplanes.

    ``candidates='subdims'`` uses generic subdimension vectors and the open
    interval; ``'roots'`` uses the Schur root candidates ``0 < omega < alpha``.
    ``closed=True`` also reports crossings at the endpoints.
    """
    field = field or Field()
    rng = rng or random.Random(0)
    ctx = euler_context(quiver)
    alpha = tuple(alpha)
    for s in (sigma0, sigma1):
        if ctx.pair(s, alpha) != 0:
            raise WeightNotOrthogonalError(f"endpoint {tuple(s)} does not vanish on alpha")
    if subdims is None:
        subdims = generic_subdims(quiver, alpha, field, rng, trials)
    for s in (sigma0, sigma1):
        if dimvec_stability(quiver, alpha, s, subdims=subdims) == UNSTABLE:
            raise OutsideConeError(f"endpoint {tuple(s)} lies outside the G-ample cone")
    if candidates == "subdims":
        cands = _proper(alpha, subdims)
    elif candidates == "roots":
        cands = root_candidates(quiver, alpha, field, rng, True, trials)
    else:
        raise ValueError("candidates must be 'subdims' or 'roots'")
    out = []
    for g in cands:
        f0, f1 = ctx.pair(sigma0, g), ctx.pair(sigma1, g)
        if f0 == f1:
            continue
        t = Fraction(f0, f0 - f1)
        inside = (0 <= t <= 1) if closed else (0 < t < 1)
        if inside:
            out.append(WallCrossing(tuple(g), t, hyperplane_key(alpha, g)))
    out.sort(key=lambda w: (w.t, w.hyperplane, w.gamma))
    return out


def crossing_hyperplanes(crossings: Sequence[WallCrossing]) -> dict[tuple[int, ...], list[WallCrossing]]:
    groups: dict[tuple[int, ...], list[WallCrossing]] = {}
    for w in crossings:
        groups.setdefault(w.hyperplane, []).append(w)
    return groups


def is_fundamental_rank(
    quiver: Quiver,
    gamma: Sequence[int],
    alpha: Sequence[int],
    beta: Sequence[int],
    field: Field,
    rng: random.Random,
    repeats: int = 3,
) -> bool:
    """Sample the generic pair carrying a rank-``gamma`` map and test whether it spans a divisor component.

    The pair is ``M = [K; I]`` (``I`` a quotient of dimension ``gamma``) and
    ``N = [I; C]`` (``I`` a subrepresentation) with random blocks and
    cocycles; the composite ``M -> I -> N`` has rank ``gamma``.  The stratum
    is a component exactly when the generic rank is ``gamma`` and
    ``hom(M, N) = 1 - <alpha - gamma, beta - gamma>``.
    """
    ctx = euler_context(quiver)
    gamma, alpha, beta = (tuple(int(x) for x in v) for v in (gamma, alpha, beta))
    if ctx.euler_form(alpha, beta) != 0:
        raise ValueError("<alpha, beta> must vanish")
    if not any(gamma) or not leq(gamma, alpha) or not leq(gamma, beta) or any(x < 0 for x in gamma):
        raise ValueError("need 0 < gamma <= alpha and gamma <= beta")
    a_rest = tuple(a - g for a, g in zip(alpha, gamma))
    b_rest = tuple(b - g for b, g in zip(beta, gamma))
    target = 1 - ctx.euler_form(a_rest, b_rest)
    for _ in range(repeats):
        I = random_rep(quiver, gamma, field, rng)
        K = random_rep(quiver, a_rest, field, rng)
        C = random_rep(quiver, b_rest, field, rng)
        M = build_extension(K, I, random_cocycle(K, I, rng))
        N = build_extension(I, C, random_cocycle(I, C, rng))
        S = IntertwinerSystem(M, N)
        h = S.hom_dim
        if h == 0:
            continue
        if h != target:
            return False
        return generic_rank_vector(M, N, rng) == gamma
    return False


def fundamental_ranks(
    quiver: Quiver,
    alpha: Sequence[int],
    beta: Sequence[int],
    field: Field,
    rng: random.Random,
    general_source: bool = True,
    trials: int = 3,
) -> list[Vector]:
    """Fundamental ranks for ``(alpha, beta)`` found by testing every admissible ``gamma``.

    With ``general_source`` only components lying over a general
    ``alpha``-representation are kept, i.e. ``alpha - gamma`` must be a generic
    subdimension vector of ``alpha`` (generic ``ext(alpha - gamma, gamma) = 0``).
    Otherwise components supported over a proper closed subset of
    ``Rep_alpha`` are listed too.
    """
    alpha, beta = tuple(alpha), tuple(beta)
    bound = tuple(min(a, b) for a, b in zip(alpha, beta))
    out = []
    for g in _box(bound, DEFAULT_CAP):
        if not any(g) or not is_fundamental_rank(quiver, g, alpha, beta, field, rng):
            continue
        if general_source:
            rest = tuple(a - x for a, x in zip(alpha, g))
            if any(rest) and generic_hom_ext(quiver, rest, g, field, rng, trials)[1] != 0:
                continue
        out.append(tuple(g))
    return out
