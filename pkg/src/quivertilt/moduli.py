"""Numeric invariants of quiver moduli: dimensions, blow-up data, divisor classes, semi-invariant counts."""

from __future__ import annotations

import random
from collections.abc import Sequence
from dataclasses import asdict, dataclass

from .field import Field
from .lattice import Quiver, Vector, euler_context, strictly_less, vec_gcd
from .perp import ProjectionContext, regular_weight_tests, transport, weight_on_QE
from .rep import (
    WeightMismatchError,
    WeightNotEffectiveError,
    generic_hom_ext,
    random_rep,
    semi_invariant,
)
from .stability import (
    STABLE,
    UNSTABLE,
    WeightNotOrthogonalError,
    dimvec_stability,
    generic_end_dim,
    generic_subdims,
    hyperplane_key,
    wall_scan,
)


@dataclass(frozen=True)
class AnalysisReport:
    alpha: Vector
    sigma: Vector
    stability: str
    dimension: int | None
    schur: bool
    schur_by_end: bool
    generic_end_dim: int
    indivisible: bool
    subdims: tuple[Vector, ...]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["alpha"], d["sigma"] = list(self.alpha), list(self.sigma)
        d["subdims"] = [list(g) for g in self.subdims]
        return d


def analyze(
    quiver: Quiver,
    alpha: Sequence[int],
    sigma: Sequence[int],
    field: Field | None = None,
    rng: random.Random | None = None,
    trials: int = 3,
) -> AnalysisReport:
    """Stability class of ``(alpha, sigma)`` and, when stable points exist, ``1 - <alpha, alpha>``."""
    F = field or Field()
    rng = rng or random.Random(0)
    ctx = euler_context(quiver)
    alpha, sigma = tuple(alpha), tuple(sigma)
    if ctx.pair(sigma, alpha) != 0:
        raise WeightNotOrthogonalError(f"sigma(alpha) = {ctx.pair(sigma, alpha)} is nonzero")
    subs = tuple(generic_subdims(quiver, alpha, F, rng, trials))
    status = dimvec_stability(quiver, alpha, sigma, subdims=subs)
    schur = dimvec_stability(quiver, alpha, ctx.canonical_weight(alpha), subdims=subs) == STABLE
    end = generic_end_dim(quiver, alpha, F, rng, trials)
    return AnalysisReport(
        alpha=alpha,
        sigma=sigma,
        stability=status,
        dimension=1 - ctx.euler_form(alpha, alpha) if status == STABLE else None,
        schur=schur,
        schur_by_end=end == 1,
        generic_end_dim=end,
        indivisible=vec_gcd(alpha) == 1,
        subdims=subs,
    )


def smiley_check(alpha: Sequence[int], eps: Sequence[int]) -> bool:
    """Indivisibility of ``alpha`` and ``alpha - eps``, and neither doubled piece sits strictly below ``alpha``."""
    rest = tuple(a - e for a, e in zip(alpha, eps))
    if vec_gcd(alpha) != 1 or vec_gcd(rest) != 1:
        return False
    for w in (eps, rest):
        if strictly_less(tuple(2 * x for x in w), alpha):
            return False
    return True


def _check_ctx(ctx: ProjectionContext, alpha: Sequence[int]) -> None:
    if len(alpha) != ctx.quiver.n:
        raise ValueError(f"alpha has {len(alpha)} entries, the quiver has {ctx.quiver.n} vertices")
    pairing = ctx.ctx.euler_form(ctx.eps, alpha)
    if pairing != 0:
        raise ValueError(f"<eps, alpha> = {pairing}; alpha is not right orthogonal to {ctx.eps}")


@dataclass(frozen=True)
class BlowupReport:
    eps: Vector
    alpha: Vector
    beta: Vector
    alpha_eps: Vector
    beta_dual_lift: Vector
    downstairs_dim: int
    smiley_ok: bool
    single_wall_ok: bool
    walls: tuple
    e_dual_regular: bool
    e_effective: bool
    center_codim_paper: int
    center_dim_thaddeus: int
    exceptional_locus_dim: int
    hom_rest_eps: int
    ext_rest_eps: int
    ext_eps_rest: int
    ext_identity_ok: bool | None

    @property
    def hypotheses_ok(self) -> bool:
        return self.smiley_ok and self.single_wall_ok and self.e_dual_regular and self.e_effective

    def to_dict(self) -> dict:
        d = asdict(self)
        for k in ("eps", "alpha", "beta", "alpha_eps", "beta_dual_lift"):
            d[k] = list(d[k])
        d["walls"] = [w.to_dict() for w in self.walls]
        d["hypotheses_ok"] = self.hypotheses_ok
        return d


def blowup_report(
    alpha: Sequence[int],
    beta: Sequence[int],
    ctx: ProjectionContext,
    rng: random.Random | None = None,
    trials: int = 3,
) -> BlowupReport:
    """Numbers attached to crossing the shell of ``eps`` from ``sigma_beta`` towards the dual lift of ``beta``."""
    rng = rng or random.Random(0)
    _check_ctx(ctx, alpha)
    q, F, lat, eps = ctx.quiver, ctx.E.field, ctx.ctx, ctx.eps
    alpha, beta = tuple(alpha), tuple(beta)
    rest = tuple(a - e for a, e in zip(alpha, eps))
    a_e = transport(ctx, alpha, "down-right")
    lift = lat.project_root(beta, eps, "dual")

    walls: tuple = ()
    single = False
    sub = generic_subdims(q, alpha, F, rng, trials)
    s0, s1 = lat.weight_of(beta), lat.weight_of(lift)
    if dimvec_stability(q, alpha, s0, subdims=sub) != UNSTABLE and dimvec_stability(q, alpha, s1, subdims=sub) != UNSTABLE:
        walls = tuple(wall_scan(q, alpha, s0, s1, F, rng, candidates="roots", closed=True, subdims=sub, trials=trials))
        target = hyperplane_key(alpha, eps)
        single = all(w.hyperplane == target for w in walls)

    hom_re, ext_re = generic_hom_ext(q, rest, eps, F, rng, trials)
    _, ext_er = generic_hom_ext(q, eps, rest, F, rng, trials)
    codim = -lat.euler_form(rest, eps)
    base = 1 - lat.euler_form(rest, rest)
    return BlowupReport(
        eps=eps,
        alpha=alpha,
        beta=beta,
        alpha_eps=a_e,
        beta_dual_lift=lift,
        downstairs_dim=1 - ctx.ctx_E.euler_form(a_e, a_e),
        smiley_ok=smiley_check(alpha, eps),
        single_wall_ok=single,
        walls=walls,
        e_dual_regular=regular_weight_tests(ctx, beta, rng, trials).e_dual_regular,
        e_effective=lat.euler_form(eps, beta) > 0,
        center_codim_paper=codim,
        center_dim_thaddeus=base + ext_er - 1,
        exceptional_locus_dim=base + ext_re - 1,
        hom_rest_eps=hom_re,
        ext_rest_eps=ext_re,
        ext_eps_rest=ext_er,
        ext_identity_ok=(ext_re == codim) if hom_re == 0 else None,
    )


@dataclass(frozen=True)
class DivisorClass:
    pullback_coefficient: int
    exceptional_coefficient: int
    pullback_weight: Vector
    beta_dual_lift: Vector
    smiley_ok: bool
    hom_vanishes: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pullback_weight"] = list(self.pullback_weight)
        d["beta_dual_lift"] = list(self.beta_dual_lift)
        return d


def divisor_transform(
    alpha: Sequence[int],
    beta: Sequence[int],
    ctx: ProjectionContext,
    rng: random.Random | None = None,
    trials: int = 3,
) -> DivisorClass:
    """``D_beta`` as pullback of the downstairs class plus a multiple of the exceptional divisor."""
    rng = rng or random.Random(0)
    _check_ctx(ctx, alpha)
    lat, eps = ctx.ctx, ctx.eps
    pairing = lat.euler_form(eps, beta)
    if pairing <= 0:
        raise WeightNotEffectiveError(f"<eps, beta> = {pairing}; need a positive pairing")
    lift = lat.project_root(beta, eps, "dual")
    rest = tuple(a - e for a, e in zip(alpha, eps))
    hom, _ = generic_hom_ext(ctx.quiver, rest, lift, ctx.E.field, rng, trials)
    return DivisorClass(
        pullback_coefficient=1,
        exceptional_coefficient=-pairing,
        pullback_weight=weight_on_QE(ctx, beta),
        beta_dual_lift=lift,
        smiley_ok=smiley_check(alpha, eps),
        hom_vanishes=hom == 0,
    )


def anticanonical_checks(alpha: Sequence[int], ctx: ProjectionContext) -> tuple[bool, bool]:
    """Compatibility of the anti-canonical class with projection, and the codimension identity."""
    _check_ctx(ctx, alpha)
    lat, latE, eps = ctx.ctx, ctx.ctx_E, ctx.eps
    ac = tuple(a + t for a, t in zip(alpha, lat.tau(alpha)))
    a_e = transport(ctx, alpha, "down-right")
    ac_e = tuple(a + t for a, t in zip(a_e, latE.tau(a_e)))
    compat = transport(ctx, ac, "down-dual") == ac_e
    rest = tuple(a - e for a, e in zip(alpha, eps))
    codim = lat.euler_form(eps, ac) == -lat.euler_form(rest, eps) - 1
    return compat, codim


# -- semi-invariant dimensions -----------------------------------------------------


@dataclass(frozen=True)
class SIDimension:
    dimension: int
    curve: tuple[tuple[int, int], ...]
    samples: int
    beta: Vector

    def to_dict(self) -> dict:
        return {"dimension": self.dimension, "curve": [list(c) for c in self.curve], "samples": self.samples, "beta": list(self.beta)}


def _sample_rng(seed: int, role: str, i: int) -> random.Random:
    return random.Random(f"{seed}:{role}:{i}")


def si_dimension(
    quiver: Quiver,
    alpha: Sequence[int],
    sigma: Sequence[int],
    n: int = 1,
    field: Field | None = None,
    seed: int = 0,
    samples: int | None = None,
    slack: int = 5,
    max_samples: int = 512,
) -> SIDimension:
    """Rank of the evaluation matrix ``c(M_j, N_i)`` with ``M_j`` in ``Rep_alpha`` and ``N_i`` in ``Rep_{n beta}``.

    Without ``samples`` the matrix is grown by doubling until its rank is at
    least ``slack`` below the sample count.  Samples are seeded per index, so a
    larger matrix always contains the smaller one.
    """
    F = field or Field()
    ctx = euler_context(quiver)
    alpha, sigma = tuple(alpha), tuple(sigma)
    if n < 1:
        raise ValueError("n must be positive")
    if ctx.pair(sigma, alpha) != 0:
        raise WeightMismatchError(f"sigma(alpha) = {ctx.pair(sigma, alpha)}; the intertwiner matrix is not square")
    beta = tuple(n * b for b in ctx.dimvec_of(sigma))
    if any(b < 0 for b in beta):
        raise ValueError(f"weight {sigma} corresponds to {beta}, which has negative entries")
    Ms: list = []
    Ns: list = []
    rows: list[list] = []

    def grow(k: int) -> None:
        while len(Ms) < k:
            Ms.append(random_rep(quiver, alpha, F, _sample_rng(seed, "M", len(Ms))))
        while len(Ns) < k:
            Ns.append(random_rep(quiver, beta, F, _sample_rng(seed, "N", len(Ns))))
        for i, row in enumerate(rows):
            row.extend(semi_invariant(Ms[j], Ns[i]) for j in range(len(row), k))
        for i in range(len(rows), k):
            rows.append([semi_invariant(Ms[j], Ns[i]) for j in range(k)])

    def rank_at(k: int) -> int:
        return F.rank(F.from_rows([r[:k] for r in rows[:k]]))

    curve = []
    if samples is not None:
        grow(samples)
        curve.append((samples, rank_at(samples)))
    else:
        k = 2 * slack
        while True:
            grow(k)
            r = rank_at(k)
            curve.append((k, r))
            if r <= k - slack or k >= max_samples:
                break
            k *= 2
    return SIDimension(curve[-1][1], tuple(curve), curve[-1][0], beta)


def hilbert_samples(
    quiver: Quiver, alpha: Sequence[int], sigma: Sequence[int], n_max: int, field: Field | None = None, seed: int = 0
) -> list[int]:
    return [si_dimension(quiver, alpha, sigma, x, field, seed).dimension for x in range(1, n_max + 1)]


__all__ = [
    "AnalysisReport",
    "BlowupReport",
    "DivisorClass",
    "SIDimension",
    "analyze",
    "anticanonical_checks",
    "blowup_report",
    "divisor_transform",
    "hilbert_samples",
    "si_dimension",
    "smiley_check",
]
