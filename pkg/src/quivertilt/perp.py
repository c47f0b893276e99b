"""Orthogonal exceptional roots, the projected quiver and coordinate transport."""

from __future__ import annotations

import random
from collections.abc import Sequence
from dataclasses import dataclass, field

from .cone import polyhedral_cone
from .decompose import end_decompose, is_isomorphic
from .field import Field
from .lattice import (
    EulerContext,
    IntMatrix,
    NotARealRootError,
    Quiver,
    Vector,
    euler_context,
    mat_mul,
    rational_inverse,
    transpose,
    vec_mat,
)
from .rep import (
    NotExceptionalError,
    Representation,
    exceptional_rep,
    generic_hom_ext,
    project_module,
    projective_rep,
    random_rep,
    tau_partner,
    universal_map,
)
from .stability import DEFAULT_CAP, _box, g_ample_cone

LEFT = "left"
RIGHT = "right"


class ProjectedQuiverError(ValueError):
    pass


@dataclass(frozen=True)
class OrthogonalRoot:
    eps: Vector
    side: str
    exceptional_to_alpha: bool

    def to_dict(self) -> dict:
        return {"eps": list(self.eps), "side": self.side, "exceptional_to_alpha": self.exceptional_to_alpha}


def find_orthogonal_roots(
    quiver: Quiver,
    alpha: Sequence[int],
    bound: Sequence[int],
    field: Field,
    rng: random.Random,
    trials: int = 3,
    cap: int = DEFAULT_CAP,
) -> list[OrthogonalRoot]:
    """Real Schur roots ``eps <= bound`` orthogonal to ``alpha`` on either side.

    A left root is exceptional to ``alpha`` when generic ``hom(eps, alpha - eps)``
    vanishes; for right roots the mirror condition ``hom(alpha - eps, eps) = 0``
    is reported.
    """
    ctx = euler_context(quiver)
    alpha = tuple(int(a) for a in alpha)
    if any(b < 0 for b in bound):
        raise ValueError("bound must be entrywise nonnegative")
    out = []
    for e in _box(bound, cap):
        if not any(e) or ctx.euler_form(e, e) != 1:
            continue
        left = ctx.euler_form(e, alpha) == 0
        right = ctx.euler_form(alpha, e) == 0
        if not (left or right):
            continue
        try:
            exceptional_rep(quiver, e, field, rng)
        except NotExceptionalError:
            continue
        rest = tuple(a - x for a, x in zip(alpha, e))
        comparable = all(x >= 0 for x in rest)
        if left and generic_hom_ext(quiver, e, alpha, field, rng, trials)[0] == 0:
            exc = comparable and generic_hom_ext(quiver, e, rest, field, rng, trials)[0] == 0
            out.append(OrthogonalRoot(tuple(e), LEFT, exc))
        if right and generic_hom_ext(quiver, alpha, e, field, rng, trials)[0] == 0:
            exc = comparable and generic_hom_ext(quiver, rest, e, field, rng, trials)[0] == 0
            out.append(OrthogonalRoot(tuple(e), RIGHT, exc))
    return out


def _topological_order(A: Sequence[Sequence[int]]) -> list[int]:
    """Kahn's algorithm; among ready vertices the smallest original index goes first."""
    n = len(A)
    indeg = [sum(1 for i in range(n) if A[i][j] > 0) for j in range(n)]
    ready = [j for j in range(n) if indeg[j] == 0]
    order = []
    while ready:
        ready.sort()
        v = ready.pop(0)
        order.append(v)
        for j in range(n):
            if A[v][j] > 0:
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
    if len(order) != n:
        raise ProjectedQuiverError("derived adjacency has an oriented cycle")
    return order


@dataclass(frozen=True, eq=False)
class ProjectionContext:
    quiver: Quiver
    eps: Vector
    E: Representation
    projective_dims: tuple[Vector, ...]
    simples: IntMatrix
    quiver_E: Quiver
    permutation: tuple[int, ...]
    projectives: tuple = field(repr=False, default=())
    tauE: Representation | None = field(repr=False, default=None)

    @property
    def ctx(self) -> EulerContext:
        return euler_context(self.quiver)

    @property
    def ctx_E(self) -> EulerContext:
        return euler_context(self.quiver_E)

    def transport(self, x: Sequence[int], direction: str) -> Vector:
        return transport(self, x, direction)

    def to_dict(self) -> dict:
        return {
            "eps": list(self.eps),
            "projective_dims": [list(p) for p in self.projective_dims],
            "simples": [list(s) for s in self.simples],
            "quiver_E": self.quiver_E.to_dict(),
            "adjacency_E": [list(r) for r in self.quiver_E.adjacency],
            "permutation": list(self.permutation),
        }


def projected_quiver(E: Representation, rng: random.Random, attempts: int = 3) -> ProjectionContext:
    """The quiver ``Q_E`` whose representations model the right perpendicular category of ``E``."""
    q, F = E.quiver, E.field
    ctx = euler_context(q)
    eps = E.dim
    if ctx.euler_form(eps, eps) != 1:
        raise NotARealRootError(f"{eps} is not a real root")
    last = None
    for _ in range(attempts):
        reps: list[Representation] = []
        for v in range(q.n):
            proj = project_module(projective_rep(q, v, F), E, "right")
            for X, _k in end_decompose(proj.rep, rng):
                if not any(is_isomorphic(Y, X, rng) for Y in reps):
                    reps.append(X)
        if len(reps) == q.n - 1:
            break
        last = len(reps)
    else:
        raise ProjectedQuiverError(f"found {last} basic projectives, expected {q.n - 1}")
    dims = [r.dim for r in reps]
    M = ctx.euler_matrix
    G = [list(vec_mat(p, M)) for p in dims] + [list(vec_mat(eps, M))]
    try:
        Ginv = rational_inverse(G)
    except ZeroDivisionError as exc:
        raise ProjectedQuiverError("projective classes together with eps are not a basis") from exc
    # S^T = G^{-1} [I; 0]
    m = q.n - 1
    ST = [[Ginv[i][j] for j in range(m)] for i in range(q.n)]
    if any(x.denominator != 1 for row in ST for x in row):
        raise ProjectedQuiverError("simple classes are not integral")
    S = [[int(ST[i][j]) for i in range(q.n)] for j in range(m)]
    euler_E = mat_mul(mat_mul(S, M), transpose(S))
    adj = [[int(i == j) - euler_E[i][j] for j in range(m)] for i in range(m)]
    if any(x < 0 for row in adj for x in row):
        raise ProjectedQuiverError(f"derived Euler matrix {euler_E} has a positive off-diagonal entry")
    if any(adj[i][i] for i in range(m)):
        raise ProjectedQuiverError("derived quiver has loops")
    order = _topological_order(adj)
    adj = [[adj[i][j] for j in order] for i in order]
    S = [S[i] for i in order]
    dims = [dims[i] for i in order]
    reps = [reps[i] for i in order]
    QE = Quiver.from_adjacency(adj, name=f"{q.name}_E" if q.name else "Q_E")
    return ProjectionContext(
        quiver=q,
        eps=tuple(eps),
        E=E,
        projective_dims=tuple(tuple(d) for d in dims),
        simples=tuple(tuple(r) for r in S),
        quiver_E=QE,
        permutation=tuple(order),
        projectives=tuple(reps),
    )


def transport(ctx: ProjectionContext, x: Sequence[int], direction: str) -> Vector:
    """Move vectors between ``Q`` and ``Q_E`` coordinates.

    ``down-right``/``down-dual`` project ``x`` onto the perpendicular lattice
    (right or dual lattice projection) and read off coordinates in the
    ``Q_E`` simples basis; ``up`` maps ``Q_E`` coordinates back via the simples.
    """
    qc = ctx.ctx
    if direction == "up":
        if len(x) != ctx.quiver_E.n:
            raise ValueError(f"expected a vector of length {ctx.quiver_E.n}")
        return vec_mat(x, ctx.simples)
    if len(x) != ctx.quiver.n:
        raise ValueError(f"expected a vector of length {ctx.quiver.n}")
    if direction == "down-right":
        y = qc.project_root(x, ctx.eps, "right")
    elif direction == "down-dual":
        y = qc.project_root(x, ctx.eps, "dual")
    else:
        raise ValueError("direction must be 'down-right', 'down-dual' or 'up'")
    return tuple(qc.euler_form(p, y) for p in ctx.projective_dims)


def weight_on_QE(ctx: ProjectionContext, beta: Sequence[int]) -> Vector:
    """``sigma`` on ``Q_E`` of the dual-projected ``beta``."""
    return ctx.ctx_E.weight_of(transport(ctx, beta, "down-dual"))


@dataclass(frozen=True)
class RegularWeightResult:
    e_dual_regular: bool
    sspreserve: str

    def __iter__(self):
        return iter((self.e_dual_regular, self.sspreserve))


def ensure_tau(ctx: ProjectionContext, rng: random.Random) -> Representation:
    if ctx.tauE is None:
        object.__setattr__(ctx, "tauE", tau_partner(ctx.E, rng))
    return ctx.tauE


def regular_weight_tests(
    ctx: ProjectionContext, beta: Sequence[int], rng: random.Random, trials: int = 3, multiples=(1, 2)
) -> RegularWeightResult:
    """Dual regularity of ``beta`` and the semistability-preservation case."""
    q, F = ctx.quiver, ctx.E.field
    tauE = ensure_tau(ctx, rng)
    regular = True
    for n in multiples:
        ok = False
        for _ in range(trials):
            N = random_rep(q, [n * b for b in beta], F, rng)
            if universal_map(N, tauE, "to-E").surjective:
                ok = True
                break
        regular = regular and ok
    pairing = ctx.ctx.euler_form(ctx.eps, beta)
    if pairing <= 0:
        case = "case-i"
    elif generic_hom_ext(q, tauE.dim, beta, F, rng, trials)[1] == 0:
        case = "case-ii"
    else:
        case = "none"
    return RegularWeightResult(regular, case)


@dataclass(frozen=True)
class CoreDescription:
    roots: tuple[OrthogonalRoot, ...]
    inequalities: tuple[tuple[int, ...], ...]
    rays: tuple[tuple[int, ...], ...]
    rays_beta: tuple[tuple[int, ...], ...]
    empty: bool | None
    weak: bool
    bound: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "roots": [r.to_dict() for r in self.roots],
            "inequalities_weight": [list(i) for i in self.inequalities],
            "rays_weight": [list(r) for r in self.rays],
            "rays_beta": [list(r) for r in self.rays_beta],
            "empty": self.empty,
            "weak_core": self.weak,
            "bound": list(self.bound),
        }


def core_functionals(quiver: Quiver, roots: Sequence[OrthogonalRoot]) -> list[tuple[int, ...]]:
    """Weight-space functionals ``w`` with ``w . sigma_beta <= 0`` on the closed core.

    Left roots: ``<eps, beta> = -sigma_beta(eps)``, so ``w = eps``.  Right
    roots: ``<beta, eps> = sigma_beta . w`` with ``w = -M^{-T} M eps^T``.
    """
    ctx = euler_context(quiver)
    out = []
    MinvT = transpose(ctx.euler_inverse)
    for r in roots:
        if r.side == LEFT:
            out.append(tuple(r.eps))
        else:
            Me = [sum(ctx.euler_matrix[i][j] * r.eps[j] for j in range(quiver.n)) for i in range(quiver.n)]
            out.append(tuple(-sum(MinvT[i][j] * Me[j] for j in range(quiver.n)) for i in range(quiver.n)))
    return out


def core_cone(
    quiver: Quiver,
    alpha: Sequence[int],
    roots: Sequence[OrthogonalRoot],
    field: Field | None = None,
    rng: random.Random | None = None,
    bound: Sequence[int] | None = None,
    subdims=None,
) -> CoreDescription:
    """Closure of the core: the G-ample cone cut by the root inequalities."""
    alpha = tuple(alpha)
    ctx = euler_context(quiver)
    cone = g_ample_cone(quiver, alpha, field, rng, subdims=subdims)
    extra = core_functionals(quiver, roots)
    ineq = [g for g in cone.subdims if any(g) and tuple(g) != alpha] + list(extra)
    res = polyhedral_cone(quiver.n, [alpha], ineq)
    full = polyhedral_cone(quiver.n, [alpha], ineq[: len(ineq) - len(extra)])
    bound = tuple(bound) if bound is not None else alpha
    return CoreDescription(
        roots=tuple(roots),
        inequalities=tuple(extra),
        rays=res.rays,
        rays_beta=tuple(ctx.dimvec_of(r) for r in res.rays),
        empty=res.dimension < full.dimension,
        weak=bound == alpha,
        bound=bound,
    )


INTERIOR = "interior"
SHELL = "shell"
OUTSIDE = "outside"


def core_membership(
    quiver: Quiver,
    alpha: Sequence[int],
    beta: Sequence[int],
    roots: Sequence[OrthogonalRoot],
    bound: Sequence[int] | None = None,
) -> tuple[str, CoreDescription]:
    """Classify ``beta`` against the strict root inequalities of the core."""
    ctx = euler_context(quiver)
    values = []
    for r in roots:
        if r.side == LEFT:
            values.append(ctx.euler_form(r.eps, beta))
        else:
            values.append(-ctx.euler_form(beta, r.eps))
    if all(v > 0 for v in values):
        status = INTERIOR
    elif all(v >= 0 for v in values):
        status = SHELL
    else:
        status = OUTSIDE
    bound = tuple(bound) if bound is not None else tuple(alpha)
    desc = CoreDescription(
        roots=tuple(roots),
        inequalities=tuple(core_functionals(quiver, roots)),
        rays=(),
        rays_beta=(),
        empty=None,
        weak=bound == tuple(alpha),
        bound=bound,
    )
    return status, desc
