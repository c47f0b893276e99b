"""Explicit quiver representations over an exact field.

Row-vector convention throughout: the map of an arrow ``a: t -> h`` is a
``dim(t) x dim(h)`` matrix acting by ``x -> x @ mat``, and a homomorphism
``f: M -> N`` is a tuple of ``dim M_v x dim N_v`` matrices.
"""

from __future__ import annotations

import random
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

from .field import Field
from .lattice import Quiver, Vector, euler_context

HomMap = tuple  # one matrix per vertex


class RepresentationError(ValueError):
    pass


class NoHomomorphismError(RepresentationError):
    pass


class WeightMismatchError(RepresentationError):
    """The intertwiner matrix is not square."""


class NotExceptionalError(RepresentationError):
    pass


class WeightNotEffectiveError(RepresentationError):
    pass


class ProjectionError(RepresentationError):
    """A constructed projection failed its orthogonality check."""


@dataclass(frozen=True, eq=False)
class Representation:
    quiver: Quiver
    field: Field
    dim: Vector
    mats: tuple

    def __post_init__(self):
        q = self.quiver
        if len(self.dim) != q.n:
            raise RepresentationError("dimension vector does not match the quiver")
        if any(d < 0 for d in self.dim):
            raise RepresentationError("dimension vector has a negative entry")
        if len(self.mats) != len(q.arrows):
            raise RepresentationError("need exactly one matrix per arrow")
        for (t, h), m, a in zip(q.arrow_ends, self.mats, q.arrows):
            if m.nrows() != self.dim[t] or m.ncols() != self.dim[h]:
                raise RepresentationError(
                    f"arrow {a.label}: expected {self.dim[t]}x{self.dim[h]}, got {m.nrows()}x{m.ncols()}"
                )

    @property
    def total_dim(self) -> int:
        return sum(self.dim)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def mat(self, label: str):
        for a, m in zip(self.quiver.arrows, self.mats):
            if a.label == label:
                return m
        raise KeyError(label)

    def to_dict(self) -> dict:
        F = self.field
        return {
            "dim": list(self.dim),
            "mats": {a.label: F.to_python_rows(m) for a, m in zip(self.quiver.arrows, self.mats)},
        }


def from_matrices(quiver: Quiver, field: Field, dim: Sequence[int], mats: dict | Sequence) -> Representation:
    """Build from plain nested lists, keyed by arrow label or in arrow order."""
    dim = tuple(int(d) for d in dim)
    if isinstance(mats, dict):
        mats = [mats[a.label] for a in quiver.arrows]
    if len(mats) != len(quiver.arrows) or len(dim) != quiver.n:
        raise RepresentationError("need one matrix per arrow and one dimension per vertex")
    out = []
    for (t, h), m, a in zip(quiver.arrow_ends, mats, quiver.arrows):
        if len(m) != dim[t] or any(len(row) != dim[h] for row in m):
            raise RepresentationError(f"arrow {a.label}: expected a {dim[t]}x{dim[h]} matrix")
        out.append(field.mat(dim[t], dim[h], [x for row in m for x in row]))
    return Representation(quiver, field, dim, tuple(out))


def zero_rep(quiver: Quiver, field: Field, dim: Sequence[int] | None = None) -> Representation:
    dim = tuple(dim) if dim is not None else (0,) * quiver.n
    mats = tuple(field.zeros(dim[t], dim[h]) for t, h in quiver.arrow_ends)
    return Representation(quiver, field, dim, mats)


def random_rep(quiver: Quiver, alpha: Sequence[int], field: Field, rng: random.Random) -> Representation:
    alpha = tuple(int(x) for x in alpha)
    mats = tuple(field.random_mat(alpha[t], alpha[h], rng) for t, h in quiver.arrow_ends)
    return Representation(quiver, field, alpha, mats)


def simple_rep(quiver: Quiver, v: int, field: Field) -> Representation:
    dim = tuple(int(i == v) for i in range(quiver.n))
    return zero_rep(quiver, field, dim)


def direct_sum(reps: Sequence[Representation]) -> Representation:
    reps = list(reps)
    if not reps:
        raise RepresentationError("empty direct sum")
    q, F = reps[0].quiver, reps[0].field
    dim = tuple(sum(r.dim[v] for r in reps) for v in range(q.n))
    mats = []
    for k, (t, h) in enumerate(q.arrow_ends):
        rows = []
        for i, r in enumerate(reps):
            rows.append([F.zeros(r.dim[t], s.dim[h]) if j != i else r.mats[k] for j, s in enumerate(reps)])
        mats.append(F.block(rows) if dim[t] and dim[h] else F.zeros(dim[t], dim[h]))
    return Representation(q, F, dim, tuple(mats))


def power(M: Representation, k: int) -> Representation:
    if k == 0:
        return zero_rep(M.quiver, M.field)
    return direct_sum([M] * k)


def projective_rep(quiver: Quiver, v: int, field: Field) -> Representation:
    """``P_v``: basis at ``w`` is the set of paths from ``v`` to ``w``."""
    by_end = quiver.paths_from(v)
    idx = [{p: i for i, (_, p) in enumerate(lst)} for lst in by_end]
    dim = tuple(len(lst) for lst in by_end)
    mats = []
    for k, (t, h) in enumerate(quiver.arrow_ends):
        ent = [0] * (dim[t] * dim[h])
        for i, (_, p) in enumerate(by_end[t]):
            j = idx[h][p + (k,)]
            ent[i * dim[h] + j] = 1
        mats.append(field.mat(dim[t], dim[h], ent))
    return Representation(quiver, field, dim, tuple(mats))


def injective_rep(quiver: Quiver, v: int, field: Field) -> Representation:
    """``I_v``: basis at ``w`` is dual to the set of paths from ``w`` to ``v``."""
    by_start = quiver.paths_to(v)
    idx = [{p: i for i, (_, p) in enumerate(lst)} for lst in by_start]
    dim = tuple(len(lst) for lst in by_start)
    mats = []
    for k, (t, h) in enumerate(quiver.arrow_ends):
        ent = [0] * (dim[t] * dim[h])
        for i, (_, p) in enumerate(by_start[t]):
            if p and p[0] == k:
                j = idx[h][p[1:]]
                ent[i * dim[h] + j] = 1
        mats.append(field.mat(dim[t], dim[h], ent))
    return Representation(quiver, field, dim, tuple(mats))


# -- homomorphisms ------------------------------------------------------------


def _pyrows(F: Field, A) -> list[list]:
    if F.is_prime:
        return [[int(x) for x in row] for row in A.tolist()]
    return A.tolist()


def is_homomorphism(f: HomMap, M: Representation, N: Representation) -> bool:
    for (t, h), Ma, Na in zip(M.quiver.arrow_ends, M.mats, N.mats):
        if not M.field.equal(f[t] * Na, Ma * f[h]):
            return False
    return True


def compose(f: HomMap, g: HomMap) -> HomMap:
    """``g`` after ``f`` (row vectors: ``x -> x f g``)."""
    return tuple(a * b for a, b in zip(f, g))


def identity_map(M: Representation) -> HomMap:
    return tuple(M.field.identity(d) for d in M.dim)


def rank_vector(f: HomMap) -> Vector:
    return tuple(0 if m.nrows() == 0 or m.ncols() == 0 else m.rank() for m in f)


class IntertwinerSystem:
    """The linear map ``(f_v) -> (f_ta N_a - M_a f_ha)_a`` and its kernel/cokernel.

    Stored as a (codomain x domain) matrix acting on the column vector of
    all ``f_v`` entries, each ``f_v`` flattened row-major.
    """

    def __init__(self, M: Representation, N: Representation):
        if M.quiver != N.quiver:
            raise RepresentationError("representations live on different quivers")
        if M.field != N.field:
            raise RepresentationError("representations live over different fields")
        self.M, self.N = M, N
        q, F = M.quiver, M.field
        self.field = F
        m, n = M.dim, N.dim
        self.dom_offsets = []
        off = 0
        for v in range(q.n):
            self.dom_offsets.append(off)
            off += m[v] * n[v]
        self.dom_size = off
        self.cod_offsets = []
        off = 0
        for t, h in q.arrow_ends:
            self.cod_offsets.append(off)
            off += m[t] * n[h]
        self.cod_size = off

    @cached_property
    def matrix(self):
        M, N, F = self.M, self.N, self.field
        m, n = M.dim, N.dim
        rows, cols = self.cod_size, self.dom_size
        ent = [0] * (rows * cols)
        for k, (t, h) in enumerate(M.quiver.arrow_ends):
            if m[t] == 0 or n[h] == 0:
                continue
            Ma = _pyrows(F, M.mats[k])
            Na = _pyrows(F, N.mats[k])
            ro, dt, dh = self.cod_offsets[k], self.dom_offsets[t], self.dom_offsets[h]
            nt, nh = n[t], n[h]
            for i in range(m[t]):
                Mi = Ma[i]
                for j in range(nh):
                    base = (ro + i * nh + j) * cols
                    for kk in range(nt):
                        x = Na[kk][j]
                        if x:
                            ent[base + dt + i * nt + kk] += x
                    for kk in range(m[h]):
                        x = Mi[kk]
                        if x:
                            ent[base + dh + kk * nh + j] -= x
        return F.mat(rows, cols, ent)

    @cached_property
    def rank(self) -> int:
        return self.field.rank(self.matrix)

    @property
    def hom_dim(self) -> int:
        return self.dom_size - self.rank

    @property
    def ext_dim(self) -> int:
        return self.cod_size - self.rank

    def split_domain(self, vec_row: list) -> HomMap:
        F, m, n = self.field, self.M.dim, self.N.dim
        out = []
        for v, off in enumerate(self.dom_offsets):
            size = m[v] * n[v]
            out.append(F._raw(m[v], n[v], vec_row[off:off + size]))
        return tuple(out)

    def split_codomain(self, vec_row: list) -> tuple:
        F, m, n = self.field, self.M.dim, self.N.dim
        out = []
        for k, (t, h) in enumerate(self.M.quiver.arrow_ends):
            off = self.cod_offsets[k]
            out.append(F._raw(m[t], n[h], vec_row[off:off + m[t] * n[h]]))
        return tuple(out)

    def flatten_codomain(self, cochain: Sequence) -> list:
        out = []
        for m in cochain:
            for row in m.tolist():
                out.extend(row)
        return out

    @cached_property
    def hom_basis(self) -> list[HomMap]:
        K = self.field.nullspace(self.matrix)
        return [self.split_domain(row) for row in K.tolist()]

    @cached_property
    def image_pivots(self) -> list[int]:
        A = self.matrix
        if A.nrows() == 0 or A.ncols() == 0:
            return []
        _, piv = self.field.rref(A.transpose())
        return piv

    @cached_property
    def ext_basis(self) -> list[tuple]:
        """Cocycles (one matrix per arrow) whose classes form a basis of Ext(M, N)."""
        piv = set(self.image_pivots)
        F = self.field
        one, zero = F.scalar(1), F.scalar(0)
        out = []
        for c in range(self.cod_size):
            if c in piv:
                continue
            vec = [zero] * self.cod_size
            vec[c] = one
            out.append(self.split_codomain(vec))
        return out

    def random_hom(self, rng: random.Random) -> HomMap:
        basis = self.hom_basis
        if not basis:
            raise NoHomomorphismError("Hom(M, N) = 0")
        F = self.field
        coeffs = [F.random_scalar(rng) for _ in basis]
        return tuple(
            F.lin_comb(coeffs, [b[v] for b in basis], self.M.dim[v], self.N.dim[v]) for v in range(self.M.quiver.n)
        )


def intertwiner(M: Representation, N: Representation) -> IntertwinerSystem:
    return IntertwinerSystem(M, N)


class HomExt(NamedTuple):
    hom: int
    ext: int
    hom_basis: list


def hom_ext(M: Representation, N: Representation) -> HomExt:
    S = IntertwinerSystem(M, N)
    return HomExt(S.hom_dim, S.ext_dim, S.hom_basis)


def hom_dim(M: Representation, N: Representation) -> int:
    return IntertwinerSystem(M, N).hom_dim


def generic_hom_ext(
    quiver: Quiver, alpha: Sequence[int], beta: Sequence[int], field: Field, rng: random.Random, trials: int = 3
) -> tuple[int, int]:
    """Generic hom/ext between dimension vectors, as a minimum over samples.

    hom is upper semicontinuous, so the minimum over random pairs equals the
    generic value unless every sample is degenerate.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    best = None
    for _ in range(trials):
        M = random_rep(quiver, alpha, field, rng)
        N = random_rep(quiver, beta, field, rng)
        h = hom_dim(M, N)
        best = h if best is None else min(best, h)
        if best == 0:
            break
    return best, best - euler_context(quiver).euler_form(alpha, beta)


def generic_rank_vector(M: Representation, N: Representation, rng: random.Random, repeats: int = 3) -> Vector:
    S = IntertwinerSystem(M, N)
    if S.hom_dim == 0:
        raise NoHomomorphismError("Hom(M, N) = 0")
    best = (0,) * M.quiver.n
    for _ in range(max(1, repeats)):
        r = rank_vector(S.random_hom(rng))
        best = tuple(max(a, b) for a, b in zip(best, r))
    return best


def semi_invariant(M: Representation, N: Representation):
    """``c(M, N)``: the determinant of the intertwiner matrix."""
    S = IntertwinerSystem(M, N)
    if S.dom_size != S.cod_size:
        raise WeightMismatchError(
            f"<dim M, dim N> = {S.dom_size - S.cod_size} is nonzero; the intertwiner matrix is not square"
        )
    return S.field.det(S.matrix)


def _perm_sign(order: Sequence[int]) -> int:
    seen = [False] * len(order)
    sign = 1
    for i in range(len(order)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def split_sign(quiver: Quiver, m: Sequence[int], n1: Sequence[int], n2: Sequence[int]) -> int:
    """Sign relating ``c(M, N)`` to ``c(M, N1) c(M, N2)`` for an extension ``0 -> N1 -> N -> N2 -> 0``.

    The intertwiner matrix of ``(M, N)`` becomes block triangular after
    moving the ``N1`` coordinates in front of the ``N2`` coordinates, on both
    the domain and the codomain side; the answer is the product of the two
    reordering signs.
    """
    n = [a + b for a, b in zip(n1, n2)]

    def order(blocks):
        first, second = [], []
        pos = 0
        for rows, width, split in blocks:
            for i in range(rows):
                for j in range(width):
                    (first if j < split else second).append(pos)
                    pos += 1
        return first + second

    dom = order([(m[v], n[v], n1[v]) for v in range(quiver.n)])
    cod = order([(m[t], n[h], n1[h]) for t, h in quiver.arrow_ends])
    return _perm_sign(dom) * _perm_sign(cod)


# -- constructions -------------------------------------------------------------


def build_extension(A: Representation, B: Representation, cocycle: Sequence) -> Representation:
    """Extension with ``A`` as subrepresentation and ``B`` as quotient.

    ``cocycle[k]`` is a ``dim B_t x dim A_h`` matrix for arrow ``k: t -> h``;
    the arrow map is ``[[A_a, 0], [Z_a, B_a]]``.
    """
    if A.quiver != B.quiver:
        raise RepresentationError("representations live on different quivers")
    q, F = A.quiver, A.field
    if len(cocycle) != len(q.arrows):
        raise RepresentationError("need one cocycle matrix per arrow")
    dim = tuple(a + b for a, b in zip(A.dim, B.dim))
    mats = []
    for k, (t, h) in enumerate(q.arrow_ends):
        Z = cocycle[k]
        if Z.nrows() != B.dim[t] or Z.ncols() != A.dim[h]:
            raise RepresentationError(
                f"cocycle for arrow {q.arrows[k].label} must be {B.dim[t]}x{A.dim[h]}"
            )
        if dim[t] == 0 or dim[h] == 0:
            mats.append(F.zeros(dim[t], dim[h]))
            continue
        mats.append(F.block([[A.mats[k], F.zeros(A.dim[t], B.dim[h])], [Z, B.mats[k]]]))
    return Representation(q, F, dim, tuple(mats))


def zero_cocycle(A: Representation, B: Representation) -> tuple:
    F = A.field
    return tuple(F.zeros(B.dim[t], A.dim[h]) for t, h in A.quiver.arrow_ends)


def random_cocycle(A: Representation, B: Representation, rng: random.Random) -> tuple:
    F = A.field
    return tuple(F.random_mat(B.dim[t], A.dim[h], rng) for t, h in A.quiver.arrow_ends)


def random_extension(A: Representation, B: Representation, rng: random.Random) -> Representation:
    return build_extension(A, B, random_cocycle(A, B, rng))


def _independent_rows(F: Field, B):
    return F.rowspace(B) if B.nrows() else B


def submodule(M: Representation, bases: Sequence) -> tuple[Representation, HomMap]:
    """Subrepresentation spanned per vertex by the rows of ``bases[v]``.

    Returns the subrepresentation and its inclusion map.  The rows are first
    reduced to a basis; the caller must pass subspaces closed under arrows.
    """
    F, q = M.field, M.quiver
    B = [_independent_rows(F, b) for b in bases]
    dim = tuple(b.nrows() for b in B)
    inv = []
    for v in range(q.n):
        if M.dim[v] == 0:
            inv.append(F.zeros(0, 0))
            continue
        C = F.complement_rows(B[v]) if dim[v] else F.identity(M.dim[v])
        G = F.vstack([B[v], C]) if dim[v] else C
        inv.append(F.submatrix(F.inv(G), None, range(dim[v])))
    mats = []
    for k, (t, h) in enumerate(q.arrow_ends):
        if dim[t] == 0 or dim[h] == 0:
            mats.append(F.zeros(dim[t], dim[h]))
            continue
        mats.append(B[t] * M.mats[k] * inv[h])
    sub = Representation(q, F, dim, tuple(mats))
    return sub, tuple(B)


def quotient(M: Representation, bases: Sequence) -> tuple[Representation, HomMap]:
    """Quotient by the subrepresentation spanned by ``bases``; returns it with the projection."""
    F, q = M.field, M.quiver
    B = [_independent_rows(F, b) for b in bases]
    Cs, Qs = [], []
    for v in range(q.n):
        m = M.dim[v]
        k = B[v].nrows()
        C = F.complement_rows(B[v]) if k else F.identity(m)
        G = F.vstack([B[v], C]) if k else C
        Ginv = F.inv(G) if m else G
        Cs.append(C)
        Qs.append(F.submatrix(Ginv, None, range(k, m)))
    dim = tuple(c.nrows() for c in Cs)
    mats = []
    for k, (t, h) in enumerate(q.arrow_ends):
        if dim[t] == 0 or dim[h] == 0:
            mats.append(F.zeros(dim[t], dim[h]))
            continue
        mats.append(Cs[t] * M.mats[k] * Qs[h])
    return Representation(q, F, dim, tuple(mats)), tuple(Qs)


def image_bases(f: HomMap, N: Representation) -> list:
    F = N.field
    return [F.rowspace(m) if m.nrows() else F.zeros(0, N.dim[v]) for v, m in enumerate(f)]


def kernel_bases(f: HomMap, M: Representation) -> list:
    F = M.field
    out = []
    for v, m in enumerate(f):
        if m.ncols() == 0:
            out.append(F.identity(M.dim[v]))
        elif m.nrows() == 0:
            out.append(F.zeros(0, 0))
        else:
            out.append(F.left_nullspace(m))
    return out


@dataclass(frozen=True, eq=False)
class UniversalMapReport:
    direction: str
    multiplicity: int
    maps: HomMap
    injective: bool
    surjective: bool
    kernel: Representation
    cokernel: Representation
    kernel_inclusion: HomMap = field(repr=False)
    cokernel_projection: HomMap = field(repr=False)


def universal_map(M: Representation, E: Representation, direction: str = "from-E") -> UniversalMapReport:
    """The universal map ``E^h -> M`` (``from-E``) or ``M -> E^h`` (``to-E``)."""
    F, q = M.field, M.quiver
    if direction == "from-E":
        S = IntertwinerSystem(E, M)
        basis = S.hom_basis
        h = len(basis)
        maps = tuple(
            F.vstack([b[v] for b in basis], cols=M.dim[v]) if h else F.zeros(0, M.dim[v]) for v in range(q.n)
        )
        src = power(E, h)
        tgt = M
    elif direction == "to-E":
        S = IntertwinerSystem(M, E)
        basis = S.hom_basis
        h = len(basis)
        maps = tuple(
            F.hstack([b[v] for b in basis], rows=M.dim[v]) if h else F.zeros(M.dim[v], 0) for v in range(q.n)
        )
        src = M
        tgt = power(E, h)
    else:
        raise ValueError("direction must be 'from-E' or 'to-E'")
    ranks = rank_vector(maps)
    injective = all(r == d for r, d in zip(ranks, src.dim))
    surjective = all(r == d for r, d in zip(ranks, tgt.dim))
    ker, incl = submodule(src, kernel_bases(maps, src))
    cok, proj = quotient(tgt, image_bases(maps, tgt))
    return UniversalMapReport(direction, h, maps, injective, surjective, ker, cok, incl, proj)


def exceptional_rep(
    quiver: Quiver, eps: Sequence[int], field: Field, rng: random.Random, budget: int = 8
) -> Representation:
    """A random ``eps``-dimensional representation certified to have End = k and Ext = 0."""
    eps = tuple(int(x) for x in eps)
    if euler_context(quiver).euler_form(eps, eps) != 1:
        raise NotExceptionalError(f"{eps} is not a real root")
    for _ in range(budget):
        E = random_rep(quiver, eps, field, rng)
        S = IntertwinerSystem(E, E)
        if S.hom_dim == 1 and S.ext_dim == 0:
            return E
    raise NotExceptionalError(f"no exceptional representation found in dimension {eps}; presumably not a real Schur root")


def certify_exceptional(E: Representation) -> bool:
    S = IntertwinerSystem(E, E)
    return S.hom_dim == 1 and S.ext_dim == 0


@dataclass(frozen=True, eq=False)
class ProjectedModule:
    rep: Representation
    dim: Vector
    e_regular: bool
    universal: UniversalMapReport = field(repr=False)
    extension_rank: int = 0

    def __iter__(self):
        return iter((self.rep, self.dim, self.e_regular))


def tau_partner(E: Representation, rng: random.Random) -> Representation:
    """An exceptional representation of dimension ``tau(dim E)``."""
    ctx = euler_context(E.quiver)
    te = ctx.tau(E.dim)
    if any(x < 0 for x in te) or not any(te):
        raise NotExceptionalError(f"{E.dim} is projective; its translate {te} is not a dimension vector")
    return exceptional_rep(E.quiver, te, E.field, rng)


def project_module(
    M: Representation,
    E: Representation,
    side: str = "right",
    rng: random.Random | None = None,
    tauE: Representation | None = None,
    check_exceptional: bool = True,
) -> ProjectedModule:
    """Orthogonal projection of ``M`` into the right perpendicular category of ``E``.

    ``right`` kills the image of the universal map from ``E^h`` and then takes
    the universal extension by ``E^e``.  ``dual`` mirrors this through the
    translate ``tauE``: kernel of the universal map to ``tauE^h``, then the
    universal co-extension.
    """
    if check_exceptional and not certify_exceptional(E):
        raise NotExceptionalError("E failed the End = k, Ext = 0 certificate")
    F = M.field
    if side == "right":
        U = universal_map(M, E, "from-E")
        Mpp = U.cokernel
        S = IntertwinerSystem(E, Mpp)
        cocycles = S.ext_basis
        e = len(cocycles)
        if e == 0:
            X = Mpp
        else:
            Z = tuple(F.vstack([c[k] for c in cocycles], cols=Mpp.dim[h]) for k, (t, h) in enumerate(M.quiver.arrow_ends))
            X = build_extension(Mpp, power(E, e), Z)
        chk = IntertwinerSystem(E, X)
        if chk.hom_dim or chk.ext_dim:
            raise ProjectionError(f"projection not orthogonal: hom={chk.hom_dim}, ext={chk.ext_dim}")
        return ProjectedModule(X, X.dim, U.injective, U, e)
    if side == "dual":
        if tauE is None:
            tauE = tau_partner(E, rng if rng is not None else random.Random(0))
        U = universal_map(M, tauE, "to-E")
        K = U.kernel
        S = IntertwinerSystem(K, tauE)
        cocycles = S.ext_basis
        e = len(cocycles)
        if e == 0:
            X = K
        else:
            Z = tuple(F.hstack([c[k] for c in cocycles], rows=K.dim[t]) for k, (t, h) in enumerate(M.quiver.arrow_ends))
            X = build_extension(power(tauE, e), K, Z)
        chk = IntertwinerSystem(X, tauE)
        if chk.hom_dim or chk.ext_dim:
            raise ProjectionError(f"dual projection not orthogonal: hom={chk.hom_dim}, ext={chk.ext_dim}")
        return ProjectedModule(X, X.dim, U.surjective, U, e)
    raise ValueError("side must be 'right' or 'dual'")


def right_projection_map(M: Representation, proj: ProjectedModule) -> HomMap:
    """The natural map ``M -> proj.rep`` for a right projection."""
    F = M.field
    U = proj.universal
    out = []
    for v, Qv in enumerate(U.cokernel_projection):
        extra = proj.rep.dim[v] - Qv.ncols()
        if M.dim[v] == 0:
            out.append(F.zeros(0, proj.rep.dim[v]))
        elif extra:
            out.append(F.hstack([Qv, F.zeros(M.dim[v], extra)]))
        else:
            out.append(Qv)
    return tuple(out)


def tangent_kernel_dim(M: Representation, E: Representation) -> int:
    """Dimension of the kernel of ``Ext(M, M) -> Ext(M, pi_E M)`` induced by the projection map."""
    proj = project_module(M, E, "right")
    if not proj.e_regular:
        raise RepresentationError("M is not E-regular")
    X = proj.rep
    r = right_projection_map(M, proj)
    F = M.field
    S_MM = IntertwinerSystem(M, M)
    S_MX = IntertwinerSystem(M, X)
    q = M.quiver
    pushed = []
    for Z in S_MM.ext_basis:
        pushed.append(S_MX.flatten_codomain([Z[k] * r[h] for k, (t, h) in enumerate(q.arrow_ends)]))
    if not pushed:
        return 0
    P = F._raw(len(pushed), S_MX.cod_size, [x for row in pushed for x in row])
    img = S_MX.matrix.transpose()
    base = S_MX.rank
    both = F.rank(F.vstack([img, P])) if img.nrows() else F.rank(P)
    return len(pushed) - (both - base)


def is_semistable_module(
    M: Representation, sigma: Sequence[int], rng: random.Random, trials: int = 3, n_max: int = 3
) -> str:
    """One-sided semistability certificate through nonvanishing semi-invariants."""
    ctx = euler_context(M.quiver)
    if ctx.pair(sigma, M.dim) != 0:
        raise WeightMismatchError("sigma does not vanish on dim M")
    beta = ctx.dimvec_of(sigma)
    if any(x < 0 for x in beta):
        raise WeightNotEffectiveError(f"sigma corresponds to {beta}, which has a negative entry")
    for n in range(1, n_max + 1):
        for _ in range(trials):
            N = random_rep(M.quiver, [n * b for b in beta], M.field, rng)
            if semi_invariant(M, N) != 0:
                return "certified-semistable"
    return "presumed-unstable"
