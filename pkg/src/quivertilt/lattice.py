"""Integer lattice algebra attached to an acyclic quiver.

Vectors are row vectors indexed by the stored vertex order.  The Euler
form is ``<x, y> = x M y^T`` with ``M = I - A`` and the Coxeter
transformation acts on the right, ``tau(x) = x T``.  Everything here is
exact integer arithmetic.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd

Vector = tuple[int, ...]
IntMatrix = tuple[tuple[int, ...], ...]

REAL_ROOT = "real-root"
ISOTROPIC = "isotropic"
IMAGINARY = "non-isotropic-imaginary"
NOT_A_ROOT = "not-a-root-candidate"


class QuiverError(ValueError):
    """Malformed quiver data."""


class NotARealRootError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    tail: str
    head: str
    label: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("vertex ids must be unique")
        labels = [a.label for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise QuiverError("arrow labels must be unique")
        known = set(self.vertices)
        for a in self.arrows:
            if a.tail not in known or a.head not in known:
                raise QuiverError(f"arrow {a.label} references an unknown vertex")
            if a.tail == a.head:
                raise QuiverError(f"arrow {a.label} is a loop")
        # raises on oriented cycles
        self.topological_order  # noqa: B018

    @classmethod
    def from_arrows(cls, vertices: Iterable, arrows: Iterable, name: str = "") -> Quiver:
        """Build from plain data; arrows are ``(tail, head, label)`` triples."""
        vs = tuple(str(v) for v in vertices)
        arr = tuple(Arrow(str(t), str(h), str(lbl)) for t, h, lbl in arrows)
        return cls(vs, arr, name)

    @classmethod
    def from_adjacency(cls, adjacency: Sequence[Sequence[int]], vertices=None, name: str = "") -> Quiver:
        n = len(adjacency)
        vs = tuple(vertices) if vertices is not None else tuple(str(i + 1) for i in range(n))
        arrows = []
        k = 0
        for i in range(n):
            for j in range(n):
                for _ in range(adjacency[i][j]):
                    k += 1
                    arrows.append(Arrow(vs[i], vs[j], f"x{k}"))
        return cls(vs, tuple(arrows), name)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def arrow_ends(self) -> tuple[tuple[int, int], ...]:
        """``(tail index, head index)`` for every arrow, in arrow order."""
        return tuple((self.index[a.tail], self.index[a.head]) for a in self.arrows)

    @cached_property
    def adjacency(self) -> IntMatrix:
        A = [[0] * self.n for _ in range(self.n)]
        for t, h in self.arrow_ends:
            A[t][h] += 1
        return tuple(tuple(r) for r in A)

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        """Vertex indices, tails before heads; ties broken by stored order."""
        indeg = [0] * self.n
        out: list[list[int]] = [[] for _ in range(self.n)]
        for t, h in self.arrow_ends:
            indeg[h] += 1
            out[t].append(h)
        ready = [v for v in range(self.n) if indeg[v] == 0]
        order = []
        while ready:
            ready.sort()
            v = ready.pop(0)
            order.append(v)
            for h in out[v]:
                indeg[h] -= 1
                if indeg[h] == 0:
                    ready.append(h)
        if len(order) != self.n:
            raise QuiverError("quiver has an oriented cycle")
        return tuple(order)

    def paths_from(self, v: int) -> list[list[tuple[int, tuple[int, ...]]]]:
        """Paths starting at ``v`` grouped by end vertex.

        Each path is ``(end vertex, arrow indices)``; the trivial path is
        ``(v, ())``.  Finite because the quiver is acyclic.
        """
        by_end: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(self.n)]
        stack = [(v, ())]
        while stack:
            w, p = stack.pop()
            by_end[w].append((w, p))
            for k, (t, h) in enumerate(self.arrow_ends):
                if t == w:
                    stack.append((h, p + (k,)))
        for lst in by_end:
            lst.sort(key=lambda item: item[1])
        return by_end

    def paths_to(self, v: int) -> list[list[tuple[int, tuple[int, ...]]]]:
        """Paths ending at ``v`` grouped by start vertex."""
        by_start: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(self.n)]
        stack = [(v, ())]
        while stack:
            w, p = stack.pop()
            by_start[w].append((w, p))
            for k, (t, h) in enumerate(self.arrow_ends):
                if h == w:
                    stack.append((t, (k,) + p))
        for lst in by_start:
            lst.sort(key=lambda item: item[1])
        return by_start

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "vertices": list(self.vertices),
            "arrows": [[a.tail, a.head, a.label] for a in self.arrows],
        }


# -- small exact matrix helpers ------------------------------------------------


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    cols = list(zip(*B)) if B else []
    return tuple(tuple(sum(a * b for a, b in zip(row, c)) for c in cols) for row in A)


def transpose(A: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(zip(*A)) if A else ()


def vec_mat(x: Sequence[int], A: Sequence[Sequence[int]]) -> Vector:
    n = len(A[0]) if A else 0
    return tuple(sum(x[i] * A[i][j] for i in range(len(x))) for j in range(n))


def mat_vec(A: Sequence[Sequence[int]], x: Sequence[int]) -> Vector:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def rational_inverse(A: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over the rationals."""
    n = len(A)
    W = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if W[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        W[c], W[piv] = W[piv], W[c]
        inv = 1 / W[c][c]
        W[c] = [x * inv for x in W[c]]
        for r in range(n):
            if r != c and W[r][c] != 0:
                f = W[r][c]
                W[r] = [x - f * y for x, y in zip(W[r], W[c])]
    return [row[n:] for row in W]


def integer_inverse(A: Sequence[Sequence[int]]) -> IntMatrix:
    inv = rational_inverse(A)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in inv)


def primitive(v: Sequence) -> Vector:
    """Scale a rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def vec_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def leq(x: Sequence[int], y: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(x, y))


def strictly_less(x: Sequence[int], y: Sequence[int]) -> bool:
    """The partial order on dimension vectors: ``x <= y`` entrywise and ``x != y``."""
    return leq(x, y) and tuple(x) != tuple(y)


# -- Euler form and Coxeter transformation -------------------------------------


class EulerContext:
    """Euler and Coxeter matrices of a quiver plus their integer inverses."""

    def __init__(self, quiver: Quiver):
        self.quiver = quiver
        n = quiver.n
        A = quiver.adjacency
        self.euler_matrix: IntMatrix = tuple(
            tuple(int(i == j) - A[i][j] for j in range(n)) for i in range(n)
        )
        self.euler_inverse = integer_inverse(self.euler_matrix)
        # T = -M M^{-T}
        MinvT = transpose(self.euler_inverse)
        self.coxeter_matrix: IntMatrix = tuple(
            tuple(-x for x in row) for row in mat_mul(self.euler_matrix, MinvT)
        )
        # T^{-1} = -M^T M^{-1}
        self.coxeter_inverse: IntMatrix = tuple(
            tuple(-x for x in row) for row in mat_mul(transpose(self.euler_matrix), self.euler_inverse)
        )

    @property
    def n(self) -> int:
        return self.quiver.n

    def _check(self, *vs):
        for v in vs:
            if len(v) != self.n:
                raise ValueError(f"vector {tuple(v)} does not match a quiver with {self.n} vertices")

    def euler_form(self, x: Sequence[int], y: Sequence[int]) -> int:
        self._check(x, y)
        s = sum(a * b for a, b in zip(x, y))
        for t, h in self.quiver.arrow_ends:
            s -= x[t] * y[h]
        return s

    def coxeter(self, x: Sequence[int], direction: str = "forward") -> Vector:
        self._check(x)
        if direction == "forward":
            return vec_mat(x, self.coxeter_matrix)
        if direction == "inverse":
            return vec_mat(x, self.coxeter_inverse)
        raise ValueError(f"unknown direction {direction!r}")

    def tau(self, x: Sequence[int]) -> Vector:
        return self.coxeter(x, "forward")

    def tau_inv(self, x: Sequence[int]) -> Vector:
        return self.coxeter(x, "inverse")

    def weight_of(self, beta: Sequence[int]) -> Vector:
        """``sigma_beta = -<., beta>`` as a vertex-indexed weight."""
        self._check(beta)
        return tuple(-x for x in mat_vec(self.euler_matrix, beta))

    def dimvec_of(self, sigma: Sequence[int]) -> Vector:
        """The unique integer ``beta`` with ``sigma = sigma_beta``."""
        self._check(sigma)
        return tuple(-x for x in mat_vec(self.euler_inverse, sigma))

    def weight_dimvec_convert(self, v: Sequence[int], kind: str) -> Vector:
        """Convert ``kind='dimvec'`` to its weight or ``kind='weight'`` to its dimension vector."""
        if kind == "dimvec":
            return self.weight_of(v)
        if kind == "weight":
            return self.dimvec_of(v)
        raise ValueError(f"kind must be 'dimvec' or 'weight', got {kind!r}")

    def canonical_weight(self, alpha: Sequence[int]) -> Vector:
        """``<alpha, .> - <., alpha>``, the anti-canonical weight of ``Rep_alpha``."""
        self._check(alpha)
        left = vec_mat(alpha, self.euler_matrix)
        right = mat_vec(self.euler_matrix, alpha)
        return tuple(a - b for a, b in zip(left, right))

    def canonical_weight_from_arrows(self, alpha: Sequence[int]) -> Vector:
        """Same weight read off arrow by arrow: outgoing head dims minus incoming tail dims."""
        self._check(alpha)
        sigma = [0] * self.n
        for t, h in self.quiver.arrow_ends:
            sigma[t] += alpha[h]
            sigma[h] -= alpha[t]
        return tuple(sigma)

    def pair(self, sigma: Sequence[int], gamma: Sequence[int]) -> int:
        """Evaluate the weight ``sigma`` on ``gamma``."""
        return sum(a * b for a, b in zip(sigma, gamma))

    def project_root(self, x: Sequence[int], eps: Sequence[int], side: str = "right") -> Vector:
        """Lattice projection onto the right orthogonal of the real root ``eps``.

        ``right``: ``x - <eps,x> eps``; ``dual``: ``x + <eps,x> tau(eps)``.
        """
        self._check(x, eps)
        if self.euler_form(eps, eps) != 1:
            raise NotARealRootError(f"{tuple(eps)} is not a real root")
        c = self.euler_form(eps, x)
        if side == "right":
            return tuple(a - c * e for a, e in zip(x, eps))
        if side == "dual":
            te = self.tau(eps)
            return tuple(a + c * e for a, e in zip(x, te))
        raise ValueError(f"side must be 'right' or 'dual', got {side!r}")

    def root_classify(self, x: Sequence[int]) -> str:
        q = self.euler_form(x, x)
        if q == 1:
            return REAL_ROOT
        if q == 0:
            return ISOTROPIC
        if q < 0:
            return IMAGINARY
        return NOT_A_ROOT


_contexts: dict[Quiver, EulerContext] = {}


def euler_context(quiver: Quiver) -> EulerContext:
    """Shared immutable context per quiver."""
    ctx = _contexts.get(quiver)
    if ctx is None:
        ctx = _contexts[quiver] = EulerContext(quiver)
    return ctx


def find_isomorphism(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    """A vertex bijection ``p`` with ``A[i][j] == B[p[i]][p[j]]``, or None.

    Backtracking with degree pruning; meant for the small quivers handled here.
    """
    n = len(A)
    if len(B) != n:
        return None

    def sig(M, i):
        return (sorted(M[i]), sorted(M[j][i] for j in range(n)))

    sa = [sig(A, i) for i in range(n)]
    sb = [sig(B, i) for i in range(n)]
    if sorted(map(repr, sa)) != sorted(map(repr, sb)):
        return None
    perm = [-1] * n
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        for c in range(n):
            if used[c] or sa[i] != sb[c]:
                continue
            if A[i][i] != B[c][c]:
                continue
            if any(A[i][k] != B[c][perm[k]] or A[k][i] != B[perm[k]][c] for k in range(i)):
                continue
            perm[i], used[c] = c, True
            if extend(i + 1):
                return True
            perm[i], used[c] = -1, False
        return False

    return tuple(perm) if extend(0) else None
