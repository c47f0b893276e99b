"""Search for quiver orientations consistent with stated lattice data.

Used to pin down quivers that are only described through derived numbers
(anti-canonical weights, orthogonal exceptional roots, projected quiver
types).  By default arrows may point either way between any two vertices;
``forward_only`` restricts them to go from lower to higher index.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from .field import Field
from .lattice import Quiver, euler_context, find_isomorphism
from .rep import NotExceptionalError, exceptional_rep, generic_hom_ext


@dataclass
class ReconstructionResult:
    solutions: list[tuple[tuple[int, ...], ...]]
    constraints: list[str]
    chosen: tuple[tuple[int, ...], ...] | None = None
    rejected: dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "constraints": self.constraints,
            "solutions": [[list(r) for r in s] for s in self.solutions],
            "chosen": [list(r) for r in self.chosen] if self.chosen else None,
            "rejected_counts": dict(self.rejected),
        }


def _acyclic(A) -> bool:
    n = len(A)
    indeg = [sum(1 for i in range(n) if A[i][j]) for j in range(n)]
    ready = [j for j in range(n) if indeg[j] == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for j in range(n):
            if A[v][j]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    ready.append(j)
    return seen == n


def adjacencies_with_weight(
    alpha: Sequence[int], sigma: Sequence[int], n_arrows: int, max_mult: int = 4, forward_only: bool = False
) -> list[tuple[tuple[int, ...], ...]]:
    """Acyclic arrow-count matrices whose anti-canonical weight at ``alpha`` is ``sigma``."""
    n = len(alpha)
    if forward_only:
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    else:
        pairs = [p for i in range(n) for j in range(i + 1, n) for p in ((i, j), (j, i))]
    # last pair index touching each vertex, for early checking
    last = [max(k for k, (i, j) in enumerate(pairs) if v in (i, j)) if n > 1 else -1 for v in range(n)]
    done_at: dict[int, list[int]] = {}
    for v, k in enumerate(last):
        done_at.setdefault(k, []).append(v)
    A = [[0] * n for _ in range(n)]
    partial = [0] * n
    out = []

    def rec(k, left):
        if k == len(pairs):
            if left == 0 and list(partial) == list(sigma) and _acyclic(A):
                out.append(tuple(tuple(r) for r in A))
            return
        i, j = pairs[k]
        cap = 0 if A[j][i] else min(max_mult, left)
        for m in range(cap + 1):
            A[i][j] = m
            partial[i] += m * alpha[j]
            partial[j] -= m * alpha[i]
            if all(partial[v] == sigma[v] for v in done_at.get(k, ())):
                rec(k + 1, left - m)
            partial[i] -= m * alpha[j]
            partial[j] += m * alpha[i]
        A[i][j] = 0

    rec(0, n_arrows)
    return out


Check = Callable[[Quiver], bool]


def left_exceptional_check(
    alpha: Sequence[int], eps: Sequence[int], field: Field | None = None, seed: int = 0
) -> Check:
    """``eps`` is a real Schur root, left orthogonal and exceptional to ``alpha``."""

    def check(q: Quiver) -> bool:
        ctx = euler_context(q)
        if ctx.euler_form(eps, eps) != 1 or ctx.euler_form(eps, alpha) != 0:
            return False
        F = field or Field()
        rng = random.Random(seed)
        try:
            exceptional_rep(q, eps, F, rng)
        except NotExceptionalError:
            return False
        rest = [a - e for a, e in zip(alpha, eps)]
        return generic_hom_ext(q, eps, alpha, F, rng)[0] == 0 and generic_hom_ext(q, eps, rest, F, rng)[0] == 0

    return check


def projected_type_check(eps: Sequence[int], target: Quiver, field: Field | None = None, seed: int = 0) -> Check:
    """The projected quiver for ``eps`` is isomorphic to ``target``."""
    from .perp import ProjectedQuiverError, projected_quiver

    def check(q: Quiver) -> bool:
        F = field or Field()
        rng = random.Random(seed)
        try:
            E = exceptional_rep(q, eps, F, rng)
            ctx = projected_quiver(E, rng)
        except (NotExceptionalError, ProjectedQuiverError):
            return False
        return find_isomorphism(ctx.quiver_E.adjacency, target.adjacency) is not None

    return check


def reconstruct(
    alpha: Sequence[int],
    sigma: Sequence[int],
    n_arrows: int,
    checks: Sequence[tuple[str, Check]] = (),
    vertices: Sequence[str] | None = None,
    max_mult: int = 4,
    forward_only: bool = False,
) -> ReconstructionResult:
    """All orientations passing the weight condition and every named check, first one chosen."""
    n = len(alpha)
    verts = list(vertices) if vertices is not None else [str(i + 1) for i in range(n)]
    constraints = [
        f"acyclic, {n_arrows} arrows, multiplicity <= {max_mult}"
        + ("; arrows go from lower to higher vertex index" if forward_only else ""),
        f"anti-canonical weight at alpha={list(alpha)} equals {list(sigma)}",
    ] + [name for name, _ in checks]
    result = ReconstructionResult([], constraints)
    for adj in adjacencies_with_weight(alpha, sigma, n_arrows, max_mult, forward_only):
        q = Quiver.from_adjacency(adj, verts)
        failed = next((name for name, chk in checks if not chk(q)), None)
        if failed is None:
            result.solutions.append(adj)
        else:
            result.rejected[failed] = result.rejected.get(failed, 0) + 1
    if result.solutions:
        result.chosen = result.solutions[0]
    return result


def _theta22() -> Quiver:
    return Quiver.from_adjacency([[0, 0, 2], [0, 0, 2], [0, 0, 0]])


def _labels(adj) -> list[tuple[str, str, str]]:
    n = len(adj)
    out = []
    letters = iter("abcdefghijklmnopqrstuvwxyz")
    for i in range(n):
        for j in range(n):
            for _ in range(adj[i][j]):
                out.append((str(i + 1), str(j + 1), next(letters)))
    return out


def b_series(field: Field | None = None) -> dict[str, tuple[ReconstructionResult, Quiver]]:
    """Run the searches that pin the B-series quivers, each feeding the next."""
    F = field or Field()
    b1 = Quiver.from_arrows([1, 2, 3], [(1, 2, "d"), (1, 3, "c"), (2, 3, "a"), (2, 3, "b")])
    out = {}
    a = (1, 1, 1, 1)
    r = reconstruct(
        a,
        (2, 2, -1, -3),
        5,
        [
            ("(1,0,0,1) left exceptional to alpha", left_exceptional_check(a, (1, 0, 0, 1), F)),
            ("(0,1,0,1) left exceptional to alpha", left_exceptional_check(a, (0, 1, 0, 1), F)),
            ("(0,0,1,0) left exceptional to alpha", left_exceptional_check(a, (0, 0, 1, 0), F)),
            ("projection through (0,1,0,1) is B1", projected_type_check((0, 1, 0, 1), b1, F)),
            ("projection through (0,0,1,0) is Theta_{2,2}", projected_type_check((0, 0, 1, 0), _theta22(), F)),
        ],
    )
    b2 = Quiver.from_arrows(range(1, 5), _labels(r.chosen), "b2")
    out["b2"] = (r, b2)
    a = (1, 1, 1, 1, 1)
    r = reconstruct(
        a,
        (2, 2, 2, -3, -3),
        6,
        [
            ("(0,0,1,1,0) left exceptional to alpha", left_exceptional_check(a, (0, 0, 1, 1, 0), F)),
            ("projection through (0,0,1,1,0) is B2", projected_type_check((0, 0, 1, 1, 0), b2, F)),
        ],
    )
    b3 = Quiver.from_arrows(range(1, 6), _labels(r.chosen), "b3")
    out["b3"] = (r, b3)
    a = (1, 1, 1, 1, 1, 2)
    r = reconstruct(
        a,
        (2, 2, 2, 2, 2, -5),
        5,
        [
            ("(0,0,0,1,1,1) left exceptional to alpha", left_exceptional_check(a, (0, 0, 0, 1, 1, 1), F)),
            ("projection through (0,0,0,1,1,1) is B3", projected_type_check((0, 0, 0, 1, 1, 1), b3, F)),
        ],
    )
    b4 = Quiver.from_arrows(range(1, 7), _labels(r.chosen), "b4")
    out["b4"] = (r, b4)
    a = (1, 1, 1, 1, 1, 2, 2)
    e1, e2 = (0, 0, 0, 0, 0, 1, 0), (0, 0, 0, 1, 1, 1, 1)
    r = reconstruct(
        a,
        (2, 2, 2, 2, 2, 0, -5),
        6,
        [
            ("(0,0,0,0,0,1,0) left exceptional to alpha", left_exceptional_check(a, e1, F)),
            ("(0,0,0,1,1,1,1) left exceptional to alpha", left_exceptional_check(a, e2, F)),
            ("projection through (0,0,0,0,0,1,0) is B4", projected_type_check(e1, b4, F)),
            ("projection through (0,0,0,1,1,1,1) is B4", projected_type_check(e2, b4, F)),
        ],
    )
    out["b41"] = (r, Quiver.from_arrows(range(1, 8), _labels(r.chosen), "b41"))
    return out
