"""Krull-Schmidt decomposition by splitting along generalized eigenspaces of random endomorphisms."""

from __future__ import annotations

import random

from .rep import (
    IntertwinerSystem,
    Representation,
    RepresentationError,
    submodule,
)


class DecompositionError(RepresentationError):
    """The retry budget ran out before a certified decomposition was found."""


def _random_endo(M: Representation, basis, rng: random.Random):
    F = M.field
    coeffs = [F.random_scalar(rng) for _ in basis]
    return tuple(F.lin_comb(coeffs, [b[v] for b in basis], M.dim[v], M.dim[v]) for v in range(M.quiver.n))


def _charpoly(M: Representation, phi):
    F = M.field
    f = F.poly([1])
    for v, m in enumerate(phi):
        if M.dim[v]:
            f = f * F.charpoly(m)
    return f


def _split(M: Representation, phi):
    """Subrepresentations cut out by the primary decomposition of ``phi``, or None."""
    F = M.field
    facs = F.factor(_charpoly(M, phi))
    if len(facs) < 2:
        return None
    parts = []
    for g, e in facs:
        bases = []
        for v, m in enumerate(phi):
            if M.dim[v] == 0:
                bases.append(F.zeros(0, 0))
                continue
            gm = F.poly_eval_mat(g, m)
            p = F.identity(M.dim[v])
            for _ in range(e):
                p = p * gm
            bases.append(F.left_nullspace(p))
        parts.append(submodule(M, bases)[0])
    return parts


def _looks_local(M: Representation, phi) -> bool:
    facs = M.field.factor(_charpoly(M, phi))
    return len(facs) == 1 and facs[0][0].degree() == 1


def _indecomposables(M: Representation, rng: random.Random, attempts: int, certify: int) -> list[Representation]:
    if M.is_zero():
        return []
    basis = IntertwinerSystem(M, M).hom_basis
    if len(basis) == 1:
        return [M]
    local_hits = 0
    for _ in range(attempts):
        phi = _random_endo(M, basis, rng)
        parts = _split(M, phi)
        if parts is not None:
            out = []
            for P in parts:
                out.extend(_indecomposables(P, rng, attempts, certify))
            return out
        if _looks_local(M, phi):
            local_hits += 1
            if local_hits >= certify:
                return [M]
    raise DecompositionError(f"could not certify a decomposition of a module of dimension {M.dim}")


def is_isomorphic(M: Representation, N: Representation, rng: random.Random, retries: int = 5) -> bool:
    """Monte-Carlo isomorphism test: a random homomorphism invertible at every vertex."""
    if M.dim != N.dim:
        return False
    if M.is_zero():
        return True
    S = IntertwinerSystem(M, N)
    if S.hom_dim == 0:
        return False
    for _ in range(retries):
        f = S.random_hom(rng)
        if all(m.nrows() == 0 or m.det() != 0 for m in f):
            return True
    return False


def end_decompose(
    M: Representation, rng: random.Random, attempts: int = 12, certify: int = 3
) -> list[tuple[Representation, int]]:
    """Indecomposable summands of ``M`` with multiplicities (prime field only)."""
    if not M.field.is_prime:
        raise DecompositionError("decomposition requires the prime-field mode")
    summands = _indecomposables(M, rng, attempts, certify)
    classes: list[list] = []
    for X in summands:
        for c in classes:
            if is_isomorphic(c[0], X, rng):
                c[1] += 1
                break
        else:
            classes.append([X, 1])
    classes.sort(key=lambda c: (c[0].dim, -c[1]))
    return [(X, k) for X, k in classes]
