import itertools
import random

import pytest
from oracles import det_mod, hom_dim_oracle, hom_system

from quivertilt.decompose import DecompositionError, end_decompose, is_isomorphic
from quivertilt.field import Field
from quivertilt.lattice import euler_context
from quivertilt.rep import (
    IntertwinerSystem,
    NoHomomorphismError,
    NotExceptionalError,
    RepresentationError,
    WeightMismatchError,
    build_extension,
    certify_exceptional,
    compose,
    direct_sum,
    exceptional_rep,
    from_matrices,
    generic_hom_ext,
    hom_ext,
    identity_map,
    injective_rep,
    is_homomorphism,
    is_semistable_module,
    power,
    project_module,
    projective_rep,
    random_cocycle,
    random_rep,
    semi_invariant,
    simple_rep,
    split_sign,
    tangent_kernel_dim,
    tau_partner,
    universal_map,
    zero_cocycle,
)

CORPUS = ["theta2", "theta3", "theta4", "theta22", "b1", "b2", "b3", "b4", "b41", "c36", "ex0"]


def _rows(F, m):
    return [[int(x) for x in r] for r in F.to_python_rows(m)]


def _degenerate_rep(q, dim, F, rng):
    """Random representation with some arrows forced to rank <= 1 or zero."""
    mats = []
    for t, h in q.arrow_ends:
        kind = rng.random()
        if kind < 0.3:
            mats.append(F.zeros(dim[t], dim[h]))
        elif kind < 0.6 and dim[t] and dim[h]:
            u, v = F.random_mat(dim[t], 1, rng), F.random_mat(1, dim[h], rng)
            mats.append(u * v)
        else:
            mats.append(F.random_mat(dim[t], dim[h], rng))
    from quivertilt.rep import Representation

    return Representation(q, F, tuple(dim), tuple(mats))


# -- construction ------------------------------------------------------------------


def test_shape_validation(corpus, F):
    q = corpus["theta2"].quiver
    with pytest.raises(RepresentationError):
        from_matrices(q, F, (1, 1), [[[1]], [[1, 2]]])
    with pytest.raises(RepresentationError):
        from_matrices(q, F, (1, 1), [[[1]]])


def test_projective_and_injective_dims(corpus, F):
    q = corpus["b1"].quiver
    assert [projective_rep(q, v, F).dim for v in range(3)] == [(1, 1, 3), (0, 1, 2), (0, 0, 1)]
    assert [injective_rep(q, v, F).dim for v in range(3)] == [(1, 0, 0), (1, 1, 0), (3, 2, 1)]
    q = corpus["c36"].quiver
    assert injective_rep(q, 1, F).dim == (1, 1, 0)


@pytest.mark.parametrize("name", ["b1", "c36", "ex0", "b2", "theta22"])
def test_projective_injective_universal_property(corpus, F, name):
    q = corpus[name].quiver
    rng = random.Random(name)
    for _ in range(5):
        X = random_rep(q, [rng.randint(0, 3) for _ in range(q.n)], F, rng)
        for v in range(q.n):
            assert hom_ext(projective_rep(q, v, F), X)[:2] == (X.dim[v], 0)
            assert hom_ext(X, injective_rep(q, v, F))[:2] == (X.dim[v], 0)


def test_direct_sum_and_power(corpus, F, rng):
    q = corpus["b1"].quiver
    A, B = random_rep(q, (1, 0, 1), F, rng), random_rep(q, (0, 1, 1), F, rng)
    S = direct_sum([A, B])
    assert S.dim == (1, 1, 2)
    assert hom_ext(S, S).hom == sum(hom_ext(X, Y).hom for X in (A, B) for Y in (A, B))
    assert power(A, 3).dim == (3, 0, 3)
    assert power(A, 0).is_zero()


# -- Hom / Ext -------------------------------------------------------------------


@pytest.mark.parametrize("name", CORPUS)
def test_hom_matches_column_major_oracle(corpus, F, name):
    q = corpus[name].quiver
    rng = random.Random("oracle" + name)
    for _ in range(12):
        m = [rng.randint(0, 2) for _ in range(q.n)]
        n = [rng.randint(0, 2) for _ in range(q.n)]
        M, N = _degenerate_rep(q, m, F, rng), _degenerate_rep(q, n, F, rng)
        want = hom_dim_oracle(q.n, q.arrow_ends, m, n, [_rows(F, a) for a in M.mats], [_rows(F, a) for a in N.mats], F.prime)
        assert IntertwinerSystem(M, N).hom_dim == want


@pytest.mark.parametrize("name", CORPUS)
def test_index_identity_200_pairs(corpus, F, name):
    q = corpus[name].quiver
    ctx = euler_context(q)
    rng = random.Random("index" + name)
    for i in range(200):
        m = [rng.randint(0, 3) for _ in range(q.n)]
        n = [rng.randint(0, 3) for _ in range(q.n)]
        make = _degenerate_rep if i % 2 else random_rep
        M, N = make(q, m, F, rng), make(q, n, F, rng)
        h, e, _ = hom_ext(M, N)
        assert h - e == ctx.euler_form(m, n)


def test_hom_basis_elements_are_homomorphisms(corpus, F, rng):
    q = corpus["c36"].quiver
    M = random_rep(q, (0, 3, 2), F, rng)
    N = projective_rep(q, 1, F)
    S = IntertwinerSystem(N, M)
    assert S.hom_basis
    for f in S.hom_basis:
        assert is_homomorphism(f, N, M)
    g = S.random_hom(rng)
    assert is_homomorphism(compose(identity_map(N), g), N, M)


def test_no_homomorphism_error(corpus, F, rng):
    q = corpus["theta2"].quiver
    S = IntertwinerSystem(simple_rep(q, 0, F), simple_rep(q, 1, F))
    with pytest.raises(NoHomomorphismError):
        S.random_hom(rng)


def test_mismatched_fields_rejected(corpus, F, rng):
    q = corpus["theta2"].quiver
    with pytest.raises(RepresentationError):
        IntertwinerSystem(random_rep(q, (1, 1), F, rng), random_rep(q, (1, 1), Field("rationals"), rng))


def test_generic_hom_ext_kronecker(corpus, F, rng):
    # two independent generic (1,1) reps of the 3-Kronecker quiver: hom = 0, ext = 1
    q = corpus["theta3"].quiver
    assert generic_hom_ext(q, (1, 1), (1, 1), F, rng) == (0, 1)
    assert generic_hom_ext(q, (1, 0), (0, 1), F, rng) == (0, 3)


# -- semi-invariants ---------------------------------------------------------------


def _orthogonal_pairs(q, count, rng, top=3):
    ctx = euler_context(q)
    pairs = []
    for m in itertools.product(range(top + 1), repeat=q.n):
        for n in itertools.product(range(top + 1), repeat=q.n):
            if any(m) and any(n) and ctx.euler_form(m, n) == 0 and sum(m) + sum(n) <= 10:
                pairs.append((m, n))
    rng.shuffle(pairs)
    return (pairs * (count // max(1, len(pairs)) + 1))[:count]


@pytest.mark.parametrize("name", ["theta3", "b1", "c36", "ex0"])
def test_semi_invariant_nonzero_iff_orthogonal_200(corpus, F, name):
    q = corpus[name].quiver
    rng = random.Random("c" + name)
    seen = set()
    for i, (m, n) in enumerate(_orthogonal_pairs(q, 200, rng)):
        make = _degenerate_rep if i % 3 == 0 else random_rep
        M, N = make(q, m, F, rng), make(q, n, F, rng)
        c = semi_invariant(M, N)
        h, e, _ = hom_ext(M, N)
        assert (c != 0) == (h == 0 and e == 0)
        rows, _ = hom_system(q.n, q.arrow_ends, m, n, [_rows(F, a) for a in M.mats], [_rows(F, a) for a in N.mats])
        oracle = det_mod(rows, F.prime) if rows else 1
        assert (oracle != 0) == (c != 0)
        seen.add(c != 0)
    assert seen == {True, False}


def test_semi_invariant_needs_square(corpus, F, rng):
    q = corpus["theta3"].quiver
    with pytest.raises(WeightMismatchError):
        semi_invariant(random_rep(q, (1, 1), F, rng), random_rep(q, (1, 1), F, rng))


def _split_cases(q, rng, count):
    ctx = euler_context(q)
    cands = []
    vecs = [v for v in itertools.product(range(3), repeat=q.n) if any(v)]
    for m in vecs:
        orth = [n for n in vecs if ctx.euler_form(m, n) == 0]
        for a in orth:
            for b in orth:
                cands.append((m, a, b))
    rng.shuffle(cands)
    return [cands[i % len(cands)] for i in range(count)]


@pytest.mark.parametrize("name", ["theta3", "b1"])
def test_c_multiplicative_on_extensions(corpus, F, name):
    q = corpus[name].quiver
    rng = random.Random("mult" + name)
    cases = _split_cases(q, rng, 25)
    assert len(cases) == 25
    nonzero = 0
    for m, n1, n2 in cases:
        M = random_rep(q, m, F, rng)
        N1, N2 = random_rep(q, n1, F, rng), random_rep(q, n2, F, rng)
        N = build_extension(N1, N2, random_cocycle(N1, N2, rng))
        lhs = semi_invariant(M, N)
        rhs = semi_invariant(M, N1) * semi_invariant(M, N2) * split_sign(q, m, n1, n2)
        assert lhs == rhs
        nonzero += lhs != 0
    assert nonzero > 0


# -- extensions ------------------------------------------------------------------


def test_nonsplit_extension_from_ext_basis(corpus, F):
    q = corpus["theta2"].quiver
    A, B = simple_rep(q, 1, F), simple_rep(q, 0, F)
    S = IntertwinerSystem(B, A)
    assert len(S.ext_basis) == 2
    for Z in S.ext_basis:
        M = build_extension(A, B, Z)
        assert hom_ext(M, A).hom < hom_ext(A, A).hom + hom_ext(B, A).hom
    split = build_extension(A, B, zero_cocycle(A, B))
    assert hom_ext(split, A).hom == hom_ext(A, A).hom + hom_ext(B, A).hom


def test_bad_cocycle_shape(corpus, F, rng):
    q = corpus["theta2"].quiver
    A, B = simple_rep(q, 1, F), simple_rep(q, 0, F)
    with pytest.raises(RepresentationError):
        build_extension(A, B, zero_cocycle(B, A))


# -- exceptional objects and projections ----------------------------------------------


def test_exceptional_rep_certified(corpus, F, rng):
    E = exceptional_rep(corpus["c36"].quiver, (0, 3, 2), F, rng)
    assert certify_exceptional(E)
    with pytest.raises(NotExceptionalError):
        exceptional_rep(corpus["theta3"].quiver, (1, 1), F, rng)


def test_tau_partner(corpus, F, rng):
    q = corpus["b1"].quiver
    E = exceptional_rep(q, (1, 0, 1), F, rng)
    assert tau_partner(E, rng).dim == (0, 1, 0)
    with pytest.raises(NotExceptionalError):
        tau_partner(projective_rep(q, 2, F), rng)


def test_universal_map_from_E(corpus, F, rng):
    q = corpus["b1"].quiver
    E = exceptional_rep(q, (1, 0, 1), F, rng)
    P = projective_rep(q, 0, F)
    U = universal_map(direct_sum([E, P, E]), E, "from-E")
    assert U.multiplicity == 2 and U.injective and not U.surjective
    assert U.cokernel.dim == P.dim and U.kernel.is_zero()
    V = universal_map(direct_sum([E, P]), E, "to-E")
    # hom(P_1, E) = dim E at vertex 1 = 1, plus the identity of E
    assert V.multiplicity == 2 and V.surjective
    assert V.kernel.dim == (0, 1, 2)
    with pytest.raises(ValueError):
        universal_map(E, E, "sideways")


def test_right_projections_b1(corpus, F, rng):
    q = corpus["b1"].quiver
    E = exceptional_rep(q, (1, 0, 1), F, rng)
    dims = [project_module(projective_rep(q, v, F), E, "right").dim for v in range(3)]
    assert dims == [(1, 1, 3), (1, 1, 3), (0, 0, 1)]


def test_b1_projections_of_p1_p2_isomorphic_indecomposable(corpus, F, rng):
    q = corpus["b1"].quiver
    E = exceptional_rep(q, (1, 0, 1), F, rng)
    X1 = project_module(projective_rep(q, 0, F), E, "right").rep
    X2 = project_module(projective_rep(q, 1, F), E, "right").rep
    assert is_isomorphic(X1, X2, rng)
    assert [(X.dim, k) for X, k in end_decompose(X1, rng)] == [((1, 1, 3), 1)]


def test_projection_is_idempotent(corpus, F, rng):
    q = corpus["c36"].quiver
    E = exceptional_rep(q, (0, 3, 2), F, rng)
    for v in range(3):
        X = project_module(projective_rep(q, v, F), E, "right").rep
        Y = project_module(X, E, "right")
        assert Y.dim == X.dim and Y.extension_rank == 0 and Y.universal.multiplicity == 0


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_dual_projection_of_injective_c36(corpus, F, seed):
    q = corpus["c36"].quiver
    rng = random.Random(seed)
    E = exceptional_rep(q, (0, 3, 2), F, rng)
    P = project_module(injective_rep(q, 1, F), E, "dual", rng)
    assert P.dim == (16, 16, 12)
    assert P.e_regular


def test_dual_projection_c36_beta_matches_k0(corpus, F, rng):
    q = corpus["c36"].quiver
    E = exceptional_rep(q, (0, 3, 2), F, rng)
    N = random_rep(q, (4, 7, 5), F, rng)
    assert project_module(N, E, "dual", rng).dim == (9, 12, 9)


def test_c36_projection_decompositions(corpus, F, rng):
    q = corpus["c36"].quiver
    E = exceptional_rep(q, (0, 3, 2), F, rng)
    found = []
    for v in range(3):
        X = project_module(projective_rep(q, v, F), E, "right").rep
        found.append([(Y.dim, k) for Y, k in end_decompose(X, rng)])
    assert found == [[((1, 16, 12), 1)], [((0, 4, 3), 4)], [((0, 4, 3), 3)]]


def test_decompose_mixed_sum(corpus, F, rng):
    q = corpus["b1"].quiver
    P = projective_rep(q, 0, F)
    X = exceptional_rep(q, (1, 0, 1), F, rng)
    parts = end_decompose(direct_sum([P, X, P]), rng)
    assert sorted((Y.dim, k) for Y, k in parts) == [((1, 0, 1), 1), ((1, 1, 3), 2)]


def test_decompose_requires_prime_field(corpus, QF, rng):
    q = corpus["theta2"].quiver
    with pytest.raises(DecompositionError):
        end_decompose(random_rep(q, (1, 1), QF, rng), rng)


@pytest.mark.parametrize("name,seed", [("b1", 0), ("b1", 1), ("c36", 0), ("c36", 1)])
def test_tangent_kernel_dimension_one(corpus, F, name, seed):
    qf = corpus[name]
    q = qf.quiver
    rng = random.Random(seed)
    eps, alpha = qf.vectors["eps"], qf.vectors["alpha"]
    E = exceptional_rep(q, eps, F, rng)
    R = random_rep(q, [a - e for a, e in zip(alpha, eps)], F, rng)
    M = build_extension(E, R, random_cocycle(E, R, rng))
    assert tangent_kernel_dim(M, E) == 1


def test_semistable_module_certificate(corpus, F, rng):
    q = corpus["theta3"].quiver
    M = random_rep(q, (1, 1), F, rng)
    assert is_semistable_module(M, (1, -1), rng) == "certified-semistable"
    Z = from_matrices(q, F, (1, 1), [[[0]], [[0]], [[0]]])
    assert is_semistable_module(Z, (1, -1), rng) == "presumed-unstable"


def test_rationals_mode_agrees(corpus, QF):
    q = corpus["c36"].quiver
    rng = random.Random(9)
    E = exceptional_rep(q, (0, 3, 2), QF, rng)
    assert project_module(injective_rep(q, 1, QF), E, "dual", rng).dim == (16, 16, 12)
