import random

import pytest
from oracles import euler_form_bruteforce

from quivertilt.lattice import (
    IMAGINARY,
    ISOTROPIC,
    NOT_A_ROOT,
    REAL_ROOT,
    NotARealRootError,
    Quiver,
    QuiverError,
    euler_context,
    find_isomorphism,
    integer_inverse,
    mat_mul,
    primitive,
    strictly_less,
    vec_gcd,
)


def _rand_vec(rng, n, lo=-6, hi=6):
    return tuple(rng.randint(lo, hi) for _ in range(n))


# -- quiver construction ----------------------------------------------------------


def test_cycle_rejected():
    with pytest.raises(QuiverError, match="cycle"):
        Quiver.from_arrows([1, 2, 3], [(1, 2, "a"), (2, 3, "b"), (3, 1, "c")])


def test_loop_rejected():
    with pytest.raises(QuiverError, match="loop"):
        Quiver.from_arrows([1], [(1, 1, "a")])


def test_unknown_vertex_rejected():
    with pytest.raises(QuiverError, match="unknown vertex"):
        Quiver.from_arrows([1, 2], [(1, 5, "a")])


def test_duplicate_labels_rejected():
    with pytest.raises(QuiverError):
        Quiver.from_arrows([1, 2], [(1, 2, "a"), (1, 2, "a")])


def test_topological_order_respects_arrows(corpus):
    for qf in corpus.values():
        q = qf.quiver
        pos = {v: i for i, v in enumerate(q.topological_order)}
        assert all(pos[t] < pos[h] for t, h in q.arrow_ends)


def test_adjacency_roundtrip(corpus):
    for qf in corpus.values():
        q = qf.quiver
        assert Quiver.from_adjacency(q.adjacency).adjacency == q.adjacency


def test_paths_of_b1(corpus):
    q = corpus["b1"].quiver
    # from vertex 1: trivial, d, c, d.a, d.b
    assert [len(x) for x in q.paths_from(0)] == [1, 1, 3]
    assert [len(x) for x in q.paths_to(2)] == [3, 2, 1]


# -- Euler and Coxeter ----------------------------------------------------------


def test_euler_form_matches_arrow_sum(corpus):
    rng = random.Random(1)
    for qf in corpus.values():
        q = qf.quiver
        ctx = euler_context(q)
        for _ in range(50):
            x, y = _rand_vec(rng, q.n), _rand_vec(rng, q.n)
            assert ctx.euler_form(x, y) == euler_form_bruteforce(q.n, q.arrow_ends, x, y)


def test_euler_matrix_inverse_is_integral(corpus):
    for qf in corpus.values():
        ctx = euler_context(qf.quiver)
        n = qf.quiver.n
        prod = mat_mul(ctx.euler_matrix, ctx.euler_inverse)
        assert prod == tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


@pytest.mark.parametrize("name", ["theta2", "theta3", "theta4", "theta22", "b1", "b2", "b3", "b4", "b41", "c36", "ex0"])
def test_coxeter_duality_1000_pairs(corpus, name):
    q = corpus[name].quiver
    ctx = euler_context(q)
    rng = random.Random(name)
    for _ in range(1000):
        x, y = _rand_vec(rng, q.n, -20, 20), _rand_vec(rng, q.n, -20, 20)
        assert ctx.euler_form(x, y) == -ctx.euler_form(y, ctx.tau(x))
        assert ctx.tau_inv(ctx.tau(x)) == x


def test_coxeter_values(corpus):
    # worked values: tau of the exceptional roots in the two golden examples
    assert euler_context(corpus["c36"].quiver).tau((0, 3, 2)) == (5, 5, 4)
    assert euler_context(corpus["b1"].quiver).tau((1, 0, 1)) == (0, 1, 0)


def test_coxeter_of_simple_projective_is_negative_injective():
    # A2: 1 -> 2; P2 = S2, tau(P2) = -I2 with I2 = (1, 1)
    q = Quiver.from_arrows([1, 2], [(1, 2, "a")])
    assert euler_context(q).tau((0, 1)) == (-1, -1)


def test_coxeter_direction_error():
    ctx = euler_context(Quiver.from_arrows([1, 2], [(1, 2, "a")]))
    with pytest.raises(ValueError):
        ctx.coxeter((1, 0), "sideways")


def test_vector_length_checked():
    ctx = euler_context(Quiver.from_arrows([1, 2], [(1, 2, "a")]))
    with pytest.raises(ValueError):
        ctx.euler_form((1, 0, 0), (1, 0))


# -- weights --------------------------------------------------------------------


def test_canonical_weight_golden(corpus):
    assert euler_context(corpus["b1"].quiver).canonical_weight((1, 1, 1)) == (2, 1, -3)
    assert euler_context(corpus["b2"].quiver).canonical_weight((1, 1, 1, 1)) == (2, 2, -1, -3)


def test_canonical_weight_two_paths_agree(corpus):
    rng = random.Random(3)
    for qf in corpus.values():
        ctx = euler_context(qf.quiver)
        for _ in range(30):
            a = _rand_vec(rng, qf.quiver.n, 0, 6)
            assert ctx.canonical_weight(a) == ctx.canonical_weight_from_arrows(a)
            assert ctx.pair(ctx.canonical_weight(a), a) == 0


def test_weight_dimvec_roundtrip(corpus):
    rng = random.Random(4)
    for qf in corpus.values():
        ctx = euler_context(qf.quiver)
        for _ in range(30):
            b = _rand_vec(rng, qf.quiver.n)
            s = ctx.weight_dimvec_convert(b, "dimvec")
            assert ctx.weight_dimvec_convert(s, "weight") == b
            # sigma_beta(x) = -<x, beta>
            x = _rand_vec(rng, qf.quiver.n)
            assert ctx.pair(s, x) == -ctx.euler_form(x, b)


def test_weight_convert_kind_error():
    ctx = euler_context(Quiver.from_arrows([1, 2], [(1, 2, "a")]))
    with pytest.raises(ValueError):
        ctx.weight_dimvec_convert((1, 0), "other")


def test_b1_weight_of_ac_vector(corpus):
    ctx = euler_context(corpus["b1"].quiver)
    assert ctx.weight_of((6, 5, 3)) == (2, 1, -3)
    assert ctx.weight_of((4, 3, 2)) == (1, 1, -2)


# -- projections ----------------------------------------------------------------


def _real_roots(ctx, n, bound=3):
    import itertools

    return [e for e in itertools.product(range(bound + 1), repeat=n) if any(e) and ctx.euler_form(e, e) == 1]


@pytest.mark.parametrize("name", ["b1", "c36", "ex0", "b2"])
def test_projection_idempotent_and_orthogonal(corpus, name):
    q = corpus[name].quiver
    ctx = euler_context(q)
    rng = random.Random(name)
    for e in _real_roots(ctx, q.n)[:6]:
        for _ in range(10):
            x = _rand_vec(rng, q.n)
            r = ctx.project_root(x, e, "right")
            assert ctx.euler_form(e, r) == 0
            assert ctx.project_root(r, e, "right") == r
            d = ctx.project_root(x, e, "dual")
            assert ctx.euler_form(e, d) == 0
            assert ctx.project_root(d, e, "dual") == d


def test_projection_examples(corpus):
    b1 = euler_context(corpus["b1"].quiver)
    assert b1.project_root((4, 3, 2), (1, 0, 1), "dual") == (4, 4, 2)
    c36 = euler_context(corpus["c36"].quiver)
    assert c36.project_root((4, 7, 5), (0, 3, 2), "dual") == (9, 12, 9)
    # alpha already orthogonal: both projections fix it
    assert c36.project_root((1, 4, 3), (0, 3, 2), "right") == (1, 4, 3)


def test_projection_needs_real_root(corpus):
    ctx = euler_context(corpus["theta3"].quiver)
    with pytest.raises(NotARealRootError):
        ctx.project_root((1, 1), (1, 1))


def test_root_classify():
    k = euler_context(Quiver.from_arrows([1, 2], [(1, 2, "a"), (1, 2, "b")]))
    assert k.root_classify((1, 0)) == REAL_ROOT
    assert k.root_classify((1, 1)) == ISOTROPIC
    t3 = euler_context(Quiver.from_arrows([1, 2], [(1, 2, "a"), (1, 2, "b"), (1, 2, "c")]))
    assert t3.root_classify((1, 1)) == IMAGINARY
    a2 = euler_context(Quiver.from_arrows([1, 2], [(1, 2, "a")]))
    assert a2.root_classify((1, -1)) == NOT_A_ROOT


# -- helpers ---------------------------------------------------------------------


def test_primitive_and_gcd():
    assert primitive((4, -6, 2)) == (2, -3, 1)
    assert vec_gcd((4, 6, 2)) == 2
    assert strictly_less((1, 1, 0), (2, 2, 1))
    assert not strictly_less((1, 1, 1), (1, 1, 1))


def test_integer_inverse_rejects_non_unimodular():
    with pytest.raises(ValueError):
        integer_inverse(((2, 0), (0, 1)))


def test_find_isomorphism():
    A = ((0, 2, 0), (0, 0, 1), (0, 0, 0))
    B = ((0, 0, 0), (1, 0, 0), (0, 2, 0))
    p = find_isomorphism(A, B)
    assert p is not None
    assert all(A[i][j] == B[p[i]][p[j]] for i in range(3) for j in range(3))
    assert find_isomorphism(A, ((0, 1, 0), (0, 0, 2), (0, 0, 0))) is None
