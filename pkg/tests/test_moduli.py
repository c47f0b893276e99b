import random

import pytest
from oracles import forms_dimension

from quivertilt.moduli import (
    analyze,
    anticanonical_checks,
    blowup_report,
    divisor_transform,
    hilbert_samples,
    si_dimension,
    smiley_check,
)
from quivertilt.perp import projected_quiver
from quivertilt.rep import WeightMismatchError, WeightNotEffectiveError, exceptional_rep
from quivertilt.stability import WeightNotOrthogonalError
from quivertilt.verify import corpus_pairs


@pytest.fixture(scope="module")
def ctxs(corpus, F):
    out = {}
    for name, key in corpus_pairs(corpus):
        rng = random.Random(f"{name}:{key}")
        E = exceptional_rep(corpus[name].quiver, corpus[name].vectors[key], F, rng)
        out[(name, key)] = projected_quiver(E, rng)
    return out


# -- analyze ----------------------------------------------------------------------


def test_analyze_theta3(corpus, F, rng):
    r = analyze(corpus["theta3"].quiver, (1, 1), (1, -1), F, rng)
    assert (r.dimension, r.stability, r.schur, r.schur_by_end, r.indivisible) == (2, "stable", True, True, True)


def test_analyze_c36(corpus, F, rng):
    r = analyze(corpus["c36"].quiver, (1, 4, 3), (3, 3, -5), F, rng)
    assert r.dimension == 3 and r.stability == "stable"


def test_analyze_unstable_has_no_dimension(corpus, F, rng):
    r = analyze(corpus["theta3"].quiver, (1, 1), (-1, 1), F, rng)
    assert r.stability == "unstable" and r.dimension is None


def test_analyze_divisible(corpus, F, rng):
    r = analyze(corpus["theta2"].quiver, (2, 2), (1, -1), F, rng)
    assert not r.indivisible and not r.schur and r.generic_end_dim == 2


def test_analyze_rejects_non_orthogonal(corpus, F, rng):
    with pytest.raises(WeightNotOrthogonalError):
        analyze(corpus["theta3"].quiver, (1, 1), (1, 0), F, rng)


# -- smiley ------------------------------------------------------------------------


def test_smiley():
    assert smiley_check((1, 1, 1), (1, 0, 1))
    assert smiley_check((1, 4, 3), (0, 3, 2))
    assert not smiley_check((2, 0, 2), (1, 0, 1))
    assert not smiley_check((2, 4, 3), (1, 3, 2))  # 2 * (1, 1, 1) < (2, 4, 3)
    assert not smiley_check((3, 3, 1), (1, 1, 0))  # 2 * (1, 1, 0) < (3, 3, 1)


# -- blow-up and divisors ---------------------------------------------------------


def test_blowup_b1(ctxs, rng):
    r = blowup_report((1, 1, 1), (6, 5, 3), ctxs[("b1", "eps")], rng)
    assert (r.downstairs_dim, r.center_codim_paper, r.center_dim_thaddeus, r.exceptional_locus_dim) == (2, 2, 0, 1)
    assert r.smiley_ok and r.single_wall_ok and r.e_dual_regular and r.e_effective
    assert r.ext_identity_ok is True
    assert r.beta_dual_lift == (6, 6, 3)


def test_blowup_c36(ctxs, rng):
    r = blowup_report((1, 4, 3), (4, 7, 5), ctxs[("c36", "eps")], rng)
    assert (r.downstairs_dim, r.center_codim_paper, r.center_dim_thaddeus, r.exceptional_locus_dim) == (3, 2, 1, 2)
    assert r.hypotheses_ok and r.ext_identity_ok is True


def test_blowup_flags_not_effective(ctxs, rng):
    ctx = ctxs[("b1", "eps")]
    beta = (0, 1, 0)
    assert ctx.ctx.euler_form(ctx.eps, beta) <= 0
    r = blowup_report((1, 1, 1), beta, ctx, rng)
    assert not r.e_effective and not r.hypotheses_ok


def test_blowup_rejects_mismatched_alpha(ctxs, rng):
    with pytest.raises(ValueError):
        blowup_report((1, 0, 0), (6, 5, 3), ctxs[("b1", "eps")], rng)


def test_divisor_b1(ctxs, rng):
    d = divisor_transform((1, 1, 1), (4, 3, 2), ctxs[("b1", "eps")], rng)
    assert (d.pullback_coefficient, d.exceptional_coefficient) == (1, -1)
    assert d.pullback_weight == (2, -2)
    assert d.smiley_ok and d.hom_vanishes


def test_divisor_c36(ctxs, rng):
    d = divisor_transform((1, 4, 3), (4, 7, 5), ctxs[("c36", "eps")], rng)
    assert (d.exceptional_coefficient, d.pullback_weight) == (-1, (3, -3))


def test_divisor_coefficient_is_pairing(ctxs, rng):
    ctx = ctxs[("b1", "eps")]
    lat = ctx.ctx
    for beta in [(4, 3, 2), (6, 5, 3), (8, 6, 4), (5, 3, 3), (7, 5, 4)]:
        if lat.euler_form(ctx.eps, beta) <= 0:
            continue
        d = divisor_transform((1, 1, 1), beta, ctx, rng)
        # second path: evaluate the weight of beta on eps
        assert d.exceptional_coefficient == lat.pair(lat.weight_of(beta), ctx.eps)
    two = next(b for b in [(5, 3, 3), (7, 5, 4), (6, 3, 4)] if lat.euler_form(ctx.eps, b) == 2)
    assert divisor_transform((1, 1, 1), two, ctx, rng).exceptional_coefficient == -2


def test_divisor_needs_positive_pairing(ctxs, rng):
    with pytest.raises(WeightNotEffectiveError):
        divisor_transform((1, 1, 1), (0, 1, 0), ctxs[("b1", "eps")], rng)


def test_anticanonical_checks_all_corpus_pairs(corpus, ctxs):
    assert len(ctxs) >= 10
    for (name, key), ctx in ctxs.items():
        assert anticanonical_checks(corpus[name].vectors["alpha"], ctx) == (True, True), (name, key)


def test_anticanonical_values(ctxs):
    for key, ac in ((("b1", "eps"), (6, 5, 3)), (("c36", "eps"), (7, 11, 8))):
        ctx = ctxs[key]
        alpha = {"b1": (1, 1, 1), "c36": (1, 4, 3)}[key[0]]
        assert tuple(a + t for a, t in zip(alpha, ctx.ctx.tau(alpha))) == ac
        assert ctx.ctx.euler_form(ctx.eps, ac) == 1


# -- semi-invariants -------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_si_theta3_binomial(corpus, n):
    assert si_dimension(corpus["theta3"].quiver, (1, 1), (1, -1), n).dimension == forms_dimension(3, n)


@pytest.mark.parametrize("n", [1, 2])
def test_si_theta4_binomial(corpus, n):
    assert si_dimension(corpus["theta4"].quiver, (1, 1), (1, -1), n).dimension == forms_dimension(4, n)


def test_si_golden(corpus):
    assert si_dimension(corpus["b1"].quiver, (1, 1, 1), (1, 1, -2)).dimension == 5
    assert si_dimension(corpus["c36"].quiver, (1, 4, 3), (3, 3, -5)).dimension == 10


def test_si_monotone_and_stable(corpus):
    q = corpus["b1"].quiver
    vals = [si_dimension(q, (1, 1, 1), (2, 1, -3), 1, samples=k).dimension for k in (2, 4, 6, 9, 14, 19)]
    assert vals == sorted(vals)
    assert vals[-2] == vals[-1] == 9


def test_si_rationals_agree(corpus, QF):
    assert si_dimension(corpus["theta3"].quiver, (1, 1), (1, -1), 2, QF).dimension == 6


def test_si_errors(corpus):
    q = corpus["theta3"].quiver
    with pytest.raises(WeightMismatchError):
        si_dimension(q, (1, 1), (1, 0))
    with pytest.raises(ValueError):
        si_dimension(q, (1, 1), (-1, 1))
    with pytest.raises(ValueError):
        si_dimension(q, (1, 1), (1, -1), 0)


def test_hilbert_samples(corpus):
    assert hilbert_samples(corpus["b1"].quiver, (1, 1, 1), (2, 1, -3), 2) == [9, 25]
    assert hilbert_samples(corpus["theta3"].quiver, (1, 1), (1, -1), 3) == [3, 6, 10]
    assert hilbert_samples(corpus["theta3"].quiver, (1, 1), (1, -1), 0) == []
