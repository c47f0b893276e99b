"""Golden-value checks over the bundled corpus."""

from __future__ import annotations

import random
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path

from .corpus import QuiverFile, load_corpus
from .field import Field
from .lattice import euler_context, find_isomorphism
from .moduli import anticanonical_checks, blowup_report, divisor_transform, si_dimension
from .perp import (
    core_cone,
    find_orthogonal_roots,
    projected_quiver,
    transport,
    weight_on_QE,
)
from .rep import exceptional_rep, injective_rep, project_module, random_rep
from .stability import (
    STABLE,
    dimvec_stability,
    fundamental_ranks,
    g_ample_cone,
    generic_end_dim,
    generic_subdims,
)

PASS, FAIL, DISCREPANCY = "pass", "fail", "discrepancy"
ALT_PRIME = (1 << 61) - 1


@dataclass(frozen=True)
class CheckRow:
    criterion: int
    name: str
    expected: object
    computed: object
    tag: str
    status: str

    def to_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "name": self.name,
            "expected": _plain(self.expected),
            "computed": _plain(self.computed),
            "tag": self.tag,
            "status": self.status,
        }


def _plain(x):
    if isinstance(x, (list, tuple)):
        return [_plain(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    return x


class _Runner:
    def __init__(self, corpus: dict[str, QuiverFile], seed: int, field: Field, trials: int):
        self.c = corpus
        self.seed = seed
        self.F = field
        self.trials = trials
        self.rows: list[CheckRow] = []
        self._ctx: dict = {}

    def rng(self, *key) -> random.Random:
        return random.Random(f"{self.seed}:" + ":".join(map(str, key)))

    def row(self, crit, name, expected, computed, tag="PAPER", soft=False):
        ok = _plain(expected) == _plain(computed)
        status = PASS if ok else (DISCREPANCY if soft else FAIL)
        self.rows.append(CheckRow(crit, name, expected, computed, tag, status))

    def guarded(self, crit, name, expected, fn: Callable, tag="PAPER", soft=False):
        try:
            computed = fn()
        except Exception as exc:  # noqa: BLE001 reported as a failed row, the table keeps going
            computed = f"error: {type(exc).__name__}: {exc}"
        self.row(crit, name, expected, computed, tag, soft)

    def q(self, name):
        return self.c[name].quiver

    def v(self, name, key):
        return self.c[name].vector(key)

    def pctx(self, name, eps_key="eps"):
        key = (name, eps_key)
        if key not in self._ctx:
            rng = self.rng("ctx", name, eps_key)
            E = exceptional_rep(self.q(name), self.v(name, eps_key), self.F, rng)
            self._ctx[key] = projected_quiver(E, rng)
        return self._ctx[key]


def _iso(a, b) -> bool:
    return len(a) == len(b) and find_isomorphism(a, b) is not None


def _divisor_row(d):
    return {"coefficients": [d.pullback_coefficient, d.exceptional_coefficient], "pullback_weight": list(d.pullback_weight)}


def verify_corpus(
    directory: str | Path | None = None, seed: int = 0, field: Field | None = None, trials: int = 3
) -> list[CheckRow]:
    """Run every golden check; rows come back in a fixed order."""
    R = _Runner(load_corpus(directory), seed, field or Field(), trials)
    F = R.F

    # 1. canonical weights
    for name, want in (("b1", [2, 1, -3]), ("b2", [2, 2, -1, -3])):
        lat = euler_context(R.q(name))
        a = R.v(name, "alpha")
        R.row(1, f"{name} canonical weight", want, lat.canonical_weight(a))
        R.row(1, f"{name} canonical weight from arrows", want, lat.canonical_weight_from_arrows(a), "DERIVED")

    # 2. projected quivers
    for name, eps_key, target, a_e in (
        ("b1", "eps", "theta3", [1, 1]),
        ("c36", "eps", "theta4", [1, 1]),
        ("b2", "eps3", "theta22", [1, 1, 1]),
    ):
        def proj(name=name, eps_key=eps_key, target=target):
            ctx = R.pctx(name, eps_key)
            return {
                "isomorphic": _iso(ctx.quiver_E.adjacency, R.q(target).adjacency),
                "alpha_eps": list(transport(ctx, R.v(name, "alpha"), "down-right")),
            }

        R.guarded(2, f"{name}/{eps_key} projected quiver is {target}", {"isomorphic": True, "alpha_eps": a_e}, proj)

    # 3. weight transport on b1
    R.guarded(3, "b1 dual lift of (4,3,2)", [4, 4, 2], lambda: euler_context(R.q("b1")).project_root((4, 3, 2), R.v("b1", "eps"), "dual"))
    R.guarded(3, "b1 weight of (4,3,2) on Q_E", [2, -2], lambda: weight_on_QE(R.pctx("b1"), (4, 3, 2)))
    R.guarded(3, "b1 weight of (6,5,3) on Q_E", [3, -3], lambda: weight_on_QE(R.pctx("b1"), (6, 5, 3)))

    # 4. module-level dual projection on c36
    def dual_i2():
        q = R.q("c36")
        dims = set()
        for s in range(3):
            rng = R.rng("i2", s)
            E = exceptional_rep(q, R.v("c36", "eps"), F, rng)
            dims.add(tuple(project_module(injective_rep(q, 1, F), E, "dual", rng).dim))
        return sorted(dims)

    R.guarded(4, "c36 dual projection of I2 over 3 seeds", [[16, 16, 12]], dual_i2)
    beta = R.v("c36", "beta")
    k0 = euler_context(R.q("c36")).project_root(beta, R.v("c36", "eps"), "dual")
    R.row(4, "c36 K0 dual lift of (4,7,5)", [9, 12, 9], k0, "DERIVED")

    def dual_beta():
        rng = R.rng("beta475")
        ctx = R.pctx("c36")
        N = random_rep(R.q("c36"), beta, F, rng)
        return project_module(N, ctx.E, "dual", rng).dim

    R.guarded(4, "c36 module dual projection of (4,7,5) against the stated (12,16,12)", [12, 16, 12], dual_beta, soft=True)

    # 5. semi-invariant dimensions
    for name, sig, n, want, tag in (
        ("theta3", (1, -1), 1, 3, "DERIVED"),
        ("theta3", (1, -1), 2, 6, "DERIVED"),
        ("theta3", (1, -1), 3, 10, "DERIVED"),
        ("b1", (1, 1, -2), 1, 5, "PAPER"),
        ("c36", (3, 3, -5), 1, 10, "PAPER"),
        ("b1", (2, 1, -3), 1, 9, "PAPER"),
        ("b1", (2, 1, -3), 2, 25, "PAPER"),
    ):
        R.guarded(
            5,
            f"{name} SI dimension sigma={list(sig)} n={n}",
            want,
            lambda name=name, sig=sig, n=n: si_dimension(R.q(name), R.v(name, "alpha"), sig, n, F, seed).dimension,
            tag,
        )

    # 6. ex0 cone and core
    q0, a0 = R.q("ex0"), R.v("ex0", "alpha")
    roots_box: dict = {}

    def roots():
        roots_box["r"] = find_orthogonal_roots(q0, a0, a0, F, R.rng("roots"), trials)
        return [[list(r.eps), r.exceptional_to_alpha] for r in roots_box["r"]]

    R.guarded(6, "ex0 cone rays (dimension coordinates)", [[1, 1, 0], [3, 2, 2]], lambda: sorted(list(r) for r in g_ample_cone(q0, a0, F, R.rng("cone")).rays_beta))
    R.guarded(6, "ex0 orthogonal roots and exceptionality", [[[1, 2, 0], False]], roots)
    R.guarded(6, "ex0 core rays", [[1, 1, 0], [4, 3, 2]], lambda: sorted(list(r) for r in core_cone(q0, a0, roots_box["r"], F, R.rng("core")).rays_beta))
    R.guarded(6, "ex0 fundamental ranks", [[1, 1, 0]], lambda: [list(g) for g in fundamental_ranks(q0, R.v("ex0", "eps"), a0, F, R.rng("fund"))])

    # 7. blow-up invariants
    for name, bkey, b, want in (
        ("b1", None, (6, 5, 3), (2, 0, 1)),
        ("c36", "beta", None, (3, 1, 2)),
    ):
        def blow(name=name, bkey=bkey, b=b):
            beta = R.v(name, bkey) if bkey else b
            r = blowup_report(R.v(name, "alpha"), beta, R.pctx(name), R.rng("blowup", name), trials)
            return {
                "downstairs_dim": r.downstairs_dim,
                "center_codim_paper": r.center_codim_paper,
                "center_dim_thaddeus": r.center_dim_thaddeus,
                "exceptional_locus_dim": r.exceptional_locus_dim,
                "smiley_ok": r.smiley_ok,
                "single_wall_ok": r.single_wall_ok,
                "e_dual_regular": r.e_dual_regular,
            }

        exp = {
            "downstairs_dim": want[0],
            "center_codim_paper": 2,
            "center_dim_thaddeus": want[1],
            "exceptional_locus_dim": want[2],
            "smiley_ok": True,
            "single_wall_ok": True,
            "e_dual_regular": True,
        }
        R.guarded(7, f"{name} blow-up report", exp, blow)
    for name, beta, deg in (("b1", (4, 3, 2), [2, -2]), ("c36", (4, 7, 5), [3, -3])):
        R.guarded(
            7,
            f"{name} divisor class of {list(beta)}",
            {"coefficients": [1, -1], "pullback_weight": deg},
            lambda name=name, beta=beta: _divisor_row(
                divisor_transform(R.v(name, "alpha"), beta, R.pctx(name), R.rng("div", name), trials)
            ),
        )

    # 8. anti-canonical identities on every corpus (alpha, eps) pair
    for name, eps_key in corpus_pairs(R.c):
        R.guarded(
            8,
            f"{name}/{eps_key} anti-canonical checks",
            [True, True],
            lambda name=name, eps_key=eps_key: list(anticanonical_checks(R.v(name, "alpha"), R.pctx(name, eps_key))),
            "DERIVED",
        )

    # 9. Schur cross-check and generic subdims across primes and seeds
    for name in R.c:
        if "alpha" not in R.c[name].vectors:
            continue

        def schur(name=name):
            q, a = R.q(name), R.v(name, "alpha")
            st = dimvec_stability(q, a, euler_context(q).canonical_weight(a), F, R.rng("schur", name), trials=trials)
            return (st == STABLE) == (generic_end_dim(q, a, F, R.rng("end", name), trials) == 1)

        R.guarded(9, f"{name} sigma_ac-stability agrees with generic End", True, schur, "DERIVED")

        def subdims(name=name):
            q, a = R.q(name), R.v(name, "alpha")
            runs = [
                sorted(generic_subdims(q, a, fld, R.rng("sub", name, fld.prime, s), trials))
                for fld in (F, Field(prime=ALT_PRIME))
                for s in (0, 1)
            ]
            return all(r == runs[0] for r in runs)

        R.guarded(9, f"{name} generic subdims agree across primes and seeds", True, subdims, "DERIVED")
    return R.rows


def corpus_pairs(corpus: dict[str, QuiverFile]) -> list[tuple[str, str]]:
    """``(entry, vector name)`` for every named exceptional root left orthogonal to the entry's alpha."""
    out = []
    for name, qf in corpus.items():
        if "alpha" not in qf.vectors:
            continue
        lat = euler_context(qf.quiver)
        for key in sorted(qf.vectors):
            if not key.startswith("eps"):
                continue
            e = qf.vectors[key]
            if key == "eps" and any(k != "eps" and qf.vectors[k] == e for k in qf.vectors if k.startswith("eps")):
                continue
            if lat.euler_form(e, e) == 1 and lat.euler_form(e, qf.vectors["alpha"]) == 0:
                out.append((name, key))
    return out


def format_table(rows: list[CheckRow]) -> str:
    lines = [f"{'#':>2}  {'status':<11}  {'tag':<7}  check"]
    for r in rows:
        lines.append(f"{r.criterion:>2}  {r.status:<11}  {r.tag:<7}  {r.name}")
        if r.status != PASS:
            lines.append(f"{'':>26}expected {_plain(r.expected)}")
            lines.append(f"{'':>26}computed {_plain(r.computed)}")
    n_fail = sum(r.status == FAIL for r in rows)
    n_disc = sum(r.status == DISCREPANCY for r in rows)
    lines.append(f"{len(rows)} checks, {n_fail} failed, {n_disc} recorded discrepancies")
    return "\n".join(lines)
