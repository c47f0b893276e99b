"""``quivertilt`` command line: JSON reports for the library operations."""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from .corpus import QuiverFile, QuiverFileError, dumps, load
from .field import DEFAULT_PRIME, RATIONALS, FieldConfig
from .lattice import NotARealRootError, QuiverError, euler_context
from .moduli import (
    analyze,
    anticanonical_checks,
    blowup_report,
    divisor_transform,
    si_dimension,
)
from .perp import (
    ProjectedQuiverError,
    core_cone,
    core_membership,
    find_orthogonal_roots,
    projected_quiver,
    regular_weight_tests,
    transport,
    weight_on_QE,
)
from .rep import (
    NotExceptionalError,
    RepresentationError,
    WeightMismatchError,
    WeightNotEffectiveError,
    exceptional_rep,
    project_module,
    random_rep,
)
from .stability import (
    EnumerationCapError,
    OutsideConeError,
    WeightNotOrthogonalError,
    fundamental_ranks,
    g_ample_cone,
)
from .verify import FAIL, format_table, verify_corpus

EXIT_OK, EXIT_INPUT, EXIT_HYPOTHESIS = 0, 1, 2


class InputError(Exception):
    pass


class HypothesisFailure(Exception):
    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def _u64(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("must be an unsigned 64-bit integer")
    return v


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=_u64, default=0, help="master RNG seed (default 0)")
    common.add_argument("--prime", type=_u64, default=DEFAULT_PRIME, help="prime for the finite field")
    common.add_argument("--trials", type=int, default=3, help="samples per generic quantity (default 3)")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--certify", action="store_true", help="repeat the computation over the rationals")

    p = _Parser(prog="quivertilt", description="Tilting and orthogonal projection for quiver moduli.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help_, needs_file=True):
        s = sub.add_parser(name, parents=[common], help=help_)
        if needs_file:
            s.add_argument("file", help="quiver JSON file or bundled corpus name (corpus/b1.json)")
        return s

    s = cmd("analyze", "stability, moduli dimension and Schur flag")
    s.add_argument("--alpha", required=True)
    s.add_argument("--sigma", help="weight (default: canonical weight of alpha)")

    s = cmd("roots", "real Schur roots orthogonal to alpha")
    s.add_argument("--alpha", required=True)
    s.add_argument("--bound", default="alpha", help="entrywise search bound, or 'alpha'")

    s = cmd("cone", "G-ample cone of alpha")
    s.add_argument("--alpha", required=True)
    s.add_argument("--eps", help="also list fundamental ranks for (eps, alpha)")

    s = cmd("core", "core of the G-ample cone")
    s.add_argument("--alpha", required=True)
    s.add_argument("--bound", default="alpha")
    s.add_argument("--beta", help="classify this dimension vector against the core")

    s = cmd("project", "projected quiver and transports through an exceptional root")
    s.add_argument("--eps", required=True)
    s.add_argument("--alpha")
    s.add_argument("--beta")
    s.add_argument("--module", help="dimension vector of a random module to project on both sides")

    for name, help_ in (("blowup", "shell-crossing report"), ("divisor", "divisor class transform")):
        s = cmd(name, help_)
        s.add_argument("--alpha", required=True)
        s.add_argument("--eps", required=True)
        s.add_argument("--beta", required=True)

    s = cmd("si-dim", "dimension of a semi-invariant space by evaluation rank")
    s.add_argument("--alpha", required=True)
    s.add_argument("--sigma", required=True)
    s.add_argument("--n", type=int, default=1)
    s.add_argument("--samples", type=int, help="fixed sample count (default: grow until stable)")

    s = cmd("verify-corpus", "run the golden checks", needs_file=False)
    s.add_argument("--corpus", help="corpus directory (default: bundled)")
    return p


def _bound(qf: QuiverFile, spec: str, alpha):
    return tuple(alpha) if spec == "alpha" else qf.vector(spec, "bound")


def _ctx_for(qf: QuiverFile, eps, F, rng):
    try:
        E = exceptional_rep(qf.quiver, eps, F, rng)
    except NotExceptionalError as exc:
        raise HypothesisFailure(f"{list(eps)}: {exc}") from None
    return projected_quiver(E, rng)


def _run(args) -> tuple[dict, int]:
    cfg = FieldConfig(prime=args.prime, seed=args.seed)
    F = cfg.field()
    rng = cfg.rng()
    inputs = {k: v for k, v in sorted(vars(args).items()) if k not in ("out",) and v is not None}
    report = {"command": args.command, "inputs": inputs, "provenance": {}, "discrepancies": []}
    if args.command == "verify-corpus":
        rows = verify_corpus(args.corpus, args.seed, F, args.trials)
        report["outputs"] = {"checks": [r.to_dict() for r in rows], "table": format_table(rows).splitlines()}
        report["provenance"]["sampling"] = "randomized checks seeded per row from the master seed"
        report["discrepancies"] = [r.to_dict() for r in rows if r.status == "discrepancy"]
        return report, EXIT_HYPOTHESIS if any(r.status == FAIL for r in rows) else EXIT_OK

    qf = load(args.file)
    q = qf.quiver
    lat = euler_context(q)
    report["quiver"] = q.to_dict()
    if qf.provenance:
        report["provenance"]["quiver"] = qf.provenance
    out: dict = {}
    code = EXIT_OK
    sampled = "generic values are minima over random samples in the prime field; exact otherwise"

    if args.command == "analyze":
        alpha = qf.vector(args.alpha, "alpha")
        sigma = qf.vector(args.sigma, "sigma") if args.sigma else lat.canonical_weight(alpha)
        out = analyze(q, alpha, sigma, F, rng, args.trials).to_dict()
        if args.certify:
            out["certified"] = analyze(q, alpha, sigma, FieldConfig(RATIONALS).field(), random.Random(args.seed), args.trials).to_dict()
    elif args.command == "roots":
        alpha = qf.vector(args.alpha, "alpha")
        roots = find_orthogonal_roots(q, alpha, _bound(qf, args.bound, alpha), F, rng, args.trials)
        out = {"roots": [r.to_dict() for r in roots], "left_exceptional": [list(r.eps) for r in roots if r.side == "left" and r.exceptional_to_alpha]}
    elif args.command == "cone":
        alpha = qf.vector(args.alpha, "alpha")
        out = g_ample_cone(q, alpha, F, rng, trials=args.trials).to_dict()
        if args.eps:
            eps = qf.vector(args.eps, "eps")
            out["fundamental_ranks"] = [list(g) for g in fundamental_ranks(q, eps, alpha, F, rng, trials=args.trials)]
    elif args.command == "core":
        alpha = qf.vector(args.alpha, "alpha")
        bound = _bound(qf, args.bound, alpha)
        roots = find_orthogonal_roots(q, alpha, bound, F, rng, args.trials)
        out = core_cone(q, alpha, roots, F, rng, bound).to_dict()
        if args.beta:
            status, _ = core_membership(q, alpha, qf.vector(args.beta, "beta"), roots, bound)
            out["beta_status"] = status
        report["provenance"]["core"] = "weak core (roots bounded by alpha)" if bound == tuple(alpha) else "roots bounded by the given bound"
    elif args.command == "project":
        eps = qf.vector(args.eps, "eps")
        ctx = _ctx_for(qf, eps, F, rng)
        out = ctx.to_dict()
        if args.alpha:
            out["alpha_eps"] = list(transport(ctx, qf.vector(args.alpha, "alpha"), "down-right"))
        if args.beta:
            beta = qf.vector(args.beta, "beta")
            out["beta_dual_lift"] = list(lat.project_root(beta, eps, "dual"))
            out["beta_dual"] = list(transport(ctx, beta, "down-dual"))
            out["weight_on_QE"] = list(weight_on_QE(ctx, beta))
            reg = regular_weight_tests(ctx, beta, rng, args.trials)
            out["e_dual_regular"], out["sspreserve"] = reg.e_dual_regular, reg.sspreserve
        if args.module:
            m = qf.vector(args.module, "module")
            M = random_rep(q, m, F, rng)
            right = project_module(M, ctx.E, "right", rng)
            out["module"] = {"dim": list(m), "right": list(right.dim), "right_e_regular": right.e_regular, "right_k0": list(lat.project_root(m, eps, "right"))}
            try:
                dual = project_module(M, ctx.E, "dual", rng)
                out["module"].update(dual=list(dual.dim), dual_e_regular=dual.e_regular, dual_k0=list(lat.project_root(m, eps, "dual")))
            except NotExceptionalError as exc:
                out["module"]["dual"] = f"unavailable: {exc}"
    elif args.command == "blowup":
        alpha, eps, beta = (qf.vector(getattr(args, k), k) for k in ("alpha", "eps", "beta"))
        r = blowup_report(alpha, beta, _ctx_for(qf, eps, F, rng), rng, args.trials)
        out = r.to_dict()
        report["provenance"]["center"] = "center_codim_paper is -<alpha-eps,eps>, read as a codimension; the Thaddeus count is listed beside it"
        if not r.hypotheses_ok:
            report["outputs"] = out
            raise HypothesisFailure("blow-up hypotheses fail: " + ", ".join(
                k for k in ("smiley_ok", "single_wall_ok", "e_dual_regular", "e_effective") if not out[k]), report)
    elif args.command == "divisor":
        alpha, eps, beta = (qf.vector(getattr(args, k), k) for k in ("alpha", "eps", "beta"))
        try:
            d = divisor_transform(alpha, beta, _ctx_for(qf, eps, F, rng), rng, args.trials)
        except WeightNotEffectiveError as exc:
            raise HypothesisFailure(str(exc)) from None
        out = d.to_dict()
        out["anticanonical_checks"] = list(anticanonical_checks(alpha, _ctx_for(qf, eps, F, rng)))
        if not (d.smiley_ok and d.hom_vanishes):
            report["outputs"] = out
            raise HypothesisFailure("divisor hypotheses fail", report)
    elif args.command == "si-dim":
        alpha, sigma = qf.vector(args.alpha, "alpha"), qf.vector(args.sigma, "sigma")
        out = si_dimension(q, alpha, sigma, args.n, F, args.seed, args.samples).to_dict()
        if args.certify:
            c = si_dimension(q, alpha, sigma, args.n, FieldConfig(RATIONALS).field(), args.seed, args.samples)
            out["certified"] = c.to_dict()
            if c.dimension != out["dimension"]:
                report["discrepancies"].append({"prime_field": out["dimension"], "rationals": c.dimension})
        sampled = "rank of a sampled evaluation matrix: a lower bound that equals the dimension once the curve stabilises"
    report["provenance"]["sampling"] = sampled
    report["outputs"] = out
    return report, code


def _emit(report: dict, out: str | None) -> None:
    text = dumps(report)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except InputError as exc:
        print(exc, file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        report, code = _run(args)
    except HypothesisFailure as exc:
        if exc.report is not None:
            exc.report["error"] = str(exc)
            _emit(exc.report, args.out)
        print(f"hypothesis failure: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (
        QuiverFileError,
        QuiverError,
        WeightNotOrthogonalError,
        WeightMismatchError,
        OutsideConeError,
        EnumerationCapError,
        NotARealRootError,
        ProjectedQuiverError,
        RepresentationError,
        ValueError,
    ) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(report, args.out)
    if args.command == "verify-corpus" and not args.out:
        print("\n".join(report["outputs"]["table"]), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
