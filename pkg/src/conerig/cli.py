"""Command-line surface: every diagnostic as a subcommand over a manifest.

Exit codes: 0 success with passing verdicts, 1 computed-but-failing verdict,
2 input or usage error, 3 numerical ill-conditioning.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__
from .cohomology import (
    VERDICT_RIGID,
    dimension_audit,
    h1_basis,
    rigidity_test,
)
from .errors import IllConditioned, ManifestError
from .liecore import SU2XSU2
from .manifest import load_manifest, report_text, write_report
from .radial import (
    CONVERGENT,
    DIVERGENT,
    FormProfile,
    RadialGrid,
    halving_deltas,
    l2_tube_verdict,
    pb_min_singular,
    t_b0,
    t_b0_bound,
    t_b1,
    t_b1_bound,
)
from .spectral import (
    ConePoint,
    circle_B_spectrum,
    circle_dirac_spectrum,
    cone_admissibility_verdict,
    link_B_spectrum,
)
from .words import relator_residual, split_representation, TOL_REP

EXIT_OK = 0
EXIT_FAILING = 1
EXIT_INPUT = 2
EXIT_ILL_CONDITIONED = 3


def _emit(report, out_path) -> None:
    if out_path:
        write_report(report, out_path)
    else:
        sys.stdout.write(report_text(report))


def _cmd_validate(args) -> tuple[int, dict]:
    m = load_manifest(args.manifest)
    residual = relator_residual(m.representation, m.presentation)
    ok = residual <= TOL_REP
    report = {
        "manifest": str(args.manifest),
        "group": m.group,
        "curvature": m.curvature,
        "generators": list(m.presentation.generators),
        "relator_residual": residual,
        "tolerance": TOL_REP,
        "valid": ok,
        "warnings": list(m.warnings),
    }
    return (EXIT_OK if ok else EXIT_INPUT), report


def _cohomology_payload(m) -> dict:
    if m.group == SU2XSU2:
        left, right = split_representation(m.representation)
        return {
            "factors": [
                h1_basis(left, m.presentation).dims_dict(),
                h1_basis(right, m.presentation).dims_dict(),
            ]
        }
    return h1_basis(m.representation, m.presentation).dims_dict()


def _cmd_cohomology(args) -> tuple[int, dict]:
    m = load_manifest(args.manifest)
    report = {"manifest": str(args.manifest), "cohomology": _cohomology_payload(m)}
    if args.audit:
        audit = dimension_audit(m.representation, m.presentation, m.boundary)
        report["audit"] = audit.to_dict()
        if not audit.skipped and not audit.all_hold:
            return EXIT_FAILING, report
    return EXIT_OK, report


def _cmd_rigidity(args) -> tuple[int, dict]:
    m = load_manifest(args.manifest)
    rep = rigidity_test(m.representation, m.presentation)
    report = {"manifest": str(args.manifest), "rigidity": rep.to_dict()}
    return (EXIT_OK if rep.verdict == VERDICT_RIGID else EXIT_FAILING), report


def _cmd_admissibility(args) -> tuple[int, dict]:
    m = load_manifest(args.manifest)
    verdict = cone_admissibility_verdict(
        m.singular_edges, m.singular_vertices, m.curvature, window=args.window
    )
    report = {"manifest": str(args.manifest), "admissibility": verdict.to_dict()}
    return (EXIT_OK if verdict.admissible else EXIT_FAILING), report


def _cmd_spectrum(args) -> tuple[int, dict]:
    if args.mode == "circle":
        if args.operator == "dirac":
            rep = circle_dirac_spectrum(args.alpha, args.hol_angle, args.window)
        else:
            cp = ConePoint(
                alpha=args.alpha,
                holonomy_angles=(args.hol_angle % (2.0 * math.pi),),
                trivial_rank=args.trivial_rank,
            )
            rep = circle_B_spectrum(cp, args.window)
    else:
        lams = [(v, 1) for v in (args.lam or [1.0])]
        rep = link_B_spectrum(lams, args.h0_dim, args.window)
    return (EXIT_OK if rep.gap_ok else EXIT_FAILING), {"spectrum": rep.to_dict()}


_EXPECTED_TUBE = {"ang": DIVERGENT, "shr": DIVERGENT, "tws": CONVERGENT, "len": CONVERGENT}


def _cmd_forms(args) -> tuple[int, dict]:
    fp = FormProfile(args.profile, args.kappa, args.alpha, args.length)
    deltas = halving_deltas(args.eps, args.halvings)
    verdict = l2_tube_verdict(fp, args.eps, deltas)
    expected = _EXPECTED_TUBE[args.profile]
    report = {
        "profile": args.profile,
        "kappa": args.kappa,
        "alpha": args.alpha,
        "length": args.length,
        "eps": args.eps,
        "expected": expected,
        "tube": verdict.to_dict(),
    }
    if verdict.verdict == expected:
        return EXIT_OK, report
    if verdict.verdict in (DIVERGENT, CONVERGENT):
        return EXIT_FAILING, report
    return EXIT_ILL_CONDITIONED, report


def _decay_suite(samples: int, n: int, seed: int = 7) -> dict:
    rng = np.random.default_rng(seed)
    budget = 1e-6
    min_slack0 = math.inf
    min_slack1 = math.inf
    for _ in range(samples):
        coef = rng.standard_normal(6) / np.arange(1.0, 7.0)

        def g(x, c=coef):
            x = np.asarray(x, dtype=float)
            out = np.zeros_like(x)
            for k in range(3):
                out += c[2 * k] * np.cos(2.0 * math.pi * k * x)
                out += c[2 * k + 1] * np.sin(2.0 * math.pi * (k + 1) * x)
            return out

        b0 = float(rng.uniform(-0.45, 4.0))
        b1 = float(rng.uniform(-4.0, 4.0))
        r = float(rng.uniform(0.05, 0.95))
        min_slack0 = min(min_slack0, t_b0_bound(g, b0, r, n) - abs(t_b0(g, b0, r, n)))
        min_slack1 = min(min_slack1, t_b1_bound(g, b1, r, n) - abs(t_b1(g, b1, r, n)))
    return {
        "samples": samples,
        "quadrature_budget": budget,
        "min_slack_t_b0": min_slack0,
        "min_slack_t_b1": min_slack1,
        "pass": min_slack0 >= -budget and min_slack1 >= -budget,
    }


def _cmd_oracle(args) -> tuple[int, dict]:
    grid = RadialGrid(args.grid)
    bs = args.b or [1.0, 2.0, 4.0, 8.0]
    sigmas = [pb_min_singular(b, args.kappa, grid) for b in bs]
    monotone = all(x < y for x, y in zip(sigmas, sigmas[1:])) if len(sigmas) > 1 else True
    decay = _decay_suite(args.samples, args.quad_samples)
    report = {
        "grid": args.grid,
        "kappa": args.kappa,
        "radial_lower_bound": [
            {"b": b, "sigma_min": s} for b, s in zip(bs, sigmas)
        ],
        "monotone_in_b": monotone,
        "decay_bounds": decay,
    }
    ok = monotone and decay["pass"]
    return (EXIT_OK if ok else EXIT_FAILING), report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conerig",
        description="Rigidity and cone-admissibility diagnostics for cone-3-manifold manifests.",
    )
    parser.add_argument("--version", action="version", version=f"conerig {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="schema, group membership and relator residual")
    p.add_argument("manifest")
    p.add_argument("--out", help="write the JSON report to this path")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("cohomology", help="twisted cohomology dimensions")
    p.add_argument("manifest")
    p.add_argument("--audit", action="store_true", help="also run the boundary dimension audit")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_cohomology)

    p = sub.add_parser("rigidity", help="meridian trace-rank rigidity test")
    p.add_argument("manifest")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_rigidity)

    p = sub.add_parser("admissibility", help="cone-admissibility of the singular graph")
    p.add_argument("manifest")
    p.add_argument("--window", type=float, default=3.0, help="spectral window half-width")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_admissibility)

    p = sub.add_parser("spectrum", help="cross-section spectra")
    p.add_argument("mode", choices=["circle", "link"])
    p.add_argument("--alpha", type=float, default=2.0 * math.pi, help="circle length / cone angle")
    p.add_argument("--hol-angle", dest="hol_angle", type=float, default=0.0)
    p.add_argument("--window", type=float, default=3.0)
    p.add_argument(
        "--operator",
        choices=["dirac", "b"],
        default="dirac",
        help="circle mode: plain twisted operator or the shifted cross-section operator",
    )
    p.add_argument("--trivial-rank", dest="trivial_rank", type=int, default=0)
    p.add_argument("--lambda", dest="lam", type=float, action="append",
                   help="link mode: positive Laplace eigenvalue (repeatable)")
    p.add_argument("--h0-dim", dest="h0_dim", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("forms", help="L2 integrability of deformation forms on the tube")
    p.add_argument("--profile", choices=["ang", "shr", "tws", "len"], required=True)
    p.add_argument("--kappa", type=int, choices=[-1, 0, 1], required=True)
    p.add_argument("--alpha", type=float, default=math.pi / 2.0)
    p.add_argument("--length", type=float, default=1.0)
    p.add_argument("--eps", type=float, default=0.5)
    p.add_argument("--halvings", type=int, default=10)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_forms)

    p = sub.add_parser("oracle", help="decay bounds and the radial lower-bound proxy")
    p.add_argument("--b", type=float, action="append", help="radial parameter (repeatable)")
    p.add_argument("--grid", type=int, default=256)
    p.add_argument("--kappa", type=int, choices=[-1, 0, 1], default=0)
    p.add_argument("--samples", type=int, default=25)
    p.add_argument("--quad-samples", dest="quad_samples", type=int, default=4096)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_oracle)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        code, report = args.func(args)
    except ManifestError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except IllConditioned as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ILL_CONDITIONED
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    _emit(report, getattr(args, "out", None))
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))
