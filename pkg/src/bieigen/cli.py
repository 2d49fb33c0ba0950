"""Command-line interface.

    bieigen classify MANIFEST [--samples N] [--tol T] [--margin F] [--format F]
    bieigen verify   MANIFEST --theorem {takahashi,t1,t2,t3,t4} [...]
    bieigen residual MANIFEST --equation {eq102,mf,me1} [...]
    bieigen bienergy MANIFEST [--grid N]
    bieigen catalog  list | export NAME [--out PATH]

MANIFEST is a manifest JSON path or the name of a built-in catalog entry.
The default tolerance is 1e-8, overridable per run with --tol or globally
with the BIEIGEN_TOL environment variable.

Exit codes: 0 success or PASS, 1 verdict FAIL, 2 manifest or usage errors,
3 evaluation errors (degenerate metric, function domain, constraint
violation; the offending point is reported), 4 NOT_APPLICABLE with the unmet
precondition named, 5 residual equation preconditions not satisfied.
"""

import argparse
import os
import sys

import numpy as np

from . import report as rpt
from .analysis import (AnalysisError, analyze_samples,
                       constant_density_residual)
from .catalog import catalog_get, catalog_list
from .charts import GeometryError
from .classify import (DEFAULT_TOL_ABS, NOT_APPLICABLE, PASS, THEOREMS,
                       fit_constants, verdicts, verify)
from .exprs import ParseError, UnboundVariableError
from .jets import JetDomainError
from .manifest import ManifestError, build_map, load_manifest

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_MANIFEST = 2
EXIT_EVAL = 3
EXIT_NOT_APPLICABLE = 4
EXIT_PRECONDITION = 5

TOL_ENV_VAR = "BIEIGEN_TOL"

EQUATIONS = ("eq102", "mf", "me1")


def _default_tol():
    raw = os.environ.get(TOL_ENV_VAR)
    if raw is None:
        return DEFAULT_TOL_ABS
    try:
        return float(raw)
    except ValueError:
        raise ManifestError(f"{TOL_ENV_VAR} must be a number, got {raw!r}")


def _resolve_manifest(spec):
    """A path to a manifest file, or the name of a catalog entry."""
    if os.path.exists(spec):
        return load_manifest(spec)
    try:
        return catalog_get(spec).manifest
    except KeyError:
        raise ManifestError(
            f"'{spec}' is neither a manifest file nor a catalog entry name")


def _classified(args):
    doc = _resolve_manifest(args.manifest)
    name, smap = build_map(doc)
    tol = args.tol if args.tol is not None else _default_tol()
    points = smap.chart.sample_points(args.samples, margin=args.margin)
    samples = analyze_samples(smap, points)
    fitted = fit_constants(samples)
    return name, smap, verdicts(smap, samples, fitted, tol, tol)


def cmd_classify(args):
    name, smap, report = _classified(args)
    if args.format == "json":
        doc = rpt.classification_dict(name, report, {"margin": args.margin})
        sys.stdout.write(rpt.to_json(doc))
    elif args.format == "csv":
        sys.stdout.write(rpt.classification_csv(name, report))
    else:
        sys.stdout.write(rpt.classification_text(name, report))
    return EXIT_OK


def cmd_verify(args):
    name, smap, report = _classified(args)
    verdict = verify(report, args.theorem)
    print(f"{name} {verdict}")
    for key in sorted(verdict.details):
        value = verdict.details[key]
        shown = "n/a" if value is None else (
            rpt.format_float(value) if isinstance(value, float) else value)
        print(f"  {key}: {shown}")
    if verdict.status == PASS:
        return EXIT_OK
    if verdict.status == NOT_APPLICABLE:
        return EXIT_NOT_APPLICABLE
    return EXIT_FAIL


def cmd_residual(args):
    doc = _resolve_manifest(args.manifest)
    name, smap = build_map(doc)
    tol = args.tol if args.tol is not None else _default_tol()
    points = smap.chart.sample_points(args.samples, margin=args.margin)
    samples = analyze_samples(smap, points)
    report = verdicts(smap, samples, fit_constants(samples), tol, tol)

    if not smap.unit_sphere:
        print(f"error: residual equations require a unit-sphere target "
              f"({name} targets {smap.target})", file=sys.stderr)
        return EXIT_PRECONDITION

    summary = {}
    if args.equation == "eq102":
        if not report.is_isometric:
            print(f"error: eq102 requires an isometric map; max Gram defect "
                  f"{report.max_gram_defect:.3e}", file=sys.stderr)
            return EXIT_PRECONDITION
        vectors = [pa.residual_submanifold for pa in samples]
    elif args.equation == "mf":
        vectors = [pa.residual_full for pa in samples]
    else:
        if not report.is_constant_density:
            print(f"error: me1 requires constant energy density; spread "
                  f"{report.spreads['density']['abs']:.3e} around mean "
                  f"{report.constants.c_hat:.6g}", file=sys.stderr)
            return EXIT_PRECONDITION
        c = report.constants.c_hat
        vectors = [constant_density_residual(pa, c) for pa in samples]
        summary["c"] = c

    rows = [(pa.point, float(np.max(np.abs(vec))))
            for pa, vec in zip(samples, vectors)]
    norms = np.array([r[1] for r in rows])
    summary["max"] = float(np.max(norms))
    summary["rms"] = float(np.sqrt(np.mean(norms * norms)))

    if args.format == "json":
        sys.stdout.write(rpt.to_json(
            rpt.residual_table_json(name, args.equation, rows, summary)))
    elif args.format == "csv":
        sys.stdout.write(rpt.residual_table_csv(rows, smap.dim))
    else:
        sys.stdout.write(rpt.residual_table_text(name, args.equation, rows, summary))
    return EXIT_OK


def cmd_bienergy(args):
    from .analysis import bienergy_quadrature
    doc = _resolve_manifest(args.manifest)
    name, smap = build_map(doc)
    value = bienergy_quadrature(smap, args.grid)
    print(f"chart-domain bienergy of {name} (grid {args.grid}): "
          f"{rpt.format_float(value)}")
    return EXIT_OK


def cmd_catalog(args):
    if args.action == "list":
        for entry in catalog_list():
            print(f"{entry.name}: {entry.note}")
        return EXIT_OK
    try:
        entry = catalog_get(args.name)
    except KeyError as err:
        print(f"error: {err.args[0]}", file=sys.stderr)
        return EXIT_MANIFEST
    path = args.out or f"{entry.name}.json"
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(rpt.to_json(entry.manifest))
    print(f"wrote {path}")
    return EXIT_OK


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _add_sampling_flags(sub):
    sub.add_argument("--samples", type=_positive_int, default=64,
                     help="number of interior sample points (default 64)")
    sub.add_argument("--tol", type=float, default=None,
                     help="absolute and relative verdict tolerance "
                          f"(default 1e-8, or ${TOL_ENV_VAR})")
    sub.add_argument("--margin", type=float, default=1e-3,
                     help="interior inset as a fraction of each non-periodic "
                          "interval (default 1e-3)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bieigen",
        description="Classify parametric sphere maps and check their "
                    "Laplace and bi-Laplace structure numerically.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("classify", help="full classification report")
    p.add_argument("manifest", help="manifest JSON path or catalog entry name")
    _add_sampling_flags(p)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_classify)

    p = subs.add_parser("verify", help="run one theorem check")
    p.add_argument("manifest")
    p.add_argument("--theorem", choices=tuple(THEOREMS), required=True)
    _add_sampling_flags(p)
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("residual", help="per-point biharmonicity residuals")
    p.add_argument("manifest")
    p.add_argument("--equation", choices=EQUATIONS, required=True,
                   help="eq102: isometric submanifold form; mf: general "
                        "sphere-map form; me1: constant-density form")
    _add_sampling_flags(p)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_residual)

    p = subs.add_parser("bienergy", help="chart-domain bienergy quadrature")
    p.add_argument("manifest")
    p.add_argument("--grid", type=_positive_int, default=128,
                   help="midpoint cells per axis (default 128)")
    p.set_defaults(func=cmd_bienergy)

    p = subs.add_parser("catalog", help="list or export built-in fixtures")
    catalog_subs = p.add_subparsers(dest="action", required=True)
    pl = catalog_subs.add_parser("list")
    pl.set_defaults(func=cmd_catalog, action="list")
    pe = catalog_subs.add_parser("export")
    pe.add_argument("name")
    pe.add_argument("--out", default=None, help="output path (default NAME.json)")
    pe.set_defaults(func=cmd_catalog, action="export")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ManifestError, ParseError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_MANIFEST
    except (GeometryError, JetDomainError, UnboundVariableError) as err:
        print(f"evaluation error: {err}", file=sys.stderr)
        return EXIT_EVAL
    except AnalysisError as err:
        where = f" at point {err.point}" if err.point else ""
        print(f"evaluation error{where}: {err}", file=sys.stderr)
        return EXIT_EVAL


if __name__ == "__main__":
    sys.exit(main())
