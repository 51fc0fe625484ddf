"""Command line: generate, verify, dualize and report.

Exit codes: 0 verdict pass, 1 verdict fail, 2 usage or schema error.
"""
import argparse
import json
import os
import sys

from . import faults as faults_mod
from .errors import SchemaError, WQGError
from .groupoids import (cyclic_group_table, gen_group_algebra, gen_groupoid_convolution,
                        gen_groupoid_function, pair_groupoid, source_weighted_sum,
                        symmetric_group_table, weighted_trace)
from .io import parse_presentation, parse_report, presentation_to_dict
from .numkernel import DEFAULT_TOL, Tolerance
from .pipeline import STAGES, run_pipeline
from .report import PASS

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FAULTS = {f.name: f for f in faults_mod.all_faults()}


class UsageError(Exception):
    pass


def _tolerance(arg):
    raw = arg if arg is not None else os.environ.get("WQG_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        value = float(raw)
    except ValueError:
        raise UsageError(f"tolerance must be a number, got {raw!r}")
    if not value > 0:
        raise UsageError("tolerance must be positive")
    return Tolerance(abs_residual=value)


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as err:
        raise UsageError(str(err))


def _write(text, path):
    if path is None or path == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _load_presentation(text):
    """A presentation document, or a JSON report that carries its input presentation."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError(f"invalid JSON: {err}")
    if isinstance(doc, dict) and "checks" in doc and "input" in doc:
        doc = doc["input"]
    return parse_presentation(doc)


def _weights(raw):
    try:
        return [float(w) for w in raw.split(",")]
    except ValueError:
        raise UsageError(f"weights must be comma separated numbers, got {raw!r}")


def cmd_generate(args):
    phi = None
    if args.family == "group":
        if args.symmetric:
            table, labels = symmetric_group_table(args.symmetric)
            P, D = gen_group_algebra(table, labels, f"C[S{args.symmetric}]")
        else:
            n = args.cyclic or 2
            P, D = gen_group_algebra(cyclic_group_table(n), [f"g{i}" for i in range(n)], f"C[Z{n}]")
    elif args.family == "pair-groupoid":
        G = pair_groupoid(args.points)
        if args.repr == "convolution":
            P, D = gen_groupoid_convolution(G, f"conv(pair{args.points})")
            weight_fn = weighted_trace
        else:
            P, D = gen_groupoid_function(G, f"fun(pair{args.points})")
            weight_fn = source_weighted_sum
        if args.weights:
            w = _weights(args.weights)
            if len(w) != args.points:
                raise UsageError(f"expected {args.points} weights, got {len(w)}")
            phi = weight_fn(G, w)
    else:
        f = FAULTS[args.kind]
        P, D, phi = f.algebra, f.comult, f.phi
        _write(json.dumps(presentation_to_dict(P, D, phi, f.psi), indent=1), args.output)
        return EXIT_PASS
    _write(json.dumps(presentation_to_dict(P, D, phi), indent=1), args.output)
    return EXIT_PASS


def cmd_verify(args):
    tol = _tolerance(args.tol)
    text = _read(args.file)
    P, D, phi, psi = _load_presentation(text)
    report = run_pipeline(P, D, phi, psi, tol, args.stage).report
    if args.json:
        doc = report.to_dict()
        doc["input"] = presentation_to_dict(P, D, phi, psi)
        _write(json.dumps(doc, indent=2), None)
    else:
        _write(report.render_text(), None)
    return EXIT_PASS if report.verdict == PASS else EXIT_FAIL


def cmd_dualize(args):
    from .duality import dualize
    tol = _tolerance(args.tol)
    P, D, phi, psi = _load_presentation(_read(args.file))
    res = run_pipeline(P, D, phi, psi, tol, "integrals")
    if res.report.verdict != PASS or res.integrals is None:
        fail = res.report.first_failure
        sys.stderr.write(f"cannot dualize: input fails {fail.name if fail else 'verification'}\n")
        return EXIT_FAIL
    dual = dualize(P, D, res.bundle, res.integrals, tol)
    doc = presentation_to_dict(dual.algebra, dual.comult, dual.phi_hat, dual.psi_hat)
    _write(json.dumps(doc, indent=1), args.output)
    return EXIT_PASS


def cmd_report(args):
    report = parse_report(_read(args.file))
    _write(report.to_json() if args.json else report.render_text(), None)
    return EXIT_PASS if report.verdict == PASS else EXIT_FAIL


def build_parser():
    p = argparse.ArgumentParser(prog="wqg", description="Verify finite weak Hopf *-algebras given by structure constants.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a bundled example as a presentation document")
    g.add_argument("family", choices=["group", "pair-groupoid", "fault"])
    g.add_argument("--cyclic", type=int, help="order N of the cyclic group Z_N")
    g.add_argument("--symmetric", type=int, help="degree k of the symmetric group S_k")
    g.add_argument("--points", type=int, default=2)
    g.add_argument("--repr", choices=["function", "convolution"], default="function")
    g.add_argument("--weights", help="comma separated unit weights for the integral")
    g.add_argument("--kind", choices=sorted(FAULTS), default="associativity")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="run the pipeline and print the report")
    v.add_argument("file", help="presentation document, or - for stdin")
    v.add_argument("--tol", help="absolute residual tolerance (default from WQG_TOL or 1e-9)")
    mode = v.add_mutually_exclusive_group()
    mode.add_argument("--json", action="store_true")
    mode.add_argument("--text", action="store_true")
    v.add_argument("--stage", choices=STAGES, default=STAGES[-1], help="last stage to run")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("dualize", help="write the dual presentation")
    d.add_argument("file", help="presentation document or verify --json output, or - for stdin")
    d.add_argument("--tol")
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_dualize)

    r = sub.add_parser("report", help="re-render a stored JSON report")
    r.add_argument("file")
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_report)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        return args.func(args)
    except (UsageError, SchemaError) as err:
        sys.stderr.write(f"error: {err}\n")
        return EXIT_USAGE
    except WQGError as err:
        sys.stderr.write(f"error: {err}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
