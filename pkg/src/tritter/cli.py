"""Command-line front end.

Every subcommand computes first and writes its result once, either to
``--output`` or to stdout.  Angles are radians.  Exit codes: 0 success,
2 bad flags, 3 fixture failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Sequence

import numpy as np

from . import states
from .coupler import DeviceParams, PhysicalParams, canonicalize, format_complex, format_matrix, transfer_matrix
from .fock import EPS_ZERO, Occupation
from .interference import (
    CONTOUR_TOL,
    SAMPLES_PER_PI,
    c111,
    coincidence_landscape,
    contour_analytic,
    contour_numeric,
    contour_to_csv,
    evolve,
    fmt,
    merge_contours,
)

EXIT_OK, EXIT_USAGE, EXIT_FIXTURE, EXIT_IO = 0, 2, 3, 4

CANONICAL = ("G", "theta", "psi", "phi")
PHYSICAL = ("g1re", "g1im", "g2re", "g2im", "t")


class UsageError(Exception):
    pass


def _round(x: float) -> float:
    """Round to 15 significant digits so JSON output matches the CSV precision."""
    return float(fmt(x))


def _complex_json(z: complex) -> dict:
    return {"re": _round(z.real), "im": _round(z.imag)}


def _csv(rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def _occupation(text: str) -> Occupation:
    try:
        return Occupation(int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected three comma-separated counts, got {text!r}: {exc}")


def _at_least_two(text: str) -> int:
    n = int(text)
    if n < 2:
        raise argparse.ArgumentTypeError(f"must be at least 2, got {n}")
    return n


def _positive(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return x


def _device(args) -> DeviceParams:
    canonical = [name for name in CANONICAL if getattr(args, name) is not None]
    physical = [name for name in PHYSICAL if getattr(args, name) is not None]
    if canonical and physical:
        raise UsageError("give either --G/--theta/--psi/--phi or --g1re/--g1im/--g2re/--g2im/--t, not both")
    if physical:
        get = lambda name, default: default if getattr(args, name) is None else getattr(args, name)
        g1 = complex(get("g1re", 0.0), get("g1im", 0.0))
        g2 = complex(get("g2re", 0.0), get("g2im", 0.0))
        t = get("t", 1.0)
        if t < 0:
            raise UsageError("--t must be non-negative")
        return canonicalize(PhysicalParams(g1, g2, t))
    if args.G is None or args.theta is None:
        raise UsageError("device parameters missing: need --G and --theta, or the --g1re/.../--t group")
    return DeviceParams(args.G, args.theta, args.psi or 0.0, args.phi or 0.0)


# -- subcommands -----------------------------------------------------------


def cmd_matrix(args) -> tuple[str, int]:
    V = transfer_matrix(_device(args))
    if args.format == "json":
        return _json([[_complex_json(z) for z in row] for row in V]), EXIT_OK
    if args.format == "csv":
        return _csv([[format_complex(complex(z)) for z in row] for row in V]), EXIT_OK
    return format_matrix(V) + "\n", EXIT_OK


def cmd_amplitudes(args) -> tuple[str, int]:
    state = evolve(_device(args), args.input)
    if args.format == "json":
        data = {
            "input": list(state.input),
            "amplitudes": [{"occ": list(occ), **_complex_json(a)} for occ, a in state.items()],
        }
        return _json(data), EXIT_OK
    rows = [["occ", "re", "im", "abs2"]]
    rows += [[occ.label(), fmt(a.real), fmt(a.imag), fmt(abs(a) ** 2)] for occ, a in state.items()]
    return _csv(rows), EXIT_OK


def cmd_c111(args) -> tuple[str, int]:
    d = _device(args)
    z = c111(d)
    values = {"re": z.real, "im": z.imag, "abs": abs(z), "abs2": abs(z) ** 2}
    if args.format == "json":
        params = {"G": d.G, "theta": d.theta, "psi": d.psi, "phi": d.phi}
        return _json({"params": {k: _round(v) for k, v in params.items()}, **{k: _round(v) for k, v in values.items()}}), EXIT_OK
    return _csv([list(values), [fmt(v) for v in values.values()]]), EXIT_OK


def cmd_contour(args) -> tuple[str, int]:
    if not args.G_max > args.G_min:
        raise UsageError("--G-max must exceed --G-min")
    window = (args.theta_min, args.theta_max)
    if not window[1] > window[0]:
        raise UsageError("--theta-max must exceed --theta-min")
    G_grid = np.linspace(args.G_min, args.G_max, args.G_points)
    analytic = [
        p
        for G in G_grid
        for p in contour_analytic(float(G), args.tol)
        if window[0] <= p.theta <= window[1]
    ]
    numeric = contour_numeric(G_grid, window, samples_per_pi=args.samples_per_pi)
    points = merge_contours(analytic, numeric)
    if args.format == "json":
        data = [
            {"G": _round(p.G), "theta": _round(p.theta), "c111_abs": _round(p.c111_abs), "branch": p.branch}
            for p in points
        ]
        return _json(data), EXIT_OK
    return contour_to_csv(points), EXIT_OK


def cmd_landscape(args) -> tuple[str, int]:
    land = coincidence_landscape(
        (args.G_min, args.G_max), (args.theta_min, args.theta_max), (args.G_points, args.theta_points)
    )
    if args.format == "json":
        data = {
            "G": [_round(g) for g in land.G],
            "theta": [_round(t) for t in land.theta],
            "values": [[_round(v) for v in row] for row in land.values],
        }
        return _json(data), EXIT_OK
    return land.to_csv(), EXIT_OK


def cmd_verify_tables(args) -> tuple[str, int]:
    samples = [
        (m, n, psi, phi)
        for m in range(args.m_max + 1)
        for n in range(args.n_max + 1)
        for psi, phi in states.DEFAULT_PHASES
    ]
    results = states.verify_fixtures(samples, tol=args.tol)
    status = EXIT_OK if states.all_passed(results) else EXIT_FIXTURE
    if args.format == "json":
        return states.report_to_json(results) + "\n", status
    if args.format == "csv":
        rows = [["table", "column", "m", "n", "psi", "phi", "pass", "max_dev"]]
        rows += [
            [r.table, r.column, r.params["m"], r.params["n"], fmt(r.params["psi"]), fmt(r.params["phi"]),
             str(r.passed).lower(), fmt(r.max_dev)]
            for r in results
        ]
        return _csv(rows), status
    return states.report_to_text(results), status


def cmd_classify(args) -> tuple[str, int]:
    d = _device(args)
    result = states.classify(evolve(d), args.tol)
    assignment = result.mode_assignment
    if args.format == "json":
        return _json({"kind": result.kind, "mode_assignment": list(assignment) if assignment else None}), EXIT_OK
    if args.format == "csv":
        j, k, l = assignment or ("", "", "")
        return _csv([["kind", "j", "k", "l"], [result.kind, j, k, l]]), EXIT_OK
    return str(result) + "\n", EXIT_OK


# -- parser ------------------------------------------------------------------


class _RejectDegrees(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        parser.error("--degrees is not supported: all angles are in radians")


def _add_output(p: argparse.ArgumentParser, formats: Sequence[str], default: str) -> None:
    p.add_argument("--output", help="write to this file instead of stdout")
    p.add_argument("--format", choices=formats, default=default, help=f"output format (default: {default})")
    p.add_argument("--degrees", nargs=0, action=_RejectDegrees, help=argparse.SUPPRESS)


def _add_device(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("device, canonical form (radians)")
    for name in CANONICAL:
        g.add_argument(f"--{name}", type=float)
    g = p.add_argument_group("device, physical couplings")
    for name in PHYSICAL:
        g.add_argument(f"--{name}", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tritter",
        description="Three-photon interference in a three-waveguide coupler.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help, formats, default):
        p = sub.add_parser(name, help=help, allow_abbrev=False)
        p.set_defaults(func=func)
        _add_output(p, formats, default)
        return p

    p = add("matrix", cmd_matrix, "transfer matrix of a device", ("text", "csv", "json"), "text")
    _add_device(p)

    p = add("amplitudes", cmd_amplitudes, "full output state for a Fock input", ("csv", "json"), "csv")
    _add_device(p)
    p.add_argument("--input", type=_occupation, default=Occupation((1, 1, 1)), help="input occupation, e.g. 2,0,1")

    p = add("c111", cmd_c111, "coincidence amplitude and probability", ("csv", "json"), "csv")
    _add_device(p)

    p = add("contour", cmd_contour, "trace the HOM contour over a G range", ("csv", "json"), "csv")
    p.add_argument("--G-min", type=float, default=0.0)
    p.add_argument("--G-max", type=float, default=4 * math.pi)
    p.add_argument("--G-points", type=_at_least_two, default=2000)
    p.add_argument("--theta-min", type=float, default=0.0)
    p.add_argument("--theta-max", type=float, default=math.pi)
    p.add_argument("--samples-per-pi", type=_at_least_two, default=SAMPLES_PER_PI)
    p.add_argument("--tol", type=_positive, default=CONTOUR_TOL, help="certificate on |c111|")

    p = add("landscape", cmd_landscape, "|c111|^2 on a (G, theta) grid", ("csv", "json"), "csv")
    p.add_argument("--G-min", type=float, default=0.0)
    p.add_argument("--G-max", type=float, default=4 * math.pi)
    p.add_argument("--G-points", type=_at_least_two, default=201)
    p.add_argument("--theta-min", type=float, default=-math.pi / 2)
    p.add_argument("--theta-max", type=float, default=math.pi)
    p.add_argument("--theta-points", type=_at_least_two, default=201)

    p = add("verify-tables", cmd_verify_tables, "check the coefficient tables", ("text", "csv", "json"), "text")
    p.add_argument("--m-max", type=int, default=2)
    p.add_argument("--n-max", type=int, default=2)
    p.add_argument("--tol", type=_positive, default=states.FIXTURE_TOL)

    p = add("classify", cmd_classify, "identify the special output state of a device", ("text", "csv", "json"), "text")
    _add_device(p)
    p.add_argument("--tol", type=_positive, default=EPS_ZERO)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    for name in ("m_max", "n_max"):
        if getattr(args, name, 0) < 0:
            print(f"tritter: error: --{name.replace('_', '-')} must be non-negative", file=sys.stderr)
            return EXIT_USAGE
    try:
        text, status = args.func(args)
    except UsageError as exc:
        print(f"tritter: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.output:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"tritter: error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return status


if __name__ == "__main__":
    sys.exit(main())
