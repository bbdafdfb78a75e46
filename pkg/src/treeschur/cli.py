"""Command-line front-end.

Subcommands: norm, spherical, verify, padic-distance, peller.  Every command
emits a JSON run report (schema "treeschur/1") on stdout; ``--out csv`` emits
a flat projection instead.  Exit codes: 0 success, 1 malformed input,
2 not a Schur multiplier at certified tolerance, 3 no convergence.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .disc import PolarQuadrature, coeff_hankel, difference_sequence, g_from_symbol, peller_sandwich
from .errors import DivergentDiagonals, NoConvergence, TreeSchurError, UndeclaredTail
from .padics import PMatrix2, lattice_distance
from .spherical import eigenvalue_from_z, schur_norm_in_s, schur_norm_in_z
from .symbol_io import parse_complex, parse_degree, symbol_from_spec
from .symbols import INF, counterexample_block_lower_bound, schur_norm
from .verify import SUITES, run_suite

SCHEMA = "treeschur/1"

EXIT_OK = 0
EXIT_BAD_INPUT = 1
EXIT_NOT_MULTIPLIER = 2
EXIT_NO_CONVERGENCE = 3


def _fmt(x) -> str:
    return f"{x:.17g}"


def _jsonable(value):
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, float) and value == float("inf"):
        return "inf"
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _emit(report: dict, out: str):
    report = _jsonable(report)
    if out == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    rows = report.get("rows")
    if rows:  # grid projection
        headers = list(rows[0].keys())
        print(",".join(headers))
        for row in rows:
            print(",".join(_csv_cell(row.get(h)) for h in headers))
        return
    for key, value in _flatten(report):
        print(f"{key},{_csv_cell(value)}")


def _csv_cell(value) -> str:
    if isinstance(value, float):
        return _fmt(value)
    if isinstance(value, dict) and set(value) == {"re", "im"}:
        return f"{_fmt(value['re'])}{'+' if value['im'] >= 0 else ''}{_fmt(value['im'])}j"
    return str(value)


def _flatten(obj, prefix=""):
    items = []
    if isinstance(obj, dict):
        if set(obj) == {"re", "im"}:
            return [(prefix, obj)]
        for k, v in obj.items():
            items.extend(_flatten(v, f"{prefix}.{k}" if prefix else str(k)))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            items.extend(_flatten(v, f"{prefix}[{i}]"))
    else:
        items.append((prefix, obj))
    return items


def _read_json_input(path: str):
    text = sys.stdin.read() if path == "-" else open(path, "r", encoding="utf-8").read()
    return json.loads(text)


def _report(command: str, inputs: dict, results: dict, t0: float) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "inputs": inputs,
        "results": results,
        "wall_time_s": time.perf_counter() - t0,
    }


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_norm(args) -> int:
    t0 = time.perf_counter()
    try:
        spec = _read_json_input(args.symbol)
        sym, echo = symbol_from_spec(spec)
        if args.q is not None:
            q = parse_degree(args.q)
        elif echo.get("kind") == "spherical":
            q = parse_degree(echo["q"])
        else:
            q = INF
    except (ValueError, KeyError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    inputs = {"symbol": echo, "q": "inf" if q == INF else q, "target_err": args.err}
    try:
        rep = schur_norm(sym, q, target_err=args.err)
    except DivergentDiagonals as exc:
        results = {
            "multiplier": False,
            "reason": str(exc),
        }
        if echo.get("kind") == "lacunary":
            results["block_lower_bounds"] = {
                str(n): counterexample_block_lower_bound(n) for n in (64, 128, 256, 512, 1024)
            }
        _emit(_report("norm", inputs, results, t0), args.out)
        print("not a Schur multiplier at certified tolerance", file=sys.stderr)
        return EXIT_NOT_MULTIPLIER
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except UndeclaredTail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    results = {
        "multiplier": True,
        "total": rep.total,
        "c_plus": rep.c_plus,
        "c_minus": rep.c_minus,
        "hankel_term": rep.hankel_term,
        "truncation_n": rep.truncation_n,
        "certified_error": rep.certified_error,
        "certified": rep.certified,
    }
    _emit(_report("norm", inputs, results, t0), args.out)
    return EXIT_OK


def _grid_values(spec: str):
    try:
        re_part, im_part = spec.split(",")
        re0, re1, n_re = re_part.split(":")
        im0, im1, n_im = im_part.split(":")
        res = np.linspace(float(re0), float(re1), int(n_re))
        ims = np.linspace(float(im0), float(im1), int(n_im))
    except ValueError as exc:
        raise ValueError("grid spec must look like 're0:re1:n,im0:im1:n'") from exc
    return [complex(a, b) for b in ims for a in res]


def cmd_spherical(args) -> int:
    t0 = time.perf_counter()
    try:
        q = parse_degree(args.q)
        if args.grid is not None:
            points = [("s", s) for s in _grid_values(args.grid)]
        elif args.s is not None:
            points = [("s", parse_complex(args.s))]
        elif args.z is not None:
            points = [("z", parse_complex(args.z))]
        else:
            raise ValueError("provide --s, --z, or --grid")
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    rows = []
    for mode, value in points:
        if mode == "z":
            if q == INF:
                print("error: --z needs a finite q", file=sys.stderr)
                return EXIT_BAD_INPUT
            norm = schur_norm_in_z(q, value)
            s_val = eigenvalue_from_z(q, value)
            row = {"z_re": value.real, "z_im": value.imag, "s_re": s_val.real, "s_im": s_val.imag}
        else:
            norm = schur_norm_in_s(q, value)
            row = {"s_re": value.real, "s_im": value.imag}
        row["multiplier"] = norm is not None
        row["schur_norm"] = norm if norm is not None else "not-a-multiplier"
        rows.append(row)
    inputs = {"q": "inf" if q == INF else q, "points": len(rows)}
    report = _report("spherical", inputs, {"closed_form_error": 0.0}, t0)
    report["rows"] = rows
    _emit(report, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    try:
        suite = run_suite(args.suite, seed=args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    for check in suite.checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"{status} {check.name} (max_err={check.max_err:.3e})", file=sys.stderr)
    results = {
        "passed": suite.passed,
        "checks": [
            {"name": c.name, "passed": c.passed, "max_err": c.max_err} for c in suite.checks
        ],
    }
    _emit(_report("verify", {"suite": args.suite, "seed": args.seed}, results, t0), args.out)
    return EXIT_OK if suite.passed else EXIT_NO_CONVERGENCE


def cmd_padic_distance(args) -> int:
    t0 = time.perf_counter()
    try:
        payload = _read_json_input(args.input)
        q = int(payload["q"])
        a = PMatrix2.from_rationals(q, payload["a"], prec=int(payload.get("precision", 64)))
        b = PMatrix2.from_rationals(q, payload["b"], prec=int(payload.get("precision", 64)))
        dist = lattice_distance(a, b)
    except (TreeSchurError, ValueError, KeyError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    results = {"distance": dist, "certified_error": 0.0}
    _emit(_report("padic-distance", {"q": q}, results, t0), args.out)
    return EXIT_OK


def cmd_peller(args) -> int:
    t0 = time.perf_counter()
    try:
        spec = _read_json_input(args.symbol)
        sym, echo = symbol_from_spec(spec)
        coeffs = difference_sequence(sym)
        g = g_from_symbol(coeffs)
    except UndeclaredTail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (ValueError, KeyError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        rep = peller_sandwich(coeff_hankel(coeffs, args.n), g, PolarQuadrature(), target_err=args.err)
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    results = {
        "trace_norm": rep.lhs,
        "disc_l1": rep.mid,
        "upper": rep.rhs,
        "holds": rep.holds,
        "certified_error": rep.slack,
    }
    _emit(_report("peller", {"symbol": echo, "n": args.n, "target_err": args.err}, results, t0), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treeschur",
        description="Schur norms of radial kernels on homogeneous trees",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_norm = sub.add_parser("norm", help="Schur norm of a radial symbol via the Hankel pipeline")
    p_norm.add_argument("symbol", help="path to a symbol JSON spec, or '-' for stdin")
    p_norm.add_argument("--q", default=None, help="tree degree parameter: integer >= 2 or 'inf'")
    p_norm.add_argument("--err", type=float, default=1e-8, help="target certified error")
    p_norm.add_argument("--out", choices=("json", "csv"), default="json")
    p_norm.set_defaults(func=cmd_norm)

    p_sph = sub.add_parser("spherical", help="closed-form spherical norms (single point or grid)")
    p_sph.add_argument("--q", required=True, help="integer >= 2 or 'inf'")
    p_sph.add_argument("--s", default=None, help="eigenvalue, e.g. '0.4j' or '0.3+0.2j'")
    p_sph.add_argument("--z", default=None, help="exponent parameter (finite q only)")
    p_sph.add_argument("--grid", default=None, help="s-grid 're0:re1:n,im0:im1:n'")
    p_sph.add_argument("--out", choices=("json", "csv"), default="json")
    p_sph.set_defaults(func=cmd_spherical)

    p_ver = sub.add_parser("verify", help="run a cross-module verification suite")
    p_ver.add_argument("suite", help=f"one of {', '.join(SUITES)} (unknown names exit 1)")
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--out", choices=("json", "csv"), default="json")
    p_ver.set_defaults(func=cmd_verify)

    p_pad = sub.add_parser("padic-distance", help="tree distance of two lattice classes")
    p_pad.add_argument("input", help="JSON {'q': prime, 'a': [[...]], 'b': [[...]]} (entries 'n/d'), or '-'")
    p_pad.add_argument("--out", choices=("json", "csv"), default="json")
    p_pad.set_defaults(func=cmd_padic_distance)

    p_pel = sub.add_parser("peller", help="disc-integral trace-norm sandwich for a symbol")
    p_pel.add_argument("symbol", help="path to a symbol JSON spec, or '-' for stdin")
    p_pel.add_argument("--n", type=int, default=96, help="Hankel truncation for the trace norm")
    p_pel.add_argument("--err", type=float, default=1e-6, help="disc-integral error target")
    p_pel.add_argument("--out", choices=("json", "csv"), default="json")
    p_pel.set_defaults(func=cmd_peller)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
