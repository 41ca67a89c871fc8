"""Command-line surface: classify, example, sweep, selftest.

Exit codes are a stable contract: 0 success, 1 a property or example report
failed, 2 invalid input. Sweep output is CSV with a frozen column set; the
other commands emit JSON (classify always; example with --json) or plain text.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .conditions import classify, weak_direct
from .descriptors import (
    matrix_from_json,
    matrix_to_json,
    parse_descriptor,
    resolve,
    with_parameter,
)
from .encoding import encode
from .examples import EXAMPLE_IDS, PASS_TOL, _deviation, run_example
from .metrology import incompatibility, qcr_scalar, qfim
from .operator_core import ValidationError
from .selftest import run_selftest
from .sld import sld_rotated

SWEEP_COLUMNS = [
    "parameter",
    "value",
    "W_norm",
    "P_norm",
    "O_norm",
    "S_norm",
    "WC",
    "PC",
    "OC",
    "SC",
    "E",
]


def _read_text(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as err:
        raise ValidationError(f"cannot read {path}: {err.strerror}") from err


def _classification_payload(rho, hs, theta, weight, zero_tol, rank_tol):
    report = classify(rho, hs, theta=theta, tol=zero_tol)
    pt = encode(hs, theta)
    slds = sld_rotated(rho.spectrum, pt)
    f = qfim(rho, slds)
    w = weak_direct(rho, slds)
    notices = []
    try:
        e_value = incompatibility(f, w).e_value
    except ValidationError as err:
        e_value = None
        notices.append(str(err))
    qcr = None
    if e_value is not None:
        qcr = qcr_scalar(f, weight)
    payload = {
        "dim": report.dim,
        "rank": report.rank,
        "theta": [float(v) for v in report.theta],
        "norms": report.norms,
        "flags": report.flags,
        "hierarchy_consistent": report.hierarchy_consistent,
        "converse_failures": report.converse_failures,
        "scale": report.scale,
        "tolerances": {"zero_tol": zero_tol, "rank_tol": rank_tol},
        "qfim": matrix_to_json(f.matrix),
        "qfim_rank": f.rank,
        "qfim_condition_number": (
            f.condition_number if np.isfinite(f.condition_number) else None
        ),
        "E": e_value,
        "qcr": qcr,
        "notices": notices,
    }
    return payload, report


def cmd_classify(args):
    desc = parse_descriptor(_read_text(args.file))
    if args.rank_tol is not None:
        if args.rank_tol <= 0:
            raise ValidationError("--rank-tol must be positive")
        desc.rank_tol = args.rank_tol
    if args.zero_tol is not None:
        if args.zero_tol <= 0:
            raise ValidationError("--zero-tol must be positive")
        desc.zero_tol = args.zero_tol
    rho, hs, theta, weight = resolve(desc)
    if args.theta is not None:
        theta = np.asarray(args.theta, dtype=float)
        if theta.size != hs.m:
            raise ValidationError(
                f"--theta expects {hs.m} values, got {theta.size}"
            )
    if args.weight is not None:
        weight = matrix_from_json(
            json.loads(_read_text(args.weight)), "weight_matrix"
        )
        if np.max(np.abs(weight.imag)) > 1e-12:
            raise ValidationError("weight_matrix: must be real")
        weight = weight.real
    payload, _ = _classification_payload(
        rho, hs, theta, weight, desc.zero_tol, desc.rank_tol
    )
    if args.json:
        print(json.dumps(payload, separators=(",", ":")))
    else:
        print(json.dumps(payload, indent=2))
    return 0


def cmd_example(args):
    ids = EXAMPLE_IDS if args.id == "all" else [args.id]
    reports = [run_example(ex_id) for ex_id in ids]
    failed = [r for r in reports if not r.passed]
    if args.json:
        print(json.dumps([r.as_dict() for r in reports], indent=2))
    else:
        print(f"{'id':<6s} {'status':<7s} {'max_abs_error':>13s}")
        for r in reports:
            status = "pass" if r.passed else "FAIL"
            print(f"{r.id:<6s} {status:<7s} {r.max_abs_error:>13.3e}")
            if not r.passed:
                for key in sorted(r.expected):
                    dev = _deviation(r.expected[key], r.computed[key])
                    if dev > PASS_TOL:
                        print(f"       {key}: deviation {dev:.3e}")
        print(
            f"{len(reports)} reports, {len(reports) - len(failed)} passed, "
            f"{len(failed)} failed"
        )
    return 1 if failed else 0


def _parse_grid(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise ValidationError(
            f"--grid expects a:b:n (three colon-separated fields), got {text!r}"
        )
    try:
        a, b = float(parts[0]), float(parts[1])
        n = int(parts[2])
    except ValueError as err:
        raise ValidationError(f"--grid {text!r}: {err}") from err
    if n < 1:
        raise ValidationError("--grid needs n >= 1 points")
    return np.linspace(a, b, n)


def _sweep_point(desc, name, value):
    point = with_parameter(desc, name, value)
    try:
        rho, hs, theta, _ = resolve(point)
    except ValidationError as err:
        raise ValidationError(f"grid value {name}={value:g}: {err}") from err
    report = classify(rho, hs, theta=theta, tol=point.zero_tol)
    pt = encode(hs, theta)
    slds = sld_rotated(rho.spectrum, pt)
    f = qfim(rho, slds)
    try:
        e_text = f"{incompatibility(f, weak_direct(rho, slds)).e_value:.12g}"
    except ValidationError:
        e_text = "singular"
    return [
        name,
        f"{value:.12g}",
        f"{report.norms['W']:.12g}",
        f"{report.norms['P']:.12g}",
        f"{report.norms['O']:.12g}",
        f"{report.norms['S']:.12g}",
        str(int(report.flags["WC"])),
        str(int(report.flags["PC"])),
        str(int(report.flags["OC"])),
        str(int(report.flags["SC"])),
        e_text,
    ]


def cmd_sweep(args):
    desc = parse_descriptor(_read_text(args.file))
    grid = _parse_grid(args.grid)
    jobs = args.jobs
    if jobs is None:
        jobs = int(os.environ.get("METROCOMMUTE_JOBS", "1"))
    if jobs < 1:
        raise ValidationError("--jobs must be >= 1")
    # validate the parameter name up front for a clean error before any work
    with_parameter(desc, args.param, float(grid[0]))
    rows = []
    if jobs == 1:
        rows = [_sweep_point(desc, args.param, float(v)) for v in grid]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(
                pool.map(lambda v: _sweep_point(desc, args.param, float(v)), grid)
            )
    print(",".join(SWEEP_COLUMNS))
    for row in rows:
        print(",".join(row))
    return 0


def cmd_selftest(args):
    if args.draws < 1:
        raise ValidationError("--draws must be >= 1")
    text, violations = run_selftest(args.seed, args.draws)
    sys.stdout.write(text)
    return 1 if violations else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="metrocommute",
        description=(
            "Commutativity conditions, quantum Fisher information, and "
            "saturation classification for unitary parameter encodings."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser(
        "classify", help="classify the state/Hamiltonian problem in a descriptor file"
    )
    p_classify.add_argument("file", help="problem descriptor JSON file")
    p_classify.add_argument(
        "--theta", type=float, nargs="+", default=None, help="encoding point override"
    )
    p_classify.add_argument(
        "--weight", default=None, help="JSON file with a weight matrix"
    )
    p_classify.add_argument(
        "--json", action="store_true", help="compact single-line JSON"
    )
    p_classify.add_argument(
        "--rank-tol", type=float, default=None, help="support cutoff override"
    )
    p_classify.add_argument(
        "--zero-tol", type=float, default=None, help="condition zero-test override"
    )
    p_classify.set_defaults(func=cmd_classify)

    p_example = sub.add_parser("example", help="run worked-example reports")
    p_example.add_argument("id", help='example id (EX1..EX10, OBS...) or "all"')
    p_example.add_argument("--json", action="store_true", help="JSON output")
    p_example.set_defaults(func=cmd_example)

    p_sweep = sub.add_parser(
        "sweep", help="sweep one family parameter of a descriptor, CSV output"
    )
    p_sweep.add_argument("file", help="problem descriptor JSON file")
    p_sweep.add_argument("--param", required=True, help="family parameter name")
    p_sweep.add_argument(
        "--grid", required=True, help="a:b:n linear grid specification"
    )
    p_sweep.add_argument(
        "--jobs",
        type=int,
        default=None,
        help="parallel evaluations (default: METROCOMMUTE_JOBS or 1)",
    )
    p_sweep.set_defaults(func=cmd_sweep)

    p_selftest = sub.add_parser(
        "selftest", help="run the randomized property suites"
    )
    p_selftest.add_argument("--seed", type=int, default=42)
    p_selftest.add_argument("--draws", type=int, default=100)
    p_selftest.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as err:
        print(
            f"error: malformed JSON: {err.msg} (line {err.lineno}, column {err.colno})",
            file=sys.stderr,
        )
        return 2


if __name__ == "__main__":
    sys.exit(main())
