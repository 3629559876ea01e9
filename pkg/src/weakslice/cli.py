"""Command-line front end.

Exit codes: 0 pass, 1 tolerance or verification failure, 2 structural
error (bad input, singular two-point system).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .algebra import (
    Element,
    is_imaginary_unit,
    is_slice_unit,
    left_mul_matrix,
    sample_imaginary_unit,
    slice_unit_residual,
)
from .fileio import (
    algebra_to_json,
    dumps,
    load_algebra,
    load_path,
    load_polynomial,
    load_units,
    parse_units,
)
from .linalg import standard_complex_structure
from .repform import (
    SingularDifferenceError,
    build_zeta,
    kernel_membership,
    one_i,
    stem_solve,
    two_point_inverse,
)
from .sliceregular import component_evaluator, cr_residual, make_grid, slice_evaluator, split

EXIT_OK, EXIT_FAIL, EXIT_STRUCT = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(report, out: Optional[str]):
    text = dumps(report)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _target(spec: str, A) -> Element:
    try:
        data = json.loads(spec)
    except json.JSONDecodeError:
        with open(spec) as fh:
            data = json.load(fh)
    units = parse_units(data, A)
    if len(units) != 1:
        raise UsageError("--target must name exactly one unit")
    return units[0]


def cmd_table(args) -> int:
    A = load_algebra(args.algebra)
    if args.action == "gen":
        _emit(algebra_to_json(A), args.out)
        return EXIT_OK
    if not args.reference:
        raise UsageError("table check needs --reference")
    ref = load_algebra(args.reference)
    if ref.dim != A.dim:
        _emit({"match": False, "reason": f"dimension {A.dim} vs reference {ref.dim}", "diffs": []}, args.out)
        return EXIT_FAIL
    diffs = []
    for i in range(A.dim):
        for j in range(A.dim):
            if not np.array_equal(A.table[i, j], ref.table[i, j]):
                diffs.append({"i": i, "j": j, "expected": ref.table[i, j], "got": A.table[i, j]})
    for d in diffs:
        print(f"diff e{d['i']}*e{d['j']}: expected {_fmt(d['expected'])} got {_fmt(d['got'])}", file=sys.stderr)
    _emit({"match": not diffs, "entries": A.dim * A.dim, "diffs": diffs}, args.out)
    return EXIT_OK if not diffs else EXIT_FAIL


def _fmt(v) -> str:
    terms = [f"{c:+g}e{k}" for k, c in enumerate(v) if c != 0]
    return "".join(terms) or "0"


def cmd_units(args) -> int:
    A = load_algebra(args.algebra)
    if args.count < 0:
        raise UsageError("--count must be >= 0")
    rng = np.random.default_rng(args.seed)
    found = []
    for _ in range(args.count):
        u = sample_imaginary_unit(A, rng)
        if u is None:
            continue
        slice_ok = is_slice_unit(u, args.tol)
        found.append({
            "coeffs": u.coeffs,
            "class": "slice_unit" if slice_ok else "imaginary_only",
            "imaginary": is_imaginary_unit(u, args.tol),
            "slice_residual": slice_unit_residual(u),
        })
    _emit(found, args.out)
    return EXIT_OK


def _max_rel(errs, ref) -> float:
    return max((float(np.linalg.norm(e) / max(1.0, np.linalg.norm(r))) for e, r in zip(errs, ref)), default=0.0)


def cmd_reconstruct(args) -> int:
    A = load_algebra(args.algebra)
    J = load_units(args.units, A)
    I = _target(args.target, A)
    path = load_path(args.path)
    P = load_polynomial(args.poly, A)
    if P.d != path.d:
        raise UsageError(f"polynomial has d={P.d}, path has d={path.d}")
    samples = [[slice_evaluator(P, Jl)(x, y) for x, y in zip(path.x, path.y)] for Jl in J]
    direct = [slice_evaluator(P, I)(x, y) for x, y in zip(path.x, path.y)]
    LI = left_mul_matrix(I)
    report = {"I": I.coeffs, "J": [u.coeffs for u in J], "mode": args.mode, "samples": len(path)}
    if args.mode == "two-point":
        if len(J) != 2:
            raise UsageError("two-point mode needs exactly two units")
        try:
            inv = two_point_inverse(J[0], J[1])
        except SingularDifferenceError as exc:
            report["error"] = f"SINGULAR_DIFFERENCE: {exc}"
            _emit(report, args.out)
            print(report["error"], file=sys.stderr)
            return EXIT_STRUCT
        op = one_i(LI) @ inv
        report["kernel_dim"] = 0
        report["in_kernel_set"] = True
    else:
        sys_ = build_zeta(J)
        op = one_i(LI) @ sys_.Zplus
        report["kernel_dim"] = sys_.kernel_dim
        report["in_kernel_set"] = kernel_membership(I, sys_)
    values = [op @ np.concatenate(v) for v in zip(*samples)]
    err = _max_rel([v - d for v, d in zip(values, direct)], direct)
    report["residuals"] = {"max_relative_error": err}
    report["values"] = values
    report["passed"] = err <= args.tol
    _emit(report, args.out)
    return EXIT_OK if report["passed"] else EXIT_FAIL


def _grid(args, d):
    if args.grid_size < 1:
        raise UsageError("empty grid (--grid-size must be >= 1)")
    return make_grid(d, args.grid_size, args.seed)


def cmd_stem(args) -> int:
    """Stems on a seeded grid: consistency residual and holomorphy of the stem."""
    A = load_algebra(args.algebra)
    J = load_units(args.units, A)
    P = load_polynomial(args.poly, A)
    grid = _grid(args, P.d)
    sys_ = build_zeta(J)
    evals = [slice_evaluator(P, Jl) for Jl in J]

    def stem(x, y):
        return stem_solve([f(x, y) for f in evals], sys_).stacked

    worst = max(stem_solve([f(x, y) for f in evals], sys_).residual for x, y in grid)
    # stem pairs (a, b) are holomorphic iff 1/2 (d/dx + sigma d/dy) F = 0
    n = A.dim // 2
    cr = cr_residual(stem, np.kron(np.array([[0.0, -1.0], [1.0, 0.0]]), np.eye(2 * n)), grid, args.h, args.cr_tol)
    passed = worst <= args.tol and cr.passed
    _emit({
        "J": [u.coeffs for u in J],
        "kernel_dim": sys_.kernel_dim,
        "residuals": {"max_consistency": worst, "stem_cr": cr.as_dict()},
        "passed": passed,
    }, args.out)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_holo(args) -> int:
    A = load_algebra(args.algebra)
    units = load_units(args.units, A)
    P = load_polynomial(args.poly, A)
    grid = _grid(args, P.d)
    per_unit = []
    for u in units:
        rep = cr_residual(slice_evaluator(P, u), u, grid, args.h, args.cr_tol)
        per_unit.append({"unit": u.coeffs, **rep.as_dict()})
    passed = all(r["passed"] for r in per_unit)
    _emit({"slices": per_unit, "passed": passed}, args.out)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_split(args) -> int:
    A = load_algebra(args.algebra)
    units = load_units(args.units, A)
    P = load_polynomial(args.poly, A)
    grid = _grid(args, P.d)
    J2 = standard_complex_structure(1)
    per_unit = []
    for u in units:
        f = slice_evaluator(P, u)
        dec = split(f, u, grid)
        comps = [cr_residual(component_evaluator(f, dec.basis, l), J2, grid, args.h, args.cr_tol).as_dict()
                 for l in range(A.dim // 2)]
        ok = dec.recomposition_residual <= 1e-12 and all(c["passed"] for c in comps)
        per_unit.append({
            "unit": u.coeffs,
            "recomposition_residual": dec.recomposition_residual,
            "components": comps,
            "passed": ok,
        })
    passed = all(r["passed"] for r in per_unit)
    _emit({"slices": per_unit, "passed": passed}, args.out)
    return EXIT_OK if passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weakslice", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", default="quaternion", help="builtin id or algebra JSON file")
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="report file (default: stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="generate or check a multiplication table")
    p.add_argument("action", choices=["gen", "check"])
    p.add_argument("--reference", help="algebra JSON to compare against")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("units", parents=[common], help="sample and classify imaginary units")
    p.add_argument("action", choices=["scan"])
    p.add_argument("--count", type=int, default=100)
    p.set_defaults(func=cmd_units)

    p = sub.add_parser("reconstruct", parents=[common], help="path-representation reconstruction")
    p.add_argument("--units", required=True)
    p.add_argument("--target", required=True, help="JSON coefficient list or file")
    p.add_argument("--path", required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--mode", choices=["pinv", "two-point"], default="pinv")
    p.set_defaults(func=cmd_reconstruct)

    for name, func, text in (
        ("stem", cmd_stem, "stem consistency and holomorphy"),
        ("holo", cmd_holo, "Cauchy-Riemann residuals per slice"),
        ("split", cmd_split, "splitting into holomorphic components"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--units", required=True)
        p.add_argument("--poly", required=True)
        p.add_argument("--grid-size", type=int, default=5)
        p.add_argument("--h", type=float, default=1e-5)
        p.add_argument("--cr-tol", type=float, default=1e-6)
        p.set_defaults(func=func)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tol <= 0:
        parser.error("--tol must be positive")
    try:
        return args.func(args)
    except (UsageError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"weakslice {args.command}: {exc}", file=sys.stderr)
        return EXIT_STRUCT


if __name__ == "__main__":
    sys.exit(main())
