"""Command-line front end.

Subcommands: regularize (plane / sphere / hyperbolic, with optional
iteration trace), eigen (circulant spectrum), napoleon (one-shot
constructions), fit (small-circle fit), analyze (angle-transform
classification) and experiment table1 (seeded convergence statistics).
Inputs are JSON files; summaries go to stdout as JSON, larger outputs to
files via --trace / --out.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import analyzer, circulant, emit, euclid, experiment, hyperbolic, spherical

_TWO_PI = 2.0 * math.pi


def _load_json(path):
    with Path(path).open("r", encoding="utf-8") as handle:
        return json.load(handle)


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2))


def _plane_triangle(data) -> euclid.PlaneTriangle:
    if not isinstance(data, list) or len(data) != 3:
        raise ValueError("plane input must be a JSON array of three [re, im] pairs")
    return euclid.PlaneTriangle(tuple(complex(float(p[0]), float(p[1])) for p in data))


def _sphere_points(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError("sphere input must be a JSON array of [x, y, z] triples")
    return arr


def _complex_pairs(zs) -> list[list[float]]:
    return [[z.real, z.imag] for z in zs]


def _cmd_regularize(args) -> int:
    data = _load_json(args.input)
    if args.geometry == "plane":
        if args.k != 2:
            raise ValueError("plane regularization supports only k=2 (half-angle step)")
        triangle = _plane_triangle(data)
        history = []
        triangles = [triangle]
        _, _, gaps = euclid.angle_gaps(triangle)
        history.append(gaps)
        target = np.full(3, _TWO_PI / 3)
        converged = bool(np.max(np.abs(gaps - target)) < args.tol)
        iterations = 0
        while not converged and iterations < args.max_iter:
            triangle = euclid.rotate_half_step(triangle)
            _, _, gaps = euclid.angle_gaps(triangle)
            triangles.append(triangle)
            history.append(gaps)
            iterations += 1
            converged = bool(np.max(np.abs(gaps - target)) < args.tol)
        summary = {
            "geometry": "plane",
            "converged": converged,
            "iterations": iterations,
            "final": _complex_pairs(triangles[-1].vertices),
        }
    elif args.geometry == "sphere":
        polygon = spherical.SphericalPolygon(_sphere_points(data))
        result = spherical.regularize(polygon, k=args.k, tol=args.tol, max_iter=args.max_iter)
        history = list(result.gap_history)
        target = np.full(polygon.n, _TWO_PI / polygon.n)
        summary = {
            "geometry": "sphere",
            "converged": result.converged,
            "iterations": result.iterations,
            "final": [list(map(float, v)) for v in result.final.vertices],
        }
    else:
        boundary = hyperbolic.BoundaryPoints(tuple(float(x) for x in data))
        if args.k != 2:
            raise ValueError("hyperbolic regularization has no k parameter (pair averaging)")
        result = hyperbolic.regularize_hyperbolic(boundary, tol=args.tol, max_iter=args.max_iter)
        history = list(result.gap_history)
        target = np.asarray(hyperbolic.limit_gaps(hyperbolic.gaps_from_points(boundary)).values)
        summary = {
            "geometry": "hyperbolic",
            "converged": result.converged,
            "iterations": result.iterations,
            "final_boundary": list(result.final.points),
            "final_vertices": _complex_pairs(hyperbolic.polygon_from_boundary(result.final)),
        }
    if args.trace:
        records = emit.trace_records(history, target)
        emit.write_records(args.trace, records, emit.trace_columns(len(history[0])), args.format)
    _print_json(summary)
    return 0


def _cmd_eigen(args) -> int:
    coeffs = _load_json(args.spec)
    spec = circulant.CirculantSpec(tuple(float(c) for c in coeffs))
    records = [
        {
            "index": e.index,
            "real": e.eigenvalue.real,
            "imag": e.eigenvalue.imag,
            "modulus": e.modulus,
            "angle": e.angle,
        }
        for e in circulant.eigenvalues(spec)
    ]
    if args.out:
        emit.write_records(args.out, records, ["index", "real", "imag", "modulus", "angle"], args.format)
    _print_json(records)
    return 0


def _cmd_napoleon(args) -> int:
    data = _load_json(args.input)
    if args.geometry == "plane":
        apices, centers = euclid.napoleon(_plane_triangle(data))
        payload = {
            "geometry": "plane",
            "apices": _complex_pairs(apices),
            "centers": _complex_pairs(centers.vertices),
        }
    else:
        pts = _sphere_points(data)
        if pts.shape[0] != 3:
            raise ValueError("sphere napoleon expects exactly three points")
        result = spherical.napoleon_sphere(pts[0], pts[1], pts[2])
        payload = {
            "geometry": "sphere",
            "vertices": [list(map(float, v)) for v in result.vertices],
        }
    if args.out:
        emit.write_json(args.out, payload)
    _print_json(payload)
    return 0


def _cmd_fit(args) -> int:
    pts = _sphere_points(_load_json(args.input))
    axis, cos_radius = spherical.fit_small_circle(pts)
    payload = {"axis": list(map(float, axis)), "cos_radius": cos_radius}
    if args.out:
        emit.write_json(args.out, payload)
    _print_json(payload)
    return 0


def _cmd_analyze(args) -> int:
    matrix = np.asarray(_load_json(args.matrix), dtype=float)
    report = analyzer.classify(analyzer.LinearAngleTransform(matrix))
    payload = {
        "preserves_sum": report.preserves_sum,
        "fixes_regular": report.fixes_regular,
        "attracting": report.attracting,
        "jordan_class": report.jordan_class,
        "rotation_params": list(report.rotation_params) if report.rotation_params else None,
        "structure": list(report.structure),
    }
    if args.out:
        emit.write_json(args.out, payload)
    _print_json(payload)
    return 0


def _cmd_experiment_table1(args) -> int:
    config = experiment.ExperimentConfig(
        k_values=tuple(int(k) for k in args.k.split(",") if k.strip()),
        trials=args.trials,
        tol=args.tol,
        cap=args.cap,
        seed=args.seed,
    )
    rows = experiment.run_table1(config, sampler=args.sampler)
    records = emit.experiment_records(rows)
    if args.out:
        emit.write_records(args.out, records, list(emit.EXPERIMENT_COLUMNS), args.format)
    _print_json(records)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyreg",
        description="Regularize polygons in plane, sphere and hyperbolic-disk geometry",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    reg = sub.add_parser("regularize", help="iterate the rotation/averaging step on a polygon")
    reg.add_argument("--geometry", choices=("plane", "sphere", "hyperbolic"), required=True)
    reg.add_argument("--input", required=True, help="JSON input file")
    reg.add_argument("--k", type=int, default=2, help="rotation share: vertex moves by gap/k")
    reg.add_argument("--tol", type=float, default=1e-9, help="max-norm gap deviation threshold")
    reg.add_argument("--max-iter", type=int, default=200)
    reg.add_argument("--trace", help="write per-iteration trace to this file")
    reg.add_argument("--format", choices=emit.FORMATS, default="csv")
    reg.set_defaults(func=_cmd_regularize)

    eig = sub.add_parser("eigen", help="closed-form spectrum of a circulant first row")
    eig.add_argument("--spec", required=True, help="JSON array with the first row")
    eig.add_argument("--out")
    eig.add_argument("--format", choices=emit.FORMATS, default="json")
    eig.set_defaults(func=_cmd_eigen)

    nap = sub.add_parser("napoleon", help="one-shot three-centers construction")
    nap.add_argument("--geometry", choices=("plane", "sphere"), required=True)
    nap.add_argument("--input", required=True)
    nap.add_argument("--out")
    nap.set_defaults(func=_cmd_napoleon)

    fit = sub.add_parser("fit", help="least-squares small circle through sphere points")
    fit.add_argument("--input", required=True)
    fit.add_argument("--out")
    fit.set_defaults(func=_cmd_fit)

    ana = sub.add_parser("analyze", help="classify a linear angle transform")
    ana.add_argument("--matrix", required=True, help="JSON n-by-n row-major matrix")
    ana.add_argument("--out")
    ana.set_defaults(func=_cmd_analyze)

    exp = sub.add_parser("experiment", help="seeded statistics experiments")
    exp_sub = exp.add_subparsers(dest="experiment_name", required=True)
    table1 = exp_sub.add_parser("table1", help="mean iterations to converge per k")
    table1.add_argument("--k", default="2,3,4,5", help="comma-separated k values")
    table1.add_argument("--trials", type=int, default=20)
    table1.add_argument("--tol", type=float, default=0.005)
    table1.add_argument("--cap", type=int, default=20)
    table1.add_argument("--seed", type=int, default=0)
    table1.add_argument("--out")
    table1.add_argument("--format", choices=emit.FORMATS, default="csv")
    table1.add_argument("--sampler", choices=experiment.SAMPLERS, default="sphere")
    table1.set_defaults(func=_cmd_experiment_table1)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
