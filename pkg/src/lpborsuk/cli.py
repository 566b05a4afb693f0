"""Command-line front end: certificates, coverings, partitions, benchmarks.

Structured results are emitted as JSON (sorted keys, newline-terminated;
floats use Python's shortest round-trip representation, so identical inputs
and seeds produce byte-identical output).  Benchmarks emit CSV.

Exit codes: 0 success, 1 usage or input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import replace

import numpy as np

from .covering import axis_covering, verify_covering
from .hadamard import sandwich_map, sandwich_map_padded, sylvester
from .norms import PNorm
from .partition import PartitionResult, partition, verify_partition
from .sampling import ball_points
from .sandwich import bm_lower_bound, bm_upper_certificate, check_sandwich

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2

_CONSTRUCTIONS = ("blocks", "sylvester", "4kj")


class InputError(ValueError):
    """Malformed command input; message names the offending field."""


def _write_text(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _emit_json(payload, path: str | None) -> None:
    _write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", path)


def _parse_p(text: str) -> PNorm:
    try:
        return PNorm.parse(text)
    except ValueError as exc:
        raise InputError(f"flag --p: {exc}") from None


def load_cloud(path: str) -> tuple[int, np.ndarray]:
    """Read the point-cloud schema {"dim": int, "points": [[...], ...]}."""
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read input file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"input file is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise InputError("input must be a JSON object with fields 'dim' and 'points'")
    dim = raw.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InputError("field 'dim' must be a positive integer")
    points = raw.get("points")
    if not isinstance(points, list):
        raise InputError("field 'points' must be a list of points")
    for i, row in enumerate(points):
        if not isinstance(row, list) or len(row) != dim:
            raise InputError(f"field 'points[{i}]' must be a list of {dim} numbers")
        for c in row:
            if not isinstance(c, (int, float)) or isinstance(c, bool) or not math.isfinite(c):
                raise InputError(f"field 'points[{i}]' must contain finite numbers")
    cloud = np.asarray(points, dtype=float).reshape(len(points), dim)
    return dim, cloud


def dump_cloud(dim: int, points: np.ndarray, path: str | None) -> None:
    _emit_json({"dim": dim, "points": [[float(c) for c in row] for row in points]}, path)


def _build_map(n: int, nm: PNorm, construction: str):
    if construction == "blocks":
        return sandwich_map(n, nm)
    if construction == "sylvester":
        if n & (n - 1) != 0:
            raise InputError(f"construction 'sylvester' needs a power-of-two dimension, got {n}")
        return sandwich_map(n, nm)
    if construction == "4kj":
        k, j = divmod(n, 4)
        if k < 1:
            raise InputError(f"construction '4kj' needs dimension >= 4, got {n}")
        if (4 * k) & (4 * k - 1) != 0:
            raise InputError(
                f"construction '4kj' with n = {n} needs an order-{4 * k} Hadamard matrix; "
                "only power-of-two orders are built in")
        return sandwich_map_padded(k, j, nm, sylvester((4 * k).bit_length() - 1))
    raise InputError(f"unknown construction {construction!r}")


def _partition_payload(result: PartitionResult, p: PNorm) -> dict:
    payload = {
        "p": str(p),
        "method": result.method,
        "labels": [int(v) for v in result.labels],
        "ratio": result.ratio,
        "nonempty_parts": result.nonempty_parts,
        "part_diameters": [
            {"part": d.part, "value": d.value, "index_a": d.index_a, "index_b": d.index_b}
            for d in result.part_diameters
        ],
        "normalization": {
            "scale": result.normalization.scale,
            "translation": [float(c) for c in result.normalization.translation],
        },
        "warnings": list(result.warnings),
    }
    if result.slab is not None:
        payload["slab"] = {
            "normals": [[int(c) for c in row] for row in result.slab.normals],
            "offsets": [float(c) for c in result.slab.offsets],
        }
    return payload


def cmd_hadamard(args) -> int:
    n = args.order
    if n < 1 or n & (n - 1) != 0:
        raise InputError(f"flag --order: only power-of-two orders are constructed, got {n}")
    h = sylvester(n.bit_length() - 1)
    _emit_json({"order": n, "rows": [[int(v) for v in row] for row in h]}, args.output)
    return EXIT_OK


def cmd_bm(args) -> int:
    nm = _parse_p(args.p)
    linmap = _build_map(args.n, nm, args.construction)
    cert = bm_upper_certificate(linmap, nm)
    lower = bm_lower_bound(args.n, nm) if nm.p < 2.0 else None
    payload = {
        "n": args.n,
        "p": str(nm),
        "construction": args.construction,
        "r": cert.r,
        "argmax_vertex": [int(v) for v in cert.argmax_vertex],
        "dual_margin": cert.dual_margin,
        "feasible": cert.feasible,
        "lower_bound": lower,
    }
    _emit_json(payload, args.output)
    return EXIT_OK if cert.feasible else EXIT_VERIFY


def cmd_sandwich(args) -> int:
    nm = _parse_p(args.p)
    linmap = _build_map(args.n, nm, args.construction)
    if args.scale != 1.0:
        linmap = linmap.scaled(args.scale)
    report = check_sandwich(linmap, nm, n_samples=args.samples, seed=args.seed)
    payload = {
        "n": args.n,
        "p": str(nm),
        "construction": args.construction,
        "scale": args.scale,
        "left_margin": report.left_margin,
        "r": report.r,
        "tight_directions": list(report.tight_directions),
        "tight_vertices": report.tight_vertices,
        "argmax_vertex": [int(v) for v in report.argmax_vertex],
        "sample_max": report.sample_max,
        "sample_agrees": report.sample_agrees,
        "samples_used": report.samples_used,
    }
    _emit_json(payload, args.output)
    return EXIT_OK if report.sample_agrees else EXIT_VERIFY


def cmd_cover(args) -> int:
    nm = _parse_p(args.p)
    try:
        spec = axis_covering(args.n, nm)
        if args.shrink is not None:
            spec = replace(spec, shrink=args.shrink)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    report = verify_covering(spec, n_samples=args.samples, seed=args.seed,
                             threads=args.threads)
    payload = {
        "n": args.n,
        "p": str(nm),
        "shrink": spec.shrink,
        "centers": [[float(c) for c in row] for row in spec.centers],
        "covered": report.covered,
        "worst_margin": report.worst_margin,
        "witness": [float(c) for c in report.witness],
        "samples_used": report.samples_used,
        "seed": args.seed,
    }
    _emit_json(payload, args.output)
    return EXIT_OK if report.covered else EXIT_VERIFY


def cmd_partition(args) -> int:
    nm = _parse_p(args.p)
    dim, cloud = load_cloud(args.input)
    if dim != 4:
        raise InputError(f"field 'dim' must be 4 for the partition command, got {dim}")
    result = partition(cloud, nm)
    payload = _partition_payload(result, nm)
    exit_code = EXIT_OK
    if args.verify:
        ok, report = verify_partition(cloud, nm, result)
        payload["verified"] = ok
        payload["verify_report"] = {
            "original_diameter": report["original_diameter"],
            "max_part_diameter": report["max_part_diameter"],
            "ratio": report["ratio"],
            "nonempty_parts": report["nonempty_parts"],
            "ratio_matches_engine": report["ratio_matches_engine"],
        }
        if not ok:
            exit_code = EXIT_VERIFY
    _emit_json(payload, args.output)
    return exit_code


def _parse_grid(text: str) -> list[str]:
    if text.strip() == "":
        return []
    return [item.strip() for item in text.split(",")]


def cmd_bench(args) -> int:
    p_grid = [_parse_p(t) for t in _parse_grid(args.p_grid)]
    try:
        sizes = [int(t) for t in _parse_grid(args.sizes)]
    except ValueError:
        raise InputError("flag --sizes: expected a comma-separated list of integers") from None
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["p", "n_points", "method", "nonempty_parts", "ratio", "wall_time_ms"])
    for ip, nm in enumerate(p_grid):
        for isize, size in enumerate(sizes):
            rng = np.random.default_rng([args.seed, ip, isize])
            cloud = ball_points(size, 4, nm, rng)
            start = time.perf_counter()
            result = partition(cloud, nm)
            ok, _ = verify_partition(cloud, nm, result)
            elapsed_ms = (time.perf_counter() - start) * 1000.0
            if not ok:
                raise RuntimeError(f"benchmark cloud failed verification (p={nm}, size={size})")
            # timings are the one nondeterministic column; zeroed unless asked for
            wall = elapsed_ms if args.timings else 0.0
            writer.writerow([str(nm), size, result.method, result.nonempty_parts,
                             repr(result.ratio), repr(wall)])
    _write_text(buf.getvalue(), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lpborsuk",
        description="Diameter-reducing partitions, sandwich certificates, and "
                    "ball coverings in l_p spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p):
        p.add_argument("--output", default=None, help="write to this file instead of stdout")

    p_had = sub.add_parser("hadamard", help="emit a Hadamard matrix as JSON rows")
    p_had.add_argument("--order", type=int, required=True)
    add_output(p_had)
    p_had.set_defaults(func=cmd_hadamard)

    p_bm = sub.add_parser("bm", help="Banach-Mazur upper certificate and lower bound")
    p_bm.add_argument("--n", type=int, required=True)
    p_bm.add_argument("--p", required=True)
    p_bm.add_argument("--construction", choices=_CONSTRUCTIONS, default="blocks")
    add_output(p_bm)
    p_bm.set_defaults(func=cmd_bm)

    p_sw = sub.add_parser("sandwich", help="full sandwich report with sampling cross-check")
    p_sw.add_argument("--n", type=int, required=True)
    p_sw.add_argument("--p", required=True)
    p_sw.add_argument("--construction", choices=_CONSTRUCTIONS, default="blocks")
    p_sw.add_argument("--scale", type=float, default=1.0,
                      help="extra scalar applied to the constructed map")
    p_sw.add_argument("--samples", type=int, default=100_000)
    p_sw.add_argument("--seed", type=int, default=0)
    add_output(p_sw)
    p_sw.set_defaults(func=cmd_sandwich)

    p_cov = sub.add_parser("cover", help="verify the 2n-translate axis covering")
    p_cov.add_argument("--n", type=int, required=True)
    p_cov.add_argument("--p", required=True)
    p_cov.add_argument("--shrink", type=float, default=None,
                       help="override the constructed shrink factor")
    p_cov.add_argument("--samples", type=int, default=1_000_000)
    p_cov.add_argument("--seed", type=int, default=0)
    add_output(p_cov)
    p_cov.set_defaults(func=cmd_cover)

    p_part = sub.add_parser("partition", help="partition a point-cloud JSON file")
    p_part.add_argument("--input", required=True)
    p_part.add_argument("--p", required=True)
    p_part.add_argument("--verify", action="store_true",
                        help="recheck the result with the independent oracle")
    add_output(p_part)
    p_part.set_defaults(func=cmd_partition)

    p_bench = sub.add_parser("bench", help="seeded partition benchmark as CSV")
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--p-grid", default="1,1.5,2,3")
    p_bench.add_argument("--sizes", default="50,500")
    p_bench.add_argument("--timings", action="store_true",
                         help="fill wall_time_ms with real measurements "
                              "(breaks byte-identical reruns)")
    add_output(p_bench)
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    threads = os.environ.get("BORSUK_THREADS")
    if args.func is cmd_cover:
        try:
            args.threads = max(1, int(threads)) if threads else 1
        except ValueError:
            print("environment variable BORSUK_THREADS must be an integer", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
