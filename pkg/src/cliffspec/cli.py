"""
Command-line front end.

Every subcommand reads one triple (``--input FILE`` or ``--example NAME``,
except ``oracle-check`` which draws its own) and prints JSON on stdout.
Exit codes: 0 success, 1 invalid input, 2 internal inconsistency or a
tolerance breach.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import geometry, surface
from .errors import InternalConsistencyError, PreconditionError, ValidationError
from .examples import EXAMPLES, get_example
from .localizer import det_localizer, quadratic_form_gap
from .pauli import canonicalize, loads_triple, params_to_obj, pauli_decompose
from .quartic import D_full, invariants
from .rng import SplitMix64, random_points, random_triple
from .witness import witness_point

EXIT_OK, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2
ORACLE_TOL = 1e-8
GAP_TOL = 1e-3
POINTS_PER_TRIAL = 5
COMMANDS = ("decompose", "det", "witness", "classify", "surface", "examples", "quadratic",
            "oracle-check")
NEEDS_TRIPLE = {"decompose", "det", "witness", "classify", "surface", "quadratic"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _point(text: str) -> np.ndarray:
    parts = text.split(",")
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x1,x2,x3, got {text!r}") from None
    if len(values) != 3 or not np.all(np.isfinite(values)):
        raise argparse.ArgumentTypeError(f"expected three finite numbers x1,x2,x3, got {text!r}")
    return np.array(values)


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if n <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _seed(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an unsigned integer, got {text!r}") from None
    if not 0 <= n < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must be in [0, 2^64), got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cliffspec",
                     description="Clifford spectrum of three 2x2 Hermitian matrices.")
    parser.add_argument("command", choices=COMMANDS)
    src = parser.add_mutually_exclusive_group()
    src.add_argument("--input", metavar="FILE", help="JSON triple file ('-' for stdin)")
    src.add_argument("--example", choices=tuple(EXAMPLES), help="built-in triple")
    parser.add_argument("--point", type=_point, metavar="x1,x2,x3")
    parser.add_argument("--resolution", type=_positive, default=96,
                        help="samples per axis for surface, examples and quadratic (default 96)")
    parser.add_argument("--output", metavar="FILE", help="mesh file written by surface")
    parser.add_argument("--format", choices=[f.value for f in surface.MeshFormat], default="obj")
    parser.add_argument("--extent", type=float, default=2.0,
                        help="half-width of the quadratic scan cube (default 2)")
    parser.add_argument("--seed", type=_seed, default=0)
    parser.add_argument("--trials", type=_positive, default=10000)
    return parser


def _load_triple(args):
    if args.example:
        return get_example(args.example).triple
    text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
    return loads_triple(text)


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2))


def _pipeline(t):
    p = canonicalize(t)
    return p, invariants(p)


def cmd_decompose(args, t) -> int:
    p = canonicalize(t)
    _emit({
        "pauli": {name: list(pauli_decompose(M)) for name, M in zip(("A1", "A2", "A3"), t.matrices)},
        "canonical": params_to_obj(p),
    })
    return EXIT_OK


def cmd_det(args, t) -> int:
    if args.point is None:
        raise ValidationError("det needs --point x1,x2,x3")
    p = canonicalize(t)
    closed = float(D_full(p, args.point))
    oracle = float(det_localizer(t, args.point))
    diff = abs(closed - oracle)
    _emit({"point": args.point.tolist(), "D": closed, "oracle": oracle, "diff": diff})
    return EXIT_OK if diff <= ORACLE_TOL * (1.0 + abs(oracle)) else EXIT_INTERNAL


def cmd_witness(args, t) -> int:
    p, inv = _pipeline(t)
    _emit(witness_point(inv, p.center, p.conjugator).to_obj())
    return EXIT_OK


def cmd_classify(args, t) -> int:
    p, inv = _pipeline(t)
    obj = geometry.classify(inv).to_obj()
    obj["c_value"] = inv.c
    obj["center"] = [float(v) for v in p.center]
    _emit(obj)
    return EXIT_OK


def cmd_surface(args, t) -> int:
    if not args.output:
        raise ValidationError("surface needs --output FILE")
    p, inv = _pipeline(t)
    mesh = surface.spectrum_mesh(inv, p.center, args.resolution)
    Path(args.output).write_bytes(surface.export(mesh, args.format))
    _emit({"output": args.output, "format": args.format, "vertices": len(mesh.vertices),
           "triangles": len(mesh.triangles), "components": mesh.components,
           "warning": mesh.warning})
    return EXIT_OK


def cmd_quadratic(args, t) -> int:
    if not args.extent > 0:
        raise ValidationError("--extent must be positive")
    n = max(args.resolution, 2)
    axis = np.linspace(-args.extent, args.extent, n)
    grid = np.stack(np.meshgrid(axis, axis, axis, indexing="ij"), axis=-1)
    gaps = quadratic_form_gap(t, grid)
    idx = np.unravel_index(np.argmin(gaps), gaps.shape)
    p, inv = _pipeline(t)
    w = witness_point(inv, p.center, p.conjugator)
    _emit({"grid": [n, n, n], "extent": args.extent, "min_gap": float(gaps[idx]),
           "argmin": grid[idx].tolist(), "clifford_witness_d": w.d_value,
           "clifford_spectrum_point": [float(v) for v in w.spectrum_point]})
    return EXIT_OK


def oracle_check(trials: int, seed: int) -> float:
    """Largest ``|D_full - det| / (1 + |det|)`` over seeded random triples and points."""
    rng = SplitMix64(seed)
    worst = 0.0
    for _ in range(trials):
        sub = rng.split()
        t = random_triple(sub)
        x = random_points(sub, POINTS_PER_TRIAL)
        oracle = det_localizer(t, x)
        closed = D_full(canonicalize(t), x)
        worst = max(worst, float(np.max(np.abs(closed - oracle) / (1.0 + np.abs(oracle)))))
    return worst


def cmd_oracle_check(args, t) -> int:
    worst = oracle_check(args.trials, args.seed)
    ok = worst <= ORACLE_TOL
    _emit({"trials": args.trials, "seed": args.seed, "points_per_trial": POINTS_PER_TRIAL,
           "max_mixed_error": worst, "tolerance": ORACLE_TOL, "pass": ok})
    return EXIT_OK if ok else EXIT_INTERNAL


def run_example(ex, resolution: int) -> dict:
    p, inv = _pipeline(ex.triple)
    w = witness_point(inv, p.center, p.conjugator)
    kind = geometry.classify(inv).kind.value
    mesh = surface.spectrum_mesh(inv, p.center, resolution)
    checks = {
        "witness": w.d_value <= 1e-9 * inv.scale,
        "gap": w.gap_at_point <= GAP_TOL,
    }
    if ex.components is not None:
        checks["components"] = mesh.components == ex.components
    for target in ex.spectrum_points:
        checks.setdefault("point", False)
        if np.linalg.norm(w.spectrum_point - np.array(target)) <= 1e-6:
            checks["point"] = True
    notes = []
    if ex.stated_e is not None and abs(inv.e - ex.stated_e) > 1e-9:
        notes.append(f"e={inv.e:.12g} vs stated {ex.stated_e:g}")
    if ex.stated_c is not None and abs(inv.c - ex.stated_c) > 1e-9:
        notes.append(f"c={inv.c:.12g} vs stated {ex.stated_c:g}")
    return {"name": ex.name, "kind": kind, "e": inv.e, "c": inv.c, "d_witness": w.d_value,
            "gap": w.gap_at_point, "components": mesh.components,
            "pass": all(checks.values()), "checks": checks, "notes": notes}


def cmd_examples(args, t) -> int:
    rows = [run_example(ex, args.resolution) for ex in EXAMPLES.values()]
    print(f"{'example':<11}{'kind':<25}{'e':>13}{'c':>13}{'D(witness)':>14}{'gap':>11}"
          f"{'comp':>6}  result")
    for r in rows:
        print(f"{r['name']:<11}{r['kind']:<25} {r['e']:>12.6g} {r['c']:>12.6g} {r['d_witness']:>13.6g}"
              f"{r['gap']:>11.3g}{r['components']:>6}  {'PASS' if r['pass'] else 'FAIL'}"
              + (f"  ({'; '.join(r['notes'])})" if r["notes"] else ""))
    return EXIT_OK if all(r["pass"] for r in rows) else EXIT_INTERNAL


HANDLERS = {
    "decompose": cmd_decompose, "det": cmd_det, "witness": cmd_witness,
    "classify": cmd_classify, "surface": cmd_surface, "quadratic": cmd_quadratic,
    "oracle-check": cmd_oracle_check, "examples": cmd_examples,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    has_source = bool(args.input or args.example)
    if args.command in NEEDS_TRIPLE and not has_source:
        parser.error(f"{args.command} needs exactly one of --input or --example")
    if args.command not in NEEDS_TRIPLE and has_source:
        parser.error(f"{args.command} takes no --input or --example")
    try:
        t = _load_triple(args) if has_source else None
        return HANDLERS[args.command](args, t)
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
              file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ValidationError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InternalConsistencyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
