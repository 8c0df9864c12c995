"""Command-line interface.

Subcommands: ``entropy`` (one complex), ``sweep`` (scale sweep to CSV),
``mesh`` (triangle mesh report + face-weight CSV), ``gen`` (point files).
Exit codes: 0 success, 1 bad input or parameters, 2 solver non-convergence,
3 critical-radius cap exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from ._parsing import ParseError
from .complexes import InvalidComplexError, parse_complex, parse_distribution, \
    uniform_distribution, vertex_entropy
from .decoding import adversarial_gain, randomized_gain
from .filtration import AllCriticalSchedule, CapExceededError, SweepEvaluationError, \
    UniformSchedule, records_to_csv, sweep
from .meshes import curvature_distribution, export_face_weights, gaussian_curvature, \
    mesh_complex, parse_off
from .points import PointCloud, add_uniform_noise, format_points, \
    generate_square_grid, generate_triangular_grid, parse_points, sample_sphere_uniform
from .solver import SolverConfig, solve


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); bad params are exit 1
        raise _UsageError(message)


def _solver_config(args) -> SolverConfig:
    env = os.environ
    tol = args.kkt_tol if args.kkt_tol is not None \
        else float(env.get("SCENTROPY_KKT_TOL", 1e-9))
    max_iter = args.max_iterations if args.max_iterations is not None \
        else int(env.get("SCENTROPY_MAX_ITERATIONS", 100_000))
    damping = args.damping if args.damping is not None \
        else float(env.get("SCENTROPY_DAMPING", 1.0))
    return SolverConfig(kkt_tolerance=tol, max_iterations=max_iter, damping=damping)


def _add_solver_flags(sub) -> None:
    sub.add_argument("--kkt-tol", type=float, default=None,
                     help="stopping tolerance on the optimality residual")
    sub.add_argument("--max-iterations", type=int, default=None)
    sub.add_argument("--damping", type=float, default=None,
                     help="step damping in (0,1]; applied only on objective decrease")


def _load_distribution(spec: str, n: int):
    if spec == "uniform":
        return uniform_distribution(n)
    return parse_distribution(Path(spec).read_text(), n=n)


def _print_report(solution, P, rg, adv_gain=None) -> None:
    print(f"entropy_bits {solution.entropy_bits:.9g}")
    print(f"vertex_entropy_bits {vertex_entropy(P):.9g}")
    print(f"normalized_entropy {solution.normalized_entropy:.9g}")
    if solution.degenerate:
        print("degenerate 1")
    print(f"gain {rg.gain:.9g}")
    print(f"one_minus_gain {rg.one_minus_gain:.9g}")
    if adv_gain is not None:
        print(f"adversarial_gain {adv_gain:.9g}")
    print(f"kkt_residual {solution.kkt_residual:.9g}")
    print(f"iterations {solution.iterations}")


def _cmd_entropy(args) -> int:
    complex = parse_complex(Path(args.complex).read_text())
    P = _load_distribution(args.dist, complex.n)
    solution = solve(complex, P, _solver_config(args))
    rg = randomized_gain(complex, P, solution.q.q)
    adv = adversarial_gain(complex, P).gain if args.adversarial else None
    _print_report(solution, P, rg, adv)
    return 0 if solution.converged else 2


def _make_cloud(args) -> tuple[PointCloud, float]:
    """Build the input cloud; returns (cloud, spacing) for noise scaling."""
    sources = [args.points is not None, args.square is not None,
               args.triangular is not None, args.sphere is not None]
    if sum(sources) != 1:
        raise _UsageError("exactly one of --points/--square/--triangular/--sphere "
                          "must be given")
    if args.points is not None:
        return parse_points(Path(args.points).read_text()), 1.0
    if args.square is not None:
        return generate_square_grid(args.square, args.spacing), args.spacing
    if args.triangular is not None:
        return generate_triangular_grid(args.triangular, args.spacing), args.spacing
    if args.seed is None:
        raise _UsageError("--seed is required with --sphere")
    return sample_sphere_uniform(args.sphere, args.seed), 1.0


def _cmd_sweep(args) -> int:
    cloud, spacing = _make_cloud(args)
    if args.noise > 0:
        if args.seed is None:
            raise _UsageError("--seed is required when --noise is positive")
        cloud = add_uniform_noise(cloud, args.noise, spacing, args.seed)
    if args.schedule == "uniform":
        lo = 0.0 if args.lo is None else args.lo
        hi = 0.6 if args.hi is None else args.hi
        schedule = UniformSchedule(count=args.count, lo=lo, hi=hi)
    else:
        schedule = AllCriticalSchedule()
    P = None if args.dist == "uniform" \
        else parse_distribution(Path(args.dist).read_text(), n=cloud.n)
    records = sweep(cloud, args.construction, schedule, P, _solver_config(args),
                    accuracy_column=args.accuracy_column, parallel=args.parallel)
    Path(args.out).write_text(records_to_csv(records))
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def _cmd_mesh(args) -> int:
    mesh = parse_off(Path(args.mesh).read_text())
    if args.dist == "curvature":
        P, fallback = curvature_distribution(gaussian_curvature(mesh))
        if fallback:
            print("warning: total curvature is zero, using the uniform "
                  "distribution", file=sys.stderr)
    else:
        P = uniform_distribution(mesh.n_vertices)
    complex = mesh_complex(mesh)
    solution = solve(complex, P, _solver_config(args))
    rg = randomized_gain(complex, P, solution.q.q)
    Path(args.out).write_text(export_face_weights(mesh, solution.q.q))
    _print_report(solution, P, rg)
    return 0 if solution.converged else 2


def _cmd_gen(args) -> int:
    if args.kind in ("square", "triangular"):
        if args.k is None:
            raise _UsageError(f"--k is required for {args.kind} grids")
        make = generate_square_grid if args.kind == "square" else generate_triangular_grid
        cloud = make(args.k, args.spacing)
        spacing = args.spacing
    elif args.kind == "sphere":
        if args.count is None:
            raise _UsageError("--count is required for sphere samples")
        if args.seed is None:
            raise _UsageError("--seed is required for sphere samples")
        cloud = sample_sphere_uniform(args.count, args.seed)
        spacing = 1.0
    else:  # thomson-file: validate and rewrite an externally computed sample
        if args.infile is None:
            raise _UsageError("--in is required for thomson-file")
        cloud = parse_points(Path(args.infile).read_text())
        spacing = 1.0
    if args.noise > 0:
        if args.seed is None:
            raise _UsageError("--seed is required when --noise is positive")
        cloud = add_uniform_noise(cloud, args.noise, spacing, args.seed)
    Path(args.out).write_text(format_points(cloud))
    print(f"wrote {cloud.n} points to {args.out}")
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="scentropy",
                     description="Entropy of simplicial complexes and scale sweeps "
                                 "over point-cloud constructions.")
    subs = parser.add_subparsers(dest="command", required=True)

    p_entropy = subs.add_parser("entropy", help="solve one complex from a file")
    p_entropy.add_argument("complex", help="complex text file ('n m' header)")
    p_entropy.add_argument("--dist", default="uniform",
                           help="'uniform' or a distribution file path")
    p_entropy.add_argument("--adversarial", action="store_true",
                           help="also report the adversarial decoding gain")
    _add_solver_flags(p_entropy)
    p_entropy.set_defaults(func=_cmd_entropy)

    p_sweep = subs.add_parser("sweep", help="sweep the scale parameter, write CSV")
    p_sweep.add_argument("--points", help="points file")
    p_sweep.add_argument("--square", type=int, metavar="K", help="K x K square grid")
    p_sweep.add_argument("--triangular", type=int, metavar="K",
                         help="K x K triangular grid")
    p_sweep.add_argument("--sphere", type=int, metavar="COUNT",
                         help="area-uniform sphere sample")
    p_sweep.add_argument("--spacing", type=float, default=1.0)
    p_sweep.add_argument("--noise", type=float, default=0.0,
                         help="uniform noise amplitude as a fraction of the spacing")
    p_sweep.add_argument("--seed", type=int, default=None)
    p_sweep.add_argument("--construction", choices=("vr", "cech"), default="cech")
    p_sweep.add_argument("--schedule", choices=("all-critical", "uniform"),
                         default="all-critical")
    p_sweep.add_argument("--count", type=int, default=100,
                         help="sample count for the uniform schedule")
    p_sweep.add_argument("--lo", type=float, default=None)
    p_sweep.add_argument("--hi", type=float, default=None)
    p_sweep.add_argument("--dist", default="uniform")
    p_sweep.add_argument("--accuracy-column", choices=("gain", "one_minus_gain"),
                         default="gain",
                         help="gain column subtracted from the normalized entropy")
    p_sweep.add_argument("--parallel", type=int, default=1,
                         help="worker threads; output is identical for any value")
    p_sweep.add_argument("--out", required=True)
    _add_solver_flags(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_mesh = subs.add_parser("mesh", help="solve a triangle mesh, export face weights")
    p_mesh.add_argument("mesh", help="OFF mesh file")
    p_mesh.add_argument("--dist", choices=("uniform", "curvature"), default="uniform")
    p_mesh.add_argument("--out", required=True, help="face-weight CSV path")
    _add_solver_flags(p_mesh)
    p_mesh.set_defaults(func=_cmd_mesh)

    p_gen = subs.add_parser("gen", help="write a points file")
    p_gen.add_argument("kind", choices=("square", "triangular", "sphere", "thomson-file"))
    p_gen.add_argument("--k", type=int, default=None, help="grid side length")
    p_gen.add_argument("--spacing", type=float, default=1.0)
    p_gen.add_argument("--count", type=int, default=None, help="sphere sample size")
    p_gen.add_argument("--seed", type=int, default=None)
    p_gen.add_argument("--noise", type=float, default=0.0)
    p_gen.add_argument("--in", dest="infile", default=None,
                       help="input points file for thomson-file")
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=_cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ParseError, InvalidComplexError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SweepEvaluationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def console_main() -> None:  # pragma: no cover - thin wrapper
    sys.exit(main())
