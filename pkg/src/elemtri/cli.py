"""Command line front end: ``elemtri {gen,invert,power,factor,bench}``.

Exit codes: 0 success, 1 I/O, parse or validation error, 2 singular
input, 3 size guard exceeded.
"""

import argparse
import json
import statistics
import sys
import time
from pathlib import Path

import numpy as np

from . import block, elementary, hessenberg, instances, powers
from .core import as_square, frobenius_norm, mat_mul, relative_error
from .errors import HessenbergError, NotTriangularError, ShapeError, SingularMatrixError, SizeGuardError
from .matrix_io import MatrixFormatError, matrix_to_json, read_matrix, write_matrix
from .oracle import oracle_inverse, oracle_power

EXIT_OK, EXIT_INPUT, EXIT_SINGULAR, EXIT_GUARD = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    # argparse's default exit status 2 would collide with the singularity code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _int_list(text):
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError("values must be positive integers")
    return vals


def _emit(record, stream=None):
    print(json.dumps(record), file=stream or sys.stdout)


def _residual(M, M_inv):
    return frobenius_norm(mat_mul(M, M_inv) - np.eye(M.shape[0]))


def cmd_gen(args):
    rng = instances.instance_rng(args.seed)
    n = args.n
    if args.kind == "triangular":
        M = instances.random_lower_triangular(n, rng)
    elif args.kind == "tridiagonal":
        if n < 2:
            raise ShapeError("tridiagonal instances need n >= 2")
        M = instances.random_tridiagonal(n, rng).H
    elif args.kind == "hessenberg":
        if not 1 <= args.k < n:
            raise ShapeError(f"need 1 <= k < n, got k={args.k}, n={n}")
        M = instances.random_hessenberg(n, args.k, rng).H
    else:
        sizes = args.partition or instances.default_partition(n)
        if sum(sizes) != n:
            raise ShapeError(f"partition {sizes} does not sum to n={n}")
        M = instances.random_block_triangular(sizes, rng).M
    write_matrix(args.out, M)
    return EXIT_OK


def _invert(M, args):
    method = args.method
    if method == "oracle" or args.kind == "general":
        if args.kind == "general" and method != "oracle":
            raise ValueError("general matrices can only be inverted with --method oracle")
        return oracle_inverse(M)
    if args.kind == "triangular":
        if method == "rows":
            return elementary.invert_triangular_rows(M)
        if method == "parallel":
            return elementary.invert_columns_parallel(M, workers=args.workers)
        return elementary.invert_triangular(M)
    if args.kind == "hessenberg":
        return hessenberg.invert_hessenberg(hessenberg.hessenberg_view(M, args.k))
    sizes = args.partition or instances.default_partition(M.shape[0])
    view = block.block_triangular_view(M, sizes)
    return block.invert_block_triangular(view, workers=1 if method != "parallel" else args.workers)


def cmd_invert(args):
    M = as_square(read_matrix(args.input))
    start = time.perf_counter()
    M_inv = _invert(M, args)
    elapsed = (time.perf_counter() - start) * 1e3
    if args.out:
        write_matrix(args.out, M_inv)
    _emit({"residual": _residual(M, M_inv), "method": args.method, "kind": args.kind, "elapsed_ms": elapsed})
    return EXIT_OK


def cmd_power(args):
    M = as_square(read_matrix(args.input))
    if args.method == "closed-form" or args.verify:
        P = powers.matrix_power(M, args.m, max_n=args.max_n)
    else:
        P = oracle_power(M, args.m)
    if args.verify:
        Q = oracle_power(M, args.m)
        _emit({"method": args.method, "m": args.m, "max_deviation": float(np.max(np.abs(P - Q)))})
        if args.method == "repeated":
            P = Q
    if args.out:
        write_matrix(args.out, P)
    return EXIT_OK


def cmd_factor(args):
    M = as_square(read_matrix(args.input))
    if args.mode == "columns":
        dense = [f.dense() for f in elementary.factorize_columns(M)]
    elif args.mode == "rows":
        dense = [f.dense() for f in elementary.factorize_rows(M)]
    else:
        sizes = args.partition or instances.default_partition(M.shape[0])
        dense = block.block_factorize(block.block_triangular_view(M, sizes))
    check = bool(np.array_equal(elementary.multiply_factors(dense), M))
    text = json.dumps({"mode": args.mode, "factors": [matrix_to_json(F) for F in dense], "check": check})
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK


def _timed(fn, A):
    start = time.perf_counter()
    out = fn(A)
    return (time.perf_counter() - start) * 1e3, out


def cmd_bench(args):
    stream = open(args.out, "w") if args.out else sys.stdout
    try:
        for n in args.n:
            for w in args.workers:
                seq_t, par_t, orc_t = [], [], []
                par_ok = orc_ok = True
                for rep in range(args.repeat):
                    rng = instances.instance_rng(args.seed, n * 1000 + rep)
                    A = instances.random_lower_triangular(n, rng, offdiag_scale=1.0 / n)
                    t, X = _timed(elementary.invert_triangular, A)
                    seq_t.append(t)
                    t, Y = _timed(lambda a: elementary.invert_columns_parallel(a, workers=w), A)
                    par_t.append(t)
                    try:
                        t, Z = _timed(oracle_inverse, A)
                        orc_ok &= relative_error(X, Z) <= 1e-9
                    except SingularMatrixError:
                        t, orc_ok = float("nan"), False
                    orc_t.append(t)
                    par_ok &= bool(np.array_equal(X, Y))
                for method, ts, ok in [
                    ("sequential", seq_t, orc_ok),
                    ("parallel", par_t, par_ok),
                    ("oracle", orc_t, orc_ok),
                ]:
                    _emit({"n": n, "workers": w, "method": method, "median_ms": statistics.median(ts), "agree": ok},
                          stream)
    finally:
        if args.out:
            stream.close()
    return EXIT_OK


def build_parser():
    p = _Parser(prog="elemtri", description="Elementary triangular matrix toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a seeded random instance")
    g.add_argument("--kind", required=True, choices=["triangular", "tridiagonal", "hessenberg", "block-triangular"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, default=1)
    g.add_argument("--partition", type=_int_list)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    i = sub.add_parser("invert", help="invert a matrix file and report the residual")
    i.add_argument("input")
    i.add_argument("--kind", default="triangular", choices=["triangular", "hessenberg", "block", "general"])
    i.add_argument("--k", type=int, default=1)
    i.add_argument("--partition", type=_int_list)
    i.add_argument("--method", default="elementary", choices=["elementary", "rows", "parallel", "oracle"])
    i.add_argument("--workers", type=int, default=None)
    i.add_argument("--out")
    i.set_defaults(func=cmd_invert)

    w = sub.add_parser("power", help="raise a lower triangular matrix to a power")
    w.add_argument("input")
    w.add_argument("--m", type=int, required=True)
    w.add_argument("--method", default="closed-form", choices=["closed-form", "repeated"])
    w.add_argument("--verify", action="store_true")
    w.add_argument("--max-n", type=int, default=powers.MAX_POWER_N)
    w.add_argument("--out")
    w.set_defaults(func=cmd_power)

    f = sub.add_parser("factor", help="emit elementary factors as JSON")
    f.add_argument("input")
    f.add_argument("--mode", default="columns", choices=["columns", "rows", "blocks"])
    f.add_argument("--partition", type=_int_list)
    f.add_argument("--out")
    f.set_defaults(func=cmd_factor)

    b = sub.add_parser("bench", help="time sequential, column-parallel and oracle inversion")
    b.add_argument("--n", type=_int_list, default=[16, 64])
    b.add_argument("--workers", type=_int_list, default=[1, 8])
    b.add_argument("--repeat", type=int, default=3)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code
    if getattr(args, "m", 0) < 0 or getattr(args, "repeat", 1) < 1:
        print("elemtri: error: --m must be >= 0 and --repeat >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except SingularMatrixError as exc:
        witness = None if exc.witness is None else matrix_to_json(exc.witness)
        _emit({"error": "singular", "message": str(exc), "index": exc.index, "witness": witness}, sys.stderr)
        return EXIT_SINGULAR
    except SizeGuardError as exc:
        print(f"elemtri: {exc} (try --method repeated)", file=sys.stderr)
        return EXIT_GUARD
    except (OSError, MatrixFormatError, ShapeError, NotTriangularError, HessenbergError, ValueError) as exc:
        print(f"elemtri: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
