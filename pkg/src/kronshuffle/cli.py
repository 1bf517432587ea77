"""Command-line front end.

Word-position permutations (``--sigma``) are written in 1-based cycle
notation as in ``"(1 3)"``; permutations of ``0..N-1`` are printed 0-based,
e.g. ``(0)(1 4 6)(2 8 9 3)(5 10 7)(11)``.

Exit status: 0 on success or verified identity, 1 when a verification
fails, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import dft, groups, rearrange, shuffling
from .config import LIMITS
from .linalg_kron import load_matrix, matrix_to_json
from .mixed_radix import BranchIndices, DigitWord, decode, encode
from .permutation import CycleSyntaxError, Permutation, format_cycles, parse_cycles, to_json
from .vectors import load_vector_csv, write_vector_csv


class UsageError(Exception):
    pass


def _int_list(text: str, what: str) -> list[int]:
    try:
        values = [int(t) for t in text.replace(" ", "").split(",") if t != ""]
    except ValueError:
        raise UsageError(f"invalid {what} list {text!r}: expected comma-separated integers") from None
    if not values:
        raise UsageError(f"empty {what} list")
    return values


def _branch(text: str) -> BranchIndices:
    values = _int_list(text, "branch")
    try:
        return BranchIndices(values)
    except ValueError as exc:
        raise UsageError(f"invalid branch list {text!r}: {exc}") from None


def _sigma(text: str, m: int) -> Permutation:
    try:
        return parse_cycles(text, m, one_based=True)
    except CycleSyntaxError as exc:
        raise UsageError(f"invalid sigma: {exc}") from None


def _emit_perm(perm: Permutation, fmt: str, out) -> None:
    if fmt == "cycles":
        print(format_cycles(perm.cycles()), file=out)
    elif fmt == "oneline":
        print(" ".join(map(str, perm.images)), file=out)
    elif fmt == "horizontal":
        print(" ".join(map(str, perm.horizontal())), file=out)
    else:
        print(json.dumps(to_json(perm)), file=out)


def _add_format(p):
    p.add_argument("--format", choices=("cycles", "oneline", "horizontal", "json"), default="cycles")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kronshuffle", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="digit word -> integer")
    p.add_argument("--branch", required=True)
    p.add_argument("--digits", required=True)

    p = sub.add_parser("decode", help="integer -> digit word")
    p.add_argument("--branch", required=True)
    p.add_argument("--x", type=int, required=True)

    p = sub.add_parser("shuffle", help="shuffling permutation for branch indices and sigma")
    p.add_argument("--branch", required=True)
    p.add_argument("--sigma", required=True, help='1-based cycles on word positions, e.g. "(1 3)"')
    _add_format(p)

    p = sub.add_parser("perfect", help="perfect shuffle, sigma = (1 2 ... m)")
    p.add_argument("--branch", required=True)
    _add_format(p)

    p = sub.add_parser("shk", help="the Sh_k shuffle on N points")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    _add_format(p)

    p = sub.add_parser("fixed-points", help="fixed points of one shuffle, or common to all")
    p.add_argument("--branch", required=True)
    p.add_argument("--sigma", help="omit for the points fixed by every sigma")

    p = sub.add_parser("group", help="order of the group generated by all shuffles")
    p.add_argument("--branch", required=True)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--dump", metavar="PATH", help="write elements as JSON lines of image tables")

    p = sub.add_parser("gsh", help="group generated by the Sh_k shuffles")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--dump", metavar="PATH")

    p = sub.add_parser("rearrange", help="reorder Kronecker factors read from matrix JSON files")
    p.add_argument("--factor", action="append", required=True, metavar="PATH",
                   help="matrix JSON file; repeat once per factor, in order")
    p.add_argument("--sigma", required=True, help="1-based cycles on factor positions")
    p.add_argument("--method", choices=("index", "matrix"), default="index")
    p.add_argument("--conjugate", action="store_true", help="square factors, use R = L^T")
    p.add_argument("--output", metavar="PATH")

    p = sub.add_parser("dft-check", help="verify the block factorization of F_N (P^sigma)^T")
    p.add_argument("--branch", required=True)
    p.add_argument("--sigma", required=True)
    p.add_argument("--show", action="store_true", help="print the assembled exponent table")

    p = sub.add_parser("radix-check", help="verify F_n P_s^r = (F_r kron I_s) T (I_r kron F_s)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)

    p = sub.add_parser("fft", help="FFT of a CSV vector (re,im per line)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--factors", help="comma list; default is the prime factorization")
    p.add_argument("--input", required=True, metavar="PATH")
    p.add_argument("--output", metavar="PATH")
    p.add_argument("--bench", action="store_true", help="compare against the direct O(N^2) sum")
    p.add_argument("--tol", type=float, default=1e-9, help="error budget per unit of N for --bench")
    return parser


def _dump_group(group, path):
    with open(path, "w") as fh:
        for g in group.elements:
            fh.write(json.dumps(list(g.images)) + "\n")


def _cmd_encode(args, out):
    basis = _branch(args.branch)
    try:
        word = DigitWord(tuple(_int_list(args.digits, "digit")), basis)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(encode(word), file=out)
    return 0


def _cmd_decode(args, out):
    basis = _branch(args.branch)
    try:
        word = decode(args.x, basis)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(",".join(map(str, word.digits)), file=out)
    return 0


def _cmd_shuffle(args, out):
    basis = _branch(args.branch)
    _emit_perm(shuffling.shuffle_perm(basis, _sigma(args.sigma, basis.m)), args.format, out)
    return 0


def _cmd_perfect(args, out):
    _emit_perm(shuffling.perfect_shuffle(_branch(args.branch)), args.format, out)
    return 0


def _cmd_shk(args, out):
    try:
        perm = shuffling.sh_k(args.n, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit_perm(perm, args.format, out)
    return 0


def _cmd_fixed_points(args, out):
    basis = _branch(args.branch)
    if args.sigma is None:
        points = shuffling.common_fixed(basis)
    else:
        points = shuffling.shuffle_perm(basis, _sigma(args.sigma, basis.m)).fixed_points()
    print(" ".join(map(str, sorted(points))), file=out)
    return 0


def _cmd_group(args, out):
    basis = _branch(args.branch)
    group = groups.k_group(basis, args.limit)
    print(f"order={group.order} abelian={str(group.is_abelian()).lower()} "
          f"generators={len(group.generators)}", file=out)
    if args.dump:
        _dump_group(group, args.dump)
    return 0


def _cmd_gsh(args, out):
    try:
        group = groups.gsh_group(args.n, args.limit)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(f"order={group.order} phi={groups.totient(args.n - 1)}", file=out)
    if args.dump:
        _dump_group(group, args.dump)
    return 0


def _cmd_rearrange(args, out):
    mats = []
    for path in args.factor:
        try:
            mats.append(load_matrix(path, integer=True))
        except OSError as exc:
            raise UsageError(f"cannot read factor file {path}: {exc.strerror}") from None
        except (ValueError, json.JSONDecodeError) as exc:
            raise UsageError(f"bad matrix file {path}: {exc}") from None
    if len(mats) < 2:
        raise UsageError("need at least two --factor files")
    sigma = _sigma(args.sigma, len(mats))
    try:
        if args.conjugate:
            result = rearrange.conjugate_kron(mats, sigma, method=args.method)
        else:
            result = rearrange.rearrange_kron(mats, sigma, method=args.method)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = json.dumps(matrix_to_json(result))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=out)
    return 0


def _cmd_dft_check(args, out):
    basis = _branch(args.branch)
    sigma = _sigma(args.sigma, basis.m)
    blocks = dft.theorem_blocks(basis, sigma)
    assembled = blocks.assemble()
    target = dft.dft_times_shuffle_transpose(basis, sigma)
    ok = assembled == target
    n_m, M = blocks.n_m, blocks.block_size
    moved = [c for c in sigma.cycles() if len(c) > 1]
    print(f"N={basis.total} n_m={n_m} block_size={M} sigma={format_cycles(moved, one_based=True) or '()'}",
          file=out)
    distinct_a = len({a.exps.tobytes() for a in blocks.A})
    print(f"A_h distinct={distinct_a}", file=out)
    for h in range(n_m):
        scal = " ".join(str(int(blocks.C[h][k].exps[0, 0])) for k in range(n_m))
        step = " ".join(str(int(blocks.C[h][k].exps[1, 1] - blocks.C[h][k].exps[0, 0]) % basis.total)
                        if M > 1 else "0" for k in range(n_m))
        print(f"C[{h}][*] scalar_exp={scal} diag_step={step}", file=out)
    if args.show:
        print(assembled, file=out)
    if ok:
        print("factorization: exact match", file=out)
        return 0
    bad = np.argwhere(assembled.exps != target.exps)
    i, j = bad[0]
    print(f"factorization: MISMATCH at {len(bad)} entries; first ({i},{j}): "
          f"blocks give w^{assembled.exps[i, j]}, F_N P^T has w^{target.exps[i, j]}", file=out)
    return 1


def _cmd_radix_check(args, out):
    r, s = args.r, args.s
    if r < 1 or s < 1 or r * s < 2:
        raise UsageError("need r, s >= 1 with r*s >= 2")
    if r * s > LIMITS.oracle_n:
        raise UsageError(f"r*s = {r * s} exceeds the oracle limit {LIMITS.oracle_n}")
    ok = dft.radix_identity_check(r, s)
    print(f"F_{r * s} P_{s}^{r} = (F_{r} x I_{s}) T^{s}_{r} (I_{r} x F_{s}): "
          f"{'exact match' if ok else 'MISMATCH'}", file=out)
    return 0 if ok else 1


def _cmd_fft(args, out):
    try:
        factors = _int_list(args.factors, "factor") if args.factors else None
        plan = dft.fft_plan(args.n, factors)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        x = load_vector_csv(args.input)
    except OSError as exc:
        raise UsageError(f"cannot read input file {args.input}: {exc.strerror}") from None
    except ValueError as exc:
        raise UsageError(f"bad vector file {args.input}: {exc}") from None
    if len(x) != args.n:
        raise UsageError(f"input has {len(x)} entries, expected {args.n}")
    counter = dft.OpCounter()
    t0 = time.perf_counter()
    y = dft.fft(x, plan, counter)
    t_fft = time.perf_counter() - t0
    if args.output:
        write_vector_csv(args.output, y)
    elif not args.bench:
        write_vector_csv(out, y)
    if not args.bench:
        return 0
    t0 = time.perf_counter()
    ref = dft.naive_dft(x)
    t_naive = time.perf_counter() - t0
    err = float(np.max(np.abs(y - ref)))
    budget = args.tol * args.n
    print(f"n={args.n} factors={','.join(map(str, plan.factors))}", file=out)
    print(f"naive_seconds={t_naive:.6f} fft_seconds={t_fft:.6f} speedup={t_naive / max(t_fft, 1e-12):.1f}",
          file=out)
    print(f"multiply_adds={counter.multiply_adds} naive_multiply_adds={args.n * args.n}", file=out)
    print(f"max_abs_error={err:.3e} budget={budget:.3e}", file=out)
    return 0 if err <= budget else 1


COMMANDS = {
    "encode": _cmd_encode,
    "decode": _cmd_decode,
    "shuffle": _cmd_shuffle,
    "perfect": _cmd_perfect,
    "shk": _cmd_shk,
    "fixed-points": _cmd_fixed_points,
    "group": _cmd_group,
    "gsh": _cmd_gsh,
    "rearrange": _cmd_rearrange,
    "dft-check": _cmd_dft_check,
    "radix-check": _cmd_radix_check,
    "fft": _cmd_fft,
}


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"kronshuffle {args.command}: error: {exc}", file=err)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"kronshuffle {args.command}: error: {exc}", file=err)
        return 2
    except OSError as exc:
        print(f"kronshuffle {args.command}: I/O error: {exc}", file=err)
        return 2


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
