"""Command-line interface.

Subcommands
-----------
* ``gen-kmat P Q``      — emit the commutation matrix K_{P,Q}.
* ``gen-ktensor M N``   — emit the order-4 transpose tensor for M x N input.
* ``gen-gct M N``       — emit a generalized commutation tensor built from a
  permutation of 1..N (``--perm``, identity by default) repeated on M modes.
* ``verify``            — run named verification suites and print a report.
* ``apply PHI A``       — apply a preserver file to a tensor/matrix file.
* ``unfold A``          — emit the balance unfolding of an even-order tensor.

Exit codes: 0 success, 2 usage or parse error, 3 dimension/domain error,
4 verification failure.

Output is deterministic: a fixed command line (plus seed) yields identical
bytes.  The environment variable ``COMMUTANT_SEED`` overrides ``--seed``.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import serialize
from .commutation_matrix import build_commutation
from .commutation_tensor import build_ctensor, gct_from_permutation
from .errors import ArgumentError, CommutantError, RangeError
from .permutation import Permutation
from .preserver import apply_rank_preserver
from .tensor import DenseTensor, balance_unfold
from .verify import DEFAULT_SIZES, SUITES, RunConfig, run_suites

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_VERIFY = 4


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _sizes(text: str) -> tuple[tuple[int, int], ...]:
    pairs = []
    for chunk in text.split(","):
        parts = chunk.lower().split("x")
        if len(parts) != 2:
            raise argparse.ArgumentTypeError(f"bad size {chunk!r}; expected like 2x3")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"bad size {chunk!r}: {exc}") from exc
    if not pairs:
        raise argparse.ArgumentTypeError("no sizes given")
    return tuple(pairs)


def _perm_arg(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad permutation {text!r}: {exc}") from exc


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="output format where both are defined (default: text)",
    )
    common.add_argument("--tol", type=float, default=1e-12, help="comparison tolerance")
    common.add_argument("--seed", type=int, default=0, help="random seed")
    common.add_argument(
        "--trials", type=_positive_int, default=20, help="random trials per check"
    )

    parser = argparse.ArgumentParser(
        prog="commutant",
        description="Commutation matrices/tensors, vec-Kronecker calculus, "
        "and rank/determinant preservers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-kmat", parents=[common], help="emit K_{P,Q}")
    p.add_argument("p", type=_positive_int)
    p.add_argument("q", type=_positive_int)

    p = sub.add_parser(
        "gen-ktensor", parents=[common], help="emit the order-4 transpose tensor"
    )
    p.add_argument("m", type=_positive_int)
    p.add_argument("n", type=_positive_int)

    p = sub.add_parser(
        "gen-gct", parents=[common], help="emit a generalized commutation tensor"
    )
    p.add_argument("m", type=_positive_int)
    p.add_argument("n", type=_positive_int)
    p.add_argument(
        "--perm",
        type=_perm_arg,
        default=None,
        help="permutation of 1..N as comma-separated images (default: identity)",
    )

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument(
        "--suite",
        action="append",
        dest="suites",
        metavar="NAME",
        help=f"suite to run, repeatable (default: all; one of {', '.join(SUITES)})",
    )
    p.add_argument(
        "--sizes",
        type=_sizes,
        default=None,
        metavar="AxB,CxD",
        help="comma-separated size pairs (default: 2x2,2x3,3x2,3x3)",
    )
    p.add_argument(
        "--inject-fault",
        action="store_true",
        help="corrupt one check to demonstrate failure reporting",
    )

    p = sub.add_parser("apply", parents=[common], help="apply a preserver to a tensor")
    p.add_argument("preserver", help="preserver JSON file")
    p.add_argument("tensor", help="tensor JSON or matrix text file")

    p = sub.add_parser("unfold", parents=[common], help="balance-unfold a tensor")
    p.add_argument("tensor", help="tensor JSON or matrix text file")

    return parser


def _read_tensor_file(path: str) -> DenseTensor:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise serialize.ParseError(f"cannot read {path}: {exc}") from exc
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return serialize.tensor_from_json(text)
    return DenseTensor(serialize.matrix_from_text(text))


def _read_preserver_file(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise serialize.ParseError(f"cannot read {path}: {exc}") from exc
    return serialize.preserver_from_json(text)


def _effective_seed(args) -> int:
    env = os.environ.get("COMMUTANT_SEED")
    if env is None:
        return args.seed
    try:
        return int(env)
    except ValueError as exc:
        raise serialize.ParseError(f"COMMUTANT_SEED is not an integer: {env!r}") from exc


def _cmd_gen_kmat(args) -> int:
    k = build_commutation(args.p, args.q)
    if args.format == "json":
        print(serialize.commutation_to_json(k))
    else:
        sys.stdout.write(serialize.matrix_to_text(k.dense()))
    return EXIT_OK


def _cmd_gen_ktensor(args) -> int:
    kt = build_ctensor(args.m, args.n)
    print(serialize.tensor_to_json(kt.backing))
    return EXIT_OK


def _cmd_gen_gct(args) -> int:
    images = args.perm if args.perm is not None else tuple(range(1, args.n + 1))
    try:
        pi = Permutation(images)
        if pi.degree != args.n:
            raise ArgumentError(f"degree {pi.degree} != {args.n}")
    except (ArgumentError, RangeError) as exc:
        raise serialize.ParseError(f"--perm must permute 1..{args.n}: {exc}") from exc
    g = gct_from_permutation(pi, args.m)
    print(serialize.gct_to_json(g))
    return EXIT_OK


def _cmd_verify(args) -> int:
    cfg = RunConfig(
        sizes=args.sizes if args.sizes is not None else DEFAULT_SIZES,
        seed=_effective_seed(args),
        trials=args.trials,
        tol=args.tol,
    )
    results = run_suites(cfg, args.suites, inject_fault=args.inject_fault)
    if args.format == "json":
        payload = {
            "seed": cfg.seed,
            "suites": [
                {"name": r.name, "checks": r.checks, "failures": list(r.failures)}
                for r in results
            ],
            "passed": all(r.passed for r in results),
        }
        print(serialize.canonical_json(payload))
    else:
        for r in results:
            if r.passed:
                print(f"{r.name}: PASS ({r.checks} checks)")
            else:
                print(f"{r.name}: FAIL ({len(r.failures)}/{r.checks} checks failed)")
                for msg in r.failures:
                    print(f"  FAIL {msg}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def _cmd_apply(args) -> int:
    phi = _read_preserver_file(args.preserver)
    tensor = _read_tensor_file(args.tensor)
    print(serialize.tensor_to_json(apply_rank_preserver(phi, tensor)))
    return EXIT_OK


def _cmd_unfold(args) -> int:
    unfolded = balance_unfold(_read_tensor_file(args.tensor))
    if args.format == "json":
        print(serialize.tensor_to_json(DenseTensor(unfolded)))
    else:
        sys.stdout.write(serialize.matrix_to_text(unfolded))
    return EXIT_OK


_COMMANDS = {
    "gen-kmat": _cmd_gen_kmat,
    "gen-ktensor": _cmd_gen_ktensor,
    "gen-gct": _cmd_gen_gct,
    "verify": _cmd_verify,
    "apply": _cmd_apply,
    "unfold": _cmd_unfold,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code in (0, None):
            return EXIT_OK
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except serialize.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CommutantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
