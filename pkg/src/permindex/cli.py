"""Command-line front end: ``permindex {keygen,encode,decode,rank,unrank,indices,stats}``."""
from __future__ import annotations

import argparse
import os
import random
import secrets
import sys
import tempfile

from . import codec, matrix_io, stats
from .errors import ConstraintError, PermIndexError, UsageError
from .passkey import Passkey, derive_passkey, parse_passkey, serialize_passkey
from .perm_rank import OrderingMode, rank, unrank


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _write_output(path: str, data: bytes) -> None:
    """Write via a temporary file in the target directory so failures leave nothing behind."""
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".permindex-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        umask = os.umask(0)
        os.umask(umask)
        os.chmod(tmp, 0o666 & ~umask)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_key(path: str) -> Passkey:
    return parse_passkey(_read_input(path))


def _parse_values(text: str) -> list[int]:
    try:
        values = [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc
    if any(v < 0 for v in values):
        raise ConstraintError("values must be unsigned")
    return values


def cmd_keygen(args) -> int:
    ordering = OrderingMode.parse(args.ordering)
    if args.random:
        rng = random.Random(args.seed) if args.seed is not None else secrets.SystemRandom()
        key = Passkey(
            x=args.cc, w=args.width, ordering=ordering, filler=args.filler,
            placement_seed=rng.getrandbits(64), shuffle_seed=rng.getrandbits(64),
        )
    else:
        key = derive_passkey(args.secret, args.cc, args.width, ordering, args.filler)
    _write_output(args.output, serialize_passkey(key))
    if args.verbose:
        print(f"placement_seed=0x{key.placement_seed:016x}", file=sys.stderr)
        print(f"shuffle_seed=0x{key.shuffle_seed:016x}", file=sys.stderr)
    return 0


def _read_for_key(args, key: Passkey):
    data = _read_input(args.input)
    fmt = args.format or matrix_io.detect_format(data)
    m, fmt = matrix_io.read_matrix(data, fmt, w=key.w, name=args.input)
    return m, fmt


def cmd_encode(args) -> int:
    key = _load_key(args.key)
    m, fmt = _read_for_key(args, key)
    compound = codec.encode(m, key)
    _write_output(args.output, matrix_io.write_matrix(compound, fmt))
    return 0


def cmd_decode(args) -> int:
    key = _load_key(args.key)
    cm, fmt = _read_for_key(args, key)
    m = codec.decode(cm, key)
    _write_output(args.output, matrix_io.write_matrix(m, fmt))
    return 0


def cmd_rank(args) -> int:
    print(rank(_parse_values(args.row), OrderingMode.parse(args.ordering)))
    return 0


def cmd_unrank(args) -> int:
    arr = unrank(_parse_values(args.multiset), args.index, OrderingMode.parse(args.ordering))
    print(",".join(map(str, arr)))
    return 0


def cmd_indices(args) -> int:
    data = _read_input(args.input)
    m, _ = matrix_io.read_matrix(data, args.format, name=args.input)
    ranks = codec.permutation_indices(m, args.cc, OrderingMode.parse(args.ordering))
    text = "".join(f"{j},{r}\n" for j, r in enumerate(ranks.tolist()))
    if args.output:
        _write_output(args.output, text.encode("ascii"))
    else:
        sys.stdout.write(text)
    return 0


def cmd_stats(args) -> int:
    data = _read_input(args.input)
    m, _ = matrix_io.read_matrix(data, args.format, w=args.width, name=args.input)
    width = args.width or codec.element_width(m)
    guess = stats.guess_probability(m, args.cc)
    exp = stats.expansion_report(m.shape[0], m.shape[1], args.cc, width)

    probs = guess.chunk_probabilities
    print(f"chunks: {len(probs)}")
    if len(probs) and probs.min() == probs.max():
        print(f"per-chunk p = {probs[0]:.6f} (1/{int(guess.counts[0])})")
    else:
        print(f"per-chunk p: min {probs.min():.6g}, max {probs.max():.6g}")
    print(f"log10 total = {guess.log10_probability:.6f}")
    if guess.probability is None:
        print("total = underflow (below 1e-300)")
    else:
        print(f"total ≈ {guess.probability:.6g}")
    print(f"O = {exp.O}, c = {exp.c}, Mx = {exp.Mx}, S = {exp.S}")
    print(f"ratio = {exp.ratio:.6g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permindex",
        description="Hide chunk orderings of integer matrices behind a passkey.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    ordering_help = "reverse-lex (default) or lex"
    fmt_choices = list(matrix_io.FORMATS)

    p = sub.add_parser("keygen", help="write a passkey file")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--secret")
    src.add_argument("--random", action="store_true")
    p.add_argument("--seed", type=int, help="seed for --random (reproducible keys)")
    p.add_argument("--cc", type=int, required=True, help="column constant, 2..9")
    p.add_argument("--width", type=int, default=8)
    p.add_argument("--ordering", default="reverse-lex", help=ordering_help)
    p.add_argument("--filler", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_keygen)

    for name, func, help_ in (
        ("encode", cmd_encode, "encode a matrix into a compound"),
        ("decode", cmd_decode, "restore a matrix from a compound"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("-k", "--key", required=True)
        p.add_argument("-i", "--input", required=True)
        p.add_argument("-o", "--output", required=True)
        p.add_argument("--format", choices=fmt_choices)
        p.set_defaults(func=func)

    p = sub.add_parser("rank", help="permutation index of one arrangement")
    p.add_argument("--row", required=True)
    p.add_argument("--ordering", default="reverse-lex", help=ordering_help)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("unrank", help="arrangement at a permutation index")
    p.add_argument("--multiset", required=True)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--ordering", default="reverse-lex", help=ordering_help)
    p.set_defaults(func=cmd_unrank)

    p = sub.add_parser("indices", help="chunk_index,rank series as CSV")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--cc", type=int, required=True)
    p.add_argument("--ordering", default="reverse-lex", help=ordering_help)
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=fmt_choices)
    p.set_defaults(func=cmd_indices)

    p = sub.add_parser("stats", help="guessing probability and size overhead")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--cc", type=int, required=True)
    p.add_argument("--width", type=int)
    p.add_argument("--format", choices=fmt_choices)
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PermIndexError as exc:
        print(f"permindex {args.command}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
