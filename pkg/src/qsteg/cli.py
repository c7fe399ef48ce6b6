"""Command-line entry point.

    qsteg encode 41 --rank-mode --nbar 0.56
    qsteg decode 10001100 --nbar 0.56
    qsteg figure fig3 --nbar-grid 0.5:5:0.5 --samples 100000 --seed 7 --out fig3.csv
    qsteg verify codec

Every numeric flag can also be set through an environment variable named
QSTEG_<FLAG>, e.g. QSTEG_SAMPLES=20000 or QSTEG_NBAR_GRID=0.5:2:0.5. Flags on
the command line win. Exit codes: 0 success, 1 verification failure, 2 usage
or input error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import codec, figures, verify
from .rng import MASK64, stream

ENV_PREFIX = "QSTEG_"


class UsageError(Exception):
    pass


def _env(name: str, default=None):
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"), default)


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v <= MASK64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _prior(text: str):
    return text if text == "matched" else float(text)


def _common(p: argparse.ArgumentParser):
    p.add_argument("--nbar", type=float, default=_env("nbar"), help="mean thermal photon number")
    p.add_argument("--seed", type=_seed, default=_env("seed", "0"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qsteg", description=__doc__.split("\n\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encode", help="message -> constant-weight codeword")
    enc.add_argument("message", nargs="?", help="decimal or 0b-prefixed binary literal")
    enc.add_argument("--value", dest="value_flag", help="same as the positional message")
    enc.add_argument("--bits", type=int, help="message length in bits (defaults from the literal)")
    enc.add_argument("--rank-mode", action="store_true",
                     help="treat the value as a 1-based rank and size the code to it")
    _common(enc)

    dec = sub.add_parser("decode", help="codeword -> rank and message value")
    dec.add_argument("codeword")
    _common(dec)

    fig = sub.add_parser("figure", help="write the data table behind a figure")
    fig.add_argument("name", choices=figures.FIGURES)
    fig.add_argument("--nbar-grid", default=_env("nbar_grid"), help="a:b:step, inclusive")
    fig.add_argument("--f", type=_prior, default=_env("f", "0.5"), help="bit-1 prior, or 'matched'")
    fig.add_argument("--beta", type=float, default=_env("beta"), help="local oscillator amplitude")
    fig.add_argument("--samples", type=int, default=_env("samples", "100000"))
    fig.add_argument("--seed", type=_seed, default=_env("seed", "0"))
    fig.add_argument("--out", default=_env("out"), help="output file (stdout if omitted)")
    fig.add_argument("--format", choices=("csv", "json"), default=_env("format", "csv"))

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("suite", choices=sorted(verify.SUITES))
    return parser


def cmd_encode(args) -> int:
    text = args.message if args.message is not None else args.value_flag
    if text is None:
        raise UsageError("encode needs a message value")
    if args.nbar is None:
        raise UsageError("--nbar is required")
    n_bar = float(args.nbar)
    msg = codec.MessageWord.parse(text, args.bits)
    if args.rank_mode:
        if msg.value < 1:
            raise UsageError("ranks start at 1")
        code = codec.code_for_count(n_bar, msg.value)
        word = codec.unrank(msg.value, code)
    else:
        code = codec.code_for(n_bar, msg.bit_length)
        word = codec.encode_message(msg, code)
    plan = codec.fock_symbol_plan(word, n_bar, stream(int(args.seed)))
    print(f"N: {code.length}")
    print(f"n_z: {code.zeros}")
    print(f"codebook: {code.size}")
    print(f"codeword: {word}")
    print("symbols: " + " ".join("|0>" if c == "0" else "|1+>" for c in word))
    print("photons: " + " ".join(map(str, plan)))
    return 0


def cmd_decode(args) -> int:
    word = args.codeword.strip()
    if not word or set(word) - {"0", "1"}:
        raise UsageError(f"codeword must be a 0/1 string, got {word!r}")
    code = codec.ConstantWeightCode(len(word), word.count("0"))
    if args.nbar is not None:
        expected = codec.zeros_for(len(word), float(args.nbar))
        if expected != code.zeros:
            raise UsageError(
                f"codeword has {code.zeros} zeros; a length-{len(word)} code at n_bar={args.nbar} needs {expected}"
            )
    r = codec.rank(word, code)
    print(f"rank: {r}")
    print(f"value: {r - 1}")
    return 0


def cmd_figure(args) -> int:
    cfg = figures.ExperimentConfig(
        command=args.name,
        n_bar_grid=figures.parse_grid(args.nbar_grid) if args.nbar_grid else [],
        f=args.f,
        beta=float(args.beta) if args.beta is not None else None,
        samples=int(args.samples),
        seed=args.seed,
        output_path=args.out,
        format=args.format,
    )
    records = figures.GENERATORS[args.name](cfg)
    text = figures.render_table(records, cfg.metadata(), cfg.format)
    if cfg.output_path:
        Path(cfg.output_path).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify(args) -> int:
    checks = verify.SUITES[args.suite]()
    for c in checks:
        print(c.line())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} passed")
    return 1 if failed else 0


COMMANDS = {"encode": cmd_encode, "decode": cmd_decode, "figure": cmd_figure, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"qsteg: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
