"""Command-line entry point for omega-pushdown.

Subcommands read an automaton spec file (``-`` for stdin) and print plain
text on stdout; structured logs go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence

from omega_pushdown import __version__
from omega_pushdown.automaton.lasso import LassoWord
from omega_pushdown.automaton.model import AlphabetError, InvalidAutomatonError, OmegaPda
from omega_pushdown.cli.commands import (
    EXIT_INPUT_ERROR,
    CommandOutput,
    cmd_accept,
    cmd_accept_omega,
    cmd_count,
    cmd_enumerate,
    cmd_grammar,
    cmd_verify,
    read_word,
)
from omega_pushdown.cli.specfile import SpecError, load_spec
from omega_pushdown.config import Settings, get_settings
from omega_pushdown.utils import get_logger, setup_logging
from omega_pushdown.verification.suites import SUITES


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omega-pushdown",
        description="Triple-pair grammars and Büchi acceptance for ω-pushdown automata.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=settings.log_level, help="structlog level (stderr)")
    sub = parser.add_subparsers(dest="command", required=True)

    grammar = sub.add_parser("grammar", help="print the mixed grammar G_l")
    grammar.add_argument("spec")
    grammar.add_argument("--trim", action="store_true", help="drop useless variables")

    accept = sub.add_parser("accept", help="print 1 if the finite word is accepted")
    accept.add_argument("spec")
    accept.add_argument("word", help="word over sigma, or eps")

    count = sub.add_parser("count", help="print the number of accepting derivations")
    count.add_argument("spec")
    count.add_argument("word", help="word over sigma, or eps")

    omega = sub.add_parser("accept-omega", help="print 1 if u·v^ω is accepted")
    omega.add_argument("spec")
    omega.add_argument("u", help="prefix, or eps")
    omega.add_argument("v", help="nonempty period")

    enumerate_ = sub.add_parser("enumerate", help="list words with their weights")
    enumerate_.add_argument("spec")
    enumerate_.add_argument("max_len", nargs="?", type=int, default=settings.enumerate_max_len)

    verify = sub.add_parser("verify", help="run property suites")
    verify.add_argument("spec", nargs="?", help="check this automaton instead of generated ones")
    verify.add_argument("--suite", choices=list(SUITES), help="run a single suite")
    verify.add_argument("--seed", type=int, default=None, help="random instance seed")
    return parser


def load_inputs(args: argparse.Namespace, settings: Settings) -> OmegaPda | None:
    """Parse the spec file and validate the command's arguments against it."""
    if args.command == "verify":
        return load_spec(args.spec, settings.nat_inf_bound) if args.spec else None
    pda = load_spec(args.spec, settings.nat_inf_bound)
    match args.command:
        case "accept" | "count":
            pda.check_word(read_word(args.word))
        case "accept-omega":
            u, v = read_word(args.u), read_word(args.v)
            pda.check_word(u + v)
            LassoWord(u, v)
        case "enumerate" if args.max_len < 0:
            raise ValueError("max_len must be non-negative")
    return pda


def dispatch(args: argparse.Namespace, settings: Settings, pda: OmegaPda | None) -> CommandOutput:
    if args.command == "verify":
        return cmd_verify(settings, args.suite, args.seed, pda)
    assert pda is not None
    match args.command:
        case "grammar":
            return cmd_grammar(pda, args.trim)
        case "accept":
            return cmd_accept(pda, read_word(args.word))
        case "count":
            return cmd_count(pda, read_word(args.word))
        case "accept-omega":
            return cmd_accept_omega(pda, read_word(args.u), read_word(args.v))
        case "enumerate":
            return cmd_enumerate(pda, args.max_len)
    raise ValueError(f"unknown command {args.command!r}")


def main(argv: Sequence[str] | None = None) -> int:
    settings = get_settings()
    args = build_parser(settings).parse_args(argv)
    setup_logging(args.log_level)
    logger = get_logger("omega_pushdown")
    logger.debug("command_started", command=args.command, version=__version__)

    try:
        pda = load_inputs(args, settings)
    except (SpecError, InvalidAutomatonError, AlphabetError, ValueError, OSError) as exc:
        print(f"omega-pushdown: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    output = dispatch(args, settings, pda)
    sys.stdout.write(output.text)
    return output.status


if __name__ == "__main__":
    sys.exit(main())
