"""Command-line entry point: ``fdgame <command> ...``.

Exit status is 0 on success, 1 on domain errors (bad input files, unknown
situations, capacity limits) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import report as render
from .choice import DEFAULT_MAX_NODES, audit
from .errors import FDGameError, UnknownSituation
from .evolution import (
    Tactic,
    absorption_stats,
    blink_game,
    classify_two_strategy,
    derive_seed,
    trajectory,
)
from .formats import parse_fdg, parse_nfg, serialize_fdg
from .game import analyze
from .normal_form import to_fd_game

SEED_ENV = "FDGAME_SEED"
_PUNCT = str.maketrans("", "", ",()")


class _Failure(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except FileNotFoundError:
        raise _Failure(f"{path}: file not found") from None
    except OSError as exc:
        raise _Failure(f"{path}: {exc.strerror}") from None


def _emit_analysis(game, fmt: str, out) -> None:
    rep = analyze(game)
    if fmt == "json":
        out.write(render.dumps(render.analysis_json(rep, game)))
    elif fmt == "dot":
        out.write(render.emit_dot(rep, reduced=True))
    else:
        out.write(render.analysis_text(rep, game))


def _cmd_analyze(args, out) -> None:
    _emit_analysis(parse_fdg(_read(args.file)), args.format, out)


def _cmd_from_nfg(args, out) -> None:
    game = to_fd_game(parse_nfg(_read(args.file)))
    if args.emit_fdg:
        out.write(serialize_fdg(game))
    else:
        _emit_analysis(game, args.format, out)


def _cmd_choice_audit(args, out) -> None:
    game = parse_fdg(_read(args.file))
    rep = audit(analyze(game).fmdc, max_nodes=args.max_nodes)
    if args.format == "json":
        out.write(render.dumps(render.audit_json(rep)))
    else:
        out.write(render.audit_text(rep))


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise _Failure(f"{SEED_ENV}={raw!r} is not an integer") from None


def _resolve_start(game, name: str) -> str:
    """Exact situation name, or the unique one equal to ``name`` once commas and parentheses are dropped."""
    if name in game.situation_index:
        return name
    bare = name.translate(_PUNCT)
    hits = [s for s in game.situations if s.translate(_PUNCT) == bare]
    if len(hits) != 1:
        raise UnknownSituation(name)
    return hits[0]


def _cmd_evolve(args, out) -> None:
    game = parse_fdg(_read(args.file))
    args.start = _resolve_start(game, args.start)
    seed = args.seed if args.seed is not None else _default_seed()
    max_steps = args.max_steps if args.max_steps is not None else len(game.situations) ** 2
    if args.trials < 1 or max_steps < 1:
        raise _Failure("--trials and --max-steps must be positive")
    stats = absorption_stats(game, args.start, args.trials, seed, max_steps=max_steps)
    if args.format == "json":
        out.write(render.dumps(render.stats_json(stats, game, args.start, seed, max_steps)))
    else:
        out.write(render.stats_text(stats, game, args.start, seed, max_steps))
    if args.dump:
        for i in range(args.trials):
            tr = trajectory(game, args.start, max_steps, derive_seed(seed, i))
            out.write(render.trajectory_line(tr, game) + "\n")


def _cmd_blink(args, out) -> None:
    game = blink_game(Tactic(args.tactic))
    _emit_analysis(game, args.format, out)
    if args.format == "text":
        out.write(render.outcome_line(classify_two_strategy(game)))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fdgame", description="Feasibility/desirability game analysis.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="equilibria of an .fdg game")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("from-nfg", help="abstract a normal-form game")
    p.add_argument("file")
    p.add_argument("--emit-fdg", action="store_true", help="print the FD game instead of its analysis")
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.set_defaults(func=_cmd_from_nfg)

    p = sub.add_parser("choice-audit", help="check choice axioms for the game's FMDC relation")
    p.add_argument("file")
    p.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_choice_audit)

    p = sub.add_parser("evolve", help="random walks along the FMDC relation")
    p.add_argument("file")
    p.add_argument("--start", required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=None, help=f"defaults to ${SEED_ENV}, else 0")
    p.add_argument("--max-steps", type=int, default=None, help="defaults to (number of situations)^2")
    p.add_argument("--dump", action="store_true", help="also print every trajectory")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_evolve)

    p = sub.add_parser("blink", help="the 'Blink and you lose' game for one tactic")
    p.add_argument("--tactic", required=True, choices=[t.value for t in Tactic])
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.set_defaults(func=_cmd_blink)
    return parser


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, stdout)
    except (FDGameError, _Failure) as exc:
        stderr.write(f"fdgame: error: {exc}\n")
        return 1
    return 0


run_cli = main

if __name__ == "__main__":
    raise SystemExit(main())
