"""Line-oriented text formats for FD games (``.fdg``) and normal-form games (``.nfg``).

``.fdg``::

    situations <name>+
    agent <name>
    feasible <name> -> <name>      # or <->, which adds both directions
    desire <name> -> <name>

Arc lines belong to the most recent ``agent``; ``situations`` comes once,
before any arc.  ``.nfg``::

    players <name>+
    strategies <player> <name>+
    payoff <strat>,<strat>[,...] = <int>[ <int>...]

``#`` starts a comment in both formats.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    ArcBeforeAgent,
    ArityMismatch,
    DuplicateSituationsLine,
    MissingProfile,
    ParseError,
    UnknownSituation,
)
from .game import FdGame, GameDraft, validate
from .normal_form import NormalFormGame

NAME = re.compile(r"[A-Za-z0-9_,()]+")
_INT = re.compile(r"[+-]?[0-9]+")


def _tokens(line: str) -> list[tuple[int, str]]:
    """Whitespace-separated tokens with 1-based columns, comments stripped."""
    cut = line.find("#")
    if cut >= 0:
        line = line[:cut]
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]


def _name(lineno: int, col: int, tok: str, what: str = "name") -> str:
    if not NAME.fullmatch(tok):
        raise ParseError(lineno, col, f"invalid {what} {tok!r}")
    return tok


@dataclass
class FdgDocument:
    """A parsed ``.fdg`` file: the game draft plus where each item was declared."""

    draft: GameDraft = field(default_factory=GameDraft)
    agent_lines: list[int] = field(default_factory=list)
    arc_positions: list[tuple[int, int]] = field(default_factory=list)
    situations_line: int | None = None

    def to_game(self) -> FdGame:
        problems = validate(self.draft)
        if problems:
            first = problems[0]
            line = self._line_of(first.code, first.subject)
            raise ParseError(line, 1, str(first))
        return self.draft.build()

    def _line_of(self, code: str, subject: str) -> int:
        if code == "DuplicateAgent":
            hits = [ln for ln, a in zip(self.agent_lines, self.draft.agents) if a == subject]
            return hits[1] if len(hits) > 1 else hits[0]
        return self.situations_line or 1


def parse_fdg_document(text: str) -> FdgDocument:
    doc = FdgDocument()
    known: set[str] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = _tokens(line)
        if not toks:
            continue
        col, word = toks[0]
        args = toks[1:]
        if word == "situations":
            if doc.situations_line is not None:
                raise DuplicateSituationsLine(lineno, col)
            if not args:
                raise ParseError(lineno, col, "'situations' needs at least one name")
            doc.situations_line = lineno
            for c, tok in args:
                name = _name(lineno, c, tok, "situation name")
                if name in known:
                    raise ParseError(lineno, c, f"situation {name!r} declared twice")
                known.add(name)
                doc.draft.situations.append(name)
        elif word == "agent":
            if len(args) != 1:
                raise ParseError(lineno, col, "'agent' takes exactly one name")
            c, tok = args[0]
            doc.draft.agents.append(_name(lineno, c, tok, "agent name"))
            doc.agent_lines.append(lineno)
        elif word in ("feasible", "desire"):
            if not doc.draft.agents:
                raise ArcBeforeAgent(lineno, col)
            if doc.situations_line is None:
                raise ParseError(lineno, col, "'situations' must precede all arcs")
            if len(args) != 3 or args[1][1] not in ("->", "<->"):
                raise ParseError(lineno, col, f"expected '{word} <name> -> <name>' or '<->'")
            (c1, src), (_, arrow), (c2, dst) = args
            for c, tok in ((c1, src), (c2, dst)):
                _name(lineno, c, tok, "situation name")
                if tok not in known:
                    raise UnknownSituation(tok, lineno, c)
            agent = doc.draft.agents[-1]
            doc.draft.arcs.append((agent, word, src, dst))
            doc.arc_positions.append((lineno, col))
            if arrow == "<->":
                doc.draft.arcs.append((agent, word, dst, src))
                doc.arc_positions.append((lineno, col))
        else:
            raise ParseError(lineno, col, f"unknown keyword {word!r}")
    if doc.situations_line is None:
        raise ParseError(1, 1, "missing 'situations' line")
    if not doc.draft.agents:
        raise ParseError(1, 1, "at least one 'agent' is required")
    return doc


def parse_fdg(text: str) -> FdGame:
    return parse_fdg_document(text).to_game()


def _arc_lines(keyword: str, arcs: frozenset[tuple[int, int]], names) -> list[str]:
    out = []
    for u, v in sorted(arcs):
        if u != v and (v, u) in arcs:
            if u < v:
                out.append(f"{keyword} {names[u]} <-> {names[v]}")
        else:
            out.append(f"{keyword} {names[u]} -> {names[v]}")
    return out


def serialize_fdg(game: FdGame) -> str:
    names = game.situations
    lines = ["situations " + " ".join(names)]
    for i, agent in enumerate(game.agents):
        lines.append(f"agent {agent}")
        lines += _arc_lines("feasible", game.feasibility[i].arcs, names)
        lines += _arc_lines("desire", game.desirability[i].arcs, names)
    return "\n".join(lines) + "\n"


# -- normal form ----------------------------------------------------------------


def parse_nfg(text: str) -> NormalFormGame:
    players: list[str] | None = None
    strategies: dict[str, list[str]] = {}
    payoffs: dict[tuple[str, ...], tuple[Fraction, ...]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = _tokens(line)
        if not toks:
            continue
        col, word = toks[0]
        args = toks[1:]
        if word == "players":
            if players is not None:
                raise ParseError(lineno, col, "'players' may only be declared once")
            if not args:
                raise ParseError(lineno, col, "'players' needs at least one name")
            players = []
            for c, tok in args:
                if tok in players:
                    raise ParseError(lineno, c, f"player {tok!r} declared twice")
                players.append(_name(lineno, c, tok, "player name"))
        elif word == "strategies":
            if players is None:
                raise ParseError(lineno, col, "'players' must come first")
            if len(args) < 2:
                raise ParseError(lineno, col, "expected 'strategies <player> <name>+'")
            c, player = args[0]
            if player not in players:
                raise ParseError(lineno, c, f"unknown player {player!r}")
            if player in strategies:
                raise ParseError(lineno, c, f"strategies for {player!r} given twice")
            strats = []
            for c, tok in args[1:]:
                if "," in tok or not NAME.fullmatch(tok):
                    raise ParseError(lineno, c, f"invalid strategy name {tok!r}")
                if tok in strats:
                    raise ParseError(lineno, c, f"strategy {tok!r} listed twice")
                strats.append(tok)
            strategies[player] = strats
        elif word == "payoff":
            if players is None or len(strategies) != len(players):
                raise ParseError(lineno, col, "all strategy sets must precede payoffs")
            if len(args) < 3 or args[1][1] != "=":
                raise ParseError(lineno, col, "expected 'payoff <profile> = <int>+'")
            c, prof = args[0]
            profile = tuple(prof.split(","))
            if len(profile) != len(players):
                raise ArityMismatch(lineno, c, f"profile has {len(profile)} strategies, expected {len(players)}")
            for p, s in zip(players, profile):
                if s not in strategies[p]:
                    raise ParseError(lineno, c, f"{s!r} is not a strategy of {p!r}")
            if profile in payoffs:
                raise ParseError(lineno, c, f"payoff for {prof} given twice")
            values = args[2:]
            if len(values) != len(players):
                raise ArityMismatch(lineno, values[0][0], f"{len(values)} payoffs given, expected {len(players)}")
            for c, tok in values:
                if not _INT.fullmatch(tok):
                    raise ParseError(lineno, c, f"payoff {tok!r} is not an integer")
            payoffs[profile] = tuple(Fraction(int(tok)) for _, tok in values)
        else:
            raise ParseError(lineno, col, f"unknown keyword {word!r}")
    if players is None:
        raise ParseError(1, 1, "missing 'players' line")
    missing = [p for p in players if p not in strategies]
    if missing:
        raise ParseError(1, 1, f"no strategies for player {missing[0]!r}")
    strategy_sets = tuple(tuple(strategies[p]) for p in players)
    for profile in itertools.product(*strategy_sets):
        if profile not in payoffs:
            raise MissingProfile(profile)
    return NormalFormGame(tuple(players), strategy_sets, payoffs)


def serialize_nfg(nf: NormalFormGame) -> str:
    lines = ["players " + " ".join(nf.players)]
    for p, strats in zip(nf.players, nf.strategies):
        lines.append(f"strategies {p} " + " ".join(strats))
    for profile in nf.profiles():
        values = " ".join(str(x) for x in nf.payoffs[profile])
        lines.append(f"payoff {','.join(profile)} = {values}")
    return "\n".join(lines) + "\n"
