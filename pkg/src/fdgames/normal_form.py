"""Strategic (normal-form) games and their translation to FD games.

Payoffs are exact :class:`fractions.Fraction` values so that strict
preference is decided without rounding.  A profile is a tuple of strategy
names in player order; as a situation it is named by joining them with ``,``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import MalformedGame, MissingProfile
from .game import FdGame
from .graph import Relation

Profile = tuple[str, ...]

_STRATEGY = re.compile(r"[A-Za-z0-9_()]+")


@dataclass(frozen=True)
class NormalFormGame:
    players: tuple[str, ...]
    strategies: tuple[tuple[str, ...], ...]
    payoffs: Mapping[Profile, tuple[Fraction, ...]]

    def __post_init__(self):
        players = tuple(self.players)
        strategies = tuple(tuple(s) for s in self.strategies)
        if not players:
            raise MalformedGame("a game needs at least one player")
        if len(set(players)) != len(players):
            raise MalformedGame("player names must be unique")
        for player in players:
            if not _STRATEGY.fullmatch(player):
                raise MalformedGame(f"invalid player name {player!r}")
        if len(strategies) != len(players):
            raise MalformedGame("one strategy set per player is required")
        for player, strats in zip(players, strategies):
            if not strats:
                raise MalformedGame(f"player {player!r} has no strategies")
            if len(set(strats)) != len(strats):
                raise MalformedGame(f"player {player!r} has duplicate strategy names")
            for s in strats:
                if not _STRATEGY.fullmatch(s):
                    raise MalformedGame(f"invalid strategy name {s!r}")
        payoffs = {}
        for profile in itertools.product(*strategies):
            if profile not in self.payoffs:
                raise MissingProfile(profile)
            vec = tuple(Fraction(x) for x in self.payoffs[profile])
            if len(vec) != len(players):
                raise MalformedGame(f"profile {','.join(profile)} needs {len(players)} payoffs")
            payoffs[profile] = vec
        if len(payoffs) != len(self.payoffs):
            raise MalformedGame("payoff given for a profile outside the strategy sets")
        object.__setattr__(self, "players", players)
        object.__setattr__(self, "strategies", strategies)
        object.__setattr__(self, "payoffs", payoffs)

    @classmethod
    def from_table(
        cls,
        players: Sequence[str],
        strategies: Sequence[Sequence[str]],
        table: Mapping[Profile | str, Sequence[int | Fraction]],
    ) -> NormalFormGame:
        """Accept profiles either as tuples or as comma-joined strings."""
        payoffs = {
            (tuple(k.split(",")) if isinstance(k, str) else tuple(k)): tuple(v)
            for k, v in table.items()
        }
        return cls(tuple(players), tuple(map(tuple, strategies)), payoffs)

    def profiles(self) -> list[Profile]:
        """All profiles; the first player's strategy varies slowest."""
        return list(itertools.product(*self.strategies))


def profile_name(profile: Profile) -> str:
    return ",".join(profile)


def to_fd_game(nf: NormalFormGame) -> FdGame:
    """The FD game abstracting ``nf``.

    Player ``a`` may move between two distinct profiles that differ only in
    ``a``'s own strategy, and desires every profile (feasible or not) that
    pays it strictly more.
    """
    profiles = nf.profiles()
    situations = tuple(profile_name(p) for p in profiles)
    n = len(profiles)
    feasibility, desirability = [], []
    for a in range(len(nf.players)):
        others = [p[:a] + p[a + 1 :] for p in profiles]
        pay = [nf.payoffs[p][a] for p in profiles]
        feas = frozenset(
            (i, j) for i in range(n) for j in range(n) if i != j and others[i] == others[j]
        )
        des = frozenset((i, j) for i in range(n) for j in range(n) if pay[j] > pay[i])
        feasibility.append(Relation(situations, feas))
        desirability.append(Relation(situations, des))
    return FdGame(nf.players, situations, tuple(feasibility), tuple(desirability))


def pure_nash_oracle(nf: NormalFormGame) -> set[Profile]:
    """Profiles where no player gains strictly by deviating alone (direct scan)."""
    result = set()
    for profile in nf.profiles():
        stable = True
        for a, strats in enumerate(nf.strategies):
            here = nf.payoffs[profile][a]
            for alt in strats:
                deviation = profile[:a] + (alt,) + profile[a + 1 :]
                if nf.payoffs[deviation][a] > here:
                    stable = False
                    break
            if not stable:
                break
        if stable:
            result.add(profile)
    return result
