"""Random walks along the FMDC relation and the "Blink and you lose" games.

Randomness comes from numpy's PCG64 bit generator.  A trajectory is fully
determined by its 64-bit seed.  Trial ``i`` of a batch started from
``base_seed`` uses the seed obtained from ``SeedSequence([base_seed, i])``
(first 64-bit word of its generated state), so batches are reproducible on
every platform.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ShapeMismatch, UnknownSituation
from .game import FdGame, analyze

SEED_MASK = (1 << 64) - 1


class Tactic(enum.Enum):
    FORESIGHT = "foresight"
    HINDSIGHT = "hindsight"
    OMNISIGHT = "omnisight"
    DEFEATISM = "defeatism"


class Outcome(enum.Enum):
    DOMINANCE = "dominance"
    BISTABILITY = "bistability"
    COEXISTENCE = "coexistence"
    NEUTRALITY = "neutrality"
    UNCLASSIFIED = "unclassified"


_BLINK_DESIRE = {
    "Left": [("R", "C"), ("C", "L")],
    "Right": [("L", "C"), ("C", "R")],
}

_BLINK_FEASIBLE = {
    Tactic.FORESIGHT: {"Left": [("C", "L")], "Right": [("C", "R")]},
    Tactic.HINDSIGHT: {"Left": [("R", "C")], "Right": [("L", "C")]},
    Tactic.OMNISIGHT: {"Left": [("C", "L"), ("R", "C")], "Right": [("C", "R"), ("L", "C")]},
    Tactic.DEFEATISM: {"Left": [("L", "C")], "Right": [("C", "R")]},
}


def blink_game(t: Tactic | str) -> FdGame:
    """Two players pass two tokens across a single edge; L, C, R name who holds them.

    Desirability is the same for every tactic except defeatism, where Left
    also wants to hand a token back from L.
    """
    t = Tactic(t)
    desire = {agent: list(arcs) for agent, arcs in _BLINK_DESIRE.items()}
    if t is Tactic.DEFEATISM:
        desire["Left"].append(("L", "C"))
    return FdGame.from_arcs(("L", "C", "R"), _BLINK_FEASIBLE[t], desire, agents=("Left", "Right"))


# -- walks --------------------------------------------------------------------


class Terminal(enum.Enum):
    ABSORBED_AT_NASH = "absorbed_at_nash"
    CYCLING_IN_FD_EQUILIBRIUM = "cycling_in_fd_equilibrium"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class Trajectory:
    """A walk from ``start``; ``steps[0] == start``.

    ``equilibrium`` is the reached FD equilibrium (a singleton for an
    abstract Nash equilibrium), or None when the budget ran out.
    """

    start: int
    steps: tuple[int, ...]
    terminal: Terminal
    equilibrium: frozenset[int] | None
    seed: int


@dataclass(frozen=True)
class _Dynamics:
    neighbors: tuple[tuple[int, ...], ...]
    terminal_of: tuple[frozenset[int] | None, ...]
    nash: frozenset[int]


@lru_cache(maxsize=256)
def _dynamics(game: FdGame) -> _Dynamics:
    report = analyze(game)
    neighbors = tuple(
        tuple(t for t in out if t != s) for s, out in enumerate(report.fmdc.successors)
    )
    terminal_of: list[frozenset[int] | None] = [None] * len(game.situations)
    for comp in report.fd_equilibria:
        for v in comp:
            terminal_of[v] = comp
    return _Dynamics(neighbors, tuple(terminal_of), report.abstract_nash)


def _situation(game: FdGame, s: int | str) -> int:
    if isinstance(s, str):
        try:
            return game.situation_index[s]
        except KeyError:
            raise UnknownSituation(s) from None
    if isinstance(s, (int, np.integer)) and 0 <= s < len(game.situations):
        return int(s)
    raise UnknownSituation(s)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed & SEED_MASK))


def derive_seed(base_seed: int, i: int) -> int:
    """Seed of trial ``i`` in a batch rooted at ``base_seed``."""
    ss = np.random.SeedSequence([base_seed & SEED_MASK, i])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def step(game: FdGame, s: int | str, rng: np.random.Generator) -> int:
    """Move to a uniformly chosen FMDC successor of ``s``, or stay if there is none."""
    s = _situation(game, s)
    out = _dynamics(game).neighbors[s]
    if not out:
        return s
    return out[int(rng.integers(len(out)))] if len(out) > 1 else out[0]


def trajectory(
    game: FdGame, start: int | str, max_steps: int, seed: int, linger: int = 0
) -> Trajectory:
    """Walk until an FD equilibrium is entered or ``max_steps`` moves are made.

    Entering a terminal component is detected from the component structure,
    not by revisits.  With ``linger > 0`` the walk continues that many extra
    moves inside a reached multi-node equilibrium, to show the cycling.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    dyn = _dynamics(game)
    current = _situation(game, start)
    rng = make_rng(seed)
    steps = [current]
    while True:
        comp = dyn.terminal_of[current]
        if current in dyn.nash:
            return Trajectory(steps[0], tuple(steps), Terminal.ABSORBED_AT_NASH, frozenset([current]), seed)
        if comp is not None:
            for _ in range(linger):
                current = step(game, current, rng)
                steps.append(current)
            return Trajectory(steps[0], tuple(steps), Terminal.CYCLING_IN_FD_EQUILIBRIUM, comp, seed)
        if len(steps) > max_steps:
            return Trajectory(steps[0], tuple(steps), Terminal.BUDGET_EXHAUSTED, None, seed)
        current = step(game, current, rng)
        steps.append(current)


@dataclass(frozen=True)
class AbsorptionStats:
    trials: int
    hits: dict[frozenset[int], int]
    non_absorbed: int

    @property
    def frequencies(self) -> dict[frozenset[int], Fraction]:
        return {eq: Fraction(k, self.trials) for eq, k in self.hits.items()}


def absorption_stats(
    game: FdGame,
    start: int | str,
    trials: int,
    base_seed: int,
    max_steps: int | None = None,
) -> AbsorptionStats:
    """Tally which FD equilibrium each of ``trials`` seeded walks ends in.

    ``max_steps`` defaults to the square of the number of situations.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if max_steps is None:
        max_steps = max(1, len(game.situations) ** 2)
    counts: Counter[frozenset[int]] = Counter()
    missed = 0
    for i in range(trials):
        tr = trajectory(game, start, max_steps, derive_seed(base_seed, i))
        if tr.equilibrium is None:
            missed += 1
        else:
            counts[tr.equilibrium] += 1
    hits = {eq: counts[eq] for eq in sorted(counts, key=min)}
    return AbsorptionStats(trials, hits, missed)


# -- two-strategy outcome classification --------------------------------------


def _line_shape(game: FdGame) -> tuple[int, int, int]:
    if len(game.situations) != 3:
        raise ShapeMismatch(f"expected 3 situations, got {len(game.situations)}")
    arcs = {(u, v) for u, v in analyze(game).fmdc.arcs if u != v}
    adjacent = [{v for u, v in arcs if u == s} | {u for u, v in arcs if v == s} for s in range(3)]
    interior = [s for s in range(3) if len(adjacent[s]) == 2]
    if len(interior) != 1:
        raise ShapeMismatch("no unique interior node joined to both others")
    c = interior[0]
    left, right = (s for s in range(3) if s != c)
    if (left, right) in arcs or (right, left) in arcs:
        raise ShapeMismatch("endpoints are joined directly")
    return left, c, right


def classify_two_strategy(game: FdGame) -> Outcome:
    """Map the FMDC pattern on an endpoint-interior-endpoint line to an outcome."""
    left, c, right = _line_shape(game)
    arcs = {(u, v) for u, v in analyze(game).fmdc.arcs if u != v}
    if arcs == {(c, left), (c, right)}:
        return Outcome.BISTABILITY
    if arcs == {(left, c), (right, c)}:
        return Outcome.COEXISTENCE
    if arcs == {(c, left), (c, right), (left, c), (right, c)}:
        return Outcome.NEUTRALITY
    if arcs in ({(left, c), (c, right)}, {(right, c), (c, left)}):
        return Outcome.DOMINANCE
    return Outcome.UNCLASSIFIED
