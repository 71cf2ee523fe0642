"""FD games: agents moving between situations along feasible, desired arcs.

A game pairs each agent with a feasibility relation (which moves the agent
can make) and a desirability relation (which moves it wants).  Their
intersection, unioned over agents, is the *feasible and more desirable
choice* relation (FMDC).  Its sinks are the abstract Nash equilibria; its
terminal strongly connected components are the FD equilibria.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import EmptyUniverse, MalformedGame, UnknownAgent
from .graph import ReducedGraph, Relation, condense, intern_universe, scc, sinks

Agent = int | str


@dataclass(frozen=True)
class FdGame:
    """Agents, situations, and per-agent feasibility/desirability relations.

    ``feasibility[i]`` and ``desirability[i]`` belong to ``agents[i]`` and all
    share the universe ``situations``.  Arcs are stored exactly as declared:
    no reflexive or transitive completion is applied.
    """

    agents: tuple[str, ...]
    situations: tuple[str, ...]
    feasibility: tuple[Relation, ...]
    desirability: tuple[Relation, ...]

    def __post_init__(self):
        for name in ("agents", "situations", "feasibility", "desirability"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not self.agents:
            raise EmptyUniverse("agent table")
        intern_universe(self.agents)
        intern_universe(self.situations)
        if len(self.feasibility) != len(self.agents) or len(self.desirability) != len(self.agents):
            raise MalformedGame("every agent needs one feasibility and one desirability relation")
        for rel in self.feasibility + self.desirability:
            if rel.names != self.situations:
                raise MalformedGame("relation universe differs from the game's situations")

    @classmethod
    def from_arcs(
        cls,
        situations: Sequence[str],
        feasible: Mapping[str, Iterable[tuple[str, str]]],
        desirable: Mapping[str, Iterable[tuple[str, str]]],
        agents: Sequence[str] | None = None,
    ) -> FdGame:
        """Build a game from arcs given by situation name, keyed by agent name.

        Agents default to the keys of ``feasible`` then ``desirable``, in
        first-seen order; an agent missing from either mapping gets no arcs.
        """
        if agents is None:
            agents = list(dict.fromkeys([*feasible, *desirable]))
        for name in [*feasible, *desirable]:
            if name not in agents:
                raise UnknownAgent(name)
        situations = tuple(situations)
        return cls(
            tuple(agents),
            situations,
            tuple(Relation.from_names(situations, feasible.get(a, ())) for a in agents),
            tuple(Relation.from_names(situations, desirable.get(a, ())) for a in agents),
        )

    def agent_index(self, a: Agent) -> int:
        if isinstance(a, str):
            try:
                return self.agents.index(a)
            except ValueError:
                raise UnknownAgent(a) from None
        if isinstance(a, int) and not isinstance(a, bool) and 0 <= a < len(self.agents):
            return a
        raise UnknownAgent(a)

    @cached_property
    def situation_index(self) -> Mapping[str, int]:
        return {name: i for i, name in enumerate(self.situations)}


def fmdc_agent(game: FdGame, a: Agent) -> Relation:
    """One agent's feasible and more desirable choice: feasibility ∩ desirability."""
    i = game.agent_index(a)
    return Relation(game.situations, game.feasibility[i].arcs & game.desirability[i].arcs)


def fmdc(game: FdGame) -> Relation:
    """Union of every agent's feasible and more desirable choice."""
    arcs: set[tuple[int, int]] = set()
    for i in range(len(game.agents)):
        arcs |= game.feasibility[i].arcs & game.desirability[i].arcs
    return Relation(game.situations, frozenset(arcs))


def _nash_by_definition(game: FdGame) -> frozenset[int]:
    # s qualifies iff no agent has a feasible, desired move to some s' != s
    bad = set()
    for feas, des in zip(game.feasibility, game.desirability):
        for s, t in feas.arcs:
            if s != t and (s, t) in des.arcs:
                bad.add(s)
    return frozenset(range(len(game.situations))) - bad


def abstract_nash(game: FdGame) -> frozenset[int]:
    result = sinks(fmdc(game))
    if __debug__:
        assert result == _nash_by_definition(game), "sink and definitional characterizations disagree"
    return result


def _terminal_components(reduced: ReducedGraph) -> tuple[frozenset[int], ...]:
    terminal = sinks(reduced.relation)
    comps = [reduced.partition.components[c] for c in sorted(terminal)]
    return tuple(sorted(comps, key=min))


def fd_equilibria(game: FdGame) -> tuple[frozenset[int], ...]:
    """Terminal SCCs of the FMDC relation, ordered by smallest member index."""
    rel = fmdc(game)
    return _terminal_components(condense(rel, scc(rel)))


@dataclass(frozen=True)
class EquilibriumReport:
    abstract_nash: frozenset[int]
    fd_equilibria: tuple[frozenset[int], ...]
    fmdc: Relation
    reduced: ReducedGraph = field(repr=False)

    @property
    def situations(self) -> tuple[str, ...]:
        return self.fmdc.names

    def nash_names(self) -> list[str]:
        return self.fmdc.label(self.abstract_nash)

    def equilibrium_names(self) -> list[list[str]]:
        return [self.fmdc.label(c) for c in self.fd_equilibria]


def analyze(game: FdGame) -> EquilibriumReport:
    rel = fmdc(game)
    reduced = condense(rel, scc(rel))
    return EquilibriumReport(
        abstract_nash=abstract_nash(game),
        fd_equilibria=_terminal_components(reduced),
        fmdc=rel,
        reduced=reduced,
    )


# -- validation of not-yet-built games --------------------------------------


@dataclass(frozen=True)
class Diagnostic:
    code: str
    subject: str

    def __str__(self) -> str:
        return f"{self.code}({self.subject!r})"


@dataclass
class GameDraft:
    """Name-level game description, possibly inconsistent.

    ``arcs`` holds ``(agent, kind, source, target)`` with kind ``"feasible"``
    or ``"desire"``.
    """

    situations: list[str] = field(default_factory=list)
    agents: list[str] = field(default_factory=list)
    arcs: list[tuple[str, str, str, str]] = field(default_factory=list)

    def build(self) -> FdGame:
        problems = validate(self)
        if problems:
            raise MalformedGame("; ".join(map(str, problems)))
        feasible: dict[str, list[tuple[str, str]]] = {a: [] for a in self.agents}
        desirable: dict[str, list[tuple[str, str]]] = {a: [] for a in self.agents}
        for agent, kind, src, dst in self.arcs:
            (feasible if kind == "feasible" else desirable)[agent].append((src, dst))
        return FdGame.from_arcs(self.situations, feasible, desirable, agents=self.agents)


def _draft_of(game: FdGame) -> GameDraft:
    arcs = []
    for i, agent in enumerate(game.agents):
        arcs += [(agent, "feasible", u, v) for u, v in game.feasibility[i].named_arcs()]
        arcs += [(agent, "desire", u, v) for u, v in game.desirability[i].named_arcs()]
    return GameDraft(list(game.situations), list(game.agents), arcs)


def validate(game: FdGame | GameDraft) -> list[Diagnostic]:
    """Report problems instead of raising; an empty list means buildable."""
    draft = _draft_of(game) if isinstance(game, FdGame) else game
    out: list[Diagnostic] = []
    if not draft.situations:
        out.append(Diagnostic("EmptyUniverse", "situations"))
    if not draft.agents:
        out.append(Diagnostic("NoAgents", "agents"))
    seen: set[str] = set()
    for name in draft.situations:
        if name in seen:
            out.append(Diagnostic("DuplicateSituation", name))
        seen.add(name)
    known_agents: set[str] = set()
    for name in draft.agents:
        if name in known_agents:
            out.append(Diagnostic("DuplicateAgent", name))
        known_agents.add(name)
    reported: set[tuple[str, str]] = set()
    for agent, kind, src, dst in draft.arcs:
        if agent not in known_agents and ("UnknownAgent", agent) not in reported:
            reported.add(("UnknownAgent", agent))
            out.append(Diagnostic("UnknownAgent", agent))
        if kind not in ("feasible", "desire") and ("UnknownArcKind", kind) not in reported:
            reported.add(("UnknownArcKind", kind))
            out.append(Diagnostic("UnknownArcKind", kind))
        for name in (src, dst):
            if name not in seen and ("UnknownSituation", name) not in reported:
                reported.add(("UnknownSituation", name))
                out.append(Diagnostic("UnknownSituation", name))
    return out

