import pytest
from hypothesis import given

from fdgames import (
    FdGame,
    abstract_nash,
    analyze,
    fd_equilibria,
    fmdc,
    fmdc_agent,
    load_game,
    reflexive_transitive_closure,
    sinks,
    validate,
)
from fdgames.errors import MalformedGame, UnknownAgent
from fdgames.game import Diagnostic, GameDraft

from strategies import games


def names(game, nodes):
    return {game.situations[i] for i in nodes}


def eq_names(game, comps):
    return [names(game, c) for c in comps]


@pytest.fixture(scope="module")
def pd():
    return load_game("pd")


class TestFmdc:
    def test_row_agent_of_pd(self, pd):
        assert set(fmdc_agent(pd, "row").named_arcs()) == {("Q,Q", "F,Q"), ("Q,F", "F,F")}
        assert set(fmdc_agent(pd, 1).named_arcs()) == {("Q,Q", "Q,F"), ("F,Q", "F,F")}

    def test_empty_desirability(self):
        g = FdGame.from_arcs("ab", {"x": [("a", "b")]}, {})
        assert fmdc_agent(g, "x").arcs == frozenset()

    def test_desire_within_feasible(self):
        g = FdGame.from_arcs("abc", {"x": [("a", "b"), ("b", "c"), ("c", "a")]}, {"x": [("a", "b")]})
        assert fmdc_agent(g, "x") == g.desirability[0]

    def test_unknown_agent(self, pd):
        with pytest.raises(UnknownAgent):
            fmdc_agent(pd, "warden")
        with pytest.raises(UnknownAgent):
            fmdc_agent(pd, 7)

    def test_matching_pennies(self):
        g = load_game("mp")
        assert set(fmdc(g).named_arcs()) == {
            ("H,H", "H,T"), ("T,T", "T,H"), ("T,H", "H,H"), ("H,T", "T,T"),
        }

    def test_pd(self, pd):
        assert set(fmdc(pd).named_arcs()) == {
            ("Q,Q", "Q,F"), ("Q,Q", "F,Q"), ("Q,F", "F,F"), ("F,Q", "F,F"),
        }

    def test_single_agent_union(self):
        g = FdGame.from_arcs("abc", {"x": [("a", "b"), ("b", "c")]}, {"x": [("a", "b"), ("c", "b")]})
        assert fmdc(g) == fmdc_agent(g, "x")

    @given(games())
    def test_agent_fmdc_inside_both_relations(self, game):
        total = set()
        for i in range(len(game.agents)):
            arcs = fmdc_agent(game, i).arcs
            assert arcs <= game.feasibility[i].arcs and arcs <= game.desirability[i].arcs
            total |= arcs
        assert fmdc(game).arcs == total


class TestEquilibria:
    def test_pd(self, pd):
        assert names(pd, abstract_nash(pd)) == {"F,F"}

    def test_bos(self):
        g = load_game("bos")
        assert names(g, abstract_nash(g)) == {"B,B", "S,S"}

    def test_matching_pennies(self):
        assert abstract_nash(load_game("mp")) == frozenset()

    def test_hidden_coins(self):
        g = load_game("hidden_coins")
        assert eq_names(g, fd_equilibria(g)) == [{"N,N"}, {"H,H", "H,T", "T,H", "T,T"}]

    def test_wonderland(self):
        g = load_game("wonderland")
        assert set(fmdc(g).named_arcs()) == {
            ("A", "B"), ("A", "C"), ("B", "C"), ("C", "F"), ("F", "G"), ("G", "C"),
            ("B", "D"), ("B", "E"), ("E", "H"), ("H", "E"),
        }
        assert eq_names(g, fd_equilibria(g)) == [{"D"}, {"E", "H"}, {"C", "F", "G"}]

    def test_pd_with_communication(self):
        g = load_game("pd_comm")
        assert eq_names(g, fd_equilibria(g)) == [{"Q,Q", "Q,F", "F,Q", "F,F"}]

    def test_analyze_pd(self, pd):
        rep = analyze(pd)
        assert rep.nash_names() == ["F,F"]
        assert rep.equilibrium_names() == [["F,F"]]

    def test_analyze_wonderland(self):
        rep = analyze(load_game("wonderland"))
        assert rep.nash_names() == ["D"]
        assert [set(c) for c in rep.equilibrium_names()] == [{"D"}, {"E", "H"}, {"C", "F", "G"}]

    def test_no_desire_means_everything_is_nash(self):
        g = FdGame.from_arcs("abc", {"x": [("a", "b"), ("b", "c")], "y": [("c", "a")]}, {})
        assert analyze(g).abstract_nash == frozenset({0, 1, 2})

    def test_self_loop_fmdc_still_nash(self):
        g = FdGame.from_arcs("ab", {"x": [("a", "a"), ("a", "b")]}, {"x": [("a", "a")]})
        assert abstract_nash(g) == {0, 1}


class TestEquilibriumProperties:
    @given(games())
    def test_definition_matches_sinks(self, game):
        direct = {
            s for s in range(len(game.situations))
            if not any(
                (s, t) in game.feasibility[a].arcs and (s, t) in game.desirability[a].arcs
                for a in range(len(game.agents)) for t in range(len(game.situations)) if t != s
            )
        }
        assert abstract_nash(game) == direct == sinks(fmdc(game))

    @given(games())
    def test_singleton_equilibria_are_nash(self, game):
        rep = analyze(game)
        singletons = {next(iter(c)) for c in rep.fd_equilibria if len(c) == 1}
        assert singletons == rep.abstract_nash

    @given(games())
    def test_equilibria_exist_disjoint_and_ordered(self, game):
        eqs = fd_equilibria(game)
        assert eqs
        seen = set()
        for c in eqs:
            assert not (c & seen)
            seen |= c
        assert [min(c) for c in eqs] == sorted(min(c) for c in eqs)

    @given(games())
    def test_every_situation_reaches_an_equilibrium(self, game):
        closure = reflexive_transitive_closure(fmdc(game))
        eq_nodes = set().union(*fd_equilibria(game))
        for s in range(len(game.situations)):
            assert any((s, t) in closure.arcs for t in eq_nodes)

    @given(games())
    def test_equilibria_have_no_exit(self, game):
        rel = fmdc(game)
        for comp in fd_equilibria(game):
            assert all(v in comp for u, v in rel.arcs if u in comp)


class TestGameConstruction:
    def test_needs_an_agent(self):
        with pytest.raises(Exception):
            FdGame((), ("a",), (), ())

    def test_universe_mismatch(self, pd):
        other = load_game("mp")
        with pytest.raises(MalformedGame):
            FdGame(pd.agents, pd.situations, (pd.feasibility[0], other.feasibility[1]), pd.desirability)


class TestValidate:
    def test_well_formed(self, pd):
        assert validate(pd) == []

    def test_unknown_situation(self):
        draft = GameDraft(["A", "B"], ["x"], [("x", "feasible", "A", "Z")])
        assert validate(draft) == [Diagnostic("UnknownSituation", "Z")]

    def test_duplicate_agent(self):
        draft = GameDraft(["A"], ["x", "x"], [])
        assert [d.code for d in validate(draft)] == ["DuplicateAgent"]

    def test_several_problems(self):
        draft = GameDraft([], [], [("ghost", "desire", "P", "Q")])
        codes = [d.code for d in validate(draft)]
        assert codes == ["EmptyUniverse", "NoAgents", "UnknownAgent", "UnknownSituation", "UnknownSituation"]

    def test_build_refuses_invalid(self):
        with pytest.raises(MalformedGame):
            GameDraft(["A"], ["x", "x"], []).build()

    def test_build(self):
        g = GameDraft(["A", "B"], ["x"], [("x", "feasible", "A", "B"), ("x", "desire", "A", "B")]).build()
        assert analyze(g).nash_names() == ["B"]
