"""Feasibility/desirability games: equilibria, choice correspondences, dynamics."""

from importlib import resources

from .choice import (
    ChoiceAuditReport,
    SubsetFamily,
    audit,
    check_alpha,
    check_iota,
    check_kappa,
    check_propositions,
    check_semilattice,
    choose,
    in_domain,
)
from .errors import FDGameError
from .evolution import (
    AbsorptionStats,
    Outcome,
    Tactic,
    Terminal,
    Trajectory,
    absorption_stats,
    blink_game,
    classify_two_strategy,
    step,
    trajectory,
)
from .formats import parse_fdg, parse_nfg, serialize_fdg, serialize_nfg
from .game import (
    EquilibriumReport,
    FdGame,
    abstract_nash,
    analyze,
    fd_equilibria,
    fmdc,
    fmdc_agent,
    validate,
)
from .graph import (
    Relation,
    condense,
    intern_universe,
    is_acyclic,
    reflexive_transitive_closure,
    restrict,
    scc,
    sinks,
    transitive_closure,
)
from .normal_form import NormalFormGame, pure_nash_oracle, to_fd_game
from .report import emit_dot

__version__ = "0.1.0"

BUNDLED_GAMES = ("pd", "bos", "mp", "hidden_coins", "pd_comm", "wonderland")


def game_text(name: str, suffix: str = ".fdg") -> str:
    """Source of a bundled example game, e.g. ``game_text("wonderland")``."""
    return (resources.files(__package__) / "games" / f"{name}{suffix}").read_text(encoding="utf-8")


def load_game(name: str) -> FdGame:
    return parse_fdg(game_text(name))


def load_nfg(name: str) -> NormalFormGame:
    return parse_nfg(game_text(name, ".nfg"))
