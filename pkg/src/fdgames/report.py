"""Text, JSON and DOT renderings of analysis, audit and simulation results.

JSON documents carry ``format_version`` (currently 1) and a ``kind`` field;
keys are emitted sorted so output is byte-stable.
"""

from __future__ import annotations

import json

from .choice import ChoiceAuditReport, Implication, Verdict
from .evolution import AbsorptionStats, Outcome, Trajectory
from .game import EquilibriumReport, FdGame

FORMAT_VERSION = 1


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _braces(names: list[str]) -> str:
    return "{" + ", ".join(names) + "}"


# -- equilibrium analysis ------------------------------------------------------


def analysis_json(report: EquilibriumReport, game: FdGame | None = None) -> dict:
    rel = report.fmdc
    reduced = report.reduced
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "analysis",
        "situations": list(rel.names),
        "fmdc": [list(a) for a in rel.named_arcs()],
        "abstract_nash": report.nash_names(),
        "fd_equilibria": report.equilibrium_names(),
        "reduced_graph": {
            "components": [rel.label(c) for c in reduced.partition.components],
            "arcs": [list(a) for a in reduced.relation.sorted_arcs()],
        },
    }
    if game is not None:
        doc["agents"] = list(game.agents)
    return doc


def analysis_text(report: EquilibriumReport, game: FdGame | None = None) -> str:
    rel = report.fmdc
    lines = []
    if game is not None:
        lines.append("agents: " + " ".join(game.agents))
    lines.append("situations: " + " ".join(rel.names))
    arcs = rel.named_arcs()
    lines.append(f"fmdc arcs ({len(arcs)}):")
    lines += [f"  {u} -> {v}" for u, v in arcs]
    nash = report.nash_names()
    lines.append("abstract Nash equilibria: " + (", ".join(nash) if nash else "none"))
    lines.append(f"FD equilibria ({len(report.fd_equilibria)}):")
    lines += [f"  {_braces(names)}" for names in report.equilibrium_names()]
    return "\n".join(lines) + "\n"


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(report: EquilibriumReport, reduced: bool = False, name: str = "fmdc") -> str:
    """DOT digraph of the FMDC relation.

    Abstract Nash equilibria get a doubled border; each multi-node FD
    equilibrium is a labelled cluster.  With ``reduced=True`` a second digraph
    of the condensation follows.
    """
    rel = report.fmdc
    nash = report.abstract_nash
    lines = [f"digraph {_dot_id(name)} {{"]
    clustered: set[int] = set()
    for k, comp in enumerate(report.fd_equilibria):
        if len(comp) < 2:
            continue
        clustered |= comp
        lines.append(f"  subgraph cluster_{k} {{")
        lines.append(f"    label={_dot_id('FD equilibrium ' + _braces(rel.label(comp)))};")
        lines += [f"    {_dot_id(rel.names[v])};" for v in sorted(comp)]
        lines.append("  }")
    for v, label in enumerate(rel.names):
        attrs = " [peripheries=2]" if v in nash else ""
        lines.append(f"  {_dot_id(label)}{attrs};")
    for u, v in rel.named_arcs():
        lines.append(f"  {_dot_id(u)} -> {_dot_id(v)};")
    lines.append("}")
    if reduced:
        red = report.reduced.relation
        terminal = {i for i, c in enumerate(report.reduced.partition.components) if c in report.fd_equilibria}
        lines.append(f"digraph {_dot_id(name + '_reduced')} {{")
        for i, label in enumerate(red.names):
            attrs = " [peripheries=2]" if i in terminal else ""
            lines.append(f"  {_dot_id(label)}{attrs};")
        for u, v in red.named_arcs():
            lines.append(f"  {_dot_id(u)} -> {_dot_id(v)};")
        lines.append("}")
    return "\n".join(lines) + "\n"


# -- choice audit --------------------------------------------------------------


def _verdict_json(v: Verdict, ground) -> dict:
    doc = {"passed": v.passed}
    if v.counterexample is not None:
        doc["counterexample"] = v.counterexample.named(ground)
    return doc


def _implication_json(p: Implication, ground) -> dict:
    doc = {"status": p.status, "hypotheses_hold": p.hypotheses_hold}
    if p.hypotheses_hold and not p.conclusion.passed:
        doc["counterexample"] = p.conclusion.counterexample.named(ground)
    return doc


def audit_json(report: ChoiceAuditReport) -> dict:
    g = report.ground
    return {
        "format_version": FORMAT_VERSION,
        "kind": "choice_audit",
        "ground": list(g),
        "convention": report.convention,
        "kappa": _verdict_json(report.kappa, g),
        "alpha": _verdict_json(report.alpha, g),
        "iota": _verdict_json(report.iota, g),
        "semilattice": report.semilattice.passed,
        "domain_total": report.domain_total,
        "single_valued": report.single_valued,
        "prop1": _implication_json(report.prop1, g),
        "prop2": [_implication_json(p, g) for p in report.prop2_items],
    }


def _verdict_line(label: str, v: Verdict, ground) -> str:
    if v.passed:
        return f"{label}: pass"
    return f"{label}: FAIL  counterexample {v.counterexample.named(ground)}"


def audit_text(report: ChoiceAuditReport) -> str:
    g = report.ground
    lines = [
        f"ground set ({len(g)}): " + " ".join(g),
        f"note: {report.convention}",
        _verdict_line("kappa", report.kappa, g),
        _verdict_line("alpha", report.alpha, g),
        _verdict_line("iota", report.iota, g),
        f"semi-lattice: {'yes' if report.semilattice.passed else 'no'}",
        f"domain total: {'yes' if report.domain_total else 'no'}",
        f"single-valued: {'yes' if report.single_valued else 'no'}",
        f"kappa and iota => C(A)&C(B) <= C(A&B): {report.prop1.status}",
        f"iota => alpha: {report.prop2_items[0].status}",
        f"kappa and alpha => iota: {report.prop2_items[1].status}",
    ]
    return "\n".join(lines) + "\n"


# -- evolution ----------------------------------------------------------------


def stats_json(stats: AbsorptionStats, game: FdGame, start: str, seed: int, max_steps: int) -> dict:
    names = game.situations
    return {
        "format_version": FORMAT_VERSION,
        "kind": "evolution",
        "start": start,
        "trials": stats.trials,
        "seed": seed,
        "max_steps": max_steps,
        "outcomes": [
            {
                "equilibrium": [names[i] for i in sorted(eq)],
                "abstract_nash": len(eq) == 1,
                "count": count,
                "frequency": str(stats.frequencies[eq]),
            }
            for eq, count in stats.hits.items()
        ],
        "non_absorbed": stats.non_absorbed,
    }


def stats_text(stats: AbsorptionStats, game: FdGame, start: str, seed: int, max_steps: int) -> str:
    names = game.situations
    lines = [f"start {start}, {stats.trials} trials, seed {seed}, max steps {max_steps}"]
    for eq, count in stats.hits.items():
        kind = "abstract Nash" if len(eq) == 1 else "FD equilibrium"
        label = _braces([names[i] for i in sorted(eq)])
        lines.append(f"  {label:<24} {kind:<15} {count:>8}  {float(stats.frequencies[eq]):.4f}")
    lines.append(f"  {'not absorbed':<24} {'':<15} {stats.non_absorbed:>8}")
    return "\n".join(lines) + "\n"


def trajectory_line(tr: Trajectory, game: FdGame) -> str:
    return " ".join(game.situations[i] for i in tr.steps)


def outcome_line(outcome: Outcome) -> str:
    return f"evolutionary outcome: {outcome.value}\n"
