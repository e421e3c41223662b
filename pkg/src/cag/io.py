"""JSON serialization for instances, profiles, games, reductions, and
reports.

Rationals always serialize as ``"p/q"`` strings, never floats, so
downstream diffs are exact.  Parsers reject duplicate ids and report the
offending line (best effort on pretty-printed files).
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .dynamics import DynamicsStep, DynamicsTrace
from .equilibria import EquilibriumReport
from .gadgets import CutGraph, ThreeDMInstance, TqbfFormula
from .model import Agent, Instance, Node, StrategyProfile
from .sequential import SequentialGame, SpeOutcome, SpeResult

__all__ = [
    "dumps_game",
    "dumps_graph",
    "dumps_instance",
    "dumps_profile",
    "dumps_report",
    "dumps_spe_result",
    "dumps_tdm",
    "dumps_tqbf",
    "dumps_trace",
    "loads_game",
    "loads_graph",
    "loads_instance",
    "loads_profile",
    "loads_report",
    "loads_spe_result",
    "loads_tdm",
    "loads_tqbf",
    "loads_trace",
    "parse_rational",
    "rational_str",
]


def rational_str(value: Fraction | int) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    parts = str(text).split("/")
    if len(parts) == 1:
        return Fraction(int(parts[0]))
    if len(parts) == 2:
        return Fraction(int(parts[0]), int(parts[1]))
    raise ValueError(f"malformed rational {text!r}")


def _definition_line(text: str, id_value: str) -> int:
    """Best-effort line number of the duplicate id definition: the last
    occurrence of an `"id": "<value>"` pair in the raw text."""
    pattern = re.compile(r'"id"\s*:\s*' + re.escape(json.dumps(id_value)))
    line = 1
    for match in pattern.finditer(text):
        line = text.count("\n", 0, match.start()) + 1
    return line


def _json(text: str) -> dict:
    data = json.loads(text)
    if not isinstance(data, dict):
        raise ValueError("expected a JSON object")
    return data


# ---------------------------------------------------------------------------
# instances, profiles, games


def dumps_instance(inst: Instance, indent: int | None = 2) -> str:
    return json.dumps(_instance_dict(inst), indent=indent) + "\n"


def _instance_dict(inst: Instance) -> dict:
    return {
        "nodes": [{"id": n.id, "value": n.value} for n in inst.nodes],
        "agents": [
            {
                "id": a.id,
                "weight": a.weight,
                "strategies": [
                    [inst.nodes[j].id for j in s] for s in a.strategies
                ],
            }
            for a in inst.agents
        ],
    }


def loads_instance(text: str) -> Instance:
    return _instance_from_dict(_json(text), text)


def _instance_from_dict(data: dict, text: str) -> Instance:
    nodes = []
    index: dict[str, int] = {}
    for entry in data.get("nodes", []):
        node_id = str(entry["id"])
        if node_id in index:
            raise ValueError(
                f"duplicate node id {node_id!r} "
                f"(line {_definition_line(text, node_id)})"
            )
        index[node_id] = len(nodes)
        nodes.append(Node(node_id, int(entry["value"])))

    agents = []
    seen: set[str] = set()
    for entry in data.get("agents", []):
        agent_id = str(entry["id"])
        if agent_id in seen:
            raise ValueError(
                f"duplicate agent id {agent_id!r} "
                f"(line {_definition_line(text, agent_id)})"
            )
        seen.add(agent_id)
        strategies = []
        for strategy in entry["strategies"]:
            refs = []
            for ref in strategy:
                if ref not in index:
                    raise ValueError(
                        f"agent {agent_id!r}: unknown node id {ref!r}"
                    )
                refs.append(index[ref])
            if len(set(refs)) != len(refs):
                raise ValueError(
                    f"agent {agent_id!r}: duplicate node in strategy {strategy}"
                )
            strategies.append(tuple(sorted(refs)))
        agents.append(Agent(agent_id, int(entry["weight"]), tuple(strategies)))
    return Instance(tuple(nodes), tuple(agents))


def dumps_profile(profile: StrategyProfile, indent: int | None = None) -> str:
    return json.dumps({"choices": list(profile.choices)}, indent=indent) + "\n"


def loads_profile(text: str) -> StrategyProfile:
    data = _json(text)
    return StrategyProfile(tuple(int(c) for c in data["choices"]))


def dumps_game(game: SequentialGame, indent: int | None = 2) -> str:
    data = _instance_dict(game.instance)
    data["order"] = [game.instance.agents[i].id for i in game.order]
    return json.dumps(data, indent=indent) + "\n"


def loads_game(text: str) -> SequentialGame:
    data = _json(text)
    inst = _instance_from_dict(data, text)
    if "order" not in data:
        return SequentialGame.natural(inst)
    index = {a.id: i for i, a in enumerate(inst.agents)}
    try:
        order = tuple(index[ref] for ref in data["order"])
    except KeyError as exc:
        raise ValueError(f"order references unknown agent id {exc.args[0]!r}")
    return SequentialGame(inst, order)


# ---------------------------------------------------------------------------
# reduction inputs


def dumps_graph(graph: CutGraph, indent: int | None = None) -> str:
    data = {"vertices": graph.num_vertices, "edges": [list(e) for e in graph.edges]}
    return json.dumps(data, indent=indent) + "\n"


def loads_graph(text: str) -> CutGraph:
    data = _json(text)
    return CutGraph(
        int(data["vertices"]),
        tuple((int(u), int(v), int(w)) for u, v, w in data["edges"]),
    )


def dumps_tdm(tdm: ThreeDMInstance, indent: int | None = None) -> str:
    data = {"n": tdm.n, "triples": [list(t) for t in tdm.triples]}
    return json.dumps(data, indent=indent) + "\n"


def loads_tdm(text: str) -> ThreeDMInstance:
    data = _json(text)
    return ThreeDMInstance(
        int(data["n"]),
        tuple((int(x), int(y), int(z)) for x, y, z in data["triples"]),
    )


def dumps_tqbf(formula: TqbfFormula, indent: int | None = None) -> str:
    data = {"vars": formula.num_vars, "clauses": [list(c) for c in formula.clauses]}
    return json.dumps(data, indent=indent) + "\n"


def loads_tqbf(text: str) -> TqbfFormula:
    data = _json(text)
    return TqbfFormula(
        int(data["vars"]),
        tuple(tuple(int(lit) for lit in clause) for clause in data["clauses"]),
    )


# ---------------------------------------------------------------------------
# reports and traces


def dumps_report(report: EquilibriumReport, indent: int | None = 2) -> str:
    data = {
        "pne": [list(p.choices) for p in report.pne],
        "opt-welfare": report.opt_welfare,
        "opt-profile": list(report.opt_profile.choices),
        "poa": rational_str(report.poa) if report.poa is not None
        else "undefined-no-pne",
        "profile-count-scanned": report.profiles_scanned,
    }
    return json.dumps(data, indent=indent) + "\n"


def loads_report(text: str) -> EquilibriumReport:
    data = _json(text)
    poa = data["poa"]
    return EquilibriumReport(
        pne=tuple(StrategyProfile(tuple(p)) for p in data["pne"]),
        opt_welfare=int(data["opt-welfare"]),
        opt_profile=StrategyProfile(tuple(data["opt-profile"])),
        poa=None if poa == "undefined-no-pne" else parse_rational(poa),
        profiles_scanned=int(data["profile-count-scanned"]),
    )


def dumps_spe_result(result: SpeResult, indent: int | None = 2) -> str:
    data = {
        "mode": result.mode,
        "outcomes": [
            {
                "profile": list(o.profile.choices),
                "utilities": [rational_str(u) for u in o.utilities],
            }
            for o in result.outcomes
        ],
    }
    return json.dumps(data, indent=indent) + "\n"


def loads_spe_result(text: str) -> SpeResult:
    data = _json(text)
    outcomes = tuple(
        SpeOutcome(
            profile=StrategyProfile(tuple(o["profile"])),
            utilities=tuple(parse_rational(u) for u in o["utilities"]),
        )
        for o in data["outcomes"]
    )
    return SpeResult(outcomes=outcomes, mode=data["mode"])


def dumps_trace(trace: DynamicsTrace) -> str:
    """Line-delimited records: one per step, then a summary line."""
    lines = []
    for k, step in enumerate(trace.steps, 1):
        lines.append(
            json.dumps(
                {
                    "step": k,
                    "agent": step.agent,
                    "from": step.old,
                    "to": step.new,
                    "gain": rational_str(step.gain),
                }
            )
        )
    lines.append(
        json.dumps(
            {
                "start": list(trace.start.choices),
                "final": list(trace.final.choices),
                "termination": trace.termination,
            }
        )
    )
    return "\n".join(lines) + "\n"


def loads_trace(text: str) -> DynamicsTrace:
    lines = [json.loads(line) for line in text.splitlines() if line.strip()]
    if not lines or "termination" not in lines[-1]:
        raise ValueError("trace must end with a summary record")
    summary = lines[-1]
    steps = tuple(
        DynamicsStep(
            agent=int(rec["agent"]),
            old=int(rec["from"]),
            new=int(rec["to"]),
            gain=parse_rational(rec["gain"]),
        )
        for rec in lines[:-1]
    )
    return DynamicsTrace(
        start=StrategyProfile(tuple(summary["start"])),
        steps=steps,
        final=StrategyProfile(tuple(summary["final"])),
        termination=summary["termination"],
    )
