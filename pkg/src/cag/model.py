"""Core data model for customer attraction games.

A game instance consists of customer nodes (each with a positive integer
value) and agents (each with a positive integer weight and a strategy space
of node subsets).  When an agent picks a strategy, every node in it is
"attracted"; a node's value is split among the attracting agents in
proportion to their weights.

All quantities are exact: utilities are `fractions.Fraction`, loads and
social welfare are integers.  Instances and profiles are immutable, so any
number of concurrent callers may share them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterable

__all__ = [
    "Agent",
    "BudgetError",
    "Instance",
    "Node",
    "NoEquilibriumError",
    "StrategyProfile",
    "SymmetryClass",
    "ValidationReport",
    "classify_symmetry",
    "load",
    "social_welfare",
    "utility",
    "validate_instance",
]


class BudgetError(RuntimeError):
    """Raised when an exhaustive search would exceed the configured budget
    ("search-space-too-large")."""


class NoEquilibriumError(RuntimeError):
    """Raised when an operation needs a pure Nash equilibrium but the
    instance has none ("no-pne")."""


@dataclass(frozen=True)
class Node:
    id: str
    value: int


@dataclass(frozen=True)
class Agent:
    id: str
    weight: int
    strategies: tuple[tuple[int, ...], ...]  # node indices, each sorted


@dataclass(frozen=True)
class Instance:
    """An immutable game instance.

    Node and agent ids are opaque strings kept for reporting; every
    computation uses dense indices.  Strategies are sorted index tuples and
    profiles reference strategies by index, never by copy.
    """

    nodes: tuple[Node, ...]
    agents: tuple[Agent, ...]

    @classmethod
    def build(
        cls,
        nodes: Iterable[tuple[str, int]],
        agents: Iterable[tuple[str, int, Iterable[Iterable[int]]]],
    ) -> "Instance":
        """Construct an instance from plain lists, normalizing strategies to
        sorted tuples."""
        node_objs = tuple(Node(i, v) for i, v in nodes)
        agent_objs = tuple(
            Agent(i, w, tuple(tuple(sorted(s)) for s in spaces))
            for i, w, spaces in agents
        )
        return cls(node_objs, agent_objs)

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    @property
    def num_agents(self) -> int:
        return len(self.agents)

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(node.value for node in self.nodes)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(agent.weight for agent in self.agents)

    def profile_space_size(self) -> int:
        """Number of pure strategy profiles."""
        return prod(len(agent.strategies) for agent in self.agents)


@dataclass(frozen=True)
class StrategyProfile:
    """One chosen strategy index per agent, in instance order."""

    choices: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "choices", tuple(self.choices))


@dataclass(frozen=True)
class SymmetryClass:
    """Which components of an instance are asymmetric.

    All-false means a fully symmetric game: shared strategy space, unit
    weights, unit values.
    """

    asymmetric_strategy_spaces: bool
    asymmetric_weights: bool
    asymmetric_values: bool


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[str, ...]
    warnings: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.errors


def check_profile(inst: Instance, profile: StrategyProfile) -> None:
    """Raise ValueError unless the profile is valid for the instance."""
    if len(profile.choices) != inst.num_agents:
        raise ValueError(
            f"profile has {len(profile.choices)} choices, "
            f"instance has {inst.num_agents} agents"
        )
    for i, (choice, agent) in enumerate(zip(profile.choices, inst.agents)):
        if not 0 <= choice < len(agent.strategies):
            raise ValueError(f"agent {i}: strategy index {choice} out of range")


def load(inst: Instance, profile: StrategyProfile, node: int) -> int:
    """Total weight of the agents attracting `node` under `profile`."""
    check_profile(inst, profile)
    if not 0 <= node < inst.num_nodes:
        raise IndexError(f"node index {node} out of range")
    total = 0
    for agent, choice in zip(inst.agents, profile.choices):
        if node in agent.strategies[choice]:
            total += agent.weight
    return total


def _all_loads(inst: Instance, profile: StrategyProfile) -> list[int]:
    loads = [0] * inst.num_nodes
    for agent, choice in zip(inst.agents, profile.choices):
        w = agent.weight
        for j in agent.strategies[choice]:
            loads[j] += w
    return loads


def utility(inst: Instance, profile: StrategyProfile, agent: int) -> Fraction:
    """Exact expected value captured by `agent`: for every attracted node,
    its value times the agent's weight share of the node's load."""
    check_profile(inst, profile)
    if not 0 <= agent < inst.num_agents:
        raise IndexError(f"agent index {agent} out of range")
    loads = _all_loads(inst, profile)
    a = inst.agents[agent]
    total = Fraction(0)
    for j in a.strategies[profile.choices[agent]]:
        total += Fraction(a.weight * inst.nodes[j].value, loads[j])
    return total


def social_welfare(inst: Instance, profile: StrategyProfile) -> int:
    """Total value of attracted nodes; equals the sum of all utilities."""
    check_profile(inst, profile)
    loads = _all_loads(inst, profile)
    return sum(node.value for node, c in zip(inst.nodes, loads) if c > 0)


def classify_symmetry(inst: Instance) -> SymmetryClass:
    """Flag each component (strategy spaces, weights, values) that breaks
    full symmetry."""
    spaces = {frozenset(agent.strategies) for agent in inst.agents}
    return SymmetryClass(
        asymmetric_strategy_spaces=len(spaces) > 1,
        asymmetric_weights=any(agent.weight != 1 for agent in inst.agents),
        asymmetric_values=any(node.value != 1 for node in inst.nodes),
    )


def validate_instance(inst: Instance) -> ValidationReport:
    """Check hard invariants (errors) and node coverage (warning).

    Coverage of all nodes by the union of the strategy spaces is reported as
    a warning only: every computation is well-defined without it.
    """
    errors: list[str] = []
    warnings: list[str] = []

    seen_node_ids: set[str] = set()
    for node in inst.nodes:
        if node.id in seen_node_ids:
            errors.append(f"duplicate node id {node.id!r}")
        seen_node_ids.add(node.id)
        if node.value < 1:
            errors.append(f"node {node.id!r}: non-positive value {node.value}")

    covered: set[int] = set()
    seen_agent_ids: set[str] = set()
    for agent in inst.agents:
        if agent.id in seen_agent_ids:
            errors.append(f"duplicate agent id {agent.id!r}")
        seen_agent_ids.add(agent.id)
        if agent.weight < 1:
            errors.append(f"agent {agent.id!r}: non-positive weight {agent.weight}")
        if not agent.strategies:
            errors.append(f"agent {agent.id!r}: empty strategy space")
        for k, strategy in enumerate(agent.strategies):
            if not strategy:
                errors.append(f"agent {agent.id!r} strategy {k}: empty strategy")
            if any(not 0 <= j < inst.num_nodes for j in strategy):
                errors.append(
                    f"agent {agent.id!r} strategy {k}: node index out of range"
                )
                continue
            if any(a >= b for a, b in zip(strategy, strategy[1:])):
                errors.append(
                    f"agent {agent.id!r} strategy {k}: indices not sorted/unique"
                )
            covered.update(strategy)

    uncovered = [n.id for j, n in enumerate(inst.nodes) if j not in covered]
    if uncovered and not errors:
        warnings.append(
            "nodes not covered by any strategy: " + ", ".join(uncovered)
        )
    return ValidationReport(tuple(errors), tuple(warnings))


def scale_values(inst: Instance, factor: int) -> Instance:
    """Scale every node value by a common positive integer.

    Every utility and the social welfare scale by the same factor, so
    best responses and equilibria are unchanged.
    """
    if factor < 1:
        raise ValueError("factor must be a positive integer")
    nodes = tuple(Node(n.id, n.value * factor) for n in inst.nodes)
    return Instance(nodes, inst.agents)
