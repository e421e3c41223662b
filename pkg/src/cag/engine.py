"""Scaled-integer evaluation engine shared by search, dynamics, and solvers.

Every load a node can take is a subset sum of agent weights, bounded by the
node's "potential load" (the total weight of agents that could ever attract
it).  Multiplying all utilities by ``lcm(1..max_potential_load)`` therefore
turns them into plain integers, which makes exhaustive scans and backward
induction an order of magnitude faster than `Fraction` arithmetic while
staying exact.  `Fraction` values are recovered at the API boundary.

The engine is read-only after construction and safe to share.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .model import Instance

__all__ = ["Evaluator"]


class Evaluator:
    """Precomputed tables for exact profile evaluation on one instance."""

    def __init__(self, inst: Instance):
        self.instance = inst
        self.num_nodes = inst.num_nodes
        self.num_agents = inst.num_agents
        self.weights = [a.weight for a in inst.agents]
        self.values = [n.value for n in inst.nodes]
        self.spaces = [list(a.strategies) for a in inst.agents]
        self.space_sets = [
            [frozenset(s) for s in a.strategies] for a in inst.agents
        ]

        potential = [0] * self.num_nodes
        for a in inst.agents:
            attracted: set[int] = set()
            for s in a.strategies:
                attracted.update(s)
            for j in attracted:
                potential[j] += a.weight
        self.max_load = max(potential, default=0) or 1
        self.den = lcm(*range(1, self.max_load + 1))
        # share[c] = den / c, so w * v * share[c] is the scaled utility term
        self.share = [0] + [self.den // c for c in range(1, self.max_load + 1)]
        # harmonic[k] = den * (1 + 1/2 + ... + 1/k)
        self.harmonic = [0] * (self.max_load + 1)
        for k in range(1, self.max_load + 1):
            self.harmonic[k] = self.harmonic[k - 1] + self.share[k]
        # per (agent, strategy): (node, weight * value) pairs for fast sums
        self.terms = [
            [
                tuple((j, a.weight * inst.nodes[j].value) for j in s)
                for s in a.strategies
            ]
            for a in inst.agents
        ]

    def frac(self, scaled: int) -> Fraction:
        """Convert a scaled integer back to an exact rational."""
        return Fraction(scaled, self.den)

    def loads(self, choices) -> list[int]:
        loads = [0] * self.num_nodes
        for i, choice in enumerate(choices):
            w = self.weights[i]
            for j in self.spaces[i][choice]:
                loads[j] += w
        return loads

    def utility_scaled(self, choices, loads, agent: int) -> int:
        share = self.share
        total = 0
        for j, wv in self.terms[agent][choices[agent]]:
            total += wv * share[loads[j]]
        return total

    def utilities_scaled(self, choices, loads) -> tuple[int, ...]:
        share = self.share
        terms = self.terms
        out = []
        for i in range(self.num_agents):
            total = 0
            for j, wv in terms[i][choices[i]]:
                total += wv * share[loads[j]]
            out.append(total)
        return tuple(out)

    def deviation_scaled(self, choices, loads, agent: int, new_choice: int) -> int:
        """Scaled utility of `agent` after unilaterally switching to
        `new_choice`, with everyone else fixed."""
        w = self.weights[agent]
        current = self.space_sets[agent][choices[agent]]
        values = self.values
        share = self.share
        total = 0
        for j in self.spaces[agent][new_choice]:
            c = loads[j] if j in current else loads[j] + w
            total += w * values[j] * share[c]
        return total

    def welfare(self, loads) -> int:
        values = self.values
        return sum(values[j] for j, c in enumerate(loads) if c > 0)

    def potential_scaled(self, loads) -> int:
        """Scaled value-weighted harmonic potential; meaningful for
        unit-weight instances, where loads count attracting agents."""
        values = self.values
        harmonic = self.harmonic
        return sum(values[j] * harmonic[c] for j, c in enumerate(loads) if c > 0)

    def best_deviation(self, choices, loads, agent: int) -> tuple[int, int]:
        """(choice, scaled utility) maximizing the agent's utility.

        Keeps the current choice unless some alternative is strictly better;
        among strictly better alternatives, ties go to the smallest index.
        """
        best_choice = choices[agent]
        best = self.utility_scaled(choices, loads, agent)
        for alt in range(len(self.spaces[agent])):
            if alt == choices[agent]:
                continue
            u = self.deviation_scaled(choices, loads, agent, alt)
            if u > best:
                best, best_choice = u, alt
        return best_choice, best

    def is_approx_pne(self, choices, loads, alpha_num: int, alpha_den: int) -> bool:
        """True iff no agent has a deviation worth more than
        (alpha_num/alpha_den) times its current utility."""
        for i in range(self.num_agents):
            current = self.utility_scaled(choices, loads, i) * alpha_num
            for alt in range(len(self.spaces[i])):
                if alt == choices[i]:
                    continue
                if self.deviation_scaled(choices, loads, i, alt) * alpha_den > current:
                    return False
        return True
