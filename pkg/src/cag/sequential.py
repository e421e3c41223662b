"""Sequential play: backward-induction solving of subgame-perfect outcomes.

Agents move one at a time in a fixed order, each seeing all earlier
choices.  Deterministic mode runs backward induction with lexicographic
tie-breaking at every prefix and yields a single outcome.  Exhaustive mode
computes the set of outcomes achievable under *some* tie-breaking: a
continuation outcome after choice ``s`` is achievable at a prefix iff the
mover's utility in it is at least the best value the mover can force, where
each rival branch may answer with its adversarial (mover-worst) achievable
continuation.  Worst-case equilibrium selection exploits ties, so the
exhaustive set is what price-of-anarchy questions must range over.

Strategy lists themselves are exponentially large and never materialized;
outcomes are certified through achievable continuation values instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .engine import Evaluator
from .equilibria import DEFAULT_BUDGET, optimal_social_welfare
from .model import BudgetError, Instance, StrategyProfile

__all__ = [
    "SequentialGame",
    "SpeOutcome",
    "SpeResult",
    "outcome_welfare",
    "spe_decision",
    "spe_solve",
    "spoa",
]


@dataclass(frozen=True)
class SequentialGame:
    instance: Instance
    order: tuple[int, ...]  # agent indices in move order

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", tuple(self.order))
        if sorted(self.order) != list(range(self.instance.num_agents)):
            raise ValueError("order must be a permutation of the agent indices")

    @classmethod
    def natural(cls, inst: Instance) -> "SequentialGame":
        return cls(inst, tuple(range(inst.num_agents)))


@dataclass(frozen=True)
class SpeOutcome:
    profile: StrategyProfile
    utilities: tuple[Fraction, ...]


@dataclass(frozen=True)
class SpeResult:
    outcomes: tuple[SpeOutcome, ...]
    mode: str  # "deterministic" | "exhaustive"
    subgame_values: dict | None = None


def outcome_welfare(outcome: SpeOutcome) -> int:
    total = sum(outcome.utilities)
    assert total.denominator == 1
    return int(total)


def _check_budget(game: SequentialGame, budget: int) -> None:
    size = game.instance.profile_space_size()
    if size > budget:
        raise BudgetError(
            f"search-space-too-large: {size} leaf profiles exceed budget {budget}"
        )


def _prepare(ev: Evaluator, order):
    """Pre-place movers without a real decision (singleton spaces): their
    loads are constant across the whole game tree."""
    loads = [0] * ev.num_nodes
    choices = [0] * ev.num_agents
    active = []
    for mover in order:
        if len(ev.spaces[mover]) == 1:
            w = ev.weights[mover]
            for j in ev.spaces[mover][0]:
                loads[j] += w
        else:
            active.append(mover)
    return loads, choices, active


def _solve_deterministic(ev: Evaluator, order, collect=None):
    loads, choices, active = _prepare(ev, order)
    spaces = ev.spaces
    weights = ev.weights
    depth = len(active)
    prefix: list[int] = []
    track = collect is not None
    if track:
        full_prefix = _prefix_expander(ev, order, prefix)

    def walk(t: int):
        if t == depth:
            return tuple(choices), ev.utilities_scaled(choices, loads)
        mover = active[t]
        w = weights[mover]
        best = None
        for s in range(len(spaces[mover])):
            choices[mover] = s
            for j in spaces[mover][s]:
                loads[j] += w
            if track:
                prefix.append(s)
            out = walk(t + 1)
            if track:
                prefix.pop()
            for j in spaces[mover][s]:
                loads[j] -= w
            if best is None or out[1][mover] > best[1][mover]:
                best = out
        if track:
            collect[full_prefix()] = [best]
        return best

    return [walk(0)]


def _prefix_expander(ev: Evaluator, order, prefix):
    """Reported prefixes range over all movers (singletons choose 0); the
    prefix at active-depth t covers every mover before the t-th real
    decision."""
    is_active = [len(ev.spaces[mover]) > 1 for mover in order]
    cut = [q for q, flag in enumerate(is_active) if flag] + [len(order)]

    def full_prefix() -> tuple[int, ...]:
        it = iter(prefix)
        return tuple(
            next(it) if is_active[q] else 0 for q in range(cut[len(prefix)])
        )

    return full_prefix


def _solve_exhaustive(ev: Evaluator, order, dedup_by_utils: bool, collect=None):
    loads, choices, active = _prepare(ev, order)
    spaces = ev.spaces
    weights = ev.weights
    depth = len(active)
    prefix: list[int] = []
    track = collect is not None
    if track:
        full_prefix = _prefix_expander(ev, order, prefix)

    def walk(t: int):
        if t == depth:
            return [(tuple(choices), ev.utilities_scaled(choices, loads))]
        mover = active[t]
        w = weights[mover]
        children = []
        for s in range(len(spaces[mover])):
            choices[mover] = s
            for j in spaces[mover][s]:
                loads[j] += w
            if track:
                prefix.append(s)
            children.append(walk(t + 1))
            if track:
                prefix.pop()
            for j in spaces[mover][s]:
                loads[j] -= w
        # The mover can force at least the best adversarial continuation
        # value, so only outcomes meeting that threshold are achievable.
        if len(children) == 1:
            merged = children[0]
        else:
            threshold = max(min(u[mover] for _, u in sub) for sub in children)
            merged = [o for sub in children for o in sub if o[1][mover] >= threshold]
        if dedup_by_utils:
            merged = list({u: (c, u) for c, u in merged}.values())
        if track:
            collect[full_prefix()] = list(merged)
        return merged

    return walk(0)


def spe_solve(
    game: SequentialGame,
    mode: str = "deterministic",
    budget: int = DEFAULT_BUDGET,
    subgame_values: bool = False,
) -> SpeResult:
    """Solve the sequential game by backward induction.

    Deterministic mode returns exactly one outcome.  Exhaustive mode returns
    every outcome achievable under some tie-breaking, sorted by profile.
    """
    if mode not in ("deterministic", "exhaustive"):
        raise ValueError(f"invalid mode {mode!r}")
    _check_budget(game, budget)
    ev = Evaluator(game.instance)
    collect: dict | None = None
    if subgame_values and _prefix_count(game) <= budget:
        collect = {}
    if mode == "deterministic":
        raw = _solve_deterministic(ev, game.order, collect=collect)
    else:
        raw = _solve_exhaustive(ev, game.order, dedup_by_utils=False, collect=collect)
        raw.sort(key=lambda o: o[0])
    outcomes = tuple(_to_outcome(ev, c, u) for c, u in raw)
    values = None
    if collect is not None:
        values = {
            prefix: tuple(_to_outcome(ev, c, u) for c, u in sorted(subs))
            for prefix, subs in collect.items()
        }
    return SpeResult(outcomes=outcomes, mode=mode, subgame_values=values)


def _to_outcome(ev: Evaluator, choices, utils_scaled) -> SpeOutcome:
    return SpeOutcome(
        profile=StrategyProfile(choices),
        utilities=tuple(ev.frac(u) for u in utils_scaled),
    )


def _prefix_count(game: SequentialGame) -> int:
    count, layer = 1, 1
    for i in game.order:
        layer *= len(game.instance.agents[i].strategies)
        count += layer
    return count


def spe_decision(
    game: SequentialGame,
    agent: int,
    threshold: Fraction | int,
    budget: int = DEFAULT_BUDGET,
) -> bool:
    """True iff some subgame-perfect outcome gives `agent` utility at least
    `threshold`."""
    if not 0 <= agent < game.instance.num_agents:
        raise IndexError(f"agent index {agent} out of range")
    threshold = Fraction(threshold)
    _check_budget(game, budget)
    ev = Evaluator(game.instance)
    raw = _solve_exhaustive(ev, game.order, dedup_by_utils=True)
    best = max(u[agent] for _, u in raw)
    return best * threshold.denominator >= threshold.numerator * ev.den


def spoa(game: SequentialGame, budget: int = DEFAULT_BUDGET) -> Fraction:
    """Optimal welfare divided by the welfare of the worst subgame-perfect
    outcome under any tie-breaking."""
    _check_budget(game, budget)
    ev = Evaluator(game.instance)
    raw = _solve_exhaustive(ev, game.order, dedup_by_utils=True)
    worst = min(sum(u) for _, u in raw)
    assert worst % ev.den == 0
    opt, _ = optimal_social_welfare(game.instance, budget)
    return Fraction(opt, worst // ev.den)
