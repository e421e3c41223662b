import math
from fractions import Fraction

import pytest

from cag import (
    DynamicsConfig,
    Instance,
    StrategyProfile,
    best_response,
    build_named_instance,
    gen_random,
    is_approx_pne,
    log_potential,
    min_alpha,
    run_dynamics,
    utility,
)
from cag.dynamics import epsilon_step_bound
from cag.potentials import rosenthal_potential


def test_best_response_example1(example1):
    choice, gain = best_response(example1, StrategyProfile((0, 0, 0)), 0)
    assert choice == 1
    assert gain == Fraction(1, 15)


def test_best_response_at_equilibrium(example1_minus_dummy):
    choice, gain = best_response(example1_minus_dummy, StrategyProfile((0, 1)), 1)
    assert choice == 1
    assert gain == 0


def test_best_response_prefers_smallest_index():
    inst = Instance.build(
        nodes=[("q1", 1), ("q2", 2), ("q3", 2)],
        agents=[("a1", 1, [[0], [1], [2]])],
    )
    choice, gain = best_response(inst, StrategyProfile((0,)), 0)
    assert choice == 1
    assert gain == 1


def _replay(inst, trace):
    choices = list(trace.start.choices)
    for step in trace.steps:
        assert choices[step.agent] == step.old
        before = utility(inst, StrategyProfile(tuple(choices)), step.agent)
        choices[step.agent] = step.new
        after = utility(inst, StrategyProfile(tuple(choices)), step.agent)
        assert after - before == step.gain
        assert step.gain > 0
    return tuple(choices)


def test_epsilon_mode_poa_lb_already_stable():
    inst = build_named_instance("poa-lb", n=4, m=2)
    cfg = DynamicsConfig(mode="epsilon", epsilon=Fraction(0), max_steps=10)
    trace = run_dynamics(inst, StrategyProfile((0, 0)), cfg)
    assert trace.termination == "converged"
    assert trace.steps == ()


def test_epsilon_mode_grabs_uncovered_big_node():
    inst = Instance.build(
        nodes=[("q1", 1), ("q2", 5)],
        agents=[("a1", 1, [[0], [1]]), ("a2", 1, [[0], [1]])],
    )
    cfg = DynamicsConfig(mode="epsilon", epsilon=Fraction(0), max_steps=10)
    trace = run_dynamics(inst, StrategyProfile((0, 0)), cfg)
    assert trace.steps[0].new == 1
    assert trace.termination == "converged"
    assert _replay(inst, trace) == trace.final.choices


def test_epsilon_mode_step_gains_are_global_maxima():
    inst = gen_random("symmetric", seed=9, num_nodes=8, num_agents=4,
                      num_strategies=4)
    cfg = DynamicsConfig(mode="epsilon", epsilon=Fraction(1, 2), max_steps=1000)
    trace = run_dynamics(inst, StrategyProfile((0,) * 4), cfg)
    assert trace.termination == "converged"
    choices = list(trace.start.choices)
    for step in trace.steps:
        profile = StrategyProfile(tuple(choices))
        best = max(
            utility(
                inst,
                StrategyProfile(
                    tuple(alt if k == i else c for k, c in enumerate(choices))
                ),
                i,
            )
            - utility(inst, profile, i)
            for i in range(inst.num_agents)
            for alt in range(len(inst.agents[i].strategies))
        )
        assert step.gain == best
        choices[step.agent] = step.new
    assert is_approx_pne(inst, trace.final, Fraction(3, 2))


def test_epsilon_step_raises_potential_by_gain():
    inst = gen_random("symmetric", seed=4, num_nodes=8, num_agents=4,
                      num_strategies=3)
    cfg = DynamicsConfig(mode="epsilon", epsilon=Fraction(1, 10), max_steps=1000)
    trace = run_dynamics(inst, StrategyProfile((0,) * 4), cfg)
    choices = list(trace.start.choices)
    for step in trace.steps:
        before = rosenthal_potential(inst, StrategyProfile(tuple(choices)))
        choices[step.agent] = step.new
        after = rosenthal_potential(inst, StrategyProfile(tuple(choices)))
        assert after - before == step.gain
        assert step.gain > Fraction(1, 10) / inst.num_agents
    assert len(trace.steps) <= epsilon_step_bound(inst, Fraction(1, 10))


def test_epsilon_mode_handles_weighted_values():
    # unit agents, non-unit node values: the step bound scales by the total value
    inst = Instance.build(
        nodes=[("q1", 4), ("q2", 1), ("q3", 3)],
        agents=[("a1", 1, [[0], [1], [2]]), ("a2", 1, [[0], [1], [2]])],
    )
    eps = Fraction(1, 10)
    bound = epsilon_step_bound(inst, eps)
    cfg = DynamicsConfig(mode="epsilon", epsilon=eps, max_steps=bound + 1)
    trace = run_dynamics(inst, StrategyProfile((1, 1)), cfg)
    assert trace.termination == "converged"
    assert len(trace.steps) <= bound
    assert is_approx_pne(inst, trace.final, 1 + eps)


def test_epsilon_mode_rejects_weighted_agents(example1):
    cfg = DynamicsConfig(mode="epsilon", epsilon=Fraction(1, 2))
    with pytest.raises(ValueError, match="weighted-agents-unsupported"):
        run_dynamics(example1, StrategyProfile((0, 0, 0)), cfg)


def test_step_limit_reported():
    inst = Instance.build(
        nodes=[("q1", 1), ("q2", 5)],
        agents=[("a1", 1, [[0], [1]]), ("a2", 1, [[0], [1]])],
    )
    cfg = DynamicsConfig(mode="epsilon", epsilon=Fraction(0), max_steps=1)
    trace = run_dynamics(inst, StrategyProfile((0, 0)), cfg)
    assert trace.termination in ("converged", "step-limit")
    # with a single allowed step from (q1, q1) the run cannot finish
    assert len(trace.steps) == 1


def test_alpha_mode_requires_threshold(example1):
    cfg = DynamicsConfig(mode="alpha", alpha=1.0)
    with pytest.raises(ValueError, match="allow_any_alpha"):
        run_dynamics(example1, StrategyProfile((0, 0, 0)), cfg)
    override = DynamicsConfig(mode="alpha", alpha=1.0, allow_any_alpha=True,
                              max_steps=50)
    trace = run_dynamics(example1, StrategyProfile((0, 0, 0)), override)
    assert trace.termination == "step-limit"  # the no-equilibrium cycle


def test_alpha_mode_raises_log_potential_each_step():
    for seed in (0, 1, 2, 3, 4):
        inst = gen_random("asymmetric", seed=seed, num_nodes=6, num_agents=3,
                          num_strategies=3, max_weight=9, max_value=5)
        cfg = DynamicsConfig(mode="alpha", alpha=min_alpha(inst), max_steps=10_000)
        trace = run_dynamics(inst, StrategyProfile((0, 0, 0)), cfg)
        assert trace.termination == "converged"
        choices = list(trace.start.choices)
        previous = log_potential(inst, trace.start)
        for step in trace.steps:
            choices[step.agent] = step.new
            current = log_potential(inst, StrategyProfile(tuple(choices)))
            assert current > previous - 1e-9
            previous = current
        alpha_up = Fraction(min_alpha(inst)) + Fraction(1, 10**9)
        assert is_approx_pne(inst, trace.final, alpha_up)


def test_alpha_mode_takes_first_improving_deviation():
    inst = Instance.build(
        nodes=[("q1", 1), ("q2", 9), ("q3", 9)],
        agents=[("a1", 1, [[0], [1], [2]]), ("a2", 1, [[0], [1], [2]])],
    )
    cfg = DynamicsConfig(mode="alpha", alpha=min_alpha(inst), max_steps=10)
    trace = run_dynamics(inst, StrategyProfile((0, 0)), cfg)
    first = trace.steps[0]
    assert (first.agent, first.new) == (0, 1)


def test_identical_inputs_identical_traces():
    inst = gen_random("symmetric", seed=21, num_nodes=7, num_agents=4,
                      num_strategies=3)
    cfg = DynamicsConfig(mode="epsilon", epsilon=Fraction(1, 10), max_steps=500)
    first = run_dynamics(inst, StrategyProfile((0,) * 4), cfg)
    second = run_dynamics(inst, StrategyProfile((0,) * 4), cfg)
    assert first == second


def test_invalid_configs_rejected(example1):
    with pytest.raises(ValueError):
        run_dynamics(example1, StrategyProfile((0, 0, 0)),
                     DynamicsConfig(mode="nope"))
    with pytest.raises(ValueError):
        run_dynamics(example1, StrategyProfile((0, 0, 0)),
                     DynamicsConfig(mode="alpha", alpha=0.5))
    with pytest.raises(ValueError):
        run_dynamics(example1, StrategyProfile((0, 0, 0)),
                     DynamicsConfig(mode="epsilon", epsilon=Fraction(-1)))
    with pytest.raises(ValueError):
        run_dynamics(example1, StrategyProfile((0, 0, 0)),
                     DynamicsConfig(mode="epsilon", tie_break="random"))


def test_min_alpha_formula(example1):
    assert min_alpha(example1) == math.log(5) + 1
