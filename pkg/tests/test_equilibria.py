import itertools
from fractions import Fraction

import pytest

from cag import (
    BudgetError,
    Instance,
    NoEquilibriumError,
    StrategyProfile,
    analyze,
    build_named_instance,
    enumerate_pne,
    gen_random,
    is_approx_pne,
    optimal_social_welfare,
    pne_exists,
    poa,
    rosenthal_potential,
    utility,
)


def test_is_pne_examples(example1, example1_minus_dummy):
    assert is_approx_pne(example1_minus_dummy, StrategyProfile((0, 1)), 1)
    for choices in itertools.product((0, 1), (0, 1)):
        assert not is_approx_pne(example1, StrategyProfile(choices + (0,)), 1)


def test_approx_threshold_is_tight():
    inst = gen_random("asymmetric", seed=3, num_nodes=5, num_agents=3,
                      num_strategies=2, max_weight=4, max_value=4)
    profile = StrategyProfile((0, 0, 0))
    ratio = Fraction(0)
    for i in range(inst.num_agents):
        current = utility(inst, profile, i)
        for alt in range(len(inst.agents[i].strategies)):
            other = StrategyProfile(
                tuple(alt if k == i else c for k, c in enumerate(profile.choices))
            )
            ratio = max(ratio, utility(inst, other, i) / current)
    assert ratio > 1
    assert is_approx_pne(inst, profile, ratio)
    assert not is_approx_pne(inst, profile, ratio - Fraction(1, 10**9))


def test_is_approx_pne_rejects_alpha_below_one(example1):
    with pytest.raises(ValueError):
        is_approx_pne(example1, StrategyProfile((0, 0, 0)), Fraction(1, 2))


def test_enumerate_pne_examples(example1, example1_minus_dummy):
    assert enumerate_pne(example1) == []
    assert [p.choices for p in enumerate_pne(example1_minus_dummy)] == [
        (0, 1),
        (1, 0),
    ]


def test_single_agent_pne_maximizes_value():
    inst = Instance.build(
        nodes=[("q1", 1), ("q2", 3)], agents=[("a1", 1, [[0], [1], [0, 1]])]
    )
    assert [p.choices for p in enumerate_pne(inst)] == [(2,)]


def test_optimal_social_welfare_examples():
    game = build_named_instance("spoa-two-agent")
    welfare, witness = optimal_social_welfare(game.instance)
    assert (welfare, witness.choices) == (3, (0, 1))
    inst = build_named_instance("poa-lb", n=4, m=2)
    assert optimal_social_welfare(inst)[0] == 3
    solo = Instance.build(
        nodes=[("q1", 2), ("q2", 3)], agents=[("a1", 1, [[0, 1]])]
    )
    assert optimal_social_welfare(solo)[0] == 5


def test_poa_examples():
    assert poa(build_named_instance("poa-lb", n=3, m=2)) == Fraction(3, 2)
    assert poa(build_named_instance("poa-lb", n=4, m=2)) == Fraction(3, 2)
    covered = Instance.build(
        nodes=[("q1", 1), ("q2", 1)],
        agents=[("a1", 1, [[0, 1]]), ("a2", 1, [[0, 1]])],
    )
    assert poa(covered) == 1


def test_poa_requires_equilibrium(example1):
    with pytest.raises(NoEquilibriumError, match="no-pne"):
        poa(example1)


def test_pne_exists_examples(example1):
    assert not pne_exists(example1)
    for seed in range(10):
        weighted = gen_random("asymmetric", seed=seed, num_agents=2,
                              num_nodes=4, num_strategies=3, max_weight=9)
        assert pne_exists(weighted)
    for seed in range(10):
        unit = gen_random("s-asymmetric", seed=seed, num_agents=3,
                          num_nodes=5, num_strategies=2)
        assert pne_exists(unit)


def test_budget_guard(example1):
    with pytest.raises(BudgetError, match="search-space-too-large"):
        enumerate_pne(example1, budget=3)
    with pytest.raises(BudgetError):
        optimal_social_welfare(example1, budget=3)
    with pytest.raises(BudgetError):
        pne_exists(example1, budget=3)


def test_report_fields(example1_minus_dummy):
    report = analyze(example1_minus_dummy)
    assert report.profiles_scanned == 4
    # no profile covers q3 together with q2, so the optimum misses one node
    assert report.opt_welfare == 5
    assert report.poa == 1
    assert all(is_approx_pne(example1_minus_dummy, p, 1) for p in report.pne)


def test_analyze_jobs_deterministic():
    inst = gen_random("symmetric", seed=14, num_nodes=6, num_agents=3,
                      num_strategies=4)
    assert analyze(inst, jobs=1) == analyze(inst, jobs=2)


def test_pne_iff_local_potential_maximum():
    """On unit-weight instances a profile is an equilibrium exactly when no
    unilateral deviation raises the harmonic potential."""
    for seed in range(20):
        inst = gen_random("s-asymmetric", seed=100 + seed, num_nodes=4,
                          num_agents=3, num_strategies=2, max_strategy_size=3)
        for choices in itertools.product(
            *(range(len(a.strategies)) for a in inst.agents)
        ):
            profile = StrategyProfile(choices)
            phi = rosenthal_potential(inst, profile)
            local_max = True
            for i in range(inst.num_agents):
                for alt in range(len(inst.agents[i].strategies)):
                    if alt == choices[i]:
                        continue
                    other = StrategyProfile(
                        tuple(alt if k == i else c for k, c in enumerate(choices))
                    )
                    if rosenthal_potential(inst, other) > phi:
                        local_max = False
            assert is_approx_pne(inst, profile, 1) == local_max
