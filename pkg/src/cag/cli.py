"""Command-line interface.

One binary exposes every operation with stable file formats: instances,
profiles, and games are JSON documents; reports serialize rationals as
"p/q" strings so outputs are byte-identical across runs.  Exit codes:
0 success, 1 domain errors (no equilibrium, budget exceeded, failed
verification), 2 input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .acceptance import CRITERIA, run_all
from .dynamics import DynamicsConfig, min_alpha, run_dynamics
from .equilibria import DEFAULT_BUDGET, analyze
from .gadgets import (
    maxcut_to_cag,
    pad_tqbf,
    split_unit_values,
    symmetrize_weighted,
    tdm_to_cag,
    tqbf_to_cag,
    unionize_strategies,
)
from .generators import GENERATOR_KINDS, gen_random
from .instances import NAMED_INSTANCES, build_named_instance
from .model import (
    BudgetError,
    NoEquilibriumError,
    StrategyProfile,
    classify_symmetry,
    load,
    social_welfare,
    utility,
    validate_instance,
)
from .potentials import log_potential, rosenthal_potential, two_agent_potential
from .sequential import SequentialGame, spe_solve, spoa

__all__ = ["main", "run_cli"]


def _default_budget() -> int:
    raw = os.environ.get("CAG_BUDGET")
    return int(float(raw)) if raw else DEFAULT_BUDGET


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _profile_arg(value: str) -> StrategyProfile:
    if os.path.exists(value):
        return io.loads_profile(_read(value))
    return StrategyProfile(tuple(int(c) for c in value.split(",")))


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return io.rational_str(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _dump_built(built) -> str:
    if isinstance(built, SequentialGame):
        return io.dumps_game(built)
    return io.dumps_instance(built)


def _cmd_validate(args) -> int:
    report = validate_instance(io.loads_instance(_read(args.instance)))
    _emit(
        args,
        json.dumps(
            {"errors": list(report.errors), "warnings": list(report.warnings)},
            indent=2,
        )
        + "\n",
    )
    if report.errors:
        print("; ".join(report.errors), file=sys.stderr)
        return 2
    return 0


def _cmd_eval(args) -> int:
    inst = io.loads_instance(_read(args.instance))
    profile = _profile_arg(args.profile)
    flags = classify_symmetry(inst)
    data = {
        "loads": [load(inst, profile, j) for j in range(inst.num_nodes)],
        "utilities": [
            io.rational_str(utility(inst, profile, i))
            for i in range(inst.num_agents)
        ],
        "social-welfare": social_welfare(inst, profile),
        "symmetry": {
            "asymmetric-strategy-spaces": flags.asymmetric_strategy_spaces,
            "asymmetric-weights": flags.asymmetric_weights,
            "asymmetric-values": flags.asymmetric_values,
        },
    }
    _emit(args, json.dumps(data, indent=2) + "\n")
    return 0


def _cmd_potential(args) -> int:
    inst = io.loads_instance(_read(args.instance))
    profile = _profile_arg(args.profile)
    if args.kind == "rosenthal":
        value = io.rational_str(rosenthal_potential(inst, profile))
    elif args.kind == "two-agent":
        value = io.rational_str(two_agent_potential(inst, profile))
    else:
        value = log_potential(inst, profile)
    _emit(args, json.dumps({"kind": args.kind, "value": value}) + "\n")
    return 0


def _cmd_dynamics(args) -> int:
    inst = io.loads_instance(_read(args.instance))
    start = (
        _profile_arg(args.start)
        if args.start
        else StrategyProfile((0,) * inst.num_agents)
    )
    alpha = args.alpha if args.alpha is not None else (
        min_alpha(inst) if args.mode == "alpha" else 1.0
    )
    cfg = DynamicsConfig(
        mode=args.mode,
        epsilon=io.parse_rational(args.eps),
        alpha=alpha,
        max_steps=args.max_steps,
        allow_any_alpha=args.allow_any_alpha,
    )
    trace = run_dynamics(inst, start, cfg)
    _emit(args, io.dumps_trace(trace))
    return 0 if trace.termination == "converged" else 1


def _cmd_analyze(args) -> int:
    inst = io.loads_instance(_read(args.instance))
    report = analyze(inst, budget=args.budget, jobs=args.jobs)
    _emit(args, io.dumps_report(report))
    return 0


def _cmd_spe(args) -> int:
    game = io.loads_game(_read(args.game))
    result = spe_solve(game, mode=args.mode, budget=args.budget)
    _emit(args, io.dumps_spe_result(result))
    return 0


def _cmd_spoa(args) -> int:
    game = io.loads_game(_read(args.game))
    value = spoa(game, budget=args.budget)
    _emit(args, json.dumps(io.rational_str(value)) + "\n")
    return 0


def _cmd_gadget(args) -> int:
    kind = args.kind
    if kind in NAMED_INSTANCES:
        built = build_named_instance(kind, n=args.n, m=args.m)
        _emit(args, _dump_built(built))
        return 0
    if kind == "maxcut":
        red = maxcut_to_cag(io.loads_graph(_read(args.input)))
    elif kind == "3dm":
        red = tdm_to_cag(io.loads_tdm(_read(args.input)), symmetrize=args.symmetrize)
    elif kind == "tqbf":
        formula = io.loads_tqbf(_read(args.input))
        if args.pad:
            formula = pad_tqbf(formula)
        red = tqbf_to_cag(formula)
    elif kind == "symmetrize":
        red = symmetrize_weighted(
            io.loads_instance(_read(args.input)), split=args.split
        )
    elif kind == "unionize":
        red = unionize_strategies(io.loads_instance(_read(args.input)))
    elif kind == "split":
        red = split_unit_values(io.loads_instance(_read(args.input)))
    else:
        raise ValueError(f"unknown gadget kind {kind!r}")
    if args.instance_only:
        _emit(args, _dump_built(red.instance))
        return 0
    payload = {
        "instance": json.loads(_dump_built(red.instance)),
        "mapping": _jsonable(red.mapping),
    }
    _emit(args, json.dumps(payload, indent=2) + "\n")
    return 0


def _cmd_gen(args) -> int:
    inst = gen_random(
        args.kind,
        args.seed,
        num_nodes=args.nodes,
        num_agents=args.agents,
        num_strategies=args.strategies,
        max_strategy_size=args.max_strategy_size,
        max_weight=args.max_weight,
        max_value=args.max_value,
    )
    _emit(args, io.dumps_instance(inst))
    return 0


def _cmd_verify(args) -> int:
    names = args.only if args.only else None
    return 0 if run_all(names) else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cag",
        description="Exact-arithmetic toolkit for customer attraction games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_output(p):
        p.add_argument("-o", "--output", help="write to file instead of stdout")
        return p

    p = with_output(sub.add_parser("validate", help="check instance invariants"))
    p.add_argument("instance")
    p.set_defaults(func=_cmd_validate)

    p = with_output(
        sub.add_parser("eval", help="loads, utilities, welfare of a profile")
    )
    p.add_argument("instance")
    p.add_argument("--profile", required=True, help="profile file or '0,1,0'")
    p.set_defaults(func=_cmd_eval)

    p = with_output(sub.add_parser("potential", help="evaluate a potential"))
    p.add_argument("instance")
    p.add_argument("--profile", required=True)
    p.add_argument(
        "--kind", choices=("rosenthal", "two-agent", "log"), default="rosenthal"
    )
    p.set_defaults(func=_cmd_potential)

    p = with_output(sub.add_parser("dynamics", help="run improvement dynamics"))
    p.add_argument("instance")
    p.add_argument("--mode", choices=("epsilon", "alpha"), default="epsilon")
    p.add_argument("--eps", default="0", help="rational like 1/10")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--allow-any-alpha", action="store_true")
    p.add_argument("--max-steps", type=int, default=100_000)
    p.add_argument("--start", help="profile file or '0,1,0'")
    p.set_defaults(func=_cmd_dynamics)

    p = with_output(sub.add_parser("analyze", help="equilibrium report"))
    p.add_argument("instance")
    p.add_argument("--budget", type=lambda s: int(float(s)), default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_analyze)

    p = with_output(sub.add_parser("spe", help="subgame-perfect outcomes"))
    p.add_argument("game")
    p.add_argument(
        "--mode", choices=("deterministic", "exhaustive"), default="deterministic"
    )
    p.add_argument("--budget", type=lambda s: int(float(s)), default=None)
    p.set_defaults(func=_cmd_spe)

    p = with_output(sub.add_parser("spoa", help="sequential price of anarchy"))
    p.add_argument("game")
    p.add_argument("--mode", choices=("exhaustive",), default="exhaustive")
    p.add_argument("--budget", type=lambda s: int(float(s)), default=None)
    p.set_defaults(func=_cmd_spoa)

    p = with_output(
        sub.add_parser("gadget", help="build reductions and named instances")
    )
    p.add_argument(
        "kind",
        help="maxcut|3dm|tqbf|symmetrize|unionize|split or a named instance",
    )
    p.add_argument("input", nargs="?", help="input file for reductions")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--symmetrize", action="store_true", help="3dm: symmetrize output")
    p.add_argument("--split", action="store_true", help="symmetrize: unit-split values")
    p.add_argument("--pad", action="store_true", help="tqbf: pad to a valid shape")
    p.add_argument(
        "--instance-only",
        action="store_true",
        help="emit only the instance, without the mapping",
    )
    p.set_defaults(func=_cmd_gadget)

    p = with_output(sub.add_parser("gen", help="deterministic random instance"))
    p.add_argument("--kind", choices=GENERATOR_KINDS, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--nodes", type=int, default=6)
    p.add_argument("--agents", type=int, default=3)
    p.add_argument("--strategies", type=int, default=3)
    p.add_argument("--max-strategy-size", type=int, default=None)
    p.add_argument("--max-weight", type=int, default=9)
    p.add_argument("--max-value", type=int, default=9)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("verify", help="replay the acceptance suite")
    p.add_argument(
        "--only",
        nargs="*",
        metavar="NAME",
        help="criterion names: " + ", ".join(c.name for c in CRITERIA),
    )
    p.set_defaults(func=_cmd_verify)

    return parser


def run_cli(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "budget", None) is None and hasattr(args, "budget"):
        args.budget = _default_budget()
    try:
        return args.func(args)
    except (BudgetError, NoEquilibriumError) as exc:
        print(f"cag: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, IndexError, OSError) as exc:
        print(f"cag: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli())
