"""Named benchmark instances used throughout the analysis and tests.

* ``example1`` - four nodes valued (2, 1, 1, 2), two active agents with
  weights 4 and 1 plus a pinned unit dummy on the outer nodes; the dummy
  tilts the 2x2 payoff matrix so every state has a profitable deviation and
  no pure equilibrium exists.
* ``example1-minus-dummy`` - the same game without the dummy; it has two
  equilibria (the anti-diagonal cells) and serves as the core gadget of the
  matching reduction.
* ``poa-lb(n, m)`` - n unit nodes, m unit agents sharing the space
  ``{q1..qm}, {q_{m+1}}, ..., {qn}``; everyone crowding the first set is an
  equilibrium, so the price of anarchy is n/m for n < 2m and (2m-1)/m
  otherwise.
* ``spoa-two-agent`` / ``spoa-family(m)`` - sequential unit games whose
  worst subgame-perfect outcome wastes the singleton nodes, giving
  sequential price of anarchy (2m-1)/m.
* ``no-potential-counterexample`` - one unit node, weights (1, 2), each
  agent choosing between the node and staying out; two deviation paths sum
  to different utility changes, so no exact potential exists.  Note the
  empty strategy: this instance deliberately fails validation and is only
  used for the potential-path test.
"""

from __future__ import annotations

import re

from .model import Instance
from .sequential import SequentialGame

__all__ = ["build_named_instance", "NAMED_INSTANCES"]

NAMED_INSTANCES = (
    "example1",
    "example1-minus-dummy",
    "no-potential-counterexample",
    "poa-lb",
    "spoa-two-agent",
    "spoa-family",
)


def _example1() -> Instance:
    return Instance.build(
        nodes=[("q1", 2), ("q2", 1), ("q3", 1), ("q4", 2)],
        agents=[
            ("a1", 4, [[0, 1], [2, 3]]),
            ("a2", 1, [[0, 2], [1, 3]]),
            ("a3", 1, [[0, 3]]),
        ],
    )


def _example1_minus_dummy() -> Instance:
    full = _example1()
    return Instance(full.nodes, full.agents[:2])


def _poa_lb(n: int, m: int) -> Instance:
    if n <= m:
        raise ValueError("poa-lb requires n > m")
    space = [list(range(m))] + [[j] for j in range(m, n)]
    return Instance.build(
        nodes=[(f"q{j + 1}", 1) for j in range(n)],
        agents=[(f"a{i + 1}", 1, space) for i in range(m)],
    )


def _spoa_two_agent() -> SequentialGame:
    inst = Instance.build(
        nodes=[("q1", 1), ("q2", 1), ("q3", 1)],
        agents=[(f"a{i}", 1, [[0, 1], [2]]) for i in (1, 2)],
    )
    return SequentialGame.natural(inst)


def _spoa_family(m: int) -> SequentialGame:
    if m < 2:
        raise ValueError("spoa-family requires m >= 2")
    return SequentialGame.natural(_poa_lb(2 * m - 1, m))


def _no_potential_counterexample() -> Instance:
    return Instance.build(
        nodes=[("q1", 1)],
        agents=[("a1", 1, [[0], []]), ("a2", 2, [[0], []])],
    )


def build_named_instance(
    name: str, n: int | None = None, m: int | None = None
) -> Instance | SequentialGame:
    """Build a named instance.  Parameters may be given as keywords or
    inline, e.g. ``poa-lb(4,2)`` or ``spoa-family(3)``."""
    inline = re.fullmatch(r"([a-z0-9-]+)\((\d+)(?:,\s*(\d+))?\)", name.strip())
    if inline:
        name = inline.group(1)
        n = int(inline.group(2))
        if inline.group(3) is not None:
            m = int(inline.group(3))
    if name == "example1":
        return _example1()
    if name == "example1-minus-dummy":
        return _example1_minus_dummy()
    if name == "no-potential-counterexample":
        return _no_potential_counterexample()
    if name == "poa-lb":
        if n is None or m is None:
            raise ValueError("poa-lb requires parameters n and m")
        return _poa_lb(n, m)
    if name == "spoa-two-agent":
        return _spoa_two_agent()
    if name == "spoa-family":
        size = m if m is not None else n
        if size is None:
            raise ValueError("spoa-family requires parameter m")
        return _spoa_family(size)
    raise ValueError(f"unknown instance name {name!r}")
