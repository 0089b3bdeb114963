"""Brute-force breadth-first search over ground actions: an optimality
reference and strict plan validator for small instances.

Ground actions are enumerated by probing every operator over all terminal
value tuples and deduplicating on the converted argument tuple, so each
distinct fully-instantiated action appears once. BFS edges use strict
precondition semantics: an action that cannot execute is not a successor.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence, Union

from .domain import ProblemInstance
from .facts import Atom, Fact, WorldState
from .simulate import Action, OpContext

SOLVED = "solved"
UNSOLVABLE = "unsolvable-within-depth"
BUDGET_EXCEEDED = "budget-exceeded"


@dataclass(frozen=True)
class GroundAction:
    op: str
    values: tuple[int, ...]  # terminal values that realize the ground arguments
    ground_args: tuple[Atom, ...]

    def __str__(self) -> str:
        if not self.ground_args:
            return f"({self.op})"
        return f"({self.op} {' '.join(str(a) for a in self.ground_args)})"


@dataclass(frozen=True)
class OracleResult:
    status: str
    optimal_length: Optional[int] = None
    plan: tuple[GroundAction, ...] = ()

    @property
    def solved(self) -> bool:
        return self.status == SOLVED


@dataclass(frozen=True)
class ValidationResult:
    status: str  # "valid-and-solves" | "valid-not-solving" | "invalid-at-step"
    failed_step: Optional[int] = None


def enumerate_ground_actions(instance: ProblemInstance) -> list[GroundAction]:
    """All distinct fully-instantiated actions of the instance."""
    tmap = instance.terminal_map
    base = instance.fresh_state()
    actions: list[GroundAction] = []
    seen: set[tuple[str, tuple[Atom, ...]]] = set()
    for op in instance.domain.operators:
        for values in product(range(1, tmap.size + 1), repeat=op.arity):
            ctx = OpContext(base.copy(), instance, tmap)
            probe = ctx.attempt(op, values)
            key = (op.name, probe.ground_args)
            if key not in seen:
                seen.add(key)
                actions.append(GroundAction(op.name, values, probe.ground_args))
    return actions


def _goals_satisfied(instance: ProblemInstance, state: WorldState) -> bool:
    return all(item.satisfied(state) for item in instance.goal_items)


def bfs_optimal(
    instance: ProblemInstance,
    max_depth: int = 64,
    max_states: int = 500_000,
) -> OracleResult:
    """Shortest goal-reaching action sequence, or why none was found."""
    tmap = instance.terminal_map
    op_map = instance.domain.operator_map
    pos_sensitive = instance.domain.position_sensitive

    def key(state: WorldState, depth: int):
        fs = state.as_frozenset()
        return (fs, depth % 2) if pos_sensitive else fs

    start = instance.fresh_state()
    if _goals_satisfied(instance, start):
        return OracleResult(SOLVED, 0, ())

    actions = enumerate_ground_actions(instance)
    start_key = key(start, 0)
    parents: dict = {start_key: None}
    queue: deque[tuple[WorldState, int]] = deque([(start, 0)])
    while queue:
        state, depth = queue.popleft()
        if depth >= max_depth:
            continue
        state_key = key(state, depth)
        for ga in actions:
            nstate = state.copy()
            ctx = OpContext(
                nstate, instance, tmap, base_attempts=depth, base_executed=depth
            )
            if not ctx.attempt(op_map[ga.op], ga.values).executed:
                continue
            nkey = key(nstate, depth + 1)
            if nkey in parents:
                continue
            parents[nkey] = (state_key, ga)
            if _goals_satisfied(instance, nstate):
                return OracleResult(SOLVED, depth + 1, _reconstruct(parents, nkey))
            if len(parents) >= max_states:
                return OracleResult(BUDGET_EXCEEDED)
            queue.append((nstate, depth + 1))
    return OracleResult(UNSOLVABLE)


def _reconstruct(parents: dict, end_key) -> tuple[GroundAction, ...]:
    steps = []
    node = end_key
    while parents[node] is not None:
        node, ga = parents[node]
        steps.append(ga)
    return tuple(reversed(steps))


PlanLike = Sequence[Union[Action, GroundAction, tuple]]


def validate_plan(instance: ProblemInstance, actions: PlanLike) -> ValidationResult:
    """Strict replay from S0: every precondition must hold at its step."""
    lookup = {
        (ga.op, ga.ground_args): ga.values for ga in enumerate_ground_actions(instance)
    }
    op_map = instance.domain.operator_map
    ctx = OpContext(instance.fresh_state(), instance, instance.terminal_map)
    for step, item in enumerate(actions, start=1):
        op_name, ground_args = _as_ground(item)
        values = lookup.get((op_name, ground_args))
        if values is None:
            return ValidationResult("invalid-at-step", step)
        if not ctx.attempt(op_map[op_name], values).executed:
            return ValidationResult("invalid-at-step", step)
    if _goals_satisfied(instance, ctx.state):
        return ValidationResult("valid-and-solves")
    return ValidationResult("valid-not-solving")


def _as_ground(item) -> tuple[str, tuple[Atom, ...]]:
    if isinstance(item, (Action, GroundAction)):
        return item.op, tuple(item.ground_args)
    op_name, args = item
    return op_name, tuple(args)
