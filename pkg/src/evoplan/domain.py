"""Domain formalism: concepts, weighted predicates, operators, goals, and the
synthesized terminal set that bridges typeless tree values to typed objects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Mapping, Optional, Union

from .errors import DomainError, InstanceError
from .facts import Atom, Fact, Pattern, Variable, WorldState

# Evaluators score the final world state against the goals of one predicate:
# (final_state, relevant_goal_items, instance) -> non-negative real.
FitnessEvaluator = Callable[[WorldState, "list[GoalItem]", "ProblemInstance"], float]


@dataclass(frozen=True)
class PredicateDef:
    name: str
    arity: int
    evaluator: FitnessEvaluator
    weight: float = 1.0

    def __post_init__(self) -> None:
        if self.weight < 0:
            raise DomainError(f"predicate '{self.name}' has negative weight")


@dataclass(frozen=True)
class OperatorDef:
    """A procedural planning operator.

    ``body(ctx, *values)`` receives terminal-index values, converts each of
    them exactly once (and up front) via ``ctx.convert``, checks its own
    preconditions and returns whether it executed. A body must leave the
    state untouched when it returns False. Arity-0 operators serve as tree
    leaves; arity >= 1 operators as internal tree nodes.
    """

    name: str
    arity: int
    body: Callable[..., bool]


@dataclass(frozen=True)
class Domain:
    name: str
    concepts: tuple[str, ...]
    predicates: tuple[PredicateDef, ...]
    operators: tuple[OperatorDef, ...]
    auxiliaries: Mapping[str, Callable] = field(default_factory=dict)
    # True when operator behavior depends on the action's plan position
    # (two-robot dispatch); the oracle then keys states on position parity.
    position_sensitive: bool = False
    validate_instance: Optional[Callable[["ProblemInstance"], None]] = None

    def __post_init__(self) -> None:
        if len(set(self.concepts)) != len(self.concepts):
            raise DomainError(f"domain '{self.name}' has duplicate concept names")
        if not self.predicates:
            raise DomainError(f"domain '{self.name}' declares no predicates")

    @cached_property
    def predicate_arities(self) -> dict[str, int]:
        return {p.name: p.arity for p in self.predicates}

    @cached_property
    def operator_map(self) -> dict[str, OperatorDef]:
        return {op.name: op for op in self.operators}


@dataclass(frozen=True)
class GroundGoal:
    fact: Fact


@dataclass(frozen=True)
class QuantifiedGoal:
    quantifier: str  # "for-all" | "exists"
    concept: str
    template: Pattern  # exactly one variable, ranging over the concept


Goal = Union[GroundGoal, QuantifiedGoal]


@dataclass(frozen=True)
class GoalItem:
    """One expanded goal unit: a single required fact, or an any-of group
    produced by an exists goal. An unsatisfied item counts as one goal."""

    pred: str
    facts: tuple[Fact, ...]
    any_of: bool = False

    def satisfied(self, state: WorldState) -> bool:
        if self.any_of:
            return any(f in state for f in self.facts)
        return self.facts[0] in state


@dataclass(frozen=True)
class TerminalMap:
    """The synthesized terminal set: ``size`` indices, each convertible to one
    instance of every concept. Every instance of a concept with k instances is
    the image of exactly size/k terminal indices."""

    size: int
    images: Mapping[str, tuple[Atom, ...]]

    def convert(self, value: int, concept: str) -> Atom:
        if not 1 <= value <= self.size:
            raise ValueError(f"terminal value {value} outside 1..{self.size}")
        names = self.images.get(concept)
        if names is None:
            raise ValueError(f"unknown concept '{concept}'")
        return names[(value - 1) % len(names)]


def build_terminal_map(instance: "ProblemInstance") -> TerminalMap:
    counts = []
    for concept in instance.domain.concepts:
        names = instance.concept_instances.get(concept, ())
        if not names:
            raise InstanceError(f"concept '{concept}' has no instances")
        counts.append(len(names))
    size = math.lcm(*counts) if counts else 1
    images = {
        c: tuple(instance.concept_instances[c]) for c in instance.domain.concepts
    }
    return TerminalMap(size, images)


@dataclass
class ProblemInstance:
    """One problem: a domain, its object universe, S0, and the goals."""

    domain: Domain
    concept_instances: dict[str, tuple[Atom, ...]]
    init_state: WorldState
    goals: tuple[Goal, ...]
    extra: dict[str, Atom] = field(default_factory=dict)

    def validate(self) -> None:
        seen: dict[Atom, str] = {}
        for concept, names in self.concept_instances.items():
            if concept not in self.domain.concepts:
                raise InstanceError(f"undeclared concept '{concept}'")
            if not names:
                raise InstanceError(f"concept '{concept}' has no instances")
            for name in names:
                if name in seen:
                    raise InstanceError(
                        f"object '{name}' declared under both "
                        f"'{seen[name]}' and '{concept}'"
                    )
                seen[name] = concept
        for concept in self.domain.concepts:
            if concept not in self.concept_instances:
                raise InstanceError(f"concept '{concept}' has no instances")
        for f in self.init_state:
            self._check_fact(f, "init fact")
        for goal in self.goals:
            self._check_goal(goal)
        if self.domain.validate_instance is not None:
            self.domain.validate_instance(self)

    def _check_fact(self, f: Fact, what: str) -> None:
        declared = self.domain.predicate_arities.get(f.pred)
        if declared is None:
            raise InstanceError(f"{what} {f} uses undeclared predicate '{f.pred}'")
        if declared != len(f.args):
            raise InstanceError(
                f"{what} {f} has {len(f.args)} args, "
                f"'{f.pred}' is declared with arity {declared}"
            )
        for a in f.args:
            if isinstance(a, str) and a not in self.object_concepts:
                raise InstanceError(f"{what} {f} references undeclared object '{a}'")

    def _check_goal(self, goal: Goal) -> None:
        if isinstance(goal, GroundGoal):
            self._check_fact(goal.fact, "goal")
            return
        if goal.quantifier not in ("for-all", "exists"):
            raise InstanceError(f"unknown quantifier '{goal.quantifier}'")
        if goal.concept not in self.concept_instances:
            raise InstanceError(
                f"goal quantifies over undeclared concept '{goal.concept}'"
            )
        tpl = goal.template
        vars_in = [t for t in tpl.terms if isinstance(t, Variable)]
        if len(vars_in) != 1:
            raise InstanceError(f"goal template {tpl} must contain exactly one variable")
        declared = self.domain.predicate_arities.get(tpl.pred)
        if declared is None:
            raise InstanceError(f"goal {tpl} uses undeclared predicate '{tpl.pred}'")
        if declared != len(tpl.terms):
            raise InstanceError(f"goal template {tpl} has wrong arity for '{tpl.pred}'")
        for t in tpl.terms:
            if isinstance(t, str) and t not in self.object_concepts:
                raise InstanceError(f"goal {tpl} references undeclared object '{t}'")

    @cached_property
    def object_concepts(self) -> dict[Atom, str]:
        return {
            name: concept
            for concept, names in self.concept_instances.items()
            for name in names
        }

    @cached_property
    def terminal_map(self) -> TerminalMap:
        return build_terminal_map(self)

    @cached_property
    def goal_items(self) -> tuple[GoalItem, ...]:
        return tuple(expand_goals(self.goals, self))

    @cached_property
    def goal_groups(self) -> dict[str, list[GoalItem]]:
        groups: dict[str, list[GoalItem]] = {}
        for item in self.goal_items:
            groups.setdefault(item.pred, []).append(item)
        return groups

    def fresh_state(self) -> WorldState:
        """A private copy of S0 for one simulation."""
        state = self.init_state.copy()
        state.arities = self.domain.predicate_arities
        return state


def expand_goals(goals: tuple[Goal, ...], instance: ProblemInstance) -> list[GoalItem]:
    """Ground all goals: for-all becomes one item per concept instance,
    exists becomes a single any-of group."""
    items: list[GoalItem] = []
    for goal in goals:
        if isinstance(goal, GroundGoal):
            items.append(GoalItem(goal.fact.pred, (goal.fact,)))
            continue
        names = instance.concept_instances.get(goal.concept)
        if names is None:
            raise InstanceError(
                f"goal quantifies over undeclared concept '{goal.concept}'"
            )
        grounded = tuple(_substitute(goal.template, name) for name in names)
        if goal.quantifier == "for-all":
            items.extend(GoalItem(f.pred, (f,)) for f in grounded)
        elif goal.quantifier == "exists":
            items.append(GoalItem(goal.template.pred, grounded, any_of=True))
        else:
            raise InstanceError(f"unknown quantifier '{goal.quantifier}'")
    return items


def _substitute(tpl: Pattern, name: Atom) -> Fact:
    return Fact(
        tpl.pred,
        tuple(name if isinstance(t, Variable) else t for t in tpl.terms),
    )


def number_of_unsatisfied_goals(state: WorldState, items: "list[GoalItem]") -> int:
    return sum(1 for item in items if not item.satisfied(state))


def unsatisfied_goal_count(
    state: WorldState, items: "list[GoalItem]", instance: ProblemInstance
) -> float:
    """The default predicate evaluator: plain count of unmet goals."""
    return number_of_unsatisfied_goals(state, items)
