"""Plan simulation: run a program tree against a copy of the initial state,
record the linear action trace, and score the outcome.

Evaluation is depth-first, children left-to-right before their parent's
operator fires. An operator whose preconditions fail is still recorded in
the trace, marked non-executed, and leaves the state untouched. Every node
yields a terminal index: leaves their own value, operator nodes their first
argument's value (arity-0 operators yield 1), the ``seq`` combinator its
last child's value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .domain import Domain, OperatorDef, ProblemInstance, TerminalMap
from .errors import DomainError
from .facts import Atom, Fact, Pattern, Variable, WorldState
from .program import SEQ, Call, Leaf, Node


@dataclass(frozen=True)
class Action:
    """One attempted operator application, fully instantiated."""

    op: str
    ground_args: tuple[Atom, ...]
    executed: bool

    def __str__(self) -> str:
        if not self.ground_args:
            return f"({self.op})"
        return f"({self.op} {' '.join(str(a) for a in self.ground_args)})"


@dataclass(frozen=True)
class Plan:
    actions: tuple[Action, ...]

    @property
    def executed_length(self) -> int:
        return sum(1 for a in self.actions if a.executed)

    def executed_only(self) -> tuple[Action, ...]:
        return tuple(a for a in self.actions if a.executed)


@dataclass(frozen=True, order=True)
class FitnessValue:
    """Lexicographic score: goal fitness first, executed plan length second."""

    goal_fitness: float
    executed_length: int

    @property
    def solved(self) -> bool:
        return self.goal_fitness == 0


class OpContext:
    """Execution context handed to operator bodies and auxiliaries.

    Bundles the mutable world state with the instance data and records the
    convert calls of the action currently being attempted (they become the
    action's ground arguments in the trace).
    """

    def __init__(
        self,
        state: WorldState,
        instance: ProblemInstance,
        tmap: Optional[TerminalMap] = None,
        base_attempts: int = 0,
        base_executed: int = 0,
    ) -> None:
        self.state = state
        self.instance = instance
        self.domain: Domain = instance.domain
        self.tmap = tmap if tmap is not None else instance.terminal_map
        self.trace: list[Action] = []
        self._base_attempts = base_attempts
        self._base_executed = base_executed
        self._executed_in_trace = 0
        self._conversions: list[Atom] = []

    # -- world access -----------------------------------------------------
    def convert(self, value: int, concept: str) -> Atom:
        atom = self.tmap.convert(value, concept)
        self._conversions.append(atom)
        return atom

    def add(self, pred: str, *args: Atom) -> None:
        self.state.add_fact(Fact(pred, args))

    def delete(self, pred: str, *args: Atom) -> None:
        self.state.delete_fact(Fact(pred, args))

    def holds(self, pred: str, *args: Atom) -> bool:
        return self.state.is_fact(Fact(pred, args))

    def find(self, var: str, pred: str, *terms) -> Optional[Atom]:
        """Single-variable lookup; ``var`` and variable terms are '?name'."""
        v = Variable(var)
        conv = tuple(
            Variable(t) if isinstance(t, str) and t.startswith("?") else t
            for t in terms
        )
        return self.state.find_attribute_value(v, Pattern(pred, conv))

    # -- quantifiers and auxiliaries ---------------------------------------
    def call(self, aux_name: str, *args):
        aux = self.domain.auxiliaries.get(aux_name)
        if aux is None:
            raise DomainError(f"unknown auxiliary function '{aux_name}'")
        return aux(self, *args)

    def for_all(self, concept: str, aux_name: str, *extra) -> None:
        """Apply an auxiliary to every instance of a concept, declared order."""
        for name in self._concept_names(concept):
            self.call(aux_name, name, *extra)

    def exists(self, concept: str, aux_name: str, *extra) -> bool:
        """True iff the auxiliary holds for some instance; short-circuits.
        The auxiliary must not mutate the state."""
        return any(
            bool(self.call(aux_name, name, *extra))
            for name in self._concept_names(concept)
        )

    def _concept_names(self, concept: str) -> tuple[Atom, ...]:
        names = self.instance.concept_instances.get(concept)
        if names is None:
            raise DomainError(f"unknown concept '{concept}'")
        return names

    # -- plan position (for position-dependent dispatch) -------------------
    @property
    def attempt_index(self) -> int:
        """1-based position of the action currently being attempted,
        counting every attempted action."""
        return self._base_attempts + len(self.trace) + 1

    @property
    def executed_count(self) -> int:
        """Number of actions executed before the current attempt."""
        return self._base_executed + self._executed_in_trace

    # -- action application -------------------------------------------------
    def attempt(self, op: OperatorDef, values: Sequence[int]) -> Action:
        self._conversions = []
        executed = bool(op.body(self, *values))
        action = Action(op.name, tuple(self._conversions), executed)
        self.trace.append(action)
        if executed:
            self._executed_in_trace += 1
        return action


def execute_program(
    prog: Node,
    instance: ProblemInstance,
    tmap: Optional[TerminalMap] = None,
) -> tuple[WorldState, Plan]:
    """Simulate ``prog`` from a private copy of S0; return the final state
    and the full action trace."""
    ctx = OpContext(instance.fresh_state(), instance, tmap)
    _eval(prog, ctx)
    return ctx.state, Plan(tuple(ctx.trace))


def _eval(node: Node, ctx: OpContext) -> int:
    if isinstance(node, Leaf):
        return node.index
    values = [_eval(arg, ctx) for arg in node.args]
    if node.op == SEQ:
        return values[-1]
    op = ctx.domain.operator_map.get(node.op)
    if op is None:
        raise DomainError(f"unknown operator '{node.op}'")
    ctx.attempt(op, values)
    return values[0] if values else 1


def evaluate_fitness(
    prog: Node,
    instance: ProblemInstance,
    tmap: Optional[TerminalMap] = None,
) -> FitnessValue:
    """Simulate and score: weighted sum of per-predicate evaluator outputs
    over the final state, tie-broken by executed plan length."""
    final_state, plan = execute_program(prog, instance, tmap)
    return score_state(final_state, instance, plan.executed_length)


def score_state(
    state: WorldState, instance: ProblemInstance, executed_length: int = 0
) -> FitnessValue:
    groups = instance.goal_groups
    total = 0.0
    for p in instance.domain.predicates:
        value = p.evaluator(state, groups.get(p.name, []), instance)
        if value < 0:
            raise DomainError(
                f"fitness evaluator for '{p.name}' returned negative value {value}"
            )
        total += p.weight * value
    return FitnessValue(total, executed_length)


def render_plan(plan: Plan, mode: str = "all") -> str:
    """Numbered action list, one per line: ``1: (put-in o1 b1)``."""
    if mode == "all":
        actions = plan.actions
    elif mode == "executed-only":
        actions = plan.executed_only()
    else:
        raise ValueError(f"unknown render mode '{mode}'")
    return "\n".join(f"{i}: {a}" for i, a in enumerate(actions, start=1))
