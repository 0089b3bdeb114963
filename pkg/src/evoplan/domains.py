"""Built-in planning domains.

* ``briefcase``: move objects between locations by carrying them in
  briefcases (put-in / take-out / move-briefcase).
* ``rnp``: a single robot navigates an m-by-n grid with pushable blocks.
* ``2rnp``: two robots share the grid and one common operator set; even plan
  positions act robot 1, odd positions robot 2.

Operator bodies follow the procedural contract: convert arguments up front,
self-check preconditions, mutate the state only on success.
"""

from __future__ import annotations

from functools import lru_cache, partial
from typing import Iterable, Mapping, Optional, Sequence

from .domain import (
    Domain,
    Goal,
    GoalItem,
    GroundGoal,
    OperatorDef,
    PredicateDef,
    ProblemInstance,
    unsatisfied_goal_count,
)
from .errors import InstanceError
from .facts import Atom, Fact, WorldState, fact
from .simulate import OpContext

# -- briefcase ----------------------------------------------------------------


def _bp_get_location(ctx: OpContext, thing: Atom) -> Optional[Atom]:
    return ctx.find("?location", "at", thing, "?location")


def _bp_get_briefcase(ctx: OpContext, obj: Atom) -> Optional[Atom]:
    return ctx.find("?briefcase", "in", obj, "?briefcase")


def _bp_do_move(ctx: OpContext, obj: Atom, case: Atom, to: Atom) -> None:
    if not ctx.holds("in", obj, case):
        return
    here = ctx.call("get-location", obj)
    if here is not None:
        ctx.delete("at", obj, here)
    ctx.add("at", obj, to)


def _bp_put_in(ctx: OpContext, arg1: int, arg2: int) -> bool:
    obj = ctx.convert(arg1, "object")
    case = ctx.convert(arg2, "briefcase")
    if ctx.call("get-location", obj) != ctx.call("get-location", case):
        return False
    # An object is carried by at most one briefcase at a time.
    current = ctx.call("get-briefcase", obj)
    if current is not None and current != case:
        return False
    ctx.add("in", obj, case)
    return True


def _bp_take_out(ctx: OpContext, arg1: int) -> bool:
    obj = ctx.convert(arg1, "object")
    case = ctx.call("get-briefcase", obj)
    if case is None:
        return False
    ctx.delete("in", obj, case)
    return True


def _bp_move_briefcase(ctx: OpContext, arg1: int, arg2: int) -> bool:
    case = ctx.convert(arg1, "briefcase")
    to = ctx.convert(arg2, "location")
    if ctx.holds("at", case, to):
        return False
    ctx.for_all("object", "do-move", case, to)
    here = ctx.call("get-location", case)
    if here is not None:
        ctx.delete("at", case, here)
    ctx.add("at", case, to)
    return True


def _bp_validate(instance: ProblemInstance) -> None:
    at: dict[Atom, Atom] = {}
    contained: dict[Atom, Atom] = {}
    kinds = instance.object_concepts
    for f in instance.init_state:
        if f.pred == "at":
            subj, loc = f.args
            if kinds.get(subj) not in ("object", "briefcase"):
                raise InstanceError(f"init fact {f}: '{subj}' is not a movable thing")
            if kinds.get(loc) != "location":
                raise InstanceError(f"init fact {f}: '{loc}' is not a location")
            if subj in at:
                raise InstanceError(f"'{subj}' has more than one location in init")
            at[subj] = loc
        elif f.pred == "in":
            obj, case = f.args
            if kinds.get(obj) != "object" or kinds.get(case) != "briefcase":
                raise InstanceError(f"init fact {f}: expects (in <object> <briefcase>)")
            if obj in contained:
                raise InstanceError(f"'{obj}' is inside more than one briefcase in init")
            contained[obj] = case
    movable = [
        name
        for concept in ("object", "briefcase")
        for name in instance.concept_instances[concept]
    ]
    for name in movable:
        if name not in at:
            raise InstanceError(f"'{name}' has no location in the initial state")
    for obj, case in contained.items():
        if at[obj] != at[case]:
            raise InstanceError(
                f"'{obj}' is inside '{case}' but they start at different locations"
            )


def briefcase_domain() -> Domain:
    return Domain(
        name="briefcase",
        concepts=("object", "briefcase", "location"),
        predicates=(
            PredicateDef("in", 2, unsatisfied_goal_count),
            PredicateDef("at", 2, unsatisfied_goal_count),
        ),
        operators=(
            OperatorDef("move-briefcase", 2, _bp_move_briefcase),
            OperatorDef("take-out", 1, _bp_take_out),
            OperatorDef("put-in", 2, _bp_put_in),
        ),
        auxiliaries={
            "do-move": _bp_do_move,
            "get-location": _bp_get_location,
            "get-briefcase": _bp_get_briefcase,
        },
        validate_instance=_bp_validate,
    )


def briefcase_instance(
    objects: Sequence[str],
    briefcases: Sequence[str],
    locations: Sequence[str],
    at: Mapping[str, str],
    goals: Iterable[Goal | Fact],
    contained: Mapping[str, str] | None = None,
) -> ProblemInstance:
    state = WorldState(fact("at", thing, loc) for thing, loc in at.items())
    for obj, case in (contained or {}).items():
        state.add_fact(fact("in", obj, case))
    inst = ProblemInstance(
        domain=get_domain("briefcase"),
        concept_instances={
            "object": tuple(objects),
            "briefcase": tuple(briefcases),
            "location": tuple(locations),
        },
        init_state=state,
        goals=tuple(g if not isinstance(g, Fact) else GroundGoal(g) for g in goals),
    )
    inst.validate()
    return inst


# -- grid navigation (rnp / 2rnp) ----------------------------------------------

DIRECTIONS = {"north": (0, 1), "south": (0, -1), "east": (1, 0), "west": (-1, 0)}


def robot_position(state: WorldState, robot: Atom) -> tuple[int, int]:
    for f in state:
        if f.pred == "robot-at" and f.args[0] == robot:
            return f.args[1], f.args[2]
    raise RuntimeError(f"no position fact for robot '{robot}'")


def two_rnp_dispatch(position: int) -> int:
    """Robot number acting at a 1-based plan position: even positions are
    robot 1, odd positions robot 2."""
    return 1 if position % 2 == 0 else 2


def _acting_robot(ctx: OpContext) -> Atom:
    robots = ctx.instance.concept_instances["robot"]
    if len(robots) == 1:
        return robots[0]
    if ctx.instance.extra.get("parity") == "executed":
        position = ctx.executed_count + 1
    else:
        position = ctx.attempt_index
    return robots[two_rnp_dispatch(position) - 1]


def _grid_size(ctx: OpContext) -> tuple[int, int]:
    return ctx.instance.extra["grid-w"], ctx.instance.extra["grid-h"]


def _robot_on(ctx: OpContext, x: int, y: int) -> bool:
    return any(
        f.pred == "robot-at" and f.args[1] == x and f.args[2] == y for f in ctx.state
    )


def _move_body(dx: int, dy: int, ctx: OpContext) -> bool:
    r = _acting_robot(ctx)
    x, y = robot_position(ctx.state, r)
    tx, ty = x + dx, y + dy
    w, h = _grid_size(ctx)
    if not (0 <= tx < w and 0 <= ty < h):
        return False
    if ctx.holds("block-at", tx, ty) or _robot_on(ctx, tx, ty):
        return False
    ctx.delete("robot-at", r, x, y)
    ctx.add("robot-at", r, tx, ty)
    return True


def _push_body(dx: int, dy: int, ctx: OpContext) -> bool:
    r = _acting_robot(ctx)
    x, y = robot_position(ctx.state, r)
    bx, by = x + dx, y + dy  # the neighboring cell holding the block
    tx, ty = x + 2 * dx, y + 2 * dy  # the cell right behind it
    if not ctx.holds("block-at", bx, by):
        return False
    w, h = _grid_size(ctx)
    if not (0 <= tx < w and 0 <= ty < h):
        return False
    if ctx.holds("block-at", tx, ty) or _robot_on(ctx, tx, ty):
        return False
    ctx.delete("block-at", bx, by)
    ctx.add("block-at", tx, ty)
    ctx.delete("robot-at", r, x, y)
    ctx.add("robot-at", r, bx, by)
    return True


def manhattan_goal_distance(
    state: WorldState, items: "list[GoalItem]", instance: ProblemInstance
) -> float:
    """Sum of Manhattan distances from each robot to its goal cell."""
    total = 0
    for item in items:
        robot, gx, gy = item.facts[0].args
        x, y = robot_position(state, robot)
        total += abs(x - gx) + abs(y - gy)
    return total


def _grid_operators() -> tuple[OperatorDef, ...]:
    ops = []
    for name, (dx, dy) in DIRECTIONS.items():
        ops.append(OperatorDef(f"move-{name}", 0, partial(_move_body, dx, dy)))
    for name, (dx, dy) in DIRECTIONS.items():
        ops.append(OperatorDef(f"push-{name}", 0, partial(_push_body, dx, dy)))
    return tuple(ops)


def _dest_keys(domain_name: str, robots: Sequence[Atom]) -> list[tuple[Atom, str, str]]:
    if domain_name == "rnp":
        return [(robots[0], "dest-x", "dest-y")]
    return [
        (robots[0], "dest-x1", "dest-y1"),
        (robots[1], "dest-x2", "dest-y2"),
    ]


def grid_goals(
    domain_name: str, robots: Sequence[Atom], extra: Mapping[str, Atom]
) -> tuple[Goal, ...]:
    """Destination goals derived from the instance's extra scalars."""
    goals = []
    for robot, kx, ky in _dest_keys(domain_name, robots):
        for key in (kx, ky):
            if key not in extra:
                raise InstanceError(f"{domain_name} instance needs extra key '{key}'")
        goals.append(GroundGoal(fact("robot-at", robot, extra[kx], extra[ky])))
    return tuple(goals)


def _grid_validate(instance: ProblemInstance) -> None:
    name = instance.domain.name
    robots = instance.concept_instances["robot"]
    expected = 1 if name == "rnp" else 2
    if len(robots) != expected:
        raise InstanceError(f"{name} needs exactly {expected} robot(s), got {len(robots)}")
    for key in ("grid-w", "grid-h"):
        v = instance.extra.get(key)
        if not isinstance(v, int) or v < 1:
            raise InstanceError(f"{name} instance needs positive int extra '{key}'")
    w, h = instance.extra["grid-w"], instance.extra["grid-h"]

    positions: dict[Atom, tuple[int, int]] = {}
    blocks: set[tuple[int, int]] = set()
    for f in instance.init_state:
        if f.pred == "robot-at":
            r, x, y = f.args
            if not (isinstance(x, int) and isinstance(y, int)):
                raise InstanceError(f"init fact {f}: coordinates must be integers")
            if not (0 <= x < w and 0 <= y < h):
                raise InstanceError(f"init fact {f}: position outside the {w}x{h} grid")
            if r in positions:
                raise InstanceError(f"robot '{r}' has more than one position fact")
            positions[r] = (x, y)
        elif f.pred == "block-at":
            x, y = f.args
            if not (isinstance(x, int) and isinstance(y, int)):
                raise InstanceError(f"init fact {f}: coordinates must be integers")
            if not (0 <= x < w and 0 <= y < h):
                raise InstanceError(f"init fact {f}: block outside the {w}x{h} grid")
            blocks.add((x, y))
    for r in robots:
        if r not in positions:
            raise InstanceError(f"robot '{r}' has no position fact in init")
        if positions[r] in blocks:
            raise InstanceError(f"robot '{r}' starts on a block")
    if len(set(positions.values())) != len(positions):
        raise InstanceError("robots start on the same cell")

    expected_goals = grid_goals(name, robots, instance.extra)
    if instance.goals != expected_goals:
        raise InstanceError(
            f"{name} goals must be derived from the extra destination keys"
        )
    for goal in expected_goals:
        _, gx, gy = goal.fact.args
        if not (isinstance(gx, int) and isinstance(gy, int) and 0 <= gx < w and 0 <= gy < h):
            raise InstanceError(f"destination {goal.fact} outside the {w}x{h} grid")
    parity = instance.extra.get("parity")
    if parity not in (None, "attempted", "executed"):
        raise InstanceError(f"extra 'parity' must be attempted or executed, got {parity!r}")


def rnp_domain() -> Domain:
    return Domain(
        name="rnp",
        concepts=("robot",),
        predicates=(
            PredicateDef("robot-at", 3, manhattan_goal_distance),
            PredicateDef("block-at", 2, unsatisfied_goal_count),
        ),
        operators=_grid_operators(),
        validate_instance=_grid_validate,
    )


def two_rnp_domain() -> Domain:
    return Domain(
        name="2rnp",
        concepts=("robot",),
        predicates=(
            PredicateDef("robot-at", 3, manhattan_goal_distance),
            PredicateDef("block-at", 2, unsatisfied_goal_count),
        ),
        operators=_grid_operators(),
        position_sensitive=True,
        validate_instance=_grid_validate,
    )


def rnp_instance(
    width: int,
    height: int,
    start: tuple[int, int],
    dest: tuple[int, int],
    blocks: Iterable[tuple[int, int]] = (),
    robot: str = "r1",
) -> ProblemInstance:
    state = WorldState([fact("robot-at", robot, *start)])
    for bx, by in blocks:
        state.add_fact(fact("block-at", bx, by))
    extra: dict[str, Atom] = {
        "grid-w": width,
        "grid-h": height,
        "dest-x": dest[0],
        "dest-y": dest[1],
    }
    inst = ProblemInstance(
        domain=get_domain("rnp"),
        concept_instances={"robot": (robot,)},
        init_state=state,
        goals=grid_goals("rnp", (robot,), extra),
        extra=extra,
    )
    inst.validate()
    return inst


def two_rnp_instance(
    width: int,
    height: int,
    starts: tuple[tuple[int, int], tuple[int, int]],
    dests: tuple[tuple[int, int], tuple[int, int]],
    blocks: Iterable[tuple[int, int]] = (),
    robots: tuple[str, str] = ("r1", "r2"),
    parity: Optional[str] = None,
) -> ProblemInstance:
    state = WorldState(fact("robot-at", r, *pos) for r, pos in zip(robots, starts))
    for bx, by in blocks:
        state.add_fact(fact("block-at", bx, by))
    extra: dict[str, Atom] = {
        "grid-w": width,
        "grid-h": height,
        "dest-x1": dests[0][0],
        "dest-y1": dests[0][1],
        "dest-x2": dests[1][0],
        "dest-y2": dests[1][1],
    }
    if parity is not None:
        extra["parity"] = parity
    inst = ProblemInstance(
        domain=get_domain("2rnp"),
        concept_instances={"robot": tuple(robots)},
        init_state=state,
        goals=grid_goals("2rnp", robots, extra),
        extra=extra,
    )
    inst.validate()
    return inst


# -- registry -------------------------------------------------------------------

_BUILDERS = {
    "briefcase": briefcase_domain,
    "rnp": rnp_domain,
    "2rnp": two_rnp_domain,
}

GRID_DOMAINS = ("rnp", "2rnp")


@lru_cache(maxsize=None)
def get_domain(name: str) -> Domain:
    builder = _BUILDERS.get(name)
    if builder is None:
        known = ", ".join(sorted(_BUILDERS))
        raise InstanceError(f"unknown domain '{name}' (known: {known})")
    return builder()
