#!/usr/bin/env python3
"""Generate the benchmark instance corpus under src/evoplan/corpus/.

Instance shapes (grid sizes, obstacle counts, object counts) follow the
benchmark suite definitions in evoplan.bench; obstacle layouts and object
placements are fixed here. Every desk-scale instance is verified solvable
before it is written: small ones by the breadth-first oracle, larger ones by
replaying a handcrafted plan through the strict validator, and the mid-size
two-robot grids by a short evolutionary run.
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from evoplan import (  # noqa: E402
    GpParams,
    bfs_optimal,
    briefcase_instance,
    evolve,
    fact,
    format_instance,
    rnp_instance,
    two_rnp_instance,
    validate_plan,
)

CORPUS = ROOT / "src" / "evoplan" / "corpus"

RNP1_BLOCKS = [(1, 0), (1, 1), (1, 2), (3, 0), (3, 1), (2, 2)]
RNP2_BLOCKS = [(0, 1), (1, 1), (2, 1), (3, 1), (1, 3), (2, 3)]
# Two full walls plus two stray blocks: the robot must push through both walls.
RNP3_BLOCKS = [(x, 2) for x in range(8)] + [(x, 5) for x in range(8)] + [(2, 0), (5, 7)]


def moves(*steps: str) -> list[tuple[str, tuple]]:
    return [(f"move-{s}", ()) for s in steps]


def east_then_north(width: int, height: int) -> list[tuple[str, tuple]]:
    return moves(*(["east"] * (width - 1) + ["north"] * (height - 1)))


def rnp3_plan() -> list[tuple[str, tuple]]:
    plan = moves("north")
    plan += [("push-north", ())] * 2          # through the lower wall at x=0
    plan += moves("east", "north")
    plan += [("push-north", ())] * 2          # through the upper wall at x=1
    plan += moves(*(["east"] * 6), "north")
    return plan


def rnp6_plan() -> list[tuple[str, tuple]]:
    return moves(*(["north"] * 3), *(["east"] * 99), *(["north"] * 96))


def rnp7_plan() -> list[tuple[str, tuple]]:
    return moves(*(["east"] * 4), *(["north"] * 99), *(["east"] * 95))


def rnp8_plan() -> list[tuple[str, tuple]]:
    return moves("east", "north", *(["east"] * 7), *(["north"] * 98), *(["east"] * 91))


def bp_case(n_objects: int, n_locations: int, n_briefcases: int):
    objects = tuple(f"o{i}" for i in range(1, n_objects + 1))
    briefcases = tuple(f"b{i}" for i in range(1, n_briefcases + 1))
    locations = tuple(f"l{i}" for i in range(1, n_locations + 1))
    at = {o: locations[i % n_locations] for i, o in enumerate(objects)}
    step = max(1, (n_locations - 1) // n_briefcases)
    at.update(
        {b: locations[(i * step) % n_locations] for i, b in enumerate(briefcases)}
    )
    dests = {o: locations[(i + 1) % n_locations] for i, o in enumerate(objects)}
    goals = [fact("at", o, dests[o]) for o in objects]
    return briefcase_instance(objects, briefcases, locations, at, goals), at, dests


def bp_delivery_plan(at: dict, dests: dict, bc: str) -> list[tuple[str, tuple]]:
    plan: list[tuple[str, tuple]] = []
    pos = at[bc]
    for obj, dest in dests.items():
        if at[obj] == dest:
            continue
        if pos != at[obj]:
            plan.append(("move-briefcase", (bc, at[obj])))
            pos = at[obj]
        plan.append(("put-in", (obj, bc)))
        if pos != dest:
            plan.append(("move-briefcase", (bc, dest)))
            pos = dest
        plan.append(("take-out", (obj,)))
    return plan


def check_plan(name: str, instance, plan) -> None:
    result = validate_plan(instance, plan)
    assert result.status == "valid-and-solves", f"{name}: {result}"
    print(f"  {name}: plan of {len(plan)} actions validates")


def check_oracle(name: str, instance, **kw) -> None:
    result = bfs_optimal(instance, **kw)
    assert result.solved, f"{name}: oracle says {result.status}"
    print(f"  {name}: oracle optimum {result.optimal_length}")


def check_gp(name: str, instance, seed: int = 0, gens: int = 300) -> None:
    params = GpParams(
        population_size=200, max_generations=gens, seed=seed,
        stop_on_first_solution=True, max_size=256,
    )
    result = evolve(instance, params)
    assert result.solved, f"{name}: evolution found no solution in {gens} generations"
    print(f"  {name}: evolved solution at generation {result.log.first_solution_gen}")


def write(name: str, instance) -> None:
    path = CORPUS / f"{name}.sexp"
    path.write_text(format_instance(instance))
    print(f"wrote {path.relative_to(ROOT)}")


def main() -> None:
    CORPUS.mkdir(parents=True, exist_ok=True)

    tiny = briefcase_instance(
        objects=("o1", "o2"), briefcases=("b1",), locations=("l1", "l2", "l3"),
        at={"o1": "l1", "o2": "l3", "b1": "l1"},
        goals=[fact("at", "o1", "l2")],
    )
    check_oracle("bp-tiny", tiny)
    write("bp-tiny", tiny)

    rnp = {
        "rnp-1": rnp_instance(4, 4, (0, 0), (3, 3), RNP1_BLOCKS),
        "rnp-2": rnp_instance(4, 4, (0, 0), (3, 3), RNP2_BLOCKS),
        "rnp-3": rnp_instance(8, 8, (0, 0), (7, 7), RNP3_BLOCKS),
        "rnp-4": rnp_instance(50, 50, (0, 0), (49, 49)),
        "rnp-5": rnp_instance(100, 100, (0, 0), (99, 99)),
        "rnp-6": rnp_instance(100, 100, (0, 0), (99, 99), RNP1_BLOCKS),
        "rnp-7": rnp_instance(100, 100, (0, 0), (99, 99), RNP2_BLOCKS),
        "rnp-8": rnp_instance(100, 100, (0, 0), (99, 99), RNP3_BLOCKS),
    }
    check_oracle("rnp-1", rnp["rnp-1"])
    check_oracle("rnp-2", rnp["rnp-2"])
    check_plan("rnp-3", rnp["rnp-3"], rnp3_plan())
    check_plan("rnp-4", rnp["rnp-4"], east_then_north(50, 50))
    check_plan("rnp-5", rnp["rnp-5"], east_then_north(100, 100))
    check_plan("rnp-6", rnp["rnp-6"], rnp6_plan())
    check_plan("rnp-7", rnp["rnp-7"], rnp7_plan())
    check_plan("rnp-8", rnp["rnp-8"], rnp8_plan())
    for name, inst in rnp.items():
        write(name, inst)

    two = {
        "2rnp-1": two_rnp_instance(8, 8, ((0, 0), (7, 0)), ((7, 7), (0, 7))),
        "2rnp-2": two_rnp_instance(8, 8, ((0, 0), (7, 0)), ((7, 7), (0, 7)),
                                   [(3, 3), (4, 4)]),
        "2rnp-3": two_rnp_instance(8, 8, ((0, 0), (7, 0)), ((7, 7), (0, 7)),
                                   [(2, 2), (3, 3), (4, 4), (5, 2), (2, 5)]),
        "2rnp-4": two_rnp_instance(8, 8, ((0, 0), (7, 0)), ((7, 7), (0, 7)),
                                   [(1, 2), (2, 4), (3, 1), (3, 6), (4, 3),
                                    (5, 5), (6, 2), (2, 6), (6, 5), (4, 0)]),
        "2rnp-5": two_rnp_instance(100, 100, ((0, 0), (99, 0)), ((99, 99), (0, 99)),
                                   RNP3_BLOCKS),
    }
    check_oracle("2rnp-1", two["2rnp-1"], max_depth=40, max_states=400_000)
    check_gp("2rnp-2", two["2rnp-2"])
    check_gp("2rnp-3", two["2rnp-3"])
    check_gp("2rnp-4", two["2rnp-4"])
    for name, inst in two.items():
        write(name, inst)

    shapes = {
        "bp-1": (4, 5, 1),
        "bp-2": (5, 5, 1),
        "bp-3": (5, 5, 5),
        "bp-4": (10, 10, 1),
        "bp-5": (10, 10, 2),
        "bp-6": (10, 10, 5),
        "bp-7": (10, 10, 10),
    }
    for name, (n_obj, n_loc, n_bc) in shapes.items():
        instance, at, dests = bp_case(n_obj, n_loc, n_bc)
        check_plan(name, instance, bp_delivery_plan(at, dests, "b1"))
        write(name, instance)


if __name__ == "__main__":
    main()
