import random

import pytest

from evoplan import (
    InstanceError,
    fact,
    rnp_instance,
    two_rnp_dispatch,
    two_rnp_instance,
)
from evoplan.domains import manhattan_goal_distance, robot_position
from evoplan.simulate import OpContext

from conftest import tiny_bp_instance


def bp_ctx():
    bp = tiny_bp_instance()
    return bp, OpContext(bp.fresh_state(), bp)


def attempt(ctx, op_name, *values):
    return ctx.attempt(ctx.domain.operator_map[op_name], values)


class TestBriefcaseOperators:
    def test_put_in_when_colocated(self):
        _, ctx = bp_ctx()
        action = attempt(ctx, "put-in", 1, 2)  # o1 and b1, both at l1
        assert action.executed
        assert action.ground_args == ("o1", "b1")
        assert ctx.holds("in", "o1", "b1")

    def test_put_in_skipped_when_apart(self):
        _, ctx = bp_ctx()
        action = attempt(ctx, "put-in", 6, 2)  # o2 is at l3, b1 at l1
        assert not action.executed
        assert action.ground_args == ("o2", "b1")
        assert not ctx.holds("in", "o2", "b1")

    def test_put_in_again_is_noop(self):
        _, ctx = bp_ctx()
        attempt(ctx, "put-in", 1, 2)
        before = list(ctx.state)
        action = attempt(ctx, "put-in", 1, 2)
        assert action.executed
        assert list(ctx.state) == before

    def test_take_out_after_put_in(self):
        _, ctx = bp_ctx()
        attempt(ctx, "put-in", 1, 2)
        action = attempt(ctx, "take-out", 1)
        assert action.executed
        assert not ctx.holds("in", "o1", "b1")

    def test_take_out_of_free_object_skipped(self):
        _, ctx = bp_ctx()
        assert not attempt(ctx, "take-out", 2).executed  # o2 is not contained

    def test_double_take_out_second_skipped(self):
        _, ctx = bp_ctx()
        attempt(ctx, "put-in", 1, 2)
        assert attempt(ctx, "take-out", 1).executed
        assert not attempt(ctx, "take-out", 1).executed

    def test_move_carries_contained_objects_only(self):
        _, ctx = bp_ctx()
        attempt(ctx, "put-in", 1, 2)
        action = attempt(ctx, "move-briefcase", 2, 2)  # b1 to l2
        assert action.executed
        assert action.ground_args == ("b1", "l2")
        assert ctx.holds("at", "b1", "l2")
        assert ctx.holds("at", "o1", "l2")
        assert ctx.holds("at", "o2", "l3")  # untouched

    def test_move_to_current_location_skipped(self):
        _, ctx = bp_ctx()
        assert not attempt(ctx, "move-briefcase", 2, 1).executed  # b1 already at l1

    def test_move_empty_briefcase(self):
        _, ctx = bp_ctx()
        action = attempt(ctx, "move-briefcase", 2, 3)  # empty b1 from l1 to l3
        assert action.executed
        assert ctx.holds("at", "b1", "l3")
        assert ctx.holds("at", "o1", "l1")


class TestBriefcaseConservation:
    def test_random_walk_keeps_invariants(self):
        bp = tiny_bp_instance()
        ctx = OpContext(bp.fresh_state(), bp)
        rng = random.Random(0)
        ops = [(op, op.arity) for op in bp.domain.operators]
        for _ in range(2000):
            op, arity = ops[rng.randrange(len(ops))]
            ctx.attempt(op, [rng.randint(1, 6) for _ in range(arity)])
            at_subjects = [f.args[0] for f in ctx.state if f.pred == "at"]
            assert sorted(at_subjects) == ["b1", "o1", "o2"]
            in_subjects = [f.args[0] for f in ctx.state if f.pred == "in"]
            assert len(in_subjects) == len(set(in_subjects))


class TestGridOperators:
    def test_move_east(self):
        inst = rnp_instance(4, 4, (0, 0), (3, 3))
        ctx = OpContext(inst.fresh_state(), inst)
        assert attempt(ctx, "move-east").executed
        assert robot_position(ctx.state, "r1") == (1, 0)

    def test_move_off_grid_skipped(self):
        inst = rnp_instance(4, 4, (0, 0), (3, 3))
        ctx = OpContext(inst.fresh_state(), inst)
        assert not attempt(ctx, "move-west").executed
        assert not attempt(ctx, "move-south").executed
        assert robot_position(ctx.state, "r1") == (0, 0)

    def test_move_into_block_skipped(self):
        inst = rnp_instance(4, 4, (2, 2), (0, 0), blocks=[(3, 2)])
        ctx = OpContext(inst.fresh_state(), inst)
        assert not attempt(ctx, "move-east").executed

    def test_push_moves_block_and_robot(self):
        inst = rnp_instance(5, 5, (2, 2), (0, 0), blocks=[(3, 2)])
        ctx = OpContext(inst.fresh_state(), inst)
        assert attempt(ctx, "push-east").executed
        assert robot_position(ctx.state, "r1") == (3, 2)
        assert ctx.holds("block-at", 4, 2)
        assert not ctx.holds("block-at", 3, 2)

    def test_push_blocked_by_second_block(self):
        inst = rnp_instance(5, 5, (2, 2), (0, 0), blocks=[(3, 2), (4, 2)])
        ctx = OpContext(inst.fresh_state(), inst)
        assert not attempt(ctx, "push-east").executed

    def test_push_off_grid_skipped(self):
        inst = rnp_instance(4, 4, (2, 2), (0, 0), blocks=[(3, 2)])
        ctx = OpContext(inst.fresh_state(), inst)
        assert not attempt(ctx, "push-east").executed

    def test_push_without_block_skipped(self):
        inst = rnp_instance(4, 4, (0, 0), (3, 3))
        ctx = OpContext(inst.fresh_state(), inst)
        assert not attempt(ctx, "push-east").executed

    def test_move_then_opposite_restores(self):
        inst = rnp_instance(4, 4, (1, 1), (3, 3))
        ctx = OpContext(inst.fresh_state(), inst)
        rng = random.Random(1)
        opposite = {"north": "south", "south": "north", "east": "west", "west": "east"}
        for _ in range(200):
            d = rng.choice(list(opposite))
            before = robot_position(ctx.state, "r1")
            if attempt(ctx, f"move-{d}").executed:
                assert attempt(ctx, f"move-{opposite[d]}").executed
            assert robot_position(ctx.state, "r1") == before


class TestManhattanFitness:
    def test_corner_to_corner(self):
        inst = rnp_instance(100, 100, (0, 0), (99, 99))
        state = inst.fresh_state()
        assert manhattan_goal_distance(state, list(inst.goal_items), inst) == 198

    def test_zero_at_destination(self):
        inst = rnp_instance(4, 4, (3, 3), (3, 3))
        state = inst.fresh_state()
        assert manhattan_goal_distance(state, list(inst.goal_items), inst) == 0

    def test_two_robot_sum(self):
        inst = two_rnp_instance(8, 8, ((0, 0), (7, 0)), ((3, 0), (7, 5)))
        state = inst.fresh_state()
        assert manhattan_goal_distance(state, list(inst.goal_items), inst) == 8

    def test_missing_robot_fact_is_internal_error(self):
        inst = rnp_instance(4, 4, (0, 0), (3, 3))
        state = inst.fresh_state()
        state.delete_fact(fact("robot-at", "r1", 0, 0))
        with pytest.raises(RuntimeError):
            manhattan_goal_distance(state, list(inst.goal_items), inst)


class TestTwoRobotDispatch:
    def test_odd_positions_are_robot2(self):
        assert [two_rnp_dispatch(p) for p in (1, 3, 5)] == [2, 2, 2]

    def test_even_positions_are_robot1(self):
        assert [two_rnp_dispatch(p) for p in (2, 4)] == [1, 1]

    def test_first_action_moves_robot2(self):
        inst = two_rnp_instance(8, 8, ((0, 0), (7, 0)), ((7, 7), (0, 7)))
        ctx = OpContext(inst.fresh_state(), inst)
        assert attempt(ctx, "move-north").executed
        assert robot_position(ctx.state, "r1") == (0, 0)
        assert robot_position(ctx.state, "r2") == (7, 1)

    def test_attempted_parity_counts_skipped_actions(self):
        inst = two_rnp_instance(8, 8, ((0, 0), (7, 0)), ((7, 7), (0, 7)))
        ctx = OpContext(inst.fresh_state(), inst)
        assert not attempt(ctx, "move-east").executed  # r2 at (7,0): off grid
        # Position 2 is even, so robot1 acts even though position 1 failed.
        assert attempt(ctx, "move-east").executed
        assert robot_position(ctx.state, "r1") == (1, 0)

    def test_executed_parity_mode_skips_failed_attempts(self):
        inst = two_rnp_instance(
            8, 8, ((0, 0), (7, 0)), ((7, 7), (0, 7)), parity="executed"
        )
        ctx = OpContext(inst.fresh_state(), inst)
        assert not attempt(ctx, "move-east").executed  # still r2's turn
        assert attempt(ctx, "move-north").executed  # r2 again: nothing executed yet
        assert robot_position(ctx.state, "r2") == (7, 1)

    def test_robots_block_each_other(self):
        inst = two_rnp_instance(4, 4, ((0, 0), (1, 0)), ((3, 3), (0, 3)))
        ctx = OpContext(inst.fresh_state(), inst)
        assert not attempt(ctx, "move-west").executed  # r2 cannot enter r1's cell


class TestGridConservation:
    def test_random_walk_preserves_blocks(self):
        inst = two_rnp_instance(
            6, 6, ((0, 0), (5, 5)), ((5, 0), (0, 5)),
            blocks=[(2, 2), (3, 3), (1, 4)],
        )
        ctx = OpContext(inst.fresh_state(), inst)
        rng = random.Random(42)
        ops = list(inst.domain.operators)
        for _ in range(2000):
            ctx.attempt(ops[rng.randrange(len(ops))], ())
            blocks = [f.args for f in ctx.state if f.pred == "block-at"]
            robots = [f.args[1:] for f in ctx.state if f.pred == "robot-at"]
            cells = blocks + robots
            assert len(blocks) == 3
            assert len(cells) == len(set(cells))
            assert all(0 <= x < 6 and 0 <= y < 6 for x, y in cells)


class TestGridValidation:
    def test_robot_on_block_rejected(self):
        with pytest.raises(InstanceError):
            rnp_instance(4, 4, (1, 1), (3, 3), blocks=[(1, 1)])

    def test_shared_start_cell_rejected(self):
        with pytest.raises(InstanceError):
            two_rnp_instance(4, 4, ((0, 0), (0, 0)), ((3, 3), (1, 1)))

    def test_out_of_bounds_destination_rejected(self):
        with pytest.raises(InstanceError):
            rnp_instance(4, 4, (0, 0), (4, 0))

    def test_bad_parity_value_rejected(self):
        with pytest.raises(InstanceError):
            two_rnp_instance(
                4, 4, ((0, 0), (1, 1)), ((3, 3), (2, 2)), parity="sometimes"
            )
