import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evoplan import (
    FitnessValue,
    GpParams,
    Individual,
    build_primitives,
    crossover_at,
    evolve,
    random_program,
    rnp_instance,
    subtree_crossover,
    tournament_select,
)
from evoplan.program import SEQ, Call, Leaf, node_count, to_text, tree_depth

from conftest import C1, C2, P1, P2, tiny_bp_instance


def bp_primitives():
    bp = tiny_bp_instance()
    return bp, build_primitives(bp.domain, bp.terminal_map)


class TestPrimitives:
    def test_briefcase_set(self):
        _, prims = bp_primitives()
        assert [leaf.index for leaf in prims.leaves] == [1, 2, 3, 4, 5, 6]
        assert {f.name for f in prims.functions} == {
            "move-briefcase",
            "take-out",
            "put-in",
        }

    def test_all_nullary_domain_gets_seq(self):
        inst = rnp_instance(4, 4, (0, 0), (3, 3))
        prims = build_primitives(inst.domain, inst.terminal_map)
        assert [f.name for f in prims.functions] == [SEQ]
        assert prims.functions[0].min_arity == 2
        assert prims.functions[0].max_arity == 4
        # leaves: the synthesized terminal plus the eight operators
        assert len(prims.leaves) == 9


class TestRandomProgram:
    def test_depth_one_gives_leaf(self):
        _, prims = bp_primitives()
        params = GpParams(population_size=2, max_depth=1)
        prog = random_program(prims, params, random.Random(0))
        assert node_count(prog) == 1

    @given(st.integers(min_value=0, max_value=3000))
    @settings(max_examples=80, deadline=None)
    def test_bounds_respected(self, seed):
        _, prims = bp_primitives()
        params = GpParams(population_size=2, max_depth=6, max_size=30)
        prog = random_program(prims, params, random.Random(seed))
        assert tree_depth(prog) <= params.max_depth
        assert node_count(prog) <= params.max_size


def assert_closed(node, domain):
    """Every call node names a known operator (or seq) with correct arity."""
    if isinstance(node, Leaf):
        assert 1 <= node.index <= 6
        return
    if node.op == SEQ:
        assert 2 <= len(node.args) <= 4
    else:
        assert len(node.args) == domain.operator_map[node.op].arity
    for a in node.args:
        assert_closed(a, domain)


class TestCrossover:
    def test_worked_recombination(self):
        # Swap P1's put-in subtree with P2's take-out subtree.
        c1, c2 = crossover_at(P1, P2, 1, 1, max_depth=13, max_size=512)
        assert c1 == C1
        assert c2 == C2
        assert to_text(c1) == "(take-out (take-out (t2)))"
        assert to_text(c2) == "(move-briefcase (put-in (t1) (t2)) (t2))"

    def test_root_swap_exchanges_parents(self):
        c1, c2 = crossover_at(P1, P2, 0, 0, max_depth=13, max_size=512)
        assert c1 == P2
        assert c2 == P1

    def test_bound_violation_returns_first_parent(self):
        deep = Leaf(1)
        for _ in range(6):
            deep = Call("take-out", (deep,))
        c1, c2 = crossover_at(P1, deep, 3, 0, max_depth=4, max_size=512)
        assert c1 == P1  # splicing the deep tree would exceed max_depth
        assert tree_depth(c2) <= 4

    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=100, deadline=None)
    def test_closure_under_random_crossover(self, seed):
        bp, prims = bp_primitives()
        rng = random.Random(seed)
        params = GpParams(population_size=2, max_depth=7, max_size=60)
        a = random_program(prims, params, rng)
        b = random_program(prims, params, rng)
        c1, c2 = subtree_crossover(a, b, rng, params)
        for prog in (c1, c2):
            assert tree_depth(prog) <= params.max_depth
            assert node_count(prog) <= params.max_size
            assert_closed(prog, bp.domain)


def fixed_population():
    pop = [Individual(Leaf(1), FitnessValue(float(i), i)) for i in range(10)]
    return pop


class TestTournament:
    def test_exhaustive_tournament_returns_global_best(self):
        pop = fixed_population()
        rng = random.Random(0)
        for _ in range(20):
            assert tournament_select(pop, 50, rng).fitness == FitnessValue(0.0, 0)

    def test_lexicographic_winner(self):
        pop = [Individual(Leaf(1), FitnessValue(1.0, 5)),
               Individual(Leaf(2), FitnessValue(0.0, 3))]
        winner = tournament_select(pop, 2, random.Random(0))
        assert winner.fitness == FitnessValue(0.0, 3)

    def test_k1_is_uniform_draw(self):
        pop = fixed_population()
        rng = random.Random(7)
        seen = {tournament_select(pop, 1, rng).fitness.executed_length for _ in range(300)}
        assert len(seen) == 10

    def test_selection_bias(self):
        pop = fixed_population()
        rng = random.Random(3)
        counts = {i: 0 for i in range(10)}
        for _ in range(10_000):
            counts[tournament_select(pop, 7, rng).fitness.executed_length] += 1
        assert counts[0] > counts[5] > 0 or counts[0] > counts[4]


class TestEvolve:
    def test_determinism(self, bp):
        params = GpParams(population_size=40, max_generations=8, seed=11,
                          max_depth=7, max_size=50)
        a = evolve(bp, params)
        b = evolve(bp, params)
        assert a.log.to_text() == b.log.to_text()
        assert a.best.program == b.best.program

    def test_elitism_makes_best_monotone(self, bp):
        params = GpParams(population_size=40, max_generations=15, seed=5,
                          max_depth=7, max_size=50, elitism=1)
        log = evolve(bp, params).log
        keys = [(r.best_goal_fitness, r.best_exec_len) for r in log.records]
        assert all(b <= a for a, b in zip(keys, keys[1:]))

    def test_zero_generation_budget(self, bp):
        params = GpParams(population_size=20, max_generations=0, seed=0,
                          max_depth=5, max_size=30)
        result = evolve(bp, params)
        assert len(log_records := result.log.records) == 1
        assert log_records[0].gen == 0

    def test_first_solution_recorded(self, bp):
        params = GpParams(population_size=60, max_generations=30, seed=2,
                          max_depth=7, max_size=50, stop_on_first_solution=True)
        result = evolve(bp, params)
        assert result.solved
        gen = result.log.first_solution_gen
        assert result.log.records[gen].best_goal_fitness == 0.0
        assert result.log.records[-1].gen == gen

    def test_population_size_is_stable(self, bp):
        from evoplan.engine import _next_generation

        params = GpParams(population_size=30, max_generations=2, seed=9,
                          max_depth=6, max_size=40)
        rng = random.Random(0)
        prims = build_primitives(bp.domain, bp.terminal_map)
        pop = [Individual(random_program(prims, params, rng)) for _ in range(30)]
        for ind in pop:
            ind.fitness = FitnessValue(1.0, 0)
        assert len(_next_generation(pop, params, rng)) == 30

    def test_reproduction_only_run(self, bp):
        params = GpParams(population_size=20, max_generations=3, seed=1,
                          crossover_fraction=0.0, max_depth=5, max_size=30)
        result = evolve(bp, params)
        assert len(result.log.records) == 4

    def test_invalid_params_rejected(self):
        with pytest.raises(ValueError):
            GpParams(population_size=1)
        with pytest.raises(ValueError):
            GpParams(crossover_fraction=1.5)
        with pytest.raises(ValueError):
            GpParams(tournament_size=0)
