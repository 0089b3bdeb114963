"""Evolutionary core: random tree generation, tournament selection, subtree
crossover, and the generational loop.

Reproduction and crossover are the only breeding operations. Selection is
tournament-based (best of k uniform draws with replacement) over the
lexicographic (goal_fitness, executed_length) order, so once a solution
exists the search keeps shortening it. All randomness flows from one seeded
``random.Random``; fitness evaluation is deterministic, so runs are
bit-reproducible regardless of worker count.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .domain import Domain, ProblemInstance, TerminalMap
from .errors import DomainError
from .program import SEQ, Call, Leaf, Node, node_count, subtree_at, replace_at, tree_depth
from .simulate import FitnessValue, Plan, evaluate_fitness, execute_program


@dataclass
class Individual:
    program: Node
    fitness: Optional[FitnessValue] = None


@dataclass(frozen=True)
class GpParams:
    population_size: int = 200
    max_generations: int = 1000
    crossover_fraction: float = 0.9
    tournament_size: int = 7
    max_depth: int = 13
    max_size: int = 512
    seed: int = 0
    stop_on_first_solution: bool = False
    elitism: int = 1

    def __post_init__(self) -> None:
        if self.population_size < 2:
            raise ValueError("population_size must be >= 2")
        if self.tournament_size < 1:
            raise ValueError("tournament_size must be >= 1")
        if not 0.0 <= self.crossover_fraction <= 1.0:
            raise ValueError("crossover_fraction must be in [0, 1]")
        if self.max_depth < 1 or self.max_size < 1:
            raise ValueError("max_depth and max_size must be >= 1")
        if self.elitism < 0 or self.max_generations < 0:
            raise ValueError("elitism and max_generations must be >= 0")


@dataclass(frozen=True)
class GenRecord:
    gen: int
    best_goal_fitness: float
    best_exec_len: int
    mean_goal_fitness: float
    first_solution_gen: Optional[int]

    def to_text(self) -> str:
        fsg = "-" if self.first_solution_gen is None else str(self.first_solution_gen)
        return (
            f"gen={self.gen} best_goal_fitness={self.best_goal_fitness} "
            f"best_exec_len={self.best_exec_len} "
            f"mean_goal_fitness={self.mean_goal_fitness} first_solution_gen={fsg}"
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "gen": self.gen,
                "best_goal_fitness": self.best_goal_fitness,
                "best_exec_len": self.best_exec_len,
                "mean_goal_fitness": self.mean_goal_fitness,
                "first_solution_gen": self.first_solution_gen,
            }
        )


@dataclass
class RunLog:
    records: list[GenRecord] = field(default_factory=list)

    @property
    def first_solution_gen(self) -> Optional[int]:
        for rec in self.records:
            if rec.first_solution_gen is not None:
                return rec.first_solution_gen
        return None

    def to_text(self) -> str:
        return "\n".join(r.to_text() for r in self.records) + "\n"

    def to_jsonl(self) -> str:
        return "\n".join(r.to_json() for r in self.records) + "\n"


@dataclass
class EvolveResult:
    best: Individual
    plan: Plan
    log: RunLog

    @property
    def solved(self) -> bool:
        return self.log.first_solution_gen is not None


# -- primitive sets ---------------------------------------------------------


@dataclass(frozen=True)
class FunctionPrim:
    name: str
    min_arity: int
    max_arity: int


@dataclass(frozen=True)
class Primitives:
    leaves: tuple[Node, ...]
    functions: tuple[FunctionPrim, ...]


def build_primitives(domain: Domain, tmap: TerminalMap) -> Primitives:
    leaves: list[Node] = [Leaf(i) for i in range(1, tmap.size + 1)]
    nullary = [Call(op.name) for op in domain.operators if op.arity == 0]
    leaves.extend(nullary)
    functions = tuple(
        FunctionPrim(op.name, op.arity, op.arity)
        for op in domain.operators
        if op.arity >= 1
    )
    if not functions and nullary:
        # All operators are terminals; inject a sequencing combinator so
        # programs can encode multi-step plans.
        functions = (FunctionPrim(SEQ, 2, 4),)
    if not leaves:
        raise DomainError("domain offers no terminals and no arity-0 operators")
    return Primitives(tuple(leaves), functions)


# -- generation, selection, crossover ----------------------------------------


def random_program(
    prims: Primitives,
    params: GpParams,
    rng: random.Random,
    depth: Optional[int] = None,
    method: Optional[str] = None,
) -> Node:
    """Ramped half-and-half: target depth drawn from 2..6 (clamped to
    max_depth) and grow/full chosen at random unless pinned by the caller."""
    lo = min(2, params.max_depth)
    hi = min(6, params.max_depth)
    for _ in range(30):
        d = depth if depth is not None else rng.randint(lo, hi)
        m = method if method is not None else ("grow", "full")[rng.randrange(2)]
        prog = _grow_tree(prims, d, m, rng)
        if node_count(prog) <= params.max_size:
            return prog
    return prims.leaves[rng.randrange(len(prims.leaves))]


def _grow_tree(prims: Primitives, depth_left: int, method: str, rng: random.Random) -> Node:
    leaves, functions = prims.leaves, prims.functions
    if depth_left <= 1 or not functions:
        return leaves[rng.randrange(len(leaves))]
    if method == "grow" and rng.randrange(len(leaves) + len(functions)) < len(leaves):
        return leaves[rng.randrange(len(leaves))]
    f = functions[rng.randrange(len(functions))]
    arity = (
        f.min_arity
        if f.min_arity == f.max_arity
        else rng.randint(f.min_arity, f.max_arity)
    )
    return Call(f.name, tuple(_grow_tree(prims, depth_left - 1, method, rng) for _ in range(arity)))


def tournament_select(pop: list[Individual], k: int, rng: random.Random) -> Individual:
    """Lexicographic-best of k uniform draws with replacement."""
    best = pop[rng.randrange(len(pop))]
    for _ in range(k - 1):
        cand = pop[rng.randrange(len(pop))]
        if cand.fitness < best.fitness:
            best = cand
    return best


def subtree_crossover(
    p1: Node, p2: Node, rng: random.Random, params: GpParams
) -> tuple[Node, Node]:
    i = rng.randrange(node_count(p1))
    j = rng.randrange(node_count(p2))
    return crossover_at(p1, p2, i, j, params.max_depth, params.max_size)


def crossover_at(
    p1: Node, p2: Node, i: int, j: int, max_depth: int, max_size: int
) -> tuple[Node, Node]:
    """Swap the preorder-``i`` subtree of p1 with the preorder-``j`` subtree
    of p2; a child that violates the depth/size bounds is replaced by the
    parent it was built from."""
    s1 = subtree_at(p1, i)
    s2 = subtree_at(p2, j)
    c1: Node = replace_at(p1, i, s2)
    c2: Node = replace_at(p2, j, s1)
    if tree_depth(c1) > max_depth or node_count(c1) > max_size:
        c1 = p1
    if tree_depth(c2) > max_depth or node_count(c2) > max_size:
        c2 = p2
    return c1, c2


# -- parallel evaluation ------------------------------------------------------

_WORK_INSTANCE: Optional[ProblemInstance] = None


def _pool_init(instance: ProblemInstance) -> None:
    global _WORK_INSTANCE
    _WORK_INSTANCE = instance


def _pool_eval(task: tuple[int, Node]) -> tuple[int, FitnessValue]:
    idx, prog = task
    return idx, evaluate_fitness(prog, _WORK_INSTANCE)


def _evaluate_population(
    pop: list[Individual],
    instance: ProblemInstance,
    executor: Optional[ProcessPoolExecutor],
    workers: int,
) -> None:
    tasks = [(i, ind.program) for i, ind in enumerate(pop) if ind.fitness is None]
    if not tasks:
        return
    if executor is None:
        for i, prog in tasks:
            pop[i].fitness = evaluate_fitness(prog, instance)
        return
    chunk = max(1, len(tasks) // (workers * 4))
    for i, fv in executor.map(_pool_eval, tasks, chunksize=chunk):
        pop[i].fitness = fv


# -- the generational loop ----------------------------------------------------


def evolve(instance: ProblemInstance, params: GpParams, workers: int = 1) -> EvolveResult:
    """Run the evolutionary search and return the best individual found, its
    simulated plan, and the per-generation log."""
    rng = random.Random(params.seed)
    tmap = instance.terminal_map
    instance.goal_groups  # warm the cache before it is shipped to workers
    prims = build_primitives(instance.domain, tmap)

    pop = [
        Individual(random_program(prims, params, rng))
        for _ in range(params.population_size)
    ]

    log = RunLog()
    first_solution: Optional[int] = None
    best_ever: Optional[Individual] = None

    executor: Optional[ProcessPoolExecutor] = None
    if workers > 1:
        executor = ProcessPoolExecutor(
            max_workers=workers, initializer=_pool_init, initargs=(instance,)
        )
    try:
        for gen in range(params.max_generations + 1):
            _evaluate_population(pop, instance, executor, workers)

            gen_best = min(pop, key=lambda ind: ind.fitness)
            if best_ever is None or gen_best.fitness < best_ever.fitness:
                best_ever = Individual(gen_best.program, gen_best.fitness)
            if first_solution is None and gen_best.fitness.solved:
                first_solution = gen
            mean = sum(ind.fitness.goal_fitness for ind in pop) / len(pop)
            log.records.append(
                GenRecord(
                    gen=gen,
                    best_goal_fitness=gen_best.fitness.goal_fitness,
                    best_exec_len=gen_best.fitness.executed_length,
                    mean_goal_fitness=mean,
                    first_solution_gen=first_solution,
                )
            )

            if params.stop_on_first_solution and first_solution is not None:
                break
            if gen == params.max_generations:
                break
            pop = _next_generation(pop, params, rng)
    finally:
        if executor is not None:
            executor.shutdown()

    _, plan = execute_program(best_ever.program, instance, tmap)
    return EvolveResult(best_ever, plan, log)


def _next_generation(
    pop: list[Individual], params: GpParams, rng: random.Random
) -> list[Individual]:
    ranked = sorted(pop, key=lambda ind: ind.fitness)
    n_elite = min(params.elitism, params.population_size)
    new = [Individual(ind.program, ind.fitness) for ind in ranked[:n_elite]]

    n_rest = params.population_size - n_elite
    n_cross = round(params.crossover_fraction * n_rest)
    made = 0
    while made < n_cross:
        p1 = tournament_select(pop, params.tournament_size, rng)
        p2 = tournament_select(pop, params.tournament_size, rng)
        c1, c2 = subtree_crossover(p1.program, p2.program, rng, params)
        new.append(_child(c1, p1, p2))
        made += 1
        if made < n_cross:
            new.append(_child(c2, p2, p1))
            made += 1
    while len(new) < params.population_size:
        chosen = tournament_select(pop, params.tournament_size, rng)
        new.append(Individual(chosen.program, chosen.fitness))
    return new


def _child(prog: Node, base: Individual, other: Individual) -> Individual:
    # Bound-violating crossover returns a parent tree unchanged; reuse its
    # cached fitness so no evaluation is wasted.
    if prog is base.program:
        return Individual(prog, base.fitness)
    if prog is other.program:
        return Individual(prog, other.fitness)
    return Individual(prog)
