"""evoplan: a linear planner that evolves plans with genetic programming.

Candidate plans are program trees over automatically synthesized terminals
and user-defined procedural operators; they are executed in simulation
against a fact database and scored by a weighted per-predicate fitness sum.
"""

from .domain import (
    Domain,
    GoalItem,
    GroundGoal,
    OperatorDef,
    PredicateDef,
    ProblemInstance,
    QuantifiedGoal,
    TerminalMap,
    build_terminal_map,
    expand_goals,
    number_of_unsatisfied_goals,
    unsatisfied_goal_count,
)
from .domains import (
    briefcase_domain,
    briefcase_instance,
    get_domain,
    rnp_domain,
    rnp_instance,
    two_rnp_dispatch,
    two_rnp_domain,
    two_rnp_instance,
)
from .engine import (
    EvolveResult,
    GpParams,
    Individual,
    RunLog,
    build_primitives,
    crossover_at,
    evolve,
    random_program,
    subtree_crossover,
    tournament_select,
)
from .errors import DomainError, EvoplanError, InstanceError
from .facts import Atom, Fact, Pattern, Variable, WorldState, fact, pattern
from .instance_io import format_instance, load_instance, parse_instance
from .oracle import OracleResult, ValidationResult, bfs_optimal, validate_plan
from .program import Call, Leaf, Node, node_count, to_text, tree_depth
from .simulate import (
    Action,
    FitnessValue,
    OpContext,
    Plan,
    evaluate_fitness,
    execute_program,
    render_plan,
)

__version__ = "0.1.0"
