"""Two-phase Pareto local search with a very-large-scale neighborhood for the
multiobjective multidimensional knapsack problem."""

from .archive import Archive, add_solution, dominates, nondominated_filter, weakly_dominates
from .construct import greedy_construct, initial_population, ratio_r1, weight_sets
from .driver import ParamSet, RunResult, default_params, pls, two_phase_pls
from .indicators import (
    IndicatorReport,
    ReferenceData,
    assemble_report,
    d1_d2,
    eps_indicator,
    hypervolume2,
    proportion_nondominated,
    r_measure,
)
from .instance import Instance, InstanceFormatError, generate_zmkp, parse_instance, serialize_instance
from .neighborhood import adaptive_weight, build_lists, build_residual, neighbors
from .solution import Solution, evaluate, greedy_repair, is_feasible
from .subsolvers import (
    BudgetExceeded,
    Subsolver,
    dantzig_bound,
    iteration_schedule,
    solve_exact_bb,
    solve_memots_lite,
)

__version__ = "0.1.0"
