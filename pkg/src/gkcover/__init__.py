"""Exact and greedy solvers for chain/antichain coverage problems on DAGs.

For every k >= 1 a DAG admits a duality between covering vertices with k
antichains (or k chains) and partitioning vertices into chains (or
antichains) measured by the k-norm sum(min(|C|, k)).  This package solves
both sides exactly by min-cost circulation, approximately by greedy
set-cover rounds, and provides brute-force oracles plus adversarial
instance generators that realize the worst-case greedy ratios.
"""

from .adversarial import (
    AdversarialInstance,
    ExpectedStats,
    gen_antichain_ratio,
    gen_chain_ratio,
    gen_ga,
    gen_gc,
)
from .dagcore import (
    Antichain,
    Chain,
    Dag,
    Family,
    GraphPath,
    build_dag,
    certify_antichain,
    certify_chain,
    certify_path,
    knorm_collection,
    knorm_partition,
    partition_completion,
    reachable,
)
from .errors import (
    BudgetExceeded,
    ConservationError,
    CycleError,
    DegenerateError,
    DomainError,
    GkError,
    InfeasibleFlowError,
    InvalidCycleError,
    MismatchError,
    NegativeCycleError,
    NotAntichainError,
    NotChainError,
    NotMinimumError,
    NotPartitionError,
    OverlapError,
    ParseError,
)
from .flowcore import (
    Arc,
    CirculationResult,
    Flow,
    FlowNetwork,
    MinFlowResult,
    check_feasible,
    decompose,
    min_cost_circulation,
    min_flow,
    residual,
)
from .greedy import (
    GreedyTrace,
    greedy_antichain_cover,
    greedy_k_antichains,
    greedy_k_chains,
    greedy_weighted_chain_cover,
    max_antichain_in_subset,
    max_coverage_path,
    minimum_path_cover,
)
from .networks import (
    ALPHA,
    BETA,
    AlphaResult,
    BetaResult,
    GkNetwork,
    GkSolution,
    SolveStats,
    build_network,
    extract_antichains,
    height_levels,
    recompute_value,
    solve_alpha,
    solve_beta,
)
from .oracle import (
    GkReport,
    OracleBudget,
    SweepResult,
    brute_alpha,
    brute_beta,
    brute_min_knorm_antichain_partition,
    brute_min_knorm_chain_partition,
    random_dag,
    run_verification_sweep,
    verify_gk,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHA",
    "AdversarialInstance",
    "AlphaResult",
    "Antichain",
    "Arc",
    "BETA",
    "BetaResult",
    "BudgetExceeded",
    "Chain",
    "CirculationResult",
    "ConservationError",
    "CycleError",
    "Dag",
    "DegenerateError",
    "DomainError",
    "ExpectedStats",
    "Family",
    "Flow",
    "FlowNetwork",
    "GkError",
    "GkNetwork",
    "GkReport",
    "GkSolution",
    "GraphPath",
    "GreedyTrace",
    "InfeasibleFlowError",
    "InvalidCycleError",
    "MinFlowResult",
    "MismatchError",
    "NegativeCycleError",
    "NotAntichainError",
    "NotChainError",
    "NotMinimumError",
    "NotPartitionError",
    "OracleBudget",
    "OverlapError",
    "ParseError",
    "SolveStats",
    "SweepResult",
    "build_dag",
    "build_network",
    "brute_alpha",
    "brute_beta",
    "brute_min_knorm_antichain_partition",
    "brute_min_knorm_chain_partition",
    "certify_antichain",
    "certify_chain",
    "certify_path",
    "check_feasible",
    "decompose",
    "extract_antichains",
    "gen_antichain_ratio",
    "gen_chain_ratio",
    "gen_ga",
    "gen_gc",
    "greedy_antichain_cover",
    "greedy_k_antichains",
    "greedy_k_chains",
    "greedy_weighted_chain_cover",
    "knorm_collection",
    "knorm_partition",
    "max_antichain_in_subset",
    "max_coverage_path",
    "min_cost_circulation",
    "min_flow",
    "minimum_path_cover",
    "height_levels",
    "partition_completion",
    "random_dag",
    "reachable",
    "recompute_value",
    "residual",
    "run_verification_sweep",
    "solve_alpha",
    "solve_beta",
    "verify_gk",
]
