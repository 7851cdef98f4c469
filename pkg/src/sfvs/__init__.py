"""Exact solvers for (weighted) subset feedback vertex set, specialized to
graphs that are (sP1+P4)-free, with a brute-force oracle and seeded
generators for differential testing."""

from .checker import (
    ContractionSketch,
    TCycleWitness,
    certify_solution,
    contract_non_t,
    is_t_forest,
    t_cycle_witness,
    t_forest_by_contraction,
    validate_witness,
)
from .core_incomplete import best_core_incomplete
from .cotree import (
    Cotree,
    CotreeNode,
    NotCographError,
    PatternWitness,
    build_cotree,
    cotree_graph,
    find_induced_sp1_p4,
    is_cograph,
)
from .flowcut import CutInstance, CutResult, InfeasibleCutError, min_weight_vertex_cut
from .graph import (
    CapacityError,
    Graph,
    InputError,
    Instance,
    Solution,
    better_solution,
    bit_list,
    bits,
    connected_components,
    induced_subgraph,
    is_clique,
    is_independent,
    mask_of,
    set_lex_less,
)
from .oracle import (
    GenerationError,
    GeneratorSpec,
    SubsetTable,
    brute_force_max_tforest,
    generate,
    has_t_cycle_naive,
    random_cotree,
    subset_is_t_forest,
)
from .parts import PartSolution, PartSolutionKind, best_2part, best_3part, best_le1_part
from .pipeline import SolveReport, solve_unweighted_sp1p4, solve_weighted_2p1p4
from .reduced import (
    ModulatorDecomposition,
    Signature,
    SolverConfig,
    cograph_subset_signature,
    max_tforest_cograph,
    max_tforest_with_modulator,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "ContractionSketch",
    "Cotree",
    "CotreeNode",
    "CutInstance",
    "CutResult",
    "GenerationError",
    "GeneratorSpec",
    "Graph",
    "InfeasibleCutError",
    "InputError",
    "Instance",
    "ModulatorDecomposition",
    "NotCographError",
    "PartSolution",
    "PartSolutionKind",
    "PatternWitness",
    "Signature",
    "Solution",
    "SolveReport",
    "SolverConfig",
    "SubsetTable",
    "TCycleWitness",
    "best_2part",
    "best_3part",
    "best_core_incomplete",
    "best_le1_part",
    "better_solution",
    "bit_list",
    "bits",
    "brute_force_max_tforest",
    "build_cotree",
    "certify_solution",
    "cograph_subset_signature",
    "connected_components",
    "contract_non_t",
    "cotree_graph",
    "find_induced_sp1_p4",
    "generate",
    "has_t_cycle_naive",
    "induced_subgraph",
    "is_clique",
    "is_cograph",
    "is_independent",
    "is_t_forest",
    "mask_of",
    "max_tforest_cograph",
    "max_tforest_with_modulator",
    "min_weight_vertex_cut",
    "random_cotree",
    "set_lex_less",
    "solve_unweighted_sp1p4",
    "solve_weighted_2p1p4",
    "subset_is_t_forest",
    "t_cycle_witness",
    "t_forest_by_contraction",
    "validate_witness",
]
