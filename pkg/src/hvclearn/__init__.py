"""Hypervolume contributions, their line-based approximation, and learned
direction vector sets."""

from .errors import ContractViolation, CorpusValidationError, SamplingError
from .objective_space import (
    FrontSpec,
    dominates,
    reference_from_factor,
    read_solution_csv,
    sample_front,
    validate_nondominated,
    write_solution_csv,
)
from .hypervolume import hvc_all, hvc_exact, hypervolume, mc_hypervolume
from .directions import (
    DirectionSet,
    gen_das,
    gen_jas,
    gen_kmeans_u,
    gen_mss,
    gen_unv,
    weight_to_direction,
)
from .r2hvc import LengthMatrix, build_length_matrix, g_mtch, g_star_2tch, r2hvc
from .training import (
    TrainingCorpus,
    TrainingResult,
    TrainingSet,
    generate_corpus,
    load_corpus,
    learn_directions,
    pearson_q,
    q_of_directions,
    save_corpus,
)
from .evaluation import CirReport, GahssReport, cir, gahss, rank_methods, wilcoxon_rank_sum

__version__ = "0.1.0"

__all__ = [
    "ContractViolation",
    "CorpusValidationError",
    "SamplingError",
    "FrontSpec",
    "dominates",
    "validate_nondominated",
    "sample_front",
    "reference_from_factor",
    "read_solution_csv",
    "write_solution_csv",
    "hypervolume",
    "hvc_exact",
    "hvc_all",
    "mc_hypervolume",
    "DirectionSet",
    "weight_to_direction",
    "gen_das",
    "gen_unv",
    "gen_jas",
    "gen_mss",
    "gen_kmeans_u",
    "g_star_2tch",
    "g_mtch",
    "r2hvc",
    "LengthMatrix",
    "build_length_matrix",
    "pearson_q",
    "q_of_directions",
    "TrainingSet",
    "TrainingCorpus",
    "TrainingResult",
    "generate_corpus",
    "save_corpus",
    "load_corpus",
    "learn_directions",
    "cir",
    "gahss",
    "wilcoxon_rank_sum",
    "rank_methods",
    "CirReport",
    "GahssReport",
    "__version__",
]
