"""Group-theoretic side: fertility, divisibility, roots and reconstruction."""
from .characters import CharacterModule, HomReport, commutator_module_characters, hom_T
from .descriptors import (
    FertilityReport,
    GroupDescriptor,
    MatrixModel,
    additive_times_multiplicative,
    affine,
    borel,
    explicit,
    general_linear,
    is_fertile,
    parse_descriptor,
)
from .divisibility import DivisibilityCertificate, DivisibilityReport, is_divisible, verify_certificate
from .reconstruct import (
    ComparisonReport,
    LocalPlace,
    Reconstruction,
    compare_point_groups,
    reconstruct_local_fields,
)
from .siegel import SiegelDecomposition, siegel_budget, siegel_decompose
from .unipotent import (
    UnipotentMatrix,
    binomial_root_coefficient,
    binomial_root_valuation,
    root_budget,
    unipotent_nth_root,
)
