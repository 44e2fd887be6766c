"""Exact rational calculus for finite-dimensional Banach spaces.

Unit balls are centrally symmetric rational polytopes carrying both vertex
and facet representations; every norm, duality, subspace, quotient, direct
sum, amalgamation, and summing-norm computation below is exact unless a
function name says approx.
"""

from .amalgams import (Amalgam, SpaceCatalog, VFormation,
                       duality_identity_check, pushout, verify_amalgam)
from .budgets import DEFAULT as DEFAULT_BUDGETS
from .budgets import Budgets
from .catalogio import CatalogFile, load_catalog, save_catalog
from .errors import (BudgetExceeded, CalcError, ConstructionFailed,
                     DependentBasis, DependentColumns, DimMismatch,
                     DimensionOverBudget, DimensionTooSmall, Infeasible,
                     IoError, MalformedRational, NotAZonotope,
                     NotFullDimensional, NotIsometricInput, NotProper,
                     NotSpanning, NotSurjective, NotSymmetric,
                     SchemaMismatch, Unbounded)
from .invariants import (TensorElem, cotype_witness, injective_norm,
                         nuclear_norm, pi1_norm, projection_constant,
                         projective_norm, rademacher_average, type_witness)
from .l1geometry import (IncarnatingSet, L1Embedding, dual_zonotope,
                         incarnate, incarnation_norm, is_l1_embeddable,
                         l1_amalgamate, reconstruct)
from .polytopes import (SymPolytope, congruent, edges, from_vertices, gauge,
                        hull_reduce, linear_image, polar, section, support,
                        vertex_enum, zonotope_of)
from .rationals import Q, parse_rat, qstr, rat
from .spaces import (DistortionCert, FinSpace, LinOp, annihilator, bm_upper,
                     distortion, dsum1, dsum2_approx, dsum_inf, dual,
                     is_isometric, l1_space, linf_space, operator_norm,
                     quotient, space_norm, subspace)
from .tower import (EmbeddingTriple, TowerStage, TripleNet, build_tower,
                    homogeneity_defect, replay_tower, tower_step, triple_net)

__all__ = [
    "Budgets", "DEFAULT_BUDGETS", "SymPolytope", "congruent", "edges",
    "from_vertices", "gauge", "hull_reduce", "linear_image", "polar",
    "section", "support", "vertex_enum", "zonotope_of", "Q", "parse_rat",
    "qstr", "rat", "DistortionCert", "FinSpace", "LinOp", "annihilator",
    "bm_upper", "distortion", "dsum1", "dsum2_approx", "dsum_inf", "dual",
    "is_isometric", "l1_space", "linf_space", "operator_norm", "quotient",
    "space_norm", "subspace",
    "Amalgam", "SpaceCatalog", "VFormation", "duality_identity_check",
    "pushout", "verify_amalgam",
    "CatalogFile", "load_catalog", "save_catalog",
    "CalcError", "NotSymmetric", "NotFullDimensional", "NotSpanning",
    "Infeasible", "Unbounded", "DimensionOverBudget", "BudgetExceeded",
    "NotSurjective", "DependentBasis", "DependentColumns", "DimMismatch",
    "NotProper", "DimensionTooSmall", "NotAZonotope", "NotIsometricInput",
    "ConstructionFailed", "IoError", "SchemaMismatch", "MalformedRational",
    "TensorElem", "cotype_witness", "injective_norm", "nuclear_norm",
    "pi1_norm", "projection_constant", "projective_norm",
    "rademacher_average", "type_witness",
    "IncarnatingSet", "L1Embedding", "dual_zonotope", "incarnate",
    "incarnation_norm", "is_l1_embeddable", "l1_amalgamate", "reconstruct",
    "EmbeddingTriple", "TowerStage", "TripleNet", "build_tower",
    "homogeneity_defect", "replay_tower", "tower_step", "triple_net",
]
