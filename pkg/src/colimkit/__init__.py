"""Exact homological algebra: derived colimits over finite categories, group
homology with torsion, and Hochschild and cyclic homology of small and
weight-graded algebras."""

from .errors import InvariantViolation, NotContainedError, ValidationError
from .exactla import ExactMatrix, Subspace, invariant_factors, kernel, rank, snf
from .complexes import ChainComplex, ChainMap, DoubleComplex, homology_q, homology_z, totalize
from .fincat import DiagramFunctor, FinCategory, colim0_coeq, constant_functor, derived_colim
from .grouphom import FinGroup, GModule, cyclic_group_oracle, group_homology
from .algebras import Bimodule, StructAlgebra, unitalize
from .freegraded import GradedFreeAlgebra, GradedPresentation, hopf_hc_odd, necklace_count
from .hochcyclic import (cyclic_homology, cyclic_nonunital, hochschild, lambda_homology,
                         magnus_check, sbi_sequence)
from .steinberg import (ElementaryMatrixGroupContext, FiniteRing, e_matrix, fiber_product,
                        gamma_generators_trivial, steinberg_relations_check)

__version__ = "0.1.0"

__all__ = [
    "InvariantViolation", "NotContainedError", "ValidationError",
    "ExactMatrix", "Subspace", "invariant_factors", "kernel", "rank", "snf",
    "ChainComplex", "ChainMap", "DoubleComplex", "homology_q", "homology_z", "totalize",
    "DiagramFunctor", "FinCategory", "colim0_coeq", "constant_functor", "derived_colim",
    "FinGroup", "GModule", "cyclic_group_oracle", "group_homology",
    "Bimodule", "StructAlgebra", "unitalize",
    "GradedFreeAlgebra", "GradedPresentation", "hopf_hc_odd", "necklace_count",
    "cyclic_homology", "cyclic_nonunital", "hochschild", "lambda_homology",
    "magnus_check", "sbi_sequence",
    "ElementaryMatrixGroupContext", "FiniteRing", "e_matrix", "fiber_product",
    "gamma_generators_trivial", "steinberg_relations_check",
]
