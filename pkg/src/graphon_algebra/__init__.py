"""Exact homomorphism densities, homomorphism polynomials and kernel varieties."""

from .density import DensityResult, density, t_monte_carlo, t_quantum, t_spectral, t_step
from .errors import ParseError, SizeLimitError
from .estimators import HomDensityTransformer, VarietyClassifier
from .graphs import (
    Multigraph,
    build_graph,
    canonical_key,
    enumerate_multigraphs,
    skeleton,
    standard_graph,
)
from .groebner import IdealHandle, groebner_basis, ideal_member, radical_member
from .hadamard import (
    hadamard_closed_form,
    hadamard_graphon,
    is_hadamard,
    map_probability,
    sylvester,
    symmetric_hadamards,
)
from .hom import WeightedTarget, hom_count, hom_poly
from .kernels import (
    KernelClass,
    SpectralKernel,
    StepKernel,
    classify,
    numeric_decompose,
    spectral_kernel,
    spectral_to_step,
    step_kernel,
)
from .parser import format_expr, parse_expr
from .polynomial import SymPolynomial, is_sq_invariant, permute_vars, poly_eval
from .quantum import K0, QuantumGraph, combine, glue, qg_power, qg_product, unlabel
from .variety import (
    VarietyConstraint,
    closure_check,
    hnak_audit,
    in_variety,
    intersection_constraint,
    trivial_constraint,
    union_constraint,
)

__version__ = "0.1.0"
