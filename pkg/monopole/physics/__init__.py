"""
Physics of the curved monopole family: model, integrals, brackets,
parity expansion and chart transforms.
"""

from .model import (
    validate_params,
    eval_w1,
    eval_w2,
    vector_potential,
    magnetic_field_check,
    hamiltonian,
    hamiltonian_parts,
    hamiltonian_gradient,
    scalar_curvature_closed,
    scalar_curvature_numeric,
)
from .integrals import (
    eval_x1,
    eval_x2,
    conserved_set,
    eval_calX,
    eval_T1,
    eval_T2,
    eval_M,
    eval_N,
    eval_I,
    radial_radicand,
    angular_radicand,
    separation_constant,
    separated_hamiltonian,
)
from .brackets import poisson_bracket, poisson_bracket_with_scale, independence_rank
from .parity import expand, parity_certify, numeric_consistency
from .transforms import (
    to_taubnut,
    from_taubnut,
    taubnut_hamiltonian,
    potential_discrepancy,
    reduce_2d,
    reduced_hamiltonian,
    reduced_hamiltonian_check,
)

__all__ = [
    "validate_params",
    "eval_w1",
    "eval_w2",
    "vector_potential",
    "magnetic_field_check",
    "hamiltonian",
    "hamiltonian_parts",
    "hamiltonian_gradient",
    "scalar_curvature_closed",
    "scalar_curvature_numeric",
    "eval_x1",
    "eval_x2",
    "conserved_set",
    "eval_calX",
    "eval_T1",
    "eval_T2",
    "eval_M",
    "eval_N",
    "eval_I",
    "radial_radicand",
    "angular_radicand",
    "separation_constant",
    "separated_hamiltonian",
    "poisson_bracket",
    "poisson_bracket_with_scale",
    "independence_rank",
    "expand",
    "parity_certify",
    "numeric_consistency",
    "to_taubnut",
    "from_taubnut",
    "taubnut_hamiltonian",
    "potential_discrepancy",
    "reduce_2d",
    "reduced_hamiltonian",
    "reduced_hamiltonian_check",
]
