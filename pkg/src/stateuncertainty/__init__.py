"""State uncertainty measures built from Born distributions.

A state's uncertainty relative to an observable is an uncertainty function
(classical part) applied to the state's Born distribution (quantum part).
"""

from .exceptions import DimensionError, ValidationError
from .simplex import (
    ProbabilityVector,
    convex_combine,
    is_maximal_certainty,
    is_maximal_uncertainty,
    make_probability_vector,
    permute,
    sample_random,
    uniform,
    vertex,
)
from .uncertainty_functions import (
    BUILTINS,
    AxiomReport,
    GeneratorFunction,
    UncertaintyFunction,
    custom,
    entropy,
    eval_entropy,
    eval_geometric,
    eval_sine,
    eval_variance,
    geometric,
    make_mixture,
    make_sum_form,
    parse_function_spec,
    register_function,
    sine,
    variance,
    verify_axioms,
    verify_jensen,
)
from .quantum_objects import (
    Effect,
    Observable,
    State,
    basis_state,
    born_distribution,
    decompose_maximal_uncertainty_state,
    effect_variance,
    example4_family_state,
    is_atomic_projective,
    is_maximal_uncertainty_state,
    is_projective,
    make_maximal_uncertainty_state,
    make_pure_state,
    maximally_mixed_state,
    mix_observables,
    mix_states,
    plus_minus_observable,
    plus_state,
    random_povm,
    random_projective_observable,
    random_state,
    random_zero_diagonal_perturbation,
    standard_basis_observable,
)
from .measures import (
    DiscriminationReport,
    UncertaintyMeasure,
    discriminate,
    measure,
    measure_concavity_check,
    mixed_measure,
    observable_mixture_gap,
    variance_measure_decomposition,
)

__version__ = "0.1.0"
