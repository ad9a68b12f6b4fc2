"""Quota complexes and the Bernoulli random quota model."""
from ._backend import BACKEND
from .analysis import (
    BoundConstants,
    PeakSolution,
    QuotientTable,
    Region,
    RegionReport,
    UnimodalityReport,
    bound_constants,
    check_unimodality,
    classify_region,
    forward_quotient_1,
    forward_quotient_2,
    peak_convergence_study,
    quadratic_T,
    region_grid,
    sandwich_check,
    solve_tau_infinity,
)
from .bernoulli import (
    BernoulliParams,
    McEstimate,
    exact_expectation_by_enumeration,
    expected_betti,
    monte_carlo_expectation,
    sample_weights,
    support_range,
)
from .core import (
    BettiVector,
    EmptyComplexError,
    QuotaSystem,
    betti_by_counting,
    contains_face,
    enumerate_faces,
    face_weight,
)
from .homology import ExplicitComplex, boundary_matrix, reduced_betti

__version__ = "0.1.0"
