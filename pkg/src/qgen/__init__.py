"""Exact symbolic engine for the semiclassical generator Q of the C = exp(Q) P
symmetry operator of the Hamiltonian 1/2 p^2 + 1/2 mu^2 x^2 + i eps g x^3
- eps^2 lam x^4, plus numeric summation of the resulting series.

The bookkeeping parameter eps is not a polynomial symbol: its power is carried
by the position of each generator in a :class:`QSeries` (entry n holds the
order-(2n+1) term) together with the fixed weights (0, 1, 2) of the three
Hamiltonian pieces.
"""

from .engine import (
    FIRST_ORDER_G,
    FULL_G,
    HamiltonianSpec,
    QSeries,
    adjoint_series_coefficient,
    closed_form_term,
    compute_q,
    cubic_h1,
    drop_g_powers,
    epsilon_identity_rhs,
    oscillator_h0,
    printed_q5_reference,
    quartic_h2,
    reconcile_fifth_order,
    solve_ad_h0,
    verify_even_order,
)
from .errors import (
    DependencyError,
    DomainError,
    NoAdmissibleSolutionError,
    OutsideConvergenceRegionError,
)
from .params import AlphaBeta, EvalParams, PhasePoint
from .poly import (
    Coefficient,
    Monomial,
    ParityFlags,
    PhasePolynomial,
    commutator_leading,
    diff_terms,
    eval_numeric,
    parity_flags,
    poisson_bracket,
    space_reflection,
)
from .summation import (
    PartialSum,
    SweepRow,
    alpha_beta,
    boundary_p,
    convergence_margin,
    inner_sum_closed,
    outer_sum_closed,
    partial_sum,
    q_closed,
    sweep_rows,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaBeta",
    "Coefficient",
    "DependencyError",
    "DomainError",
    "EvalParams",
    "FIRST_ORDER_G",
    "FULL_G",
    "HamiltonianSpec",
    "Monomial",
    "NoAdmissibleSolutionError",
    "OutsideConvergenceRegionError",
    "ParityFlags",
    "PartialSum",
    "PhasePoint",
    "PhasePolynomial",
    "QSeries",
    "SweepRow",
    "adjoint_series_coefficient",
    "alpha_beta",
    "boundary_p",
    "closed_form_term",
    "commutator_leading",
    "compute_q",
    "convergence_margin",
    "cubic_h1",
    "diff_terms",
    "drop_g_powers",
    "epsilon_identity_rhs",
    "eval_numeric",
    "inner_sum_closed",
    "oscillator_h0",
    "outer_sum_closed",
    "parity_flags",
    "partial_sum",
    "poisson_bracket",
    "printed_q5_reference",
    "q_closed",
    "quartic_h2",
    "reconcile_fifth_order",
    "solve_ad_h0",
    "space_reflection",
    "sweep_rows",
    "verify_even_order",
]
