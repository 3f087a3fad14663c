"""Numeric evaluation of the summed generator and its convergence region.

Everything here works in IEEE double precision; exactness lives in the
symbolic modules.  The summed closed form converges inside the parabolic
region |p| < mu^2 / (2 eps sqrt(2 lam)) - eps sqrt(2 lam) x^2, which is the
inequality alpha*beta + sqrt(beta) < 1 written out in phase-space variables.
The boundary is taken symmetrically in |p| because the series depends on p
only through p^2 and the generator is odd in p; boundary points count as
outside.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple

from .engine import closed_form_term
from .errors import DomainError, OutsideConvergenceRegionError
from .params import AlphaBeta, EvalParams, PhasePoint
from .poly import eval_numeric

# Below these thresholds the closed forms switch to their defining series,
# which are exact rearrangements and free of the log-difference cancellation
# that grows like eps/beta as beta -> 0.
INNER_SERIES_THRESHOLD = 1e-4
OUTER_SERIES_THRESHOLD = 1e-2
# The log form of the summed generator loses about eps/(sqrt(beta)*(alpha*beta
# + beta/3)) in relative accuracy: the two pieces cancel and the prefactor
# amplifies the absolute rounding of the log argument.  Below this threshold
# on that scale the resummed inner/outer split is evaluated instead, which is
# stable uniformly in (alpha, beta), covers lam = 0, and reduces to the
# first-order generator as lam -> 0.
Q_LOG_CANCEL_THRESHOLD = 3e-5

_MAX_SERIES_TERMS = 100_000


@lru_cache(maxsize=None)
def _term_polynomial(n: int):
    return closed_form_term(n)


def _term_value(params: EvalParams, point: PhasePoint, n: int) -> float:
    # Closed-form coefficients are real rationals, so the imaginary part is 0.
    return eval_numeric(_term_polynomial(n), params, point).real


def alpha_beta(params: EvalParams, point: PhasePoint) -> AlphaBeta:
    """alpha = mu^2 x^2 / (2 p^2), beta = 8 eps^2 lam p^2 / mu^4.

    alpha is singular at p = 0; callers needing the generator there should use
    q_closed, which is regular at p = 0.
    """
    if point.p == 0:
        raise DomainError("alpha is singular at p = 0")
    alpha = params.mu ** 2 * point.x ** 2 / (2 * point.p ** 2)
    beta = 8 * params.epsilon ** 2 * params.lam * point.p ** 2 / params.mu ** 4
    return AlphaBeta(alpha, beta)


def convergence_margin(params: EvalParams, point: PhasePoint) -> float:
    """Distance in |p| to the parabolic convergence boundary; positive inside.

    Returns +inf when lam = 0 (the series then converges for the whole
    semiclassical phase plane).
    """
    if params.lam == 0:
        return math.inf
    s = params.epsilon * math.sqrt(2 * params.lam)
    return params.mu ** 2 / (2 * s) - s * point.x ** 2 - abs(point.p)


def boundary_p(params: EvalParams, x: float) -> float:
    """Parabolic boundary value of |p| at the given x.

    Raises DomainError when lam = 0, where no finite boundary exists.
    """
    if params.lam == 0:
        raise DomainError("no finite convergence boundary at lam = 0")
    s = params.epsilon * math.sqrt(2 * params.lam)
    return params.mu ** 2 / (2 * s) - s * x * x


def _inner_series(alpha: float, beta: float, rel_tol: float = 1e-17) -> float:
    """Truncated double series: alpha * sum_k (alpha*beta)^k/(k+1)!
    * sum_n (2n+k+1)!/(2n+1)! beta^n.  All terms are non-negative, so the
    relative truncation criterion is reliable."""
    total = 0.0
    outer = alpha
    for k in range(_MAX_SERIES_TERMS):
        term = 1.0  # (2n+k+1)! / ((2n+1)! (k+1)!) * beta^n at n = 0
        inner = term
        n = 1
        while term > rel_tol * inner:
            term *= beta * (2 * n + k + 1) * (2 * n + k) / ((2 * n + 1) * (2 * n))
            inner += term
            n += 1
            if n > _MAX_SERIES_TERMS:
                raise DomainError("inner series failed to converge")
        contribution = outer * inner
        total += contribution
        if contribution <= rel_tol * total:
            return total
        outer *= alpha * beta
    raise DomainError("inner series failed to converge")


def inner_sum_closed(ab: AlphaBeta) -> float:
    """Closed form of the alpha-weighted double series.

    Equals (1/(2 beta^(3/2))) [ln((1-ab+sqrt b)/(1-ab-sqrt b)) - ln((1+sqrt b)/(1-sqrt b))]
    on the convergence domain alpha*beta + sqrt(beta) < 1; the implementation
    fuses the log difference into a single artanh via
    artanh(u) - artanh(v) = artanh((u-v)/(1-u v)), which removes the
    cancellation between the two logarithms.  Below INNER_SERIES_THRESHOLD in
    beta the truncated defining series is summed instead (provided its outer
    ratio alpha*beta keeps the term count small).  The limit value at beta = 0
    is alpha.
    """
    alpha, beta = ab.alpha, ab.beta
    if alpha * beta + math.sqrt(beta) >= 1:
        raise DomainError(
            f"series diverges: alpha*beta + sqrt(beta) = {alpha * beta + math.sqrt(beta):.6g} >= 1"
        )
    if beta == 0:
        return alpha
    if beta < INNER_SERIES_THRESHOLD and alpha * beta <= 0.5:
        return _inner_series(alpha, beta)
    s = math.sqrt(beta)
    z = s * alpha * beta / (1 - alpha * beta - beta)
    return math.atanh(z) / (beta * s)


def outer_sum_closed(beta: float) -> float:
    """Closed form of sum_n beta^n / (2n+3) for 0 <= beta < 1.

    Equals (1/beta^(3/2)) (artanh(sqrt beta) - sqrt beta); below
    OUTER_SERIES_THRESHOLD the defining series is summed instead, since the
    direct form loses about eps/beta in relative accuracy to cancellation.
    The limit value at beta = 0 is 1/3.
    """
    if not 0 <= beta < 1:
        raise DomainError(f"beta must lie in [0, 1), got {beta}")
    if beta < OUTER_SERIES_THRESHOLD:
        total = 0.0
        power = 1.0
        for n in range(_MAX_SERIES_TERMS):
            term = power / (2 * n + 3)
            total += term
            if term <= 1e-17 * total:
                return total
            power *= beta
        raise DomainError("outer series failed to converge")
    s = math.sqrt(beta)
    return (math.atanh(s) - s) / (beta * s)


def _q_resummed(params: EvalParams, point: PhasePoint) -> float:
    """Summed generator through the stable inner/outer split
    -A (inner_sum + outer_sum) with A = 4 eps g p^3 / (mu^4 hbar)."""
    alpha = params.mu ** 2 * point.x ** 2 / (2 * point.p ** 2)
    beta = 8 * params.epsilon ** 2 * params.lam * point.p ** 2 / params.mu ** 4
    amplitude = 4 * params.epsilon * params.g * point.p ** 3 / (params.mu ** 4 * params.hbar)
    return -amplitude * (inner_sum_closed(AlphaBeta(alpha, beta)) + outer_sum_closed(beta))


def q_closed(params: EvalParams, point: PhasePoint) -> float:
    """Summed generator at a phase-space point.

    Raises OutsideConvergenceRegionError (carrying the margin) exactly when
    convergence_margin(params, point) <= 0; boundary points are outside.  At
    p = 0 the value is 0 exactly (the generator is odd in p).  When the
    cancellation scale sqrt(beta)*(alpha*beta + beta/3) falls below
    Q_LOG_CANCEL_THRESHOLD -- in particular for lam -> 0, including lam = 0 --
    the resummed inner/outer split is evaluated instead of the log form; its
    leading term is the first-order generator, which is the lam -> 0 limit.
    """
    margin = convergence_margin(params, point)
    if margin <= 0:
        raise OutsideConvergenceRegionError(margin)
    if point.p == 0:
        return 0.0
    beta = 8 * params.epsilon ** 2 * params.lam * point.p ** 2 / params.mu ** 4
    alpha_beta_product = 4 * params.epsilon ** 2 * params.lam * point.x ** 2 / params.mu ** 2
    if math.sqrt(beta) * (alpha_beta_product + beta / 3) < Q_LOG_CANCEL_THRESHOLD:
        return _q_resummed(params, point)
    s = params.epsilon * math.sqrt(2 * params.lam)
    # u_minus = mu^2 - 4 lam eps^2 x^2 - 2 s |p| rewritten through the margin,
    # which guarantees a positive log argument for every interior point.
    u_minus = 2 * s * margin
    u_plus = (params.mu ** 2 - 4 * params.lam * params.epsilon ** 2 * point.x ** 2
              + 2 * s * abs(point.p))
    sign = 1.0 if point.p > 0 else -1.0
    log_piece = (params.g * params.mu ** 2 * math.sqrt(2)
                 / (16 * params.epsilon ** 2 * params.lam ** 1.5 * params.hbar)
                 ) * sign * math.log(u_minus / u_plus)
    linear_piece = params.g * point.p / (2 * params.epsilon * params.lam * params.hbar)
    return log_piece + linear_piece


class PartialSum(NamedTuple):
    value: float
    last_increment: float


def partial_sum(params: EvalParams, point: PhasePoint, n_terms: int) -> PartialSum:
    """Sum of the contributions eps^(2n+1) Q_{2n+1}(x, p) for n = 0 .. n_terms.

    Divergence outside the region shows up as growing increments; the final
    increment magnitude is returned alongside the value so callers can apply
    a ratio test.
    """
    if n_terms < 0:
        raise ValueError("n_terms must be >= 0")
    total = 0.0
    increment = 0.0
    eps_power = params.epsilon
    eps_sq = params.epsilon ** 2
    for n in range(n_terms + 1):
        increment = eps_power * _term_value(params, point, n)
        total += increment
        eps_power *= eps_sq
    return PartialSum(total, abs(increment))


class SweepRow(NamedTuple):
    x: float
    p: float
    margin: float
    q_closed: float
    partial_sum: float
    abs_err: float
    flag: str


def sweep_rows(params: EvalParams, xs: list[float], ps: list[float],
               n_terms: int) -> list[SweepRow]:
    """Error-map rows over the grid, x-major then p, in deterministic order.

    Outside the convergence region the closed form and the error are NaN and
    the flag is "diverged"; partial sums are still reported so the map can
    straddle the boundary.
    """
    rows = []
    for x in xs:
        for p in ps:
            point = PhasePoint(x, p)
            margin = convergence_margin(params, point)
            psum = partial_sum(params, point, n_terms).value
            try:
                qc = q_closed(params, point)
                err = abs(qc - psum)
                flag = "converged"
            except OutsideConvergenceRegionError:
                qc = math.nan
                err = math.nan
                flag = "diverged"
            rows.append(SweepRow(x, p, margin, qc, psum, err, flag))
    return rows
