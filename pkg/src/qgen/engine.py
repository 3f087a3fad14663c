"""Order-by-order construction of the generator series.

The conjugated Hamiltonian exp(-Q) H exp(Q) is expanded with the
Campbell-Baker-Hausdorff series and Q = sum over odd orders of the
bookkeeping parameter (the cubic coupling g carries weight one, the quartic
coupling lam weight two).  Equating coefficients order by order yields one
commutator relation per odd order,

    [Q_{2n+1}, H0] = R_n,

whose right side involves only previously solved generators; the even-order
coefficients are identically redundant and serve as consistency checks.  Each
relation is solved by inverting the classical bracket with the harmonic
oscillator (the homological step), with uniqueness supplied by the parity
constraints: every generator is even in x and odd in p, while the bracket's
kernel consists of polynomials in H0, which are even in p.

The relations are generated mechanically from the series rather than copied
from any printed tabulation; printed fifth-order coefficients are kept only
as reference data for the reconciliation report (they are known to contain
typographical corruption, e.g. one nested-bracket term is commonly printed
with a wrong subscript, and the engine output is authoritative).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DependencyError, NoAdmissibleSolutionError
from .poly import (
    Coefficient,
    Monomial,
    PhasePolynomial,
    commutator_leading,
    diff_terms,
    parity_flags,
    space_reflection,
)

FULL_G = "full-g"
FIRST_ORDER_G = "first-order-g"
MODES = (FULL_G, FIRST_ORDER_G)

_factorial = math.factorial


def oscillator_h0() -> PhasePolynomial:
    """Harmonic part 1/2 p^2 + 1/2 mu^2 x^2."""
    return (PhasePolynomial.term(Fraction(1, 2), p=2)
            + PhasePolynomial.term(Fraction(1, 2), x=2, mu=2))


def cubic_h1() -> PhasePolynomial:
    """Imaginary cubic part i g x^3."""
    return PhasePolynomial.term(Coefficient(Fraction(0), Fraction(1)), x=3, g=1)


def quartic_h2() -> PhasePolynomial:
    """Quartic part -lam x^4."""
    return PhasePolynomial.term(-1, x=4, lam=1)


@dataclass(frozen=True, slots=True)
class HamiltonianSpec:
    """The three graded pieces of the Hamiltonian and their bookkeeping weights.

    h0 must be even in both x and p, h1 odd in x, h2 even in x, so that the
    parity table P h0 P = h0, P h1 P = -h1, P h2 P = h2 holds.
    """

    h0: PhasePolynomial
    h1: PhasePolynomial
    h2: PhasePolynomial
    eps_weights: tuple[int, int, int] = (0, 1, 2)

    def __post_init__(self):
        if any(m.x % 2 or m.p % 2 for m in self.h0._terms):
            raise ValueError("h0 must be even in x and even in p")
        if any(m.x % 2 == 0 for m in self.h1._terms):
            raise ValueError("h1 must be odd in x")
        if any(m.x % 2 for m in self.h2._terms):
            raise ValueError("h2 must be even in x")
        table = ((self.h0, self.h0), (self.h1, -self.h1), (self.h2, self.h2))
        if any(space_reflection(part) != expected for part, expected in table):
            raise ValueError("parity table violated")

    @classmethod
    def default(cls) -> "HamiltonianSpec":
        return cls(oscillator_h0(), cubic_h1(), quartic_h2())

    def parts(self) -> tuple[tuple[PhasePolynomial, int], ...]:
        return tuple(zip((self.h0, self.h1, self.h2), self.eps_weights))


@dataclass(frozen=True, slots=True)
class QSeries:
    """Odd-order generators; entry n holds the order-(2n+1) term.

    Structural invariants checked on construction: every term is even in x,
    odd in p, carries hbar^-1 uniformly, and satisfies the coupling grading
    g + 2*lam = 2n+1 monomial by monomial (with g = 1 exactly in
    first-order-g mode).
    """

    mode: str
    terms: tuple[PhasePolynomial, ...] = ()

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        for n, q in enumerate(self.terms):
            flags = parity_flags(q)
            if not (flags.even_in_x and flags.odd_in_p):
                raise ValueError(f"generator n={n} is not even in x and odd in p")
            for m in q._terms:
                if m.hbar != -1:
                    raise ValueError(f"generator n={n} has a term with hbar^{m.hbar}")
                if m.g + 2 * m.lam != 2 * n + 1:
                    raise ValueError(
                        f"generator n={n} violates the coupling grading g + 2*lam = {2*n+1}"
                    )
                if self.mode == FIRST_ORDER_G and m.g != 1:
                    raise ValueError(f"generator n={n} carries g^{m.g} in first-order-g mode")

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def max_n(self) -> int:
        return len(self.terms) - 1

    def term(self, n: int) -> PhasePolynomial:
        if n < 0 or n >= len(self.terms):
            raise DependencyError(2 * n + 1)
        return self.terms[n]

    def with_term(self, q: PhasePolynomial) -> "QSeries":
        return QSeries(self.mode, self.terms + (q,))


def _ad_order_sum(part: PhasePolynomial, eps_weight: int, series: QSeries,
                  target_order: int, min_applications: int = 0) -> PhasePolynomial:
    """Coefficient of the target order in sum_m (1/m!) ad_Q^m(part).

    ad_Q(X) = commutator_leading(X, Q); the enumeration runs over ordered
    tuples of odd generator orders whose total plus ``eps_weight`` equals
    ``target_order``, building each left-nested bracket chain once along the
    depth-first walk.  Tuples shorter than ``min_applications`` are skipped,
    and the walk never requests a generator that such a tuple would not use.
    """
    budget = target_order - eps_weight
    if budget < 0:
        return PhasePolynomial.zero()
    acc = PhasePolynomial.zero()

    def descend(current: PhasePolynomial, remaining: int, applications: int) -> None:
        nonlocal acc
        if remaining == 0:
            if applications >= min_applications:
                acc = acc + current * Fraction(1, _factorial(applications))
            return
        # Leave room for the minimum number of further bracket applications.
        max_order = remaining - max(0, min_applications - applications - 1)
        for order in range(1, max_order + 1, 2):
            nxt = commutator_leading(current, series.term((order - 1) // 2))
            if nxt:
                descend(nxt, remaining - order, applications + 1)

    descend(part, budget, 0)
    return acc


def adjoint_series_coefficient(part: PhasePolynomial, eps_weight: int,
                               series: QSeries, target_order: int) -> PhasePolynomial:
    """Coefficient of the target order in the conjugation series of ``part``.

    Raises DependencyError if a contributing tuple references a generator that
    the series does not hold yet.
    """
    return _ad_order_sum(part, eps_weight, series, target_order)


def epsilon_identity_rhs(n: int, series: QSeries, spec: HamiltonianSpec) -> PhasePolynomial:
    """Right side R of the order-(2n+1) relation commutator_leading(Q_{2n+1}, H0) = R.

    Collected mechanically from the conjugation identity: the h0 chains of
    length >= 2 plus the h1 and h2 chains of length >= 1 at matching order.
    For n = 0 this is exactly 2*h1.  In first-order-g mode every multi-bracket
    chain carries at least g^2, so the relation collapses to
    R = [h2, Q_{2n-1}] (note the orientation: the solved relation keeps
    Q_{2n+1} in the left slot of the bracket).
    """
    if n == 0:
        return 2 * spec.h1
    if series.mode == FIRST_ORDER_G:
        return commutator_leading(spec.h2, series.term(n - 1))
    t = 2 * n + 1
    rhs = _ad_order_sum(spec.h0, spec.eps_weights[0], series, t, min_applications=2)
    rhs = rhs + _ad_order_sum(spec.h1, spec.eps_weights[1], series, t, min_applications=1)
    rhs = rhs + _ad_order_sum(spec.h2, spec.eps_weights[2], series, t, min_applications=1)
    return rhs


def solve_ad_h0(rhs: PhasePolynomial, spec: HamiltonianSpec | None = None) -> PhasePolynomial:
    """Solve commutator_leading(Q, h0) = rhs for the unique Q even in x, odd in p.

    The classical action {p^a x^b, h0} = b p^(a+1) x^(b-1) - a mu^2 p^(a-1) x^(b+1)
    preserves the total (x, p)-degree and shifts the mu exponent in step with
    the x exponent, so the unknowns split into independent chains indexed by
    (g, lam, hbar, total degree, mu - x).  On each chain the system is
    bidiagonal with non-zero diagonal and is solved by forward substitution
    from the pure-x slot upward, in exact rational arithmetic.  Polynomials in
    h0 (the kernel of the bracket) are even in p and therefore excluded, which
    makes the solution unique.

    Raises NoAdmissibleSolutionError, carrying the unreachable residual, if
    rhs is not in the image of the bracket on even-x/odd-p polynomials.
    """
    if spec is None:
        spec = HamiltonianSpec.default()
    if spec.h0 != oscillator_h0():
        raise ValueError("solver requires the standard oscillator h0")

    # S with {Q, h0} = S: divide rhs by i*hbar.
    chains: dict[tuple[int, int, int, int, int], dict[int, Coefficient]] = {}
    for m, c in rhs._terms.items():
        if m.x % 2 == 1 and m.p % 2 == 0:
            key = (m.g, m.lam, m.hbar - 1, m.x + m.p, m.mu - m.x)
            chains.setdefault(key, {})[m.p] = c.div_i()
        # Terms with the wrong parity are unreachable; they surface in the
        # residual check below.

    zero = Coefficient()
    q_acc: dict[Monomial, Coefficient] = {}
    for (g_exp, lam_exp, hbar_exp, total, chain_key), slots in chains.items():
        c_prev = zero
        for a_img in range(0, total, 2):
            r_c = slots.get(a_img, zero)
            if a_img == 0:
                c_cur = -r_c
            else:
                c_cur = (c_prev * (total - a_img + 1) - r_c) * Fraction(1, a_img + 1)
            if c_cur:
                a = a_img + 1
                b = total - a
                mono = Monomial(x=b, p=a, g=g_exp, lam=lam_exp,
                                mu=chain_key - 1 + b, hbar=hbar_exp)
                q_acc[mono] = c_cur
            c_prev = c_cur

    q = PhasePolynomial._raw(q_acc)
    residual = rhs - commutator_leading(q, spec.h0)
    if residual:
        raise NoAdmissibleSolutionError(residual)
    return q


def drop_g_powers(poly: PhasePolynomial, min_exp: int) -> PhasePolynomial:
    """Remove every term whose g exponent is at least ``min_exp``."""
    return poly.filtered(lambda m: m.g < min_exp)


def compute_q(max_n: int, mode: str = FIRST_ORDER_G,
              spec: HamiltonianSpec | None = None) -> QSeries:
    """Solve the order relations for Q_1 .. Q_{2*max_n+1}.

    In first-order-g mode terms with g^2 and higher are discarded after each
    solve, which keeps intermediate sizes linear in the order.
    """
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    if spec is None:
        spec = HamiltonianSpec.default()
    series = QSeries(mode)
    for n in range(max_n + 1):
        rhs = epsilon_identity_rhs(n, series, spec)
        q = solve_ad_h0(rhs, spec)
        if mode == FIRST_ORDER_G:
            q = drop_g_powers(q, 2)
        series = series.with_term(q)
    return series


def closed_form_term(n: int) -> PhasePolynomial:
    """General first-order-in-g generator of order 2n+1:

    -g 2^(3n+2) lam^n / (mu^(4n+4) hbar) * p
        * sum_{k=0}^{n+1} mu^(2k) (2n-k+2)! / (2^k k! (2n-2k+3)!) x^(2k) p^(2n-2k+2)

    with the factorials evaluated in exact integer arithmetic.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    prefactor = -(2 ** (3 * n + 2))
    terms = []
    for k in range(n + 2):
        numerator = prefactor * _factorial(2 * n - k + 2)
        denominator = (2 ** k) * _factorial(k) * _factorial(2 * n - 2 * k + 3)
        mono = Monomial(x=2 * k, p=2 * n - 2 * k + 3, g=1, lam=n,
                        mu=2 * k - 4 * n - 4, hbar=-1)
        terms.append((mono, Coefficient(Fraction(numerator, denominator))))
    return PhasePolynomial(terms)


def verify_even_order(m: int, series: QSeries, spec: HamiltonianSpec | None = None) -> PhasePolynomial:
    """Assemble the order-2m coefficient of the conjugation identity.

    Returns the residual, which is identically zero when the stored odd
    generators solve their relations.  In first-order-g mode the assembly is
    carried out in the same truncated algebra as the recurrence, i.e. terms
    with g^2 and higher are dropped from the residual.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if spec is None:
        spec = HamiltonianSpec.default()
    t = 2 * m
    res = _ad_order_sum(spec.h0, spec.eps_weights[0], series, t, min_applications=1)
    res = res + _ad_order_sum(spec.h1, spec.eps_weights[1], series, t, min_applications=1)
    res = res + _ad_order_sum(spec.h2, spec.eps_weights[2], series, t, min_applications=1)
    res = -res
    if series.mode == FIRST_ORDER_G:
        res = drop_g_powers(res, 2)
    return res


def _reference_bracket(scale: int, g_exp: int, lam_exp: int, mu_base: int,
                       entries: list[tuple[Fraction, int]]) -> PhasePolynomial:
    terms = []
    for coeff, k in entries:
        mono = Monomial(x=2 * k, p=7 - 2 * k, g=g_exp, lam=lam_exp,
                        mu=mu_base + 2 * k, hbar=-1)
        terms.append((mono, Coefficient(coeff * scale)))
    return PhasePolynomial(terms)


def printed_q5_reference() -> PhasePolynomial:
    """Fifth-order generator as printed in the reference tabulation.

    Kept verbatim for the reconciliation report only; the printed source is
    visibly corrupted at this order, so the engine output is authoritative.
    """
    first = _reference_bracket(-64, 1, 2, -12, [
        (Fraction(4, 7), 0), (Fraction(2), 1), (Fraction(2), 2), (Fraction(1, 2), 3),
    ])
    second = _reference_bracket(64, 3, 1, -14, [
        (Fraction(16, 7), 0), (Fraction(6), 1), (Fraction(16, 3), 2), (Fraction(7, 4), 3),
    ])
    third = _reference_bracket(-64, 5, 0, -16, [
        (Fraction(5, 3), 0), (Fraction(17, 6), 1), (Fraction(8, 3), 2), (Fraction(1), 3),
    ])
    return first + second + third


def reconcile_fifth_order(engine_q5: PhasePolynomial | None = None) -> list[dict]:
    """Monomial-by-monomial diff of the engine's full-g fifth-order generator
    against the printed reference values.

    Returns one record per monomial occurring on either side; disagreements
    are reported, never silently dropped.
    """
    if engine_q5 is None:
        engine_q5 = compute_q(2, FULL_G).term(2)
    reference = printed_q5_reference()
    monos = sorted(set(engine_q5._terms) | set(reference._terms), key=Monomial.as_tuple)
    records = []
    for m in monos:
        engine_c = engine_q5.coefficient(m)
        printed_c = reference.coefficient(m)
        records.append({
            "monomial": f"x^{m.x} p^{m.p} g^{m.g} lam^{m.lam} mu^{m.mu} hbar^{m.hbar}",
            "engine": str(engine_c),
            "printed": str(printed_c),
            "match": engine_c == printed_c,
        })
    return records
