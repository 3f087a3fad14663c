"""Exact algebra: coefficients, monomials, brackets, evaluation, serialization."""

import json
from fractions import Fraction

import pytest

from qgen import (
    Coefficient,
    DomainError,
    EvalParams,
    Monomial,
    PhasePoint,
    PhasePolynomial,
    commutator_leading,
    diff_terms,
    eval_numeric,
    oscillator_h0,
    cubic_h1,
    parity_flags,
    poisson_bracket,
    space_reflection,
)
from helpers import build, q1_reference, term


def test_coefficient_reduction_and_equality():
    assert Coefficient(Fraction(2, 4)) == Coefficient(Fraction(1, 2))
    assert Coefficient(Fraction(1, -3)) == Coefficient(Fraction(-1, 3))
    assert not Coefficient()
    assert Coefficient(0, 1)


def test_coefficient_arithmetic():
    i = Coefficient(0, 1)
    assert i * i == Coefficient(-1)
    assert i.times_i() == Coefficient(-1)
    assert i.div_i() == Coefficient(1)
    mixed = Coefficient(Fraction(1, 2), Fraction(-2, 3))
    assert mixed * Coefficient(1) == mixed
    assert mixed + (-mixed) == Coefficient()
    assert (mixed * mixed) == Coefficient(
        Fraction(1, 4) - Fraction(4, 9), 2 * Fraction(1, 2) * Fraction(-2, 3)
    )


def test_coefficient_str_forms():
    assert str(Coefficient(Fraction(-4, 3))) == "-4/3"
    assert str(Coefficient(0, 2)) == "2i"
    assert str(Coefficient(Fraction(1, 2), Fraction(-2, 3))) == "(1/2-2/3i)"


def test_monomial_ordering_is_lexicographic():
    monos = [Monomial(x=2, p=1), Monomial(x=0, p=3), Monomial(x=0, p=3, g=1),
             Monomial(x=2, p=0, mu=-2)]
    ordered = sorted(monos)
    assert ordered == [Monomial(x=0, p=3), Monomial(x=0, p=3, g=1),
                       Monomial(x=2, p=0, mu=-2), Monomial(x=2, p=1)]


def test_monomial_rejects_negative_phase_exponents():
    with pytest.raises(ValueError):
        Monomial(x=-1)
    with pytest.raises(ValueError):
        Monomial(g=-2)
    Monomial(mu=-4, hbar=-1)  # parameter symbols may be negative


def test_additive_inverse_cancels():
    p3 = term(1, p=3)
    assert not (p3 + (-p3))
    assert (p3 + (-p3)) == PhasePolynomial.zero()


def test_add_collects_like_terms():
    assert term(1, x=2) + term(1, x=2) == term(2, x=2)


def test_hamiltonian_assembly():
    h = term(Fraction(1, 2), p=2) + term(Fraction(1, 2), x=2, mu=2) \
        + PhasePolynomial.term(Coefficient(0, 1), x=3, g=1)
    assert h == oscillator_h0() + cubic_h1()
    assert len(h) == 3


def test_mul_simple_and_imaginary_square():
    assert term(1, x=2) * term(1, p=3) == term(1, x=2, p=3)
    igx3 = PhasePolynomial.term(Coefficient(0, 1), x=3, g=1)
    assert igx3 * igx3 == term(-1, x=6, g=2)


def test_mul_exponent_addition_with_parameters():
    a = term(1, p=1, mu=-4, hbar=-1)
    b = term(1, x=2, mu=2)
    assert a * b == term(1, x=2, p=1, mu=-2, hbar=-1)


def test_bracket_monomial_rule():
    assert poisson_bracket(term(1, p=3), term(1, x=3)) == term(-9, x=2, p=2)


def test_bracket_antisymmetry_on_self():
    f = term(Fraction(1, 3), p=3) + term(2, x=2, p=1, mu=2)
    assert not poisson_bracket(f, f)


def test_bracket_oscillator_action():
    f = term(Fraction(1, 3), p=3) + term(Fraction(1, 2), x=2, p=1, mu=2)
    assert poisson_bracket(f, oscillator_h0()) == term(Fraction(-1, 2), x=3, mu=4)


def test_commutator_is_i_hbar_times_bracket():
    x = term(1, x=1)
    p = term(1, p=1)
    assert commutator_leading(x, p) == PhasePolynomial.term(Coefficient(0, 1), hbar=1)
    assert not commutator_leading(oscillator_h0(), oscillator_h0())


def test_commutator_q1_with_h0_gives_cubic():
    assert commutator_leading(q1_reference(), oscillator_h0()) == 2 * cubic_h1()


def test_parity_flags():
    assert parity_flags(q1_reference()) == (True, True)
    assert parity_flags(term(1, x=3)) == (False, False)
    assert parity_flags(PhasePolynomial.zero()) == (True, True)


def test_space_reflection():
    assert space_reflection(cubic_h1()) == -cubic_h1()
    assert space_reflection(oscillator_h0()) == oscillator_h0()


def test_eval_numeric_plain():
    params = EvalParams(g=1.0, lam=0.0)
    value = eval_numeric(term(1, x=2, p=1), params, PhasePoint(2.0, 3.0))
    assert value == 12.0


def test_eval_numeric_q1_at_origin_momentum():
    params = EvalParams(g=1.0, lam=0.0, mu=1.0, hbar=1.0)
    value = eval_numeric(q1_reference(), params, PhasePoint(0.0, 1.0))
    assert value.imag == 0.0
    assert abs(value.real - (-4.0 / 3.0)) < 1e-15


def test_eval_numeric_imaginary_term():
    params = EvalParams(g=2.0, lam=0.0)
    value = eval_numeric(PhasePolynomial.term(Coefficient(0, 1), x=3, g=1),
                         params, PhasePoint(1.0, 0.0))
    assert value == 2j


def test_eval_params_validation():
    with pytest.raises(DomainError):
        EvalParams(g=1.0, lam=-0.1)
    with pytest.raises(DomainError):
        EvalParams(g=1.0, lam=0.1, mu=0.0)
    with pytest.raises(DomainError):
        EvalParams(g=1.0, lam=0.1, hbar=0.0)
    with pytest.raises(DomainError):
        EvalParams(g=float("inf"), lam=0.1)


def test_text_serialization_is_canonical():
    a = term(1, x=2) + term(Fraction(-4, 3), p=3, g=1, mu=-4, hbar=-1)
    b = term(Fraction(-4, 3), p=3, g=1, mu=-4, hbar=-1) + term(Fraction(1, 2), x=2) \
        + term(Fraction(1, 2), x=2)
    assert a == b
    assert a.to_text() == b.to_text()
    assert a.to_text() == ("-4/3 * x^0 p^3 g^1 lam^0 mu^-4 hbar^-1"
                           " + 1 * x^2 p^0 g^0 lam^0 mu^0 hbar^0")
    assert PhasePolynomial.zero().to_text() == "0"


def test_json_terms_round_shape():
    records = q1_reference().to_json_terms()
    assert records == [
        {"coeff_re": "-4/3", "coeff_im": "0",
         "exponents": {"x": 0, "p": 3, "g": 1, "lam": 0, "mu": -4, "hbar": -1}},
        {"coeff_re": "-2", "coeff_im": "0",
         "exponents": {"x": 2, "p": 1, "g": 1, "lam": 0, "mu": -2, "hbar": -1}},
    ]
    json.dumps(records)


def test_latex_smoke():
    text = q1_reference().to_latex()
    assert r"\frac{4}{3}" in text
    assert r"\mu^{-4}" in text and r"\hbar^{-1}" in text
    assert cubic_h1().to_latex() == "i x^{3} g"
    assert PhasePolynomial.zero().to_latex() == "0"


def test_no_zero_coefficients_survive_operations():
    f = term(1, p=2) + term(-1, p=2) + term(3, x=1)
    assert all(c for _, c in f.items())
    assert len(f) == 1


def test_diff_terms_names_disagreements():
    a = q1_reference()
    b = build([("-1/2", dict(p=3, g=1, mu=-4, hbar=-1)),
               ("-2", dict(x=2, p=1, g=1, mu=-2, hbar=-1))])
    diffs = diff_terms(a, b)
    assert len(diffs) == 1
    mono, ca, cb = diffs[0]
    assert mono == Monomial(p=3, g=1, mu=-4, hbar=-1)
    assert (ca, cb) == (Coefficient(Fraction(-4, 3)), Coefficient(Fraction(-1, 2)))
    assert diff_terms(a, a) == []
