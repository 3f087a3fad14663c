"""Shared builders and frozen reference polynomials for the test suite.

The frozen generators below were transcribed by hand from the reference
low-order results and double-checked against the closed-form general term;
they are the oracles the engine output is compared against.
"""

from __future__ import annotations

import random
from fractions import Fraction

from qgen import Coefficient, Monomial, PhasePolynomial


def build(pairs):
    """[(coeff_string_or_int, exponent_dict), ...] -> PhasePolynomial."""
    return PhasePolynomial(
        [(Monomial(**exps), Coefficient(Fraction(c))) for c, exps in pairs]
    )


def term(c, **exps):
    return PhasePolynomial.term(Fraction(c), **exps)


def q1_reference():
    """-(4 g / (mu^4 hbar)) (1/3 p^3 + 1/2 mu^2 p x^2)."""
    return build([
        ("-4/3", dict(p=3, g=1, mu=-4, hbar=-1)),
        ("-2", dict(x=2, p=1, g=1, mu=-2, hbar=-1)),
    ])


def q3_lam_g_reference():
    """-(4^2 lam g / (mu^8 hbar)) (2/5 p^5 + mu^2 p^3 x^2 + 1/2 mu^4 p x^4)."""
    return build([
        ("-32/5", dict(p=5, g=1, lam=1, mu=-8, hbar=-1)),
        ("-16", dict(x=2, p=3, g=1, lam=1, mu=-6, hbar=-1)),
        ("-8", dict(x=4, p=1, g=1, lam=1, mu=-4, hbar=-1)),
    ])


def q3_g3_reference():
    """+(4^2 g^3 / (mu^10 hbar)) (8/15 p^5 + 5/6 mu^2 p^3 x^2 + 1/2 mu^4 p x^4)."""
    return build([
        ("128/15", dict(p=5, g=3, mu=-10, hbar=-1)),
        ("40/3", dict(x=2, p=3, g=3, mu=-8, hbar=-1)),
        ("8", dict(x=4, p=1, g=3, mu=-6, hbar=-1)),
    ])


def q5_first_order_reference():
    """-(4^3 lam^2 g / (mu^12 hbar)) (4/7 p^7 + 2 mu^2 p^5 x^2 + 2 mu^4 p^3 x^4 + 1/2 mu^6 p x^6)."""
    return build([
        ("-256/7", dict(p=7, g=1, lam=2, mu=-12, hbar=-1)),
        ("-128", dict(x=2, p=5, g=1, lam=2, mu=-10, hbar=-1)),
        ("-128", dict(x=4, p=3, g=1, lam=2, mu=-8, hbar=-1)),
        ("-32", dict(x=6, p=1, g=1, lam=2, mu=-6, hbar=-1)),
    ])


def q7_reference():
    """-(4^4 lam^3 g / (mu^16 hbar)) (8/9 p^9 + 4 mu^2 p^7 x^2 + 6 mu^4 p^5 x^4
    + 10/3 mu^6 p^3 x^6 + 1/2 mu^8 p x^8)."""
    return build([
        ("-2048/9", dict(p=9, g=1, lam=3, mu=-16, hbar=-1)),
        ("-1024", dict(x=2, p=7, g=1, lam=3, mu=-14, hbar=-1)),
        ("-1536", dict(x=4, p=5, g=1, lam=3, mu=-12, hbar=-1)),
        ("-2560/3", dict(x=6, p=3, g=1, lam=3, mu=-10, hbar=-1)),
        ("-128", dict(x=8, p=1, g=1, lam=3, mu=-8, hbar=-1)),
    ])


def q9_reference():
    """-(4^5 lam^4 g / (mu^20 hbar)) (16/11 p^11 + 8 mu^2 p^9 x^2 + 16 mu^4 p^7 x^4
    + 14 mu^6 p^5 x^6 + 5 mu^8 p^3 x^8 + 1/2 mu^10 p x^10)."""
    return build([
        ("-16384/11", dict(p=11, g=1, lam=4, mu=-20, hbar=-1)),
        ("-8192", dict(x=2, p=9, g=1, lam=4, mu=-18, hbar=-1)),
        ("-16384", dict(x=4, p=7, g=1, lam=4, mu=-16, hbar=-1)),
        ("-14336", dict(x=6, p=5, g=1, lam=4, mu=-14, hbar=-1)),
        ("-5120", dict(x=8, p=3, g=1, lam=4, mu=-12, hbar=-1)),
        ("-512", dict(x=10, p=1, g=1, lam=4, mu=-10, hbar=-1)),
    ])


def random_polynomial(rng: random.Random, max_terms: int = 3, max_xp_degree: int = 8):
    """Random sparse polynomial with small rational coefficients and
    (x, p)-degree at most ``max_xp_degree``."""
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        x = rng.randint(0, max_xp_degree)
        p = rng.randint(0, max_xp_degree - x)
        mono = Monomial(
            x=x, p=p,
            g=rng.randint(0, 2), lam=rng.randint(0, 2),
            mu=rng.randint(-2, 2), hbar=rng.randint(-2, 2),
        )
        re = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        im = Fraction(rng.randint(-9, 9), rng.randint(1, 9)) if rng.random() < 0.3 else Fraction(0)
        terms.append((mono, Coefficient(re, im)))
    return PhasePolynomial(terms)
