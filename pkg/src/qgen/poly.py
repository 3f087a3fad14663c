"""Exact sparse polynomials on phase space with symbolic model parameters.

Values are linear combinations of monomials ``x^i p^j g^a lam^b mu^c hbar^d``
with Gaussian-rational coefficients.  The exponents of x, p, g and lam are
non-negative; mu and hbar may carry negative powers.  All arithmetic is exact;
floating point enters only through :func:`eval_numeric`.

The classical bracket used throughout is the antisymmetric one,

    {F, G} = dF/dx * dG/dp - dF/dp * dG/dx,

which on monomials reduces to

    {p^a x^b, p^c x^d} = (b c - a d) p^(a+c-1) x^(b+d-1),

with parameter exponents passing through additively.  Some sources print this
relation with the first term typographically duplicated; the antisymmetric
form above is the only one consistent with the monomial rule, and is what this
module implements.  The leading semiclassical commutator is i*hbar times the
classical bracket.

All values are immutable after construction and all operations are pure, so
they can be shared freely between concurrent execution contexts.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Iterable, Mapping, NamedTuple, Union

from .errors import DomainError
from .params import EvalParams, PhasePoint

Scalar = Union[int, Fraction, "Coefficient"]


@dataclass(frozen=True, slots=True)
class Coefficient:
    """An exact Gaussian rational re + im*i.

    Both parts are ``fractions.Fraction`` values, hence always stored reduced
    with positive denominator.
    """

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        if not isinstance(self.re, Fraction):
            object.__setattr__(self, "re", Fraction(self.re))
        if not isinstance(self.im, Fraction):
            object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, value: Scalar) -> "Coefficient":
        if isinstance(value, Coefficient):
            return value
        return cls(Fraction(value))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __add__(self, other: Scalar) -> "Coefficient":
        o = Coefficient.coerce(other)
        return Coefficient(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "Coefficient":
        return Coefficient(-self.re, -self.im)

    def __sub__(self, other: Scalar) -> "Coefficient":
        return self + (-Coefficient.coerce(other))

    def __mul__(self, other: Scalar) -> "Coefficient":
        o = Coefficient.coerce(other)
        # Pure-real and pure-imaginary products dominate this algebra; the
        # fast paths skip the vanishing cross terms.
        if not self.im:
            if not o.im:
                return Coefficient(self.re * o.re)
            if not o.re:
                return Coefficient(_FRACTION_ZERO, self.re * o.im)
        elif not self.re:
            if not o.im:
                return Coefficient(_FRACTION_ZERO, self.im * o.re)
            if not o.re:
                return Coefficient(-(self.im * o.im))
        return Coefficient(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def times_i(self) -> "Coefficient":
        """Multiply by the imaginary unit."""
        return Coefficient(-self.im, self.re)

    def div_i(self) -> "Coefficient":
        """Divide by the imaginary unit (multiply by -i)."""
        return Coefficient(self.im, -self.re)

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


_FRACTION_ZERO = Fraction(0)

ZERO = Coefficient()
ONE = Coefficient(Fraction(1))
I = Coefficient(Fraction(0), Fraction(1))


@dataclass(frozen=True, slots=True, order=True)
class Monomial:
    """Exponent record over the six symbols.

    The total order on monomials is lexicographic over the field tuple
    (x, p, g, lam, mu, hbar); it fixes the term order of every serialization.
    """

    x: int = 0
    p: int = 0
    g: int = 0
    lam: int = 0
    mu: int = 0
    hbar: int = 0

    def __post_init__(self):
        if self.x < 0 or self.p < 0 or self.g < 0 or self.lam < 0:
            raise ValueError("x, p, g and lam exponents must be non-negative")

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(
            self.x + other.x,
            self.p + other.p,
            self.g + other.g,
            self.lam + other.lam,
            self.mu + other.mu,
            self.hbar + other.hbar,
        )

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.x, self.p, self.g, self.lam, self.mu, self.hbar)


class PhasePolynomial:
    """Canonical sparse sum of Monomial -> Coefficient terms.

    Zero coefficients are never stored, so equal polynomials hold identical
    term maps and serialize byte-identically.  Instances are immutable; all
    arithmetic returns new values.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Scalar] | Iterable[tuple[Monomial, Scalar]] = ()):
        acc: dict[Monomial, Coefficient] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, coeff in items:
            _accumulate(acc, mono, Coefficient.coerce(coeff))
        self._terms = acc

    @classmethod
    def _raw(cls, terms: dict[Monomial, Coefficient]) -> "PhasePolynomial":
        poly = object.__new__(cls)
        poly._terms = terms
        return poly

    @classmethod
    def zero(cls) -> "PhasePolynomial":
        return cls._raw({})

    @classmethod
    def term(cls, coeff: Scalar, *, x: int = 0, p: int = 0, g: int = 0,
             lam: int = 0, mu: int = 0, hbar: int = 0) -> "PhasePolynomial":
        """Single-term polynomial ``coeff * x^x p^p g^g lam^lam mu^mu hbar^hbar``."""
        c = Coefficient.coerce(coeff)
        if not c:
            return cls._raw({})
        return cls._raw({Monomial(x, p, g, lam, mu, hbar): c})

    def items(self) -> list[tuple[Monomial, Coefficient]]:
        """Terms in the documented monomial order."""
        return sorted(self._terms.items(), key=lambda kv: kv[0].as_tuple())

    def coefficient(self, mono: Monomial) -> Coefficient:
        return self._terms.get(mono, ZERO)

    def filtered(self, keep: Callable[[Monomial], bool]) -> "PhasePolynomial":
        """Polynomial with only the terms whose monomial satisfies ``keep``."""
        return PhasePolynomial._raw({m: c for m, c in self._terms.items() if keep(m)})

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PhasePolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __add__(self, other: "PhasePolynomial") -> "PhasePolynomial":
        if not isinstance(other, PhasePolynomial):
            return NotImplemented
        if not self._terms:
            return other
        if not other._terms:
            return self
        acc = dict(self._terms)
        for mono, coeff in other._terms.items():
            _accumulate(acc, mono, coeff)
        return PhasePolynomial._raw(acc)

    def __neg__(self) -> "PhasePolynomial":
        return PhasePolynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "PhasePolynomial") -> "PhasePolynomial":
        if not isinstance(other, PhasePolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union["PhasePolynomial", Scalar]) -> "PhasePolynomial":
        if isinstance(other, PhasePolynomial):
            acc: dict[Monomial, Coefficient] = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    _accumulate(acc, m1 * m2, c1 * c2)
            return PhasePolynomial._raw(acc)
        if isinstance(other, (int, Fraction, Coefficient)):
            c0 = Coefficient.coerce(other)
            if not c0:
                return PhasePolynomial._raw({})
            # Gaussian rationals form a field, so no product below is zero.
            return PhasePolynomial._raw({m: c * c0 for m, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"PhasePolynomial({self.to_text()})"

    def to_text(self) -> str:
        """Canonical plain-text form, terms joined by ' + ' in monomial order."""
        if not self._terms:
            return "0"
        parts = [
            f"{c} * x^{m.x} p^{m.p} g^{m.g} lam^{m.lam} mu^{m.mu} hbar^{m.hbar}"
            for m, c in self.items()
        ]
        return " + ".join(parts)

    def to_json_terms(self) -> list[dict]:
        """JSON-ready list of term records with exact string coefficients."""
        return [
            {
                "coeff_re": str(c.re),
                "coeff_im": str(c.im),
                "exponents": {
                    "x": m.x, "p": m.p, "g": m.g,
                    "lam": m.lam, "mu": m.mu, "hbar": m.hbar,
                },
            }
            for m, c in self.items()
        ]

    def to_latex(self) -> str:
        """Term-by-term LaTeX form in monomial order."""
        if not self._terms:
            return "0"
        rendered = []
        for m, c in self.items():
            body = _term_latex(m, c)
            if rendered and not body.startswith("-"):
                rendered.append("+" + body)
            else:
                rendered.append(body)
        return " ".join(rendered)


def _accumulate(acc: dict[Monomial, Coefficient], mono: Monomial, coeff: Coefficient) -> None:
    if not coeff:
        return
    prev = acc.get(mono)
    if prev is None:
        acc[mono] = coeff
        return
    total = prev + coeff
    if total:
        acc[mono] = total
    else:
        del acc[mono]


_LATEX_SYMBOLS = (("x", "x"), ("p", "p"), ("g", "g"),
                  ("lam", r"\lambda"), ("mu", r"\mu"), ("hbar", r"\hbar"))


def _fraction_latex(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return rf"\frac{{{q.numerator}}}{{{q.denominator}}}"


def _term_latex(m: Monomial, c: Coefficient) -> str:
    factors = []
    for field, symbol in _LATEX_SYMBOLS:
        exp = getattr(m, field)
        if exp == 0:
            continue
        factors.append(symbol if exp == 1 else f"{symbol}^{{{exp}}}")
    body = " ".join(factors)
    if not c.im:
        mag = _fraction_latex(abs(c.re))
        sign = "-" if c.re < 0 else ""
        if body and mag == "1":
            mag = ""
        return f"{sign}{mag}{body}" if body else f"{sign}{mag}"
    if not c.re:
        mag = _fraction_latex(abs(c.im))
        sign = "-" if c.im < 0 else ""
        if mag == "1":
            mag = ""
        return f"{sign}{mag}i{(' ' + body) if body else ''}".rstrip()
    inner = f"{_fraction_latex(c.re)} {'+' if c.im > 0 else '-'} {_fraction_latex(abs(c.im))}i"
    return rf"\left({inner}\right){body}"


class ParityFlags(NamedTuple):
    even_in_x: bool
    odd_in_p: bool


def parity_flags(poly: PhasePolynomial) -> ParityFlags:
    """(every term has even x power, every term has odd p power).

    The zero polynomial vacuously reports (True, True).
    """
    return ParityFlags(
        all(m.x % 2 == 0 for m in poly._terms),
        all(m.p % 2 == 1 for m in poly._terms),
    )


def space_reflection(poly: PhasePolynomial) -> PhasePolynomial:
    """Parity conjugation x -> -x, p -> -p."""
    return PhasePolynomial._raw({
        m: (-c if (m.x + m.p) % 2 else c) for m, c in poly._terms.items()
    })


def poisson_bracket(f: PhasePolynomial, g: PhasePolynomial) -> PhasePolynomial:
    """Classical bracket, extended bilinearly from the monomial rule.

    {p^a x^b, p^c x^d} = (b c - a d) p^(a+c-1) x^(b+d-1); exponents of g, lam,
    mu and hbar add through.  Whenever the rule could produce a negative x or
    p exponent the integer factor b c - a d vanishes, so no such term arises
    (the Monomial constructor asserts this).
    """
    acc: dict[Monomial, Coefficient] = {}
    for m1, c1 in f._terms.items():
        for m2, c2 in g._terms.items():
            factor = m1.x * m2.p - m1.p * m2.x
            if factor == 0:
                continue
            mono = Monomial(
                m1.x + m2.x - 1,
                m1.p + m2.p - 1,
                m1.g + m2.g,
                m1.lam + m2.lam,
                m1.mu + m2.mu,
                m1.hbar + m2.hbar,
            )
            _accumulate(acc, mono, c1 * c2 * factor)
    return PhasePolynomial._raw(acc)


def commutator_leading(f: PhasePolynomial, g: PhasePolynomial) -> PhasePolynomial:
    """Leading semiclassical commutator [f, g] = i*hbar*{f, g}."""
    bracket = poisson_bracket(f, g)
    return PhasePolynomial._raw({
        replace(m, hbar=m.hbar + 1): c.times_i() for m, c in bracket._terms.items()
    })


def eval_numeric(poly: PhasePolynomial, params: EvalParams, point: PhasePoint) -> complex:
    """Substitute numeric values; exact coefficients convert to float last.

    Raises DomainError if a symbol with a negative exponent evaluates to zero.
    """
    total = 0j
    for m, c in poly._terms.items():
        base = 1.0
        for value, exp, name in (
            (point.x, m.x, "x"), (point.p, m.p, "p"),
            (params.g, m.g, "g"), (params.lam, m.lam, "lam"),
            (params.mu, m.mu, "mu"), (params.hbar, m.hbar, "hbar"),
        ):
            if exp == 0:
                continue
            if value == 0.0 and exp < 0:
                raise DomainError(f"{name} = 0 with negative exponent {exp}")
            base *= value ** exp
        total += base * c.to_complex()
    return total


def diff_terms(a: PhasePolynomial, b: PhasePolynomial) -> list[tuple[Monomial, Coefficient, Coefficient]]:
    """Monomials on which two polynomials disagree, with both coefficients.

    Sorted in the documented monomial order; empty iff the polynomials are equal.
    """
    monos = set(a._terms) | set(b._terms)
    out = []
    for m in sorted(monos, key=Monomial.as_tuple):
        ca, cb = a.coefficient(m), b.coefficient(m)
        if ca != cb:
            out.append((m, ca, cb))
    return out
