"""Text, JSON and LaTeX rendering of generator series.

The LaTeX renderer reproduces the conventional factored layout: per order,
one bracket per coupling sector (g, lam), with the prefactor
sign * 4^(n+1) * g^a lam^b / (mu^|m| hbar) pulled out and the lowest mu power
absorbed into it.
"""

from __future__ import annotations

from fractions import Fraction

from .engine import QSeries
from .poly import Monomial, PhasePolynomial


def qseries_text(series: QSeries) -> str:
    return "\n".join(f"Q_{2 * n + 1} = {q.to_text()}" for n, q in enumerate(series))


def qseries_json_obj(series: QSeries) -> dict:
    return {
        "subcommand": "derive",
        "mode": series.mode,
        "max_n": series.max_n,
        "orders": [
            {
                "n": n,
                "epsilon_order": 2 * n + 1,
                "terms": q.to_json_terms(),
            }
            for n, q in enumerate(series)
        ],
    }


def qseries_latex(series: QSeries) -> str:
    return "\n".join(_order_latex(n, q) for n, q in enumerate(series))


def _power(symbol: str, exp: int) -> str:
    if exp == 0:
        return ""
    if exp == 1:
        return symbol
    return f"{symbol}^{{{exp}}}"


def _fraction_latex(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return rf"\frac{{{q.numerator}}}{{{q.denominator}}}"


def _order_latex(n: int, poly: PhasePolynomial) -> str:
    label = f"Q_{{{2 * n + 1}}}"
    if not poly:
        return f"{label} = 0"
    sectors = sorted({(m.g, m.lam) for m, _ in poly.items()})
    pieces = []
    for g_exp, lam_exp in sectors:
        sub = poly.filtered(lambda m, ge=g_exp, le=lam_exp: m.g == ge and m.lam == le)
        piece = _sector_latex(n, g_exp, lam_exp, sub)
        if piece is None:
            return f"{label} = {poly.to_latex()}"
        pieces.append(piece)
    body = pieces[0]
    for piece in pieces[1:]:
        body += piece if piece.startswith("-") else "+" + piece
    return f"{label} = {body}"


def _sector_latex(n: int, g_exp: int, lam_exp: int, sub: PhasePolynomial) -> str | None:
    items = sub.items()
    if any(c.im or m.hbar != -1 for m, c in items):
        return None
    mu_min = min(m.mu for m, _ in items)
    if mu_min >= 0:
        return None
    scale = Fraction(4) ** (n + 1)
    lead_coeff = max(items, key=lambda mc: mc[0].p)[1]
    sign = -1 if lead_coeff.re < 0 else 1

    entries = []
    for m, c in items:  # already in ascending x order
        q = c.re / (sign * scale)
        factors = _power(r"\mu", m.mu - mu_min) + _power("p", m.p) + _power("x", m.x)
        mag = _fraction_latex(abs(q))
        if mag == "1" and factors:
            mag = ""
        entries.append(("-" if q < 0 else "+") + mag + factors)
    bracket = entries[0].lstrip("+") if entries[0].startswith("+") else entries[0]
    bracket += "".join(entries[1:])

    four = "4" if n == 0 else f"4^{{{n + 1}}}"
    numerator = four + _power("g", g_exp) + _power(r"\lambda", lam_exp)
    prefactor = rf"\frac{{{numerator}}}{{\mu^{{{-mu_min}}}\hbar}}"
    return ("-" if sign < 0 else "") + prefactor + r"\Bigl[" + bracket + r"\Bigr]"
