"""Numeric parameter records shared by evaluation and summation routines."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True, slots=True)
class EvalParams:
    """Numeric values of the model parameters.

    ``lam`` is the quartic coupling (lambda); it must be non-negative and is
    permitted to be exactly zero only on code paths documented to handle that
    limit.  ``mu``, ``epsilon`` and ``hbar`` must be strictly positive.
    """

    g: float
    lam: float
    mu: float = 1.0
    epsilon: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("g", "lam", "mu", "epsilon", "hbar"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.lam < 0:
            raise DomainError(f"lam must be >= 0, got {self.lam}")
        if self.mu <= 0:
            raise DomainError(f"mu must be > 0, got {self.mu}")
        if self.epsilon <= 0:
            raise DomainError(f"epsilon must be > 0, got {self.epsilon}")
        if self.hbar <= 0:
            raise DomainError(f"hbar must be > 0, got {self.hbar}")


@dataclass(frozen=True, slots=True)
class PhasePoint:
    """A point (x, p) of the classical phase space."""

    x: float
    p: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "p", float(self.p))


@dataclass(frozen=True, slots=True)
class AlphaBeta:
    """The derived summation variables alpha = mu^2 x^2 / (2 p^2) and
    beta = 8 eps^2 lam p^2 / mu^4."""

    alpha: float
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        if self.alpha < 0 or self.beta < 0:
            raise DomainError("alpha and beta must be non-negative")
