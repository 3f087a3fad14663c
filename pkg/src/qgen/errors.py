"""Exception types shared across the package."""


class DomainError(ValueError):
    """A numeric argument lies outside the mathematical domain of an operation."""


class DependencyError(RuntimeError):
    """A generator of lower order is required but has not been computed."""

    def __init__(self, missing_order: int):
        self.missing_order = missing_order
        super().__init__(
            f"generator of order {missing_order} is required but not present in the series"
        )


class NoAdmissibleSolutionError(ValueError):
    """The homological equation has no solution with the required parities.

    ``residual`` holds the part of the right-hand side that is not in the
    image of the oscillator bracket on even-x/odd-p polynomials.
    """

    def __init__(self, residual):
        self.residual = residual
        super().__init__(
            "right-hand side is not in the image of the oscillator bracket; "
            f"residual: {residual}"
        )


class OutsideConvergenceRegionError(DomainError):
    """The phase-space point lies outside the parabolic convergence region."""

    def __init__(self, margin: float):
        self.margin = margin
        super().__init__(
            f"point lies outside the convergence region (margin = {margin:.6g})"
        )
