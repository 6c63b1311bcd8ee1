"""Exceptions shared by the level, field and report modules."""


class DomainError(ValueError):
    """Raised when an input lies outside the domain where a formula applies."""
    pass


class ConvergenceError(ArithmeticError):
    """Raised when the fixed-point level iteration does not converge."""

    def __init__(self, k: float, iterations: int, residual: float):
        self.k = k
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"no convergence after {iterations} iterations (k={k!r}, relative residual={residual:.3e})"
        )


class SweepSpecError(DomainError):
    """Raised for malformed sweep grids (z range, n_max)."""
    pass
