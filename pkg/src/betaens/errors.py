"""Exception hierarchy shared by all betaens modules."""


class BetaEnsError(Exception):
    """Base class for every error raised by this package."""


class DomainError(BetaEnsError, ValueError):
    """Argument outside the domain where the requested quantity is defined."""


class BudgetError(BetaEnsError):
    """Requested computation exceeds a configured size guard."""


class SymmetryError(BetaEnsError, ValueError):
    """Operator requires a symmetric polynomial and got something else."""


class ConsistencyError(BetaEnsError, ArithmeticError):
    """An exact identity that must hold was violated (internal bug sentinel)."""


class ContourError(BetaEnsError, ArithmeticError):
    """Contour quadrature produced a non-negligible imaginary residue."""


class ConvergenceError(BetaEnsError, ArithmeticError):
    """Iterative numerical routine failed to converge."""
