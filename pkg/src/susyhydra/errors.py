"""Exception hierarchy for susyhydra."""


class SusyHydraError(Exception):
    """Base class for all package errors."""


class DomainError(SusyHydraError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Gamma-type function evaluated at a non-positive integer."""


class ConvergenceError(SusyHydraError, ArithmeticError):
    """No evaluation regime reached the requested accuracy.

    Carries the best achieved relative error estimate in ``achieved``.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class GridMismatchError(SusyHydraError, ValueError):
    """Two sampled states do not share the same radial grid."""


class TailDivergenceError(SusyHydraError, ArithmeticError):
    """The fitted large-r tail of an integrand does not decay."""


class InsufficientRangeError(SusyHydraError, ValueError):
    """The grid does not span enough decades for a reliable fit."""


class SingularBetaError(SusyHydraError, ArithmeticError):
    """The seed solution u has a zero inside the working interval."""


class SingularEtaError(SusyHydraError, ArithmeticError):
    """omega vanishes in the interior, contradicting its monotonicity."""


class DegenerateError(SusyHydraError, ValueError):
    """The transform degenerates (e.g. Im(epsilon) = 0 in a 2-susy build)."""


class UndeterminedError(SusyHydraError):
    """The zero scan could not certify the C0 membership verdict."""


class CaseMismatchError(SusyHydraError, ValueError):
    """Parameters match no branch of the requested asymptotic formula."""


class KappaCollisionError(SusyHydraError, ValueError):
    """Mapped state requested at the factorization energy itself.

    The Wronskian construction degenerates for kappa = k; use the kernel
    state (1/u) for the eigenvalue epsilon instead.
    """


class DefectError(SusyHydraError, ArithmeticError):
    """Two formulas that must agree numerically disagreed beyond tolerance."""
