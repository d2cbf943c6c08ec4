"""Exception hierarchy shared across the package."""


class InfopowerError(Exception):
    """Base class for all errors raised by this package."""


class InvalidOperator(InfopowerError):
    """Matrix is not square, not Hermitian, or otherwise malformed."""


class NotPositive(InfopowerError):
    """Operator has a negative eigenvalue beyond tolerance."""


class InvalidState(InfopowerError):
    """Vector is not normalized or has the wrong shape."""


class InvalidEnsemble(InfopowerError):
    """Collection of states violates the ensemble invariants."""


class InvalidPovm(InfopowerError):
    """Collection of effects violates the POVM invariants."""


class NotSic(InfopowerError):
    """Operator set does not satisfy the SIC defining conditions."""


class InvalidInput(InfopowerError):
    """Generic malformed input (mixed dimensions, empty lists, ...)."""


class DimMismatch(InfopowerError):
    """Objects live on Hilbert spaces of different dimension."""


class InvalidDistribution(InfopowerError):
    """Probability vector has negative entries or does not sum to one."""


class InvalidDimension(InfopowerError):
    """Dimension argument outside the supported range."""
