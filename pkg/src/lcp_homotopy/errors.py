"""Exception hierarchy shared by the solver modules."""


class LcpError(Exception):
    """Base class for all errors raised by this package."""


class SingularMatrixError(LcpError):
    """A pivot fell below the relative singularity tolerance during LU."""


class RankDeficientError(LcpError):
    """Effective row rank of a rectangular Jacobian is below its row count."""


class NotSymmetricError(LcpError):
    pass


class NoFeasiblePointError(LcpError):
    """No strictly feasible point was found on the scan lattice."""


class TooLargeError(LcpError):
    """Problem size exceeds an enumeration guard."""


class InstanceError(LcpError, ValueError):
    """Malformed or inconsistent instance data."""
