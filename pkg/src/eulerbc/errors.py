"""Exception hierarchy shared by every module of the package."""


class EulerBCError(Exception):
    """Base class for all errors raised by :mod:`eulerbc`."""


class NonPhysicalState(EulerBCError, ValueError):
    """A state with non-positive density or pressure was produced or supplied.

    ``cell`` is set when the offending state belongs to a solver field.
    """

    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


class VacuumFormation(EulerBCError):
    """The wave structure connecting two states would contain vacuum.

    ``interface`` is set by the time-marching solver to the face index at
    which the failure happened (0 is the left boundary face).
    """

    def __init__(self, message, interface=None):
        super().__init__(message)
        self.interface = interface


class NoConvergence(EulerBCError):
    """An iterative root solve exceeded its iteration cap."""


class NoIntersection(EulerBCError):
    """A wave curve never meets the prescribed boundary manifold."""


class AmbiguousResolution(EulerBCError):
    """Several admissible boundary states exist and no branch rule picks one."""


class NoSupersonicBranch(EulerBCError):
    """The steady supersonic nozzle branch does not exist at this section."""


class NotConverged(EulerBCError):
    """A steady-state run hit its step cap. ``report`` holds the partial run."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
