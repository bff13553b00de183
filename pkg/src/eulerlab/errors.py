"""Exception hierarchy shared by every eulerlab module."""


class EulerLabError(Exception):
    """Base class for all library errors."""


class NonInvertible(EulerLabError):
    """Raised when inverting a lift that is only non-decreasing."""


class InconsistentCocycle(EulerLabError):
    def __init__(self, g1, g2, point, message=None):
        self.g1, self.g2, self.point = g1, g2, point
        super().__init__(message or
                         f"cocycle identity fails at ({g1}, {g2}, {point})")


class NotAHomomorphism(EulerLabError):
    pass


class NotACocycle(EulerLabError):
    pass


class NotAPrimitive(EulerLabError):
    pass


class NotALift(EulerLabError):
    pass


class NotEquivariant(EulerLabError):
    pass


class MixedAtomicity(EulerLabError):
    """Some slices of a measure family carry atoms and others do not."""


class VerificationFailed(EulerLabError):
    """An internal postcondition failed; indicates a bug, not bad input."""


class UnsupportedDegree(EulerLabError):
    pass


class MalformedInput(EulerLabError):
    def __init__(self, path, message):
        self.path, self.message = path, message
        super().__init__(f"{path}: {message}")
