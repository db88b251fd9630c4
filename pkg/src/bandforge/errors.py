"""Exception hierarchy shared by all bandforge modules."""


class BandforgeError(Exception):
    """Base class for every error raised by the package."""


class InvalidGeometry(BandforgeError, ValueError):
    pass


class LengthMismatch(InvalidGeometry):
    pass


class InvalidParams(BandforgeError, ValueError):
    pass


class InternalSymmetryError(BandforgeError, RuntimeError):
    """Deficits that should agree by symmetry do not; signals a construction bug."""


class SymmetryViolation(BandforgeError, RuntimeError):
    """Verdicts inside one symmetry class disagree."""


class Infeasible(BandforgeError, ValueError):
    def __init__(self, target, message=None):
        self.target = target
        super().__init__(message or f"no sign change in bracket for target {target!r}")


class CellError(BandforgeError):
    """Geometry failure while evaluating one (cut, attachment) cell."""

    def __init__(self, cut, attach, cause):
        self.cut = cut
        self.attach = attach
        self.cause = cause
        super().__init__(f"cell (cut={cut}, attach={attach}): {cause}")


class DegenerateHexagonWarning(UserWarning):
    pass
