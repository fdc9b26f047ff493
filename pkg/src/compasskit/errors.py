"""Exception hierarchy shared by every compasskit module."""


class GeometryError(ValueError):
    """Base class for geometric and construction failures."""


# kernel
class InvalidGeometry(GeometryError):
    pass


class ConcentricIdentical(GeometryError):
    pass


class Parallel(GeometryError):
    pass


class ZeroVector(GeometryError):
    pass


class DegenerateInput(GeometryError):
    pass


# construction engine
class ConstructionError(GeometryError):
    """An error attached to a particular step of a construction program."""

    def __init__(self, step_id, message):
        super().__init__(f"step {step_id!r}: {message}")
        self.step_id = step_id


class BranchUnavailable(ConstructionError):
    pass


class StepFailure(ConstructionError):
    def __init__(self, step_id, cause):
        super().__init__(step_id, f"{type(cause).__name__}: {cause}")
        self.cause = cause


class ValidationError(ValueError):
    def __init__(self, message, line=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


class UnknownMacro(ValidationError):
    pass


class ParseError(ValueError):
    def __init__(self, line, column, message, token=""):
        super().__init__(f"{line}:{column}: {message} (at {token!r})")
        self.line = line
        self.column = column
        self.message = message
        self.token = token


# segment division
class DegenerateSegment(GeometryError):
    pass


class StepRadiusTooSmall(GeometryError):
    pass


# gothic
class NoInscribedCircle(GeometryError):
    pass


class UnequalRadii(GeometryError):
    pass


class DegenerateFigure(GeometryError):
    pass


class DomainError(GeometryError):
    pass


# angle chain
class ConstraintViolated(GeometryError):
    pass


class IndexOutOfRange(GeometryError):
    pass


class OutOfRange(GeometryError):
    pass


class RadiusOutOfRange(GeometryError):
    pass


class TargetOutOfInterval(GeometryError):
    pass


class Infeasible(GeometryError):
    pass


# rendering
class EmptyTrace(ValueError):
    pass
