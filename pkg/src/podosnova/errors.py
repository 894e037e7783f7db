"""Kernel error hierarchy.

Every domain failure raises a subclass of KernelError so callers (CLI,
HTTP service) can map the class name to a diagnostic without parsing
messages.
"""


class KernelError(Exception):
    """Base class for all kernel-level failures."""

    @property
    def name(self) -> str:
        return type(self).__name__


# axis grid
class UnknownAxis(KernelError):
    pass


class DanglingBaseAxis(KernelError):
    pass


class CountOutOfRange(KernelError):
    pass


class LastAxisGroup(KernelError):
    pass


class PlanKindLocked(KernelError):
    pass


# placement
class PlanKindForbidden(KernelError):
    pass


class UnknownMark(KernelError):
    pass


class NonRectangularRun(KernelError):
    pass


class NonAxisAlignedSegment(KernelError):
    pass


class EmptyPolyline(KernelError):
    pass


class OutOfPartition(KernelError):
    pass


class OverlapsOpening(KernelError):
    pass


class UnknownEntity(KernelError):
    pass


class SpanMismatch(KernelError):
    pass


class NotCollinear(KernelError):
    pass


class UnknownColumn(KernelError):
    pass


class UnknownFooting(KernelError):
    pass


class UnbearableDirection(KernelError):
    pass


# drafting
class TooFewAxes(KernelError):
    pass


# derivation / sections
class WrongKind(KernelError):
    pass


class DanglingPlanRef(KernelError):
    pass


class RotateOnPolyline(KernelError):
    pass


# serialization
class SchemaError(KernelError):
    def __init__(self, message: str, path: str = ""):
        super().__init__(message if not path else f"{path}: {message}")
        self.path = path


class IntegrityError(KernelError):
    def __init__(self, message: str, entity_id: int | None = None):
        super().__init__(message)
        self.entity_id = entity_id


class ParseError(KernelError):
    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class BadMagic(KernelError):
    pass


class VersionUnsupported(KernelError):
    pass


class CorruptBody(KernelError):
    pass
