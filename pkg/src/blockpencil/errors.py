"""Exception hierarchy shared by the package."""


class BlockPencilError(Exception):
    """Base class for all errors raised by blockpencil."""


class FieldError(BlockPencilError, ValueError):
    """Invalid field parameters (non-prime characteristic, bad modulus, ...)."""


class FieldMismatchError(BlockPencilError, ValueError):
    """An object does not belong to the field it is used with."""


class SizeBoundError(BlockPencilError):
    """A configured size bound would be exceeded."""


class GuardExceeded(SizeBoundError):
    """Sparse expansion produced more intermediate terms than allowed."""


class DegreeError(BlockPencilError, ValueError):
    """Mixed degrees where a homogeneous expression is required."""


class PencilError(BlockPencilError, ValueError):
    """Invalid pencil, partition or cover input."""


class PreconditionError(BlockPencilError, ValueError):
    """An operation was called outside its precondition."""
