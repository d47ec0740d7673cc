"""Exception types shared across the package."""


class UnsupportedDimensionError(ValueError):
    """Raised when a dimension outside the supported prime-power set is requested."""

    def __init__(self, d, supported=None):
        self.d = d
        msg = f"unsupported dimension d={d}"
        if supported is not None:
            msg += f" (supported: {sorted(supported)})"
        super().__init__(msg)


class FieldMismatchError(ValueError):
    """Operands belong to different finite fields."""


class InvalidStateError(ValueError):
    """A density matrix or probability table violates its invariants."""


class UnboundedPolytopeError(ValueError):
    """The H-polytope has a nonzero recession cone."""


class DegenerateHullError(ValueError):
    """A point set does not affinely span the ambient space.

    ``affine_hull`` holds the equalities ``(e, f)`` with ``e . x = f`` that
    every input point satisfies.
    """

    def __init__(self, msg, affine_hull=()):
        super().__init__(msg)
        self.affine_hull = list(affine_hull)


class EnumerationCapError(ValueError):
    """Definition enumeration would exceed the configured cap."""


class ResourceLimitError(RuntimeError):
    """An enumeration stopped early on a time or size limit.

    ``checkpoint`` is the path of the saved state (or None) and ``progress``
    a dict describing how far the computation got.
    """

    def __init__(self, msg, checkpoint=None, progress=None):
        super().__init__(msg)
        self.checkpoint = checkpoint
        self.progress = progress or {}
