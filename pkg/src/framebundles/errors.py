"""Exception types shared across the library."""


class FrameBundlesError(Exception):
    """Base class for all library-specific errors."""


class BoundExceeded(FrameBundlesError):
    """An exhaustive operation was asked to enumerate past the configured bound."""


class NotFree(FrameBundlesError):
    """Operation requires a free action (division, bases, frame spaces)."""


class NoQuotient(FrameBundlesError):
    """Division of points from different orbits, or a path crossing orbits."""


class OrbitObstruction(FrameBundlesError):
    """An equivariant map does not induce a bijection on orbits, so it has no frame lift."""


class TooSmall(FrameBundlesError):
    """The symmetric-action labelling is only canonical for index sets of size >= 3."""


class NotFaithful(FrameBundlesError):
    """A permutation action expected to be faithful has a non-trivial kernel."""


class ModeMismatch(FrameBundlesError):
    """A bundle operation was applied to a bundle of the wrong mode."""


class SchemaError(FrameBundlesError):
    """A specification document does not match the documented schema."""
