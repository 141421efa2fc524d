"""Exception types shared across the library.

Each failure mode that callers are expected to catch gets its own class;
everything derives from GeometryError so a bare `except GeometryError`
catches any library-raised condition.
"""


class GeometryError(Exception):
    """Base class for all library errors."""


class ParameterError(GeometryError, ValueError):
    """A constructor or operation argument is outside its valid range."""


class ResolutionError(ParameterError):
    """Requested resolution is below the documented floor."""


class MeshQualityError(GeometryError):
    """Mesh fails a structural requirement (manifoldness, connectivity,
    rank-deficient fit neighborhood, inconsistent orientation)."""


class FormatError(GeometryError, ValueError):
    """A file being read does not match the expected format."""


class NearPoleError(GeometryError):
    """A point sits too close to the pole of a projection or dilation."""


class InputError(GeometryError, ValueError):
    """Operation input is structurally valid but geometrically unusable
    (intersecting curves, coincident points, wrong ambient space)."""


class DegenerateInputError(InputError):
    """Input degeneracy survived the documented perturbation path."""


class NotMinimalError(InputError):
    """Stability analysis was asked for on a surface that is not minimal
    (or not in the round three-sphere at all)."""


class InsufficientDataError(GeometryError, ValueError):
    """Too few data points for the requested fit."""


class SolverError(GeometryError):
    """An iterative numerical solver failed to converge."""


class ResolutionWarning(UserWarning):
    """Result is likely under-resolved; returned anyway."""
