"""Exception types shared across the toolkit.

Everything raised on purpose derives from ToolkitError so the CLI can map
domain failures to exit code 1 while letting genuine bugs surface as
ordinary tracebacks.
"""

from __future__ import annotations


class ToolkitError(Exception):
    """Base class for all expected failures."""


class DimensionMismatchError(ToolkitError):
    """Vector or matrix shapes do not agree with the space they target."""


class DegenerateConeError(ToolkitError):
    """Cone is not pointed or not generating (full-dimensional)."""


class DimensionCapError(ToolkitError):
    """An enumeration was requested above the desk-scale dimension cap."""


class UnsupportedConeError(ToolkitError):
    """Operation needs a representation this cone kind does not carry."""


class UnitMismatchError(ToolkitError):
    """Composite carries a unit other than the product of factor units."""


class SolverError(ToolkitError):
    """LP kernel failed structurally (iteration cap), as opposed to
    reporting infeasibility, which is a result and not an error."""


class InvalidInputError(ToolkitError):
    """User-supplied value (CLI argument, JSON payload) cannot be used."""


class SearchCapError(ToolkitError):
    """A combinatorial search exhausted its configured budget."""
