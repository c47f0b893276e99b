"""Tilting and orthogonal projection for quiver moduli, with exact randomized linear algebra."""

from .field import Field, FieldConfig
from .lattice import EulerContext, Quiver, QuiverError, euler_context

__version__ = "0.1.0"

__all__ = ["EulerContext", "Field", "FieldConfig", "Quiver", "QuiverError", "__version__", "euler_context"]
