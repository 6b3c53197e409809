"""Exact tilt-stability computations and a Reider-type decision procedure
for polarized smooth projective threefolds."""

from .chern import (
    CurveClassData,
    General,
    NumClass,
    PolarizedGeometry,
    Proportional,
    make_class,
)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CurveClassData",
    "General",
    "NumClass",
    "PolarizedGeometry",
    "Proportional",
    "make_class",
]
