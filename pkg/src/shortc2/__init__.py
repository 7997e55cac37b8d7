"""Hénon-map Green's functions, Böttcher coordinates and the topology of {0 < G+ < c}."""

__version__ = "0.1.0"

from .core import ComplexPair, HenonMap, apply, apply_inverse, iterate, escape_radius  # noqa: E402
from .errors import HenonError  # noqa: E402
from .greens import GreenEstimate, Membership, green_minus, green_plus, membership  # noqa: E402
from .dyadic import DyadicClass  # noqa: E402

__all__ = [
    "ComplexPair", "HenonMap", "apply", "apply_inverse", "iterate", "escape_radius",
    "HenonError", "GreenEstimate", "Membership", "green_plus", "green_minus", "membership",
    "DyadicClass", "__version__",
]
