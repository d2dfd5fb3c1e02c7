"""Two-Lee-weight trace codes over R_k: construction, verification, secret sharing."""

from rktrace.errors import (
    GuardrailError,
    NotInvertibleError,
    ReducibleModulusError,
    SpecMismatchError,
    TheoremViolation,
)
from rktrace.gf2m import FieldElement, FieldSpec, make_field
from rktrace.ring import RingElement, RingSpec, make_ring
from rktrace.trace_code import TraceCode, WeightDistribution, predicted_distribution

__version__ = "0.1.0"

__all__ = [
    "FieldElement",
    "FieldSpec",
    "GuardrailError",
    "NotInvertibleError",
    "ReducibleModulusError",
    "RingElement",
    "RingSpec",
    "SpecMismatchError",
    "TheoremViolation",
    "TraceCode",
    "WeightDistribution",
    "make_field",
    "make_ring",
    "predicted_distribution",
]
