"""Exception types shared across the package."""

from __future__ import annotations


class ReducibleModulusError(ValueError):
    """The supplied field modulus is not an irreducible polynomial of the right degree."""


class SpecMismatchError(ValueError):
    """Operands belong to different fields or rings."""


class GuardrailError(ValueError):
    """Parameters fall outside the enumerable range."""


class NotInvertibleError(ZeroDivisionError):
    pass


class TheoremViolation(AssertionError):
    """A computed quantity disagrees with the claimed closed form.

    ``witness`` carries whatever object demonstrates the disagreement.
    """

    def __init__(self, claim: str, witness=None):
        super().__init__(f"{claim}: witness={witness!r}")
        self.claim = claim
        self.witness = witness
