"""Arithmetic in GF(2^m) in polynomial basis.

Field elements are integers in ``[0, 2^m)`` whose bit ``i`` is the
coefficient of ``x^i``.  A :class:`FieldSpec` carries the extension degree
and the irreducible modulus and exposes the raw integer operations used by
the hot loops elsewhere in the package; :class:`FieldElement` wraps a rep
together with its spec for the checked, user-facing API.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Tuple

from rktrace.errors import GuardrailError, NotInvertibleError, ReducibleModulusError, SpecMismatchError

MAX_DEGREE = 16

# Lexicographically smallest irreducible polynomial of each degree.
DEFAULT_MODULI: Dict[int, int] = {
    1: 0x2,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11B,
    9: 0x203,
    10: 0x409,
    11: 0x805,
    12: 0x1009,
    13: 0x201B,
    14: 0x4021,
    15: 0x8003,
    16: 0x1002B,
}

# Above this degree the full multiplication table is not materialized.
_TABLE_MAX_DEGREE = 8


def poly_degree(p: int) -> int:
    return p.bit_length() - 1


def poly_mod(a: int, b: int) -> int:
    """Remainder of ``a`` modulo ``b`` over F_2 (both as bit masks)."""
    if b == 0:
        raise ZeroDivisionError("polynomial modulus is zero")
    db = poly_degree(b)
    while a and poly_degree(a) >= db:
        a ^= b << (poly_degree(a) - db)
    return a


def poly_to_str(p: int) -> str:
    if p == 0:
        return "0"
    terms = []
    for i in range(poly_degree(p), -1, -1):
        if (p >> i) & 1:
            terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
    return "+".join(terms)


def factor_poly(p: int) -> List[Tuple[int, int]]:
    """Factor ``p`` over F_2 by trial division; returns ``[(factor, multiplicity), ...]``."""
    factors: List[Tuple[int, int]] = []
    q = 2
    while p.bit_length() > 1 and 2 * poly_degree(q) <= poly_degree(p):
        mult = 0
        while poly_mod(p, q) == 0:
            p = _poly_div(p, q)
            mult += 1
        if mult:
            factors.append((q, mult))
        q += 1
    if p.bit_length() > 1:
        factors.append((p, 1))
    return factors


def _poly_div(a: int, b: int) -> int:
    quot = 0
    db = poly_degree(b)
    while a and poly_degree(a) >= db:
        shift = poly_degree(a) - db
        quot |= 1 << shift
        a ^= b << shift
    return quot


def is_irreducible(p: int) -> bool:
    """Trial division by every polynomial of degree 1..deg(p)//2."""
    d = poly_degree(p)
    if d < 1:
        return False
    for q in range(2, 1 << (d // 2 + 1)):
        if poly_mod(p, q) == 0:
            return False
    return True


def _format_factorization(factors: List[Tuple[int, int]]) -> str:
    parts = []
    for f, e in factors:
        s = poly_to_str(f)
        s = s if "+" not in s and e == 1 else f"({s})"
        parts.append(s if e == 1 else f"{s}^{e}")
    return "*".join(parts)


@dataclass(frozen=True)
class FieldSpec:
    """GF(2^m) defined by an irreducible ``modulus`` of degree ``m``.

    Construct through :func:`make_field`, which validates the modulus.
    """

    m: int
    modulus: int

    @property
    def order(self) -> int:
        return 1 << self.m

    def __repr__(self) -> str:
        return f"FieldSpec(m={self.m}, modulus={self.modulus:#x})"

    # raw integer operations --------------------------------------------

    def mul_raw(self, a: int, b: int) -> int:
        """Shift-and-XOR product reduced by the modulus."""
        p = 0
        top = 1 << self.m
        while b:
            if b & 1:
                p ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= self.modulus
        return p

    @cached_property
    def _mul_table(self) -> Optional[List[List[int]]]:
        if self.m > _TABLE_MAX_DEGREE:
            return None
        q = self.order
        return [[self.mul_raw(a, b) for b in range(q)] for a in range(q)]

    def mul(self, a: int, b: int) -> int:
        table = self._mul_table
        if table is not None:
            return table[a][b]
        return self.mul_raw(a, b)

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise NotInvertibleError("zero has no inverse in GF(2^m)")
        return self.pow(a, self.order - 2)

    def tr_raw(self, a: int) -> int:
        """Absolute trace a + a^2 + ... + a^(2^(m-1)) computed by repeated squaring."""
        acc = 0
        x = a
        for _ in range(self.m):
            acc ^= x
            x = self.square(x)
        if acc > 1:
            raise AssertionError(f"trace of {a} left F_2: {acc}")
        return acc

    @cached_property
    def trace_table(self) -> List[int]:
        return [self.tr_raw(a) for a in range(self.order)]

    def tr(self, a: int) -> int:
        return self.trace_table[a]

    @cached_property
    def tr_mul_table(self) -> List[List[int]]:
        """``tr_mul_table[a][b] = tr(a*b)``; used by the codeword evaluation loop."""
        tt = self.trace_table
        q = self.order
        return [[tt[self.mul(a, b)] for b in range(q)] for a in range(q)]

    # element constructors ----------------------------------------------

    def __call__(self, rep: int) -> "FieldElement":
        return FieldElement(self, rep)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> List["FieldElement"]:
        return [FieldElement(self, r) for r in range(self.order)]

    def power_basis(self) -> List[int]:
        """Reps of 1, x, ..., x^(m-1)."""
        return [1 << t for t in range(self.m)]


def make_field(m: int, modulus: Optional[int] = None) -> FieldSpec:
    """Build GF(2^m), defaulting to the built-in modulus for ``m``.

    The modulus is always re-verified by trial division, whether it came
    from the table or from the caller.
    """
    if not isinstance(m, int) or not 1 <= m <= MAX_DEGREE:
        raise GuardrailError(f"extension degree m={m!r} outside 1..{MAX_DEGREE}")
    if modulus is None:
        modulus = DEFAULT_MODULI[m]
    if poly_degree(modulus) != m:
        raise ReducibleModulusError(
            f"modulus {poly_to_str(modulus)} has degree {poly_degree(modulus)}, expected {m}"
        )
    if not is_irreducible(modulus):
        raise ReducibleModulusError(f"reducible: {_format_factorization(factor_poly(modulus))}")
    return FieldSpec(m, modulus)


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    rep: int

    def __post_init__(self):
        if not 0 <= self.rep < self.spec.order:
            raise ValueError(f"rep {self.rep} out of range for GF(2^{self.spec.m})")

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.spec != self.spec:
            raise SpecMismatchError(f"{self.spec} vs {other.spec}")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return fe_add(self, other)

    __sub__ = __add__

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return fe_mul(self, other)

    def __bool__(self) -> bool:
        return self.rep != 0

    def __repr__(self) -> str:
        return f"FieldElement({poly_to_str(self.rep)} in GF(2^{self.spec.m}))"


def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    return FieldElement(a.spec, a.rep ^ b.rep)


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    a._check(b)
    return FieldElement(a.spec, a.spec.mul(a.rep, b.rep))


def fe_inv(a: FieldElement) -> FieldElement:
    return FieldElement(a.spec, a.spec.inv(a.rep))


def fe_frobenius(a: FieldElement) -> FieldElement:
    return FieldElement(a.spec, a.spec.square(a.rep))


def fe_tr(a: FieldElement) -> int:
    return a.spec.tr(a.rep)


def character_sum(z: FieldElement, over_units: bool = False) -> int:
    """Sum of (-1)^tr(z*x) over the field, or over its nonzero elements."""
    spec = z.spec
    start = 1 if over_units else 0
    row = spec.tr_mul_table[z.rep] if spec.m <= _TABLE_MAX_DEGREE else None
    total = 0
    for x in range(start, spec.order):
        t = row[x] if row is not None else spec.tr(spec.mul(z.rep, x))
        total += -1 if t else 1
    return total
