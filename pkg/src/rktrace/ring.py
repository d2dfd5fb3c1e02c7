"""The ring F_{2^m}[u_1..u_k]/(u_i^2 = 0) and its subring R_k (m = 1).

An element is stored as ``2^k`` coefficient reps indexed by subset masks:
bit ``i-1`` of a mask stands for ``u_i`` and mask 0 is the constant term.
The canonical integer encoding concatenates the m-bit coefficient fields
with mask 0 in the low bits; unit enumeration and every coordinate order
in the package derive from it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, List, Sequence, Tuple

from rktrace.errors import GuardrailError, NotInvertibleError, SpecMismatchError
from rktrace.gf2m import FieldElement, FieldSpec, make_field

MAX_K = 4


@lru_cache(maxsize=None)
def disjoint_pairs(k: int) -> Tuple[Tuple[int, int, int], ...]:
    """All ``(A, B, A|B)`` with ``A & B == 0`` for masks below ``2^k``."""
    size = 1 << k
    return tuple((a, b, a | b) for a in range(size) for b in range(size) if a & b == 0)


@dataclass(frozen=True)
class RingSpec:
    k: int
    field: FieldSpec

    def __post_init__(self):
        if not 1 <= self.k <= MAX_K:
            raise GuardrailError(f"k={self.k} outside 1..{MAX_K}")

    @property
    def m(self) -> int:
        return self.field.m

    @property
    def size(self) -> int:
        """Number of coefficients, 2^k."""
        return 1 << self.k

    @property
    def bits(self) -> int:
        """Width of the canonical encoding, m * 2^k."""
        return self.m << self.k

    @property
    def order(self) -> int:
        return 1 << self.bits

    @property
    def unit_count(self) -> int:
        return (self.field.order - 1) << (self.m * (self.size - 1))

    def __repr__(self) -> str:
        return f"RingSpec(k={self.k}, m={self.m}, modulus={self.field.modulus:#x})"

    @cached_property
    def base(self) -> "RingSpec":
        """R_k: same k over F_2."""
        return RingSpec(self.k, make_field(1))

    # encoding ----------------------------------------------------------

    def encode(self, coeffs: Sequence[int]) -> int:
        m = self.m
        enc = 0
        for mask, c in enumerate(coeffs):
            enc |= c << (m * mask)
        return enc

    def decode(self, enc: int) -> Tuple[int, ...]:
        m = self.m
        low = self.field.order - 1
        return tuple((enc >> (m * mask)) & low for mask in range(self.size))

    def from_encoding(self, enc: int) -> "RingElement":
        if not 0 <= enc < self.order:
            raise ValueError(f"encoding {enc} out of range for {self}")
        return RingElement(self, self.decode(enc))

    def from_coeffs(self, coeffs: Sequence[int]) -> "RingElement":
        return RingElement(self, tuple(coeffs))

    def from_text(self, text: str) -> "RingElement":
        """Parse the decimal list form, e.g. ``"[2,3]"``."""
        return self.from_coeffs(json.loads(text))

    def from_hex(self, text: str) -> "RingElement":
        return self.from_encoding(int(text, 16))

    def monomial(self, mask: int, c: int = 1) -> "RingElement":
        coeffs = [0] * self.size
        coeffs[mask] = c
        return RingElement(self, tuple(coeffs))

    @property
    def zero(self) -> "RingElement":
        return RingElement(self, (0,) * self.size)

    @property
    def one(self) -> "RingElement":
        return self.monomial(0, 1)

    def elements(self) -> Iterator["RingElement"]:
        for enc in range(self.order):
            yield self.from_encoding(enc)

    def embed(self, r: "RingElement") -> "RingElement":
        """View an R_k element (F_2 coefficients) inside this ring."""
        if r.spec.k != self.k or r.spec.m != 1:
            raise SpecMismatchError(f"cannot embed {r.spec} into {self}")
        return RingElement(self, r.coeffs)

    # raw coefficient-tuple arithmetic ------------------------------------

    def mul_raw(self, a: Sequence[int], b: Sequence[int]) -> List[int]:
        mul = self.field.mul
        out = [0] * self.size
        for ma, mb, mc in disjoint_pairs(self.k):
            ca, cb = a[ma], b[mb]
            if ca and cb:
                out[mc] ^= mul(ca, cb)
        return out


def make_ring(m: int, k: int, modulus: int | None = None) -> RingSpec:
    return RingSpec(k, make_field(m, modulus))


@dataclass(frozen=True)
class RingElement:
    spec: RingSpec
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.spec.size:
            raise ValueError(f"expected {self.spec.size} coefficients, got {len(self.coeffs)}")
        top = self.spec.field.order
        for c in self.coeffs:
            if not 0 <= c < top:
                raise ValueError(f"coefficient {c} not in GF(2^{self.spec.m})")

    def coeff(self, mask: int) -> FieldElement:
        return FieldElement(self.spec.field, self.coeffs[mask])

    @property
    def encoding(self) -> int:
        return self.spec.encode(self.coeffs)

    def to_text(self) -> str:
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"

    def to_hex(self) -> str:
        return format(self.encoding, "x")

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: "RingElement") -> None:
        if not isinstance(other, RingElement):
            raise TypeError(f"expected RingElement, got {type(other).__name__}")
        if other.spec != self.spec:
            raise SpecMismatchError(f"{self.spec} vs {other.spec}")

    def __add__(self, other: "RingElement") -> "RingElement":
        return r_add(self, other)

    __sub__ = __add__

    def __mul__(self, other: "RingElement") -> "RingElement":
        return r_mul(self, other)

    def __repr__(self) -> str:
        return f"RingElement({self.to_text()}, k={self.spec.k}, m={self.spec.m})"


def r_add(a: RingElement, b: RingElement) -> RingElement:
    a._check(b)
    return RingElement(a.spec, tuple(x ^ y for x, y in zip(a.coeffs, b.coeffs)))


def r_mul(a: RingElement, b: RingElement) -> RingElement:
    """Product sum_{A & B = 0} c_A d_B u_{A|B}."""
    a._check(b)
    return RingElement(a.spec, tuple(a.spec.mul_raw(a.coeffs, b.coeffs)))


def r_is_unit(a: RingElement) -> bool:
    return a.coeffs[0] != 0


def r_inv(a: RingElement) -> RingElement:
    """Invert a unit as c^-1 * (1 + v + v^2 + ... + v^k) where a = c(1 + v), v nilpotent."""
    if not r_is_unit(a):
        raise NotInvertibleError(f"{a} lies in the maximal ideal")
    spec = a.spec
    field = spec.field
    c_inv = field.inv(a.coeffs[0])
    scaled = [field.mul(c_inv, c) for c in a.coeffs]
    nu = [0] + scaled[1:]
    total = [1] + [0] * (spec.size - 1)
    power = list(total)
    for _ in range(spec.k):
        power = spec.mul_raw(power, nu)
        total = [x ^ y for x, y in zip(total, power)]
    return RingElement(spec, tuple(field.mul(c_inv, c) for c in total))


def unit_encodings(spec: RingSpec) -> List[int]:
    """Encodings of all units in ascending order."""
    low = spec.field.order - 1
    return [enc for enc in range(spec.order) if enc & low]


def enumerate_units(spec: RingSpec) -> List[RingElement]:
    if spec.bits > 24:
        raise GuardrailError(f"m*2^k = {spec.bits} too large to enumerate units")
    return [spec.from_encoding(enc) for enc in unit_encodings(spec)]


def frobenius_op(a: RingElement) -> RingElement:
    """Coefficient-wise squaring (not ring squaring)."""
    sq = a.spec.field.square
    return RingElement(a.spec, tuple(sq(c) for c in a.coeffs))


def trace_down(a: RingElement) -> RingElement:
    """Tr = sum_{j<m} F^j, returned as an element of R_k."""
    acc = a.spec.zero
    x = a
    for _ in range(a.spec.m):
        acc = r_add(acc, x)
        x = frobenius_op(x)
    for c in acc.coeffs:
        if c > 1:
            raise AssertionError(f"trace of {a} has a coefficient outside F_2")
    return RingElement(a.spec.base, acc.coeffs)
