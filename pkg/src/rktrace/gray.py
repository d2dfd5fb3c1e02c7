"""Recursive Gray map R_k^n -> F_2^(2^k n) and Lee weight.

Elements of R_k are handled as ints whose bit ``A`` is the coefficient of
``u_A`` (this is the canonical ring encoding at m = 1).  Writing a vector
as ``c1 + u_k c2`` with ``c1, c2`` over R_{k-1}, the image is
``(phi(c2), phi(c1) + phi(c2))`` taken over the whole vector, so bit
``j*n + i`` of the image is bit ``j`` of the single-coordinate image of
coordinate ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

from rktrace.ring import RingElement


@dataclass(frozen=True)
class BinaryWord:
    """Bit vector packed into an int; bit ``j`` of ``bits`` is position ``j``."""

    bits: int
    length: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits do not fit in length {self.length}")

    @classmethod
    def from_list(cls, seq: Iterable[int]) -> "BinaryWord":
        bits = 0
        n = 0
        for n, b in enumerate(seq, 1):
            if b not in (0, 1):
                raise ValueError(f"not a bit: {b!r}")
            bits |= b << (n - 1)
        return cls(bits, n)

    @classmethod
    def from_string(cls, s: str) -> "BinaryWord":
        return cls.from_list(int(ch) for ch in s)

    @classmethod
    def from_hex(cls, s: str, length: int) -> "BinaryWord":
        bits = 0
        for t, ch in enumerate(s):
            bits |= int(ch, 16) << (4 * t)
        return cls(bits, length)

    def to_list(self) -> List[int]:
        return [(self.bits >> j) & 1 for j in range(self.length)]

    def to_string(self) -> str:
        return "".join(map(str, self.to_list()))

    def to_hex(self) -> str:
        """Hex digit ``t`` holds bits ``4t..4t+3``, least significant first."""
        digits = (self.length + 3) // 4
        return "".join(format((self.bits >> (4 * t)) & 0xF, "x") for t in range(digits))

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> List[int]:
        return [j for j in range(self.length) if (self.bits >> j) & 1]

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError(j)
        return (self.bits >> j) & 1

    def __len__(self) -> int:
        return self.length

    def __xor__(self, other: "BinaryWord") -> "BinaryWord":
        if other.length != self.length:
            raise ValueError("length mismatch")
        return BinaryWord(self.bits ^ other.bits, self.length)

    __add__ = __xor__


def gray_element(c: int, k: int) -> int:
    """Image of a single R_k element as a 2^k-bit int."""
    if k == 0:
        return c & 1
    half = 1 << (k - 1)
    c1 = c & ((1 << half) - 1)
    c2 = c >> half
    g2 = gray_element(c2, k - 1)
    return g2 | ((gray_element(c1, k - 1) ^ g2) << half)


@lru_cache(maxsize=None)
def gray_table(k: int) -> Tuple[int, ...]:
    return tuple(gray_element(c, k) for c in range(1 << (1 << k)))


@lru_cache(maxsize=None)
def lee_table(k: int) -> Tuple[int, ...]:
    return tuple(g.bit_count() for g in gray_table(k))


def _check_values(values: Sequence[int], k: int) -> None:
    top = 1 << (1 << k)
    for v in values:
        if not 0 <= v < top:
            raise ValueError(f"{v} is not an R_{k} element")


def gray_map_recursive(values: Sequence[int], k: int) -> BinaryWord:
    """Literal vector-level recursion; reference for :func:`gray_map_ints`."""
    _check_values(values, k)

    def rec(vals: List[int], level: int) -> List[int]:
        if level == 0:
            return vals
        half = 1 << (level - 1)
        low = (1 << half) - 1
        left = rec([v >> half for v in vals], level - 1)
        right = rec([v & low for v in vals], level - 1)
        return left + [x ^ y for x, y in zip(left, right)]

    return BinaryWord.from_list(rec(list(values), k))


def gray_map_ints(values: Sequence[int], k: int) -> BinaryWord:
    """Table-driven Gray map on encoded R_k values."""
    _check_values(values, k)
    n = len(values)
    table = gray_table(k)
    images = [table[v] for v in values]
    bits = 0
    for j in range(1 << k):
        block = 0
        for i, g in enumerate(images):
            if (g >> j) & 1:
                block |= 1 << i
        bits |= block << (j * n)
    return BinaryWord(bits, n << k)


def _as_ints(word: Sequence[RingElement]) -> Tuple[List[int], int]:
    if not word:
        raise ValueError("empty word")
    k = word[0].spec.k
    out = []
    for r in word:
        if r.spec.k != k:
            raise ValueError("mixed k within one word")
        if any(c > 1 for c in r.coeffs):
            raise ValueError(f"{r} has coefficients outside F_2")
        out.append(sum(c << mask for mask, c in enumerate(r.coeffs)))
    return out, k


def gray_map(word: Sequence[RingElement]) -> BinaryWord:
    values, k = _as_ints(word)
    return gray_map_ints(values, k)


def lee_weight(word: Sequence[RingElement]) -> int:
    values, k = _as_ints(word)
    table = lee_table(k)
    return sum(table[v] for v in values)


def lee_weight_ints(values: Iterable[int], k: int) -> int:
    table = lee_table(k)
    return sum(table[v] for v in values)


def hamming_via_character_sum(y: BinaryWord) -> int:
    """(length - sum_i (-1)^{y_i}) / 2, evaluated term by term."""
    s = sum(-1 if b else 1 for b in y.to_list())
    twice = y.length - s
    assert twice % 2 == 0
    return twice // 2
