"""The trace code C = {(Tr(a x))_{x in L} : a in R} over the unit group L.

Coordinates are indexed by the units in ascending canonical encoding.
Ring codewords are tuples of R_k encodings (bit ``A`` = coefficient of
``u_A``); Gray images are packed ints with bit ``j*n + i`` holding bit
``j`` of the image of coordinate ``i``.
"""

from __future__ import annotations

import multiprocessing
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from rktrace import gf2
from rktrace.errors import GuardrailError, TheoremViolation
from rktrace.gray import BinaryWord, gray_table, lee_table
from rktrace.ring import RingElement, RingSpec, disjoint_pairs, make_ring, r_is_unit, r_mul, trace_down, unit_encodings

ENUMERATION_LIMIT = 24  # max m * 2^k for anything that walks all of R


@dataclass(frozen=True)
class CodeParameters:
    """Closed-form parameters of the Gray image for given (m, k)."""

    m: int
    k: int

    @property
    def n(self) -> int:
        return ((1 << self.m) - 1) << (self.m * ((1 << self.k) - 1))

    @property
    def N(self) -> int:
        return self.n << self.k

    @property
    def K(self) -> int:
        return self.m << self.k

    @property
    def w1(self) -> int:
        return (1 << (self.k - 1)) * (1 << (self.m * ((1 << self.k) - 1))) * ((1 << self.m) - 1)

    @property
    def w2(self) -> int:
        return (1 << (self.k - 1)) * (1 << (self.m * ((1 << self.k) - 1))) * (1 << self.m)

    @property
    def d(self) -> int:
        return self.w1


@dataclass
class WeightDistribution:
    entries: Dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def add(self, weight: int, count: int = 1) -> None:
        self.entries[weight] = self.entries.get(weight, 0) + count

    def rows(self) -> List[Tuple[int, int]]:
        return sorted(self.entries.items())

    def nonzero_weights(self) -> List[int]:
        return sorted(w for w in self.entries if w)

    def to_json(self) -> List[dict]:
        return [{"weight": w, "frequency": f} for w, f in self.rows()]

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightDistribution):
            return NotImplemented
        return self.rows() == other.rows()

    def __repr__(self) -> str:
        return "WeightDistribution({" + ", ".join(f"{w}: {f}" for w, f in self.rows()) + "})"


def predicted_distribution(m: int, k: int) -> WeightDistribution:
    if m < 2:
        raise ValueError("m >= 2 required")
    if k < 1:
        raise ValueError("k >= 1 required")
    p = CodeParameters(m, k)
    total = 1 << (m << k)
    return WeightDistribution({0: 1, p.w1: total - (1 << m), p.w2: (1 << m) - 1})


def theoretical_lee_weight(a: RingElement) -> int:
    """Lee weight of ev(a) from the three-case formula."""
    spec = a.spec
    m, k = spec.m, spec.k
    if m < 2:
        raise ValueError("m >= 2 required")
    if a.is_zero():
        return 0
    top = spec.size - 1
    if all(c == 0 for mask, c in enumerate(a.coeffs) if mask != top):
        return 1 << ((m << k) + k - 1)
    return CodeParameters(m, k).w1


def _pack(flags: np.ndarray) -> int:
    return int.from_bytes(np.packbits(flags.astype(np.uint8), bitorder="little").tobytes(), "little")


class TraceCode:
    """Code C for a ring spec, with its ordered defining set of units."""

    def __init__(self, ring: RingSpec):
        self.ring = ring
        self.params = CodeParameters(ring.m, ring.k)

    @classmethod
    def build(cls, m: int, k: int, modulus: Optional[int] = None) -> "TraceCode":
        return cls(make_ring(m, k, modulus))

    def __repr__(self) -> str:
        return f"TraceCode(m={self.m}, k={self.k}, modulus={self.ring.field.modulus:#x})"

    @property
    def m(self) -> int:
        return self.ring.m

    @property
    def k(self) -> int:
        return self.ring.k

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def N(self) -> int:
        return self.params.N

    @property
    def K(self) -> int:
        return self.params.K

    def check_enumerable(self) -> None:
        if self.ring.bits > ENUMERATION_LIMIT:
            raise GuardrailError(f"m*2^k = {self.ring.bits} exceeds {ENUMERATION_LIMIT}")

    # defining set ------------------------------------------------------

    @cached_property
    def unit_encodings(self) -> List[int]:
        self.check_enumerable()
        units = unit_encodings(self.ring)
        assert len(units) == self.n
        return units

    @cached_property
    def units(self) -> List[RingElement]:
        return [self.ring.from_encoding(e) for e in self.unit_encodings]

    @cached_property
    def unit_index(self) -> Dict[int, int]:
        return {e: i for i, e in enumerate(self.unit_encodings)}

    @cached_property
    def _unit_coeffs(self) -> np.ndarray:
        m, size = self.m, self.ring.size
        enc = np.array(self.unit_encodings, dtype=np.int64)
        low = (1 << m) - 1
        return np.stack([(enc >> (m * mask)) & low for mask in range(size)], axis=1)

    @cached_property
    def _trace_form(self) -> List[int]:
        """Row s is the bit mask of t with tr(x^s x^t) = 1."""
        f = self.ring.field
        rows = []
        for s in range(self.m):
            row = 0
            for t in range(self.m):
                row |= f.tr(f.mul(1 << s, 1 << t)) << t
            rows.append(row)
        return rows

    @cached_property
    def _parity(self) -> np.ndarray:
        q = np.arange(1 << self.m, dtype=np.int64)
        return np.array([int(v).bit_count() & 1 for v in q], dtype=np.int64)

    @lru_cache(maxsize=None)
    def _tr_row(self, c: int) -> np.ndarray:
        """d -> tr(c d) for all d, through the trace bilinear form."""
        w = 0
        for s, row in enumerate(self._trace_form):
            if (c >> s) & 1:
                w ^= row
        return self._parity[np.arange(1 << self.m, dtype=np.int64) & w]

    # evaluation --------------------------------------------------------

    def evaluate(self, a: RingElement) -> List[RingElement]:
        """ev(a) computed literally as Tr(a * x) for each x in L."""
        if a.spec != self.ring:
            raise ValueError(f"{a} does not belong to {self.ring}")
        return [trace_down(r_mul(a, x)) for x in self.units]

    def evaluate_array(self, a_enc: int) -> np.ndarray:
        """ev(a) as an array of R_k encodings, vectorized over L."""
        coeffs = self.ring.decode(a_enc)
        d = self._unit_coeffs
        out = np.zeros(self.n, dtype=np.int64)
        for ma, mb, mc in disjoint_pairs(self.k):
            c = coeffs[ma]
            if c:
                out ^= self._tr_row(c)[d[:, mb]] << mc
        return out

    def evaluate_encoded(self, a: RingElement | int) -> Tuple[int, ...]:
        enc = a if isinstance(a, int) else a.encoding
        return tuple(int(v) for v in self.evaluate_array(enc))

    def lee_weight_of(self, a_enc: int) -> int:
        return int(self._lee[self.evaluate_array(a_enc)].sum())

    @cached_property
    def _lee(self) -> np.ndarray:
        return np.array(lee_table(self.k), dtype=np.int64)

    @cached_property
    def _gray(self) -> np.ndarray:
        return np.array(gray_table(self.k), dtype=np.int64)

    def gray_bits(self, a_enc: int) -> int:
        images = self._gray[self.evaluate_array(a_enc)]
        bits = 0
        for j in range(1 << self.k):
            bits |= _pack((images >> j) & 1) << (j * self.n)
        return bits

    def gray_image(self, a: RingElement | int) -> BinaryWord:
        enc = a if isinstance(a, int) else a.encoding
        return BinaryWord(self.gray_bits(enc), self.N)

    # whole-code enumeration -------------------------------------------

    def enumerate_code(self) -> List[Tuple[RingElement, Tuple[int, ...]]]:
        self.check_enumerable()
        return [(self.ring.from_encoding(e), self.evaluate_encoded(e)) for e in range(self.ring.order)]

    def gray_codewords(self) -> List[int]:
        """Packed Gray images of ev(a) for every a, in ascending order of a."""
        self.check_enumerable()
        return [self.gray_bits(e) for e in range(self.ring.order)]

    def weight_distribution(self, workers: int = 1, method: str = "direct") -> WeightDistribution:
        """Observed Lee weight spectrum.

        ``direct`` evaluates every codeword; ``span`` walks the F_2 span of
        the binary generator matrix instead.
        """
        self.check_enumerable()
        if method == "span":
            counts = Counter(w.bit_count() for w in gf2.span(self.binary_generator_matrix()))
        elif method == "direct":
            counts = self._direct_counts(workers)
        else:
            raise ValueError(f"unknown method {method!r}")
        return WeightDistribution(dict(sorted(counts.items())))

    def _direct_counts(self, workers: int) -> Counter:
        total = self.ring.order
        if workers <= 1 or total < 1024:
            return _count_range(self, 0, total)
        bounds = np.linspace(0, total, workers + 1, dtype=np.int64)
        jobs = [(self.m, self.k, self.ring.field.modulus, int(lo), int(hi)) for lo, hi in zip(bounds, bounds[1:])]
        merged: Counter = Counter()
        with ProcessPoolExecutor(max_workers=workers, mp_context=multiprocessing.get_context("spawn")) as pool:
            for part in pool.map(_count_job, jobs):
                merged.update(part)
        return merged

    # structure ---------------------------------------------------------

    def basis_encodings(self) -> List[int]:
        """Encodings of alpha_t u_A, ordered by the bit they set in the encoding."""
        return [1 << r for r in range(self.ring.bits)]

    @lru_cache(maxsize=None)
    def _generator_rows(self) -> Tuple[int, ...]:
        rows = tuple(self.gray_bits(e) for e in self.basis_encodings())
        r = gf2.rank(rows)
        if r != self.K:
            raise TheoremViolation("binary generator matrix has full rank K", {"rank": r, "K": self.K})
        return rows

    def binary_generator_matrix(self) -> List[int]:
        return list(self._generator_rows())

    def coordinate_permutation(self, u: RingElement) -> Tuple[int, ...]:
        """pi with L[pi(i)] = u * L[i]."""
        if not r_is_unit(u):
            raise ValueError(f"{u} is not a unit")
        index = self.unit_index
        return tuple(index[r_mul(u, x).encoding] for x in self.units)


def _count_range(code: TraceCode, lo: int, hi: int) -> Counter:
    counts: Counter = Counter()
    lee = code._lee
    for e in range(lo, hi):
        counts[int(lee[code.evaluate_array(e)].sum())] += 1
    return counts


@lru_cache(maxsize=8)
def _worker_code(m: int, k: int, modulus: int) -> TraceCode:
    return TraceCode.build(m, k, modulus)


def _count_job(job: Tuple[int, int, int, int, int]) -> Counter:
    m, k, modulus, lo, hi = job
    return _count_range(_worker_code(m, k, modulus), lo, hi)


def default_workers() -> int:
    return os.cpu_count() or 1
