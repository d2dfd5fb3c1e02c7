"""Massey secret sharing on the binary image of the trace code.

The dealer works in the dual code D of the binary code G: a random message
``u`` of length ``N - K`` is drawn with ``u . g_s = secret`` for the secret
column ``g_s`` of D's generator matrix, and participant ``i`` receives
``u . g_i``.  A coalition T recovers the secret exactly when ``g_s`` lies
in the span of its columns, i.e. when some codeword of G has a 1 at the
secret position and support inside ``T + {s}``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from rktrace import gf2
from rktrace.analysis import brute_force_minimality
from rktrace.trace_code import TraceCode

RNG_ID = "python-random-mt19937"


@dataclass(frozen=True)
class SharingScheme:
    generator: Tuple[int, ...]  # rows of the binary code whose minimal codewords define access
    dealer_matrix: Tuple[int, ...]  # rows spanning its dual
    length: int
    seed: int = 0
    secret_position: int = 0
    m: Optional[int] = None
    k: Optional[int] = None

    @cached_property
    def columns(self) -> Tuple[int, ...]:
        """Column ``i`` of the dealer matrix as an int over its rows."""
        return tuple(gf2.transpose(self.dealer_matrix, self.length))

    @property
    def participants(self) -> List[int]:
        return [i for i in range(self.length) if i != self.secret_position]

    @property
    def dimension(self) -> int:
        return len(self.dealer_matrix)

    def check(self) -> None:
        for h in self.dealer_matrix:
            for g in self.generator:
                if gf2.dot(h, g):
                    raise AssertionError("dealer row not orthogonal to the code")
        expected = self.length - gf2.rank(self.generator)
        if gf2.rank(self.dealer_matrix) != expected:
            raise AssertionError(f"dealer matrix rank is not {expected}")
        if self.columns[self.secret_position] == 0:
            raise AssertionError("secret column of the dealer matrix is zero")


def scheme_from_generator(
    generator: Sequence[int], length: int, seed: int = 0, secret_position: int = 0, **meta
) -> SharingScheme:
    if not 0 <= secret_position < length:
        raise ValueError(f"secret position {secret_position} outside 0..{length - 1}")
    if gf2.rank(generator) != len(generator):
        raise ValueError("generator rows are linearly dependent")
    dealer = gf2.kernel(generator, length)
    scheme = SharingScheme(tuple(generator), tuple(dealer), length, seed, secret_position, **meta)
    scheme.check()
    return scheme


def build_scheme(m: int, k: int, seed: int = 0, secret_position: int = 0, modulus: Optional[int] = None) -> SharingScheme:
    if m < 2:
        raise ValueError("m >= 2 required")
    code = TraceCode.build(m, k, modulus)
    code.check_enumerable()
    return scheme_from_generator(code.binary_generator_matrix(), code.N, seed, secret_position, m=m, k=k)


def deal(scheme: SharingScheme, secret: int, seed: Optional[int] = None) -> Dict[int, int]:
    if secret not in (0, 1):
        raise ValueError("secret must be a bit")
    rng = random.Random(scheme.seed if seed is None else seed)
    cols = scheme.columns
    g_s = cols[scheme.secret_position]
    u = rng.getrandbits(scheme.dimension) if scheme.dimension else 0
    if gf2.dot(u, g_s) != secret:
        u ^= g_s & -g_s
    return {i: gf2.dot(u, cols[i]) for i in scheme.participants}


def reconstruct(scheme: SharingScheme, coalition: Iterable[int], shares: Dict[int, int]) -> Optional[int]:
    """Secret bit, or None when the coalition is unauthorized."""
    members = sorted(set(coalition))
    for i in members:
        if i == scheme.secret_position or not 0 <= i < scheme.length:
            raise ValueError(f"unknown participant {i}")
        if i not in shares:
            raise KeyError(f"missing share for participant {i}")
    cols = scheme.columns
    combo = gf2.solve_combination([cols[i] for i in members], cols[scheme.secret_position])
    if combo is None:
        return None
    return reduce(lambda acc, t: acc ^ shares[members[t]], combo, 0)


@dataclass(frozen=True)
class AccessStructure:
    minimal_sets: Tuple[Tuple[int, ...], ...]
    dictators: Tuple[int, ...]

    def to_json(self) -> dict:
        return {"minimal_sets": [list(s) for s in self.minimal_sets], "dictators": list(self.dictators)}


def minimal_access_sets(scheme: SharingScheme) -> AccessStructure:
    words = list(gf2.span(scheme.generator))
    offenders = brute_force_minimality(words)
    if offenders:
        raise ValueError(f"{len(offenders)} non-minimal codewords, e.g. support {_support(offenders[0], scheme.length)}")
    s = scheme.secret_position
    sets = sorted({tuple(j for j in _support(w, scheme.length) if j != s) for w in words if (w >> s) & 1})
    common = set(sets[0]) if sets else set()
    for t in sets[1:]:
        common &= set(t)
    for a in sets:
        for b in sets:
            if a != b and set(a) <= set(b):
                raise AssertionError("access structure is not an antichain")
    return AccessStructure(tuple(sets), tuple(sorted(common)))


def _support(word: int, length: int) -> List[int]:
    return [j for j in range(length) if (word >> j) & 1]


def consistent_message_counts(scheme: SharingScheme, coalition: Iterable[int], shares: Dict[int, int]) -> Tuple[int, int]:
    """Number of dealer messages matching the coalition's shares, for secret 0 and secret 1."""
    members = sorted(set(coalition))
    cols = scheme.columns
    rows = [cols[i] for i in members] + [cols[scheme.secret_position]]
    rhs = [shares[i] for i in members]
    return tuple(gf2.solution_count(rows, rhs + [b], scheme.dimension) for b in (0, 1))


def perfectness_probe(scheme: SharingScheme, coalition: Iterable[int], trials: int = 32) -> bool:
    """True when every probed deal leaves both secrets equally consistent with the shares."""
    members = sorted(set(coalition))
    probe_shares = {i: 0 for i in members}
    if reconstruct(scheme, members, probe_shares) is not None:
        raise ValueError("coalition is authorized; the probe does not apply")
    for t in range(trials):
        shares = deal(scheme, t & 1, seed=scheme.seed + t)
        c0, c1 = consistent_message_counts(scheme, members, shares)
        if c0 != c1 or c0 == 0:
            return False
    return True


def share_file(scheme: SharingScheme, secret_seed: int, shares: Dict[int, int]) -> dict:
    return {
        "m": scheme.m,
        "k": scheme.k,
        "seed": secret_seed,
        "rng": RNG_ID,
        "secret_position": scheme.secret_position,
        "shares": [{"participant": i, "bit": b} for i, b in sorted(shares.items())],
    }


def load_share_file(text: str) -> Tuple[dict, Dict[int, int]]:
    data = json.loads(text)
    try:
        shares = {int(e["participant"]): int(e["bit"]) for e in data["shares"]}
        meta = {key: data[key] for key in ("m", "k", "seed", "secret_position")}
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed share file: {exc}") from exc
    if any(b not in (0, 1) for b in shares.values()):
        raise ValueError("malformed share file: share bits must be 0 or 1")
    return meta, shares
