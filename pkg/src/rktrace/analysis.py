"""Checks for optimality, minimality, nondegeneracy and the dual Lee distance.

Everything here is exact integer arithmetic.  The claim checks that walk a
code take a :class:`~rktrace.trace_code.TraceCode` and are limited to
enumerable parameters.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from rktrace import gf2
from rktrace.errors import GuardrailError, TheoremViolation
from rktrace.gray import lee_table
from rktrace.ring import RingSpec, disjoint_pairs, r_mul
from rktrace.trace_code import CodeParameters, TraceCode, predicted_distribution, theoretical_lee_weight

# ---------------------------------------------------------------------------
# Griesmer bound


def griesmer_sum(K: int, d: int) -> int:
    """sum_{i<K} ceil(d / 2^i)."""
    if K < 1 or d < 1:
        raise ValueError("K and d must be positive")
    return sum(-(-d >> i) for i in range(K))


@dataclass(frozen=True)
class OptimalityReport:
    params: Tuple[int, int, int]
    griesmer_sum_at_d: int
    griesmer_sum_at_d_plus_1: int
    optimal: bool
    gap_identity_value: Optional[int] = None

    def to_json(self) -> dict:
        N, K, d = self.params
        return {
            "N": N,
            "K": K,
            "d": d,
            "griesmer_sum_at_d": self.griesmer_sum_at_d,
            "griesmer_sum_at_d_plus_1": self.griesmer_sum_at_d_plus_1,
            "optimal": self.optimal,
            "gap_identity_value": self.gap_identity_value,
        }


def is_distance_optimal(N: int, K: int, d: int) -> OptimalityReport:
    """Feasible at d and infeasible at d+1 under the Griesmer bound."""
    at_d = griesmer_sum(K, d)
    at_d1 = griesmer_sum(K, d + 1)
    return OptimalityReport((N, K, d), at_d, at_d1, at_d <= N < at_d1, at_d1 - N)


def griesmer_gap(m: int, k: int) -> Tuple[int, int]:
    """``(direct, closed_form)`` excess of the Griesmer sum at d+1 over N.

    The two agree only while k - m <= 1; beyond that the second ceiling
    regime is empty and the closed form undercounts by 2^(k-m) - 1 - (k-m).
    """
    p = CodeParameters(m, k)
    return griesmer_sum(p.K, p.d + 1) - p.N, ((1 << k) - 1) * (m - 1) + k


def griesmer_gap_identity(m: int, k: int) -> int:
    """Excess of the Griesmer sum at d+1 over N, checked against (2^k-1)(m-1)+k.

    Also checks each ceiling term against the two closed-form regimes.
    """
    if m < 2 or k < 1:
        raise ValueError("m >= 2 and k >= 1 required")
    p = CodeParameters(m, k)
    N, K, d = p.N, p.K, p.d
    split = m * ((1 << k) - 1) + k - 1
    for j in range(K):
        term = -(-(d + 1) >> j)
        if j <= split:
            expected = ((1 << m) - 1) * (1 << (split - j)) + 1
        else:
            expected = 1 << ((m << k) + k - 1 - j)
        if term != expected:
            raise TheoremViolation("ceiling regime", {"m": m, "k": k, "j": j, "term": term, "expected": expected})
    gap, closed = griesmer_gap(m, k)
    if gap != closed:
        raise TheoremViolation("gap identity", {"m": m, "k": k, "gap": gap, "closed_form": closed})
    return gap


# ---------------------------------------------------------------------------
# Minimal codewords


def ab_minimality_condition(w_min: int, w_max: int) -> bool:
    """w_min / w_max > 1/2, as 2 w_min > w_max."""
    if not 0 < w_min <= w_max:
        raise ValueError("need 0 < w_min <= w_max")
    return 2 * w_min > w_max


def minimality_margin(m: int, k: int) -> int:
    """2 w1 - w2 in closed form."""
    return (1 << (k - 1)) * (1 << (m * ((1 << k) - 1))) * ((1 << m) - 2)


def brute_force_minimality(codewords: Sequence[int]) -> List[int]:
    """Nonzero codewords whose support strictly contains another nonzero support."""
    words = sorted({w for w in codewords if w})
    if len(words) ** 2 > 1 << 20:
        raise GuardrailError(f"{len(words)} codewords exceed the pairwise scan limit")
    offenders = []
    for c in words:
        for other in words:
            if other != c and other & c == other:
                offenders.append(c)
                break
    return offenders


# ---------------------------------------------------------------------------
# Nondegeneracy


def nondegeneracy_check(ring: RingSpec) -> bool:
    """Every nonzero x has some a with Tr(a x) != 0; raises with x otherwise."""
    if ring.bits > 24:
        raise GuardrailError(f"m*2^k = {ring.bits} too large")
    tr = ring.field.tr
    for x_enc in range(1, ring.order):
        x = ring.decode(x_enc)
        for a_enc in range(ring.order):
            prod = ring.mul_raw(ring.decode(a_enc), x)
            if any(tr(c) for c in prod):
                break
        else:
            raise TheoremViolation("nondegeneracy of the trace pairing", ring.from_encoding(x_enc))
    return True


# ---------------------------------------------------------------------------
# Dual Lee distance


def sphere_packing_step(m: int, k: int) -> bool:
    """True when 2^(2^k m) < 1 + N, which rules out a dual distance of 3 or more."""
    if m < 2:
        raise ValueError("m >= 2 required")
    return (1 << (m << k)) < 1 + CodeParameters(m, k).N


@lru_cache(maxsize=None)
def _rk_product_table(k: int) -> Tuple[Tuple[int, ...], ...]:
    size = 1 << (1 << k)
    pairs = disjoint_pairs(k)
    table = []
    for a in range(size):
        row = []
        for b in range(size):
            out = 0
            for ma, mb, mc in pairs:
                if (a >> ma) & (b >> mb) & 1:
                    out ^= 1 << mc
            row.append(out)
        table.append(tuple(row))
    return tuple(table)


def rk_mul(a: int, b: int, k: int) -> int:
    """Product of two encoded R_k elements."""
    if k <= 3:
        return _rk_product_table(k)[a][b]
    out = 0
    for ma, mb, mc in disjoint_pairs(k):
        if (a >> ma) & (b >> mb) & 1:
            out ^= 1 << mc
    return out


def ring_inner_product(y: Dict[int, int], word: Sequence[int], k: int) -> int:
    """sum_x y_x * word_x in R_k for a sparse vector ``y``."""
    acc = 0
    for pos, gamma in y.items():
        acc ^= rk_mul(gamma, word[pos], k)
    return acc


@dataclass(frozen=True)
class DualWitness:
    entries: Tuple[Tuple[int, int], ...]  # (position, R_k encoding), positions ascending

    @property
    def as_dict(self) -> Dict[int, int]:
        return dict(self.entries)

    def lee_weight(self, k: int) -> int:
        table = lee_table(k)
        return sum(table[g] for _, g in self.entries)

    def to_json(self, code: Optional[TraceCode] = None) -> dict:
        out = {"entries": [{"position": p, "value": g} for p, g in self.entries]}
        if code is not None:
            out["units"] = [code.units[p].to_text() for p, _ in self.entries]
        return out


@dataclass
class DualSearchResult:
    found_weight_1: Optional[DualWitness]
    found_weight_2: Optional[DualWitness]
    d_prime: Optional[int]
    d_prime_lower_bound: int
    candidates_checked: int = 0


def _key_table(gens: Sequence[Sequence[int]], k: int, n: int, gammas: Sequence[int]) -> Dict[Tuple[int, ...], List[Tuple[int, int]]]:
    """Group (position, gamma) by the vector (gamma * g_t[position])_t."""
    groups: Dict[Tuple[int, ...], List[Tuple[int, int]]] = {}
    for pos in range(n):
        for gamma in gammas:
            key = tuple(rk_mul(gamma, g[pos], k) for g in gens)
            groups.setdefault(key, []).append((pos, gamma))
    return groups


def dual_low_weight_search(code: TraceCode, max_lee: int = 2) -> DualSearchResult:
    """Search the ring dual of C for vectors of Lee weight <= max_lee.

    Orthogonality is first tested against ev(alpha_t) for a field basis
    alpha_t, which generate C as an R_k-module; any witness found is then
    re-checked against ev(a) for every a.  Among witnesses of one weight
    the lexicographically smallest (positions, values) is returned.
    """
    if max_lee not in (1, 2):
        raise ValueError("max_lee must be 1 or 2")
    code.check_enumerable()
    k, n = code.k, code.n
    lee = lee_table(k)
    by_weight: Dict[int, List[int]] = {}
    for g, w in enumerate(lee):
        by_weight.setdefault(w, []).append(g)
    gens = [code.evaluate_encoded(alpha) for alpha in code.ring.field.power_basis()]
    zero_key = (0,) * len(gens)
    checked = 0

    groups1 = _key_table(gens, k, n, by_weight.get(1, []))
    checked += sum(len(v) for v in groups1.values())
    single1 = sorted(groups1.get(zero_key, []))
    w1 = DualWitness((single1[0],)) if single1 else None

    w2 = None
    if max_lee >= 2 and w1 is None:
        candidates = []
        groups2 = _key_table(gens, k, n, by_weight.get(2, []))
        checked += sum(len(v) for v in groups2.values())
        candidates += [((p, g),) for p, g in groups2.get(zero_key, [])]
        for entries in groups1.values():
            entries = sorted(entries)
            for i, (p1, g1) in enumerate(entries):
                for p2, g2 in entries[i + 1:]:
                    if p2 != p1:
                        candidates.append(((p1, g1), (p2, g2)))
        if candidates:
            w2 = DualWitness(min(candidates))

    for w in (w1, w2):
        if w is not None:
            _reverify(code, w)

    if w1 is not None:
        d_prime, lower = 1, 1
    elif w2 is not None:
        d_prime, lower = 2, 2
    else:
        d_prime, lower = None, max_lee + 1
    return DualSearchResult(w1, w2, d_prime, lower, checked)


def _reverify(code: TraceCode, witness: DualWitness) -> None:
    y = witness.as_dict
    for a_enc in range(code.ring.order):
        if ring_inner_product(y, code.evaluate_encoded(a_enc), code.k):
            raise TheoremViolation("dual witness orthogonal to every codeword", {"witness": witness, "a": a_enc})


# ---------------------------------------------------------------------------
# Abelian structure


def group_action_check(code: TraceCode, full: Optional[bool] = None) -> Dict[str, Any]:
    """Regularity of the unit action on coordinates and invariance of C.

    With ``full`` every codeword is permuted; otherwise only the images of
    an F_2 basis of R (enough, since the permutation is linear).  Default:
    full when |C| <= 256.
    """
    code.check_enumerable()
    n = code.n
    if full is None:
        full = code.ring.order <= 256
    perms = {u.encoding: code.coordinate_permutation(u) for u in code.units}
    identity = tuple(range(n))
    if perms[1] != identity:
        raise TheoremViolation("unit 1 acts trivially", perms[1])

    # transitive with trivial point stabilizers
    reach = [set() for _ in range(n)]
    for u_enc, pi in perms.items():
        for i, j in enumerate(pi):
            if i == j and u_enc != 1:
                raise TheoremViolation("trivial stabilizer", {"unit": u_enc, "fixed": i})
            reach[i].add(j)
    for i, r in enumerate(reach):
        if len(r) != n:
            raise TheoremViolation("transitive action", {"position": i, "orbit": len(r)})

    words = {a_enc: code.evaluate_encoded(a_enc) for a_enc in range(code.ring.order)}
    word_set = set(words.values())
    sources = list(words) if full else code.basis_encodings()
    for u_enc, pi in perms.items():
        u = code.ring.from_encoding(u_enc)
        for a_enc in sources:
            image = tuple(words[a_enc][pi[i]] for i in range(n))
            if image not in word_set:
                raise TheoremViolation("C invariant under unit permutations", {"unit": u_enc, "a": a_enc})
            au = r_mul(code.ring.from_encoding(a_enc), u).encoding
            if image != words[au]:
                raise TheoremViolation("permuted ev(a) equals ev(a u)", {"unit": u_enc, "a": a_enc})
    return {"units": len(perms), "full": full, "regular": True, "invariant": True}


# ---------------------------------------------------------------------------
# Verification orchestration


@dataclass
class ClaimReport:
    claim: str
    parameters: Dict[str, Any]
    status: str
    witness: Any = None
    details: Dict[str, Any] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status == "verified"

    def to_json(self) -> dict:
        out = {
            "claim": self.claim,
            "parameters": self.parameters,
            "status": self.status,
            "elapsed": round(self.elapsed, 6),
        }
        if self.details:
            out["details"] = self.details
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _run_claim(name: str, params: dict, fn: Callable[[], Dict[str, Any]]) -> ClaimReport:
    start = time.perf_counter()
    try:
        details = fn() or {}
        status, witness = "verified", None
    except TheoremViolation as exc:
        details, status, witness = {}, "violated", repr(exc.witness)
    return ClaimReport(name, params, status, witness, details, time.perf_counter() - start)


def check_enumeration(code: TraceCode) -> Dict[str, Any]:
    rows = code.binary_generator_matrix()
    words = code.gray_codewords()
    if len(set(words)) != len(words):
        raise TheoremViolation("ev is injective", {"distinct": len(set(words)), "expected": len(words)})
    for a_enc, w in enumerate(words):
        combo = 0
        for r, row in enumerate(rows):
            if (a_enc >> r) & 1:
                combo ^= row
        if combo != w:
            raise TheoremViolation("codeword equals its generator-matrix combination", a_enc)
    return {"codewords": len(words), "n": code.n, "N": code.N, "K": code.K, "rank": gf2.rank(rows)}


def check_distribution(code: TraceCode, workers: int = 1) -> Dict[str, Any]:
    observed = code.weight_distribution(workers=workers)
    predicted = predicted_distribution(code.m, code.k)
    if observed != predicted:
        raise TheoremViolation("observed distribution matches prediction", {"observed": observed.to_json()})
    return {"distribution": observed.to_json(), "matches_prediction": True}


def check_per_codeword(code: TraceCode) -> Dict[str, Any]:
    for a in code.ring.elements():
        got = code.lee_weight_of(a.encoding)
        want = theoretical_lee_weight(a)
        if got != want:
            raise TheoremViolation("per-codeword Lee weight", {"a": a.to_text(), "observed": got, "predicted": want})
    return {"checked": code.ring.order}


def check_griesmer(code: TraceCode) -> Dict[str, Any]:
    p = code.params
    report = is_distance_optimal(p.N, p.K, p.d)
    if not report.optimal:
        raise TheoremViolation("Griesmer optimality", report.to_json())
    gap = griesmer_gap_identity(code.m, code.k)
    out = report.to_json()
    out["gap_identity_value"] = gap
    return out


def check_minimality(code: TraceCode) -> Dict[str, Any]:
    p = code.params
    if not ab_minimality_condition(p.w1, p.w2):
        raise TheoremViolation("Ashikhmin-Barg condition", {"w1": p.w1, "w2": p.w2})
    if minimality_margin(code.m, code.k) != 2 * p.w1 - p.w2:
        raise TheoremViolation("minimality margin closed form", minimality_margin(code.m, code.k))
    offenders = brute_force_minimality(code.gray_codewords())
    if offenders:
        raise TheoremViolation("all nonzero codewords minimal", hex(offenders[0]))
    return {"margin": 2 * p.w1 - p.w2, "non_minimal": 0}


def check_dual(code: TraceCode) -> Dict[str, Any]:
    if not sphere_packing_step(code.m, code.k):
        raise TheoremViolation("sphere packing excludes d' >= 3", {"m": code.m, "k": code.k})
    result = dual_low_weight_search(code, 2)
    if result.found_weight_1 is not None:
        raise TheoremViolation("no dual codeword of Lee weight 1", result.found_weight_1.to_json(code))
    if result.d_prime != 2:
        raise TheoremViolation("dual Lee distance is 2", {"d_prime_lower_bound": result.d_prime_lower_bound})
    return {"d_prime": 2, "weight_2_witness": result.found_weight_2.to_json(code)}


def check_group_action(code: TraceCode) -> Dict[str, Any]:
    return group_action_check(code)


def check_nondegeneracy(code: TraceCode) -> Dict[str, Any]:
    nondegeneracy_check(code.ring)
    return {"nonzero_x": code.ring.order - 1}


def verify_all(code: TraceCode, workers: int = 1) -> List[ClaimReport]:
    """Run every claim check in order; violations are reported, not raised."""
    if code.m < 2:
        raise ValueError("m >= 2 required")
    code.check_enumerable()
    params = {"m": code.m, "k": code.k, "modulus": hex(code.ring.field.modulus)}
    checks = [
        ("code_enumeration", lambda: check_enumeration(code)),
        ("weight_distribution", lambda: check_distribution(code, workers)),
        ("per_codeword_lee_weight", lambda: check_per_codeword(code)),
        ("griesmer_optimality", lambda: check_griesmer(code)),
        ("minimal_codewords", lambda: check_minimality(code)),
        ("nondegeneracy", lambda: check_nondegeneracy(code)),
        ("dual_lee_distance", lambda: check_dual(code)),
        ("group_action_regular", lambda: check_group_action(code)),
    ]
    return [_run_claim(name, params, fn) for name, fn in checks]
