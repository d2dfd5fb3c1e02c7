"""GF(2) linear algebra on int bitsets (bit j of a row = column j)."""

from __future__ import annotations

from typing import Iterator, List, Optional, Sequence, Tuple


def rref(rows: Sequence[int]) -> Tuple[List[int], List[int]]:
    """Reduced row echelon form.  Returns ``(nonzero_rows, pivot_columns)``."""
    work = [r for r in rows if r]
    pivots: List[int] = []
    out: List[int] = []
    while work:
        row = work.pop()
        for r, p in zip(out, pivots):
            if (row >> p) & 1:
                row ^= r
        if not row:
            continue
        p = (row & -row).bit_length() - 1
        out = [r ^ row if (r >> p) & 1 else r for r in out]
        out.append(row)
        pivots.append(p)
    order = sorted(range(len(out)), key=pivots.__getitem__)
    return [out[i] for i in order], [pivots[i] for i in order]


def rank(rows: Sequence[int]) -> int:
    return len(rref(rows)[0])


def in_span(vec: int, rows: Sequence[int]) -> bool:
    reduced, pivots = rref(rows)
    for r, p in zip(reduced, pivots):
        if (vec >> p) & 1:
            vec ^= r
    return vec == 0


def kernel(rows: Sequence[int], n_cols: int) -> List[int]:
    """Basis of ``{y : popcount(r & y) even for every row r}``."""
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    for f in range(n_cols):
        if f in pivot_set:
            continue
        y = 1 << f
        for r, p in zip(reduced, pivots):
            if (r >> f) & 1:
                y |= 1 << p
        basis.append(y)
    return basis


def solve_combination(vectors: Sequence[int], target: int) -> Optional[List[int]]:
    """Indices ``I`` with ``XOR_{i in I} vectors[i] == target``, or None."""
    basis: List[Tuple[int, int, int]] = []  # (pivot, vector, index mask)
    for i, v in enumerate(vectors):
        combo = 1 << i
        for p, b, c in basis:
            if (v >> p) & 1:
                v ^= b
                combo ^= c
        if v:
            basis.append(((v & -v).bit_length() - 1, v, combo))
    combo = 0
    for p, b, c in basis:
        if (target >> p) & 1:
            target ^= b
            combo ^= c
    if target:
        return None
    return [i for i in range(len(vectors)) if (combo >> i) & 1]


def transpose(rows: Sequence[int], n_cols: int) -> List[int]:
    cols = []
    for j in range(n_cols):
        c = 0
        for i, r in enumerate(rows):
            if (r >> j) & 1:
                c |= 1 << i
        cols.append(c)
    return cols


def span(rows: Sequence[int]) -> Iterator[int]:
    """All 2^len(rows) combinations, in Gray-code order starting from 0."""
    word = 0
    yield word
    for step in range(1, 1 << len(rows)):
        word ^= rows[(step & -step).bit_length() - 1]
        yield word


def dot(a: int, b: int) -> int:
    return (a & b).bit_count() & 1


def solution_count(rows: Sequence[int], rhs: Sequence[int], n_vars: int) -> int:
    """Number of ``u`` in F_2^n_vars with ``dot(u, rows[i]) == rhs[i]`` for all i."""
    augmented = [r | (b << n_vars) for r, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented)
    if any(p >= n_vars for p in pivots):
        return 0
    return 1 << (n_vars - len(reduced))
