"""Dense GF(2) linear algebra on Python ints used as bit rows.

A matrix is a list of ints; bit ``j`` of row ``i`` is entry (i, j).
Pivots are always taken at the lowest available column index so that
solutions and bases are reproducible.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Sequence, Tuple


def bits(mask: int) -> List[int]:
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def from_bits(idx: Iterable[int]) -> int:
    m = 0
    for j in idx:
        m ^= 1 << j
    return m


def lowbit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def transpose(rows: Sequence[int], ncols: int) -> List[int]:
    out = [0] * ncols
    for i, r in enumerate(rows):
        for j in bits(r):
            out[j] |= 1 << i
    return out


def matvec(rows: Sequence[int], x: int) -> int:
    """Return A x where A is given by rows; result bit i = <row_i, x>."""
    y = 0
    for i, r in enumerate(rows):
        if bin(r & x).count("1") & 1:
            y |= 1 << i
    return y


def _echelon(rows: Sequence[int]) -> Tuple[List[Tuple[int, int, int]], List[int]]:
    """Reduce rows; return (pivots, combos).

    ``pivots`` is a list of (pivot_col, reduced_row, combination) where
    combination records which input rows were summed.  ``combos`` holds the
    combinations of the rows that reduced to zero (a kernel basis of A^T).
    """
    basis: List[Tuple[int, int, int]] = []
    dead: List[int] = []
    for i, r in enumerate(rows):
        c = 1 << i
        for p, br, bc in basis:
            if r >> p & 1:
                r ^= br
                c ^= bc
        if r == 0:
            dead.append(c)
            continue
        p = lowbit(r)
        # keep the basis fully reduced at pivot columns
        basis = [(q, br ^ r, bc ^ c) if br >> p & 1 else (q, br, bc)
                 for q, br, bc in basis]
        basis.append((p, r, c))
    basis.sort()
    return basis, dead


def rank(rows: Sequence[int]) -> int:
    return len(_echelon(rows)[0])


def row_space_basis(rows: Sequence[int]) -> List[int]:
    return [r for _, r, _ in _echelon(rows)[0]]


def kernel_basis(rows: Sequence[int], ncols: int) -> List[int]:
    """Basis of {x : A x = 0} for A with the given rows and ncols columns."""
    return _echelon(transpose(rows, ncols))[1]


def image_basis(rows: Sequence[int], ncols: int) -> List[int]:
    """Basis of the column space of A (vectors indexed by row)."""
    return row_space_basis(transpose(rows, ncols))


def solve(rows: Sequence[int], ncols: int, b: int) -> Optional[int]:
    """Find x with A x = b, or None.

    Columns of A are eliminated in index order and free variables are set to
    zero, so the answer is deterministic.
    """
    cols = transpose(rows, ncols)
    basis, _ = _echelon(cols)
    r, x = b, 0
    for p, br, bc in basis:
        if r >> p & 1:
            r ^= br
            x ^= bc
    return x if r == 0 else None


def in_span(vectors: Sequence[int], v: int) -> bool:
    r = v
    for p, br, _ in _echelon(vectors)[0]:
        if r >> p & 1:
            r ^= br
    return r == 0
