"""Independent reference implementations used to cross-check the package.

Everything here is deliberately written with different algorithms than the
library: rational Gaussian elimination instead of Bareiss, column echelon
via repeated gcd steps instead of row Hermite form, breadth-first coset
enumeration instead of Smith normal form, and brute-force search instead
of lattice solving.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iter_product
from typing import Optional, Sequence


def det_fraction(rows: Sequence[Sequence[int]]) -> Fraction:
    """Determinant by plain rational Gaussian elimination."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    mat = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        det *= mat[col][col]
        for r in range(col + 1, n):
            factor = mat[r][col] / mat[col][col]
            if factor:
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[col])]
    return det


def column_echelon(vectors: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Echelon basis of the span of integer column vectors via gcd steps.

    Returns vectors whose leading nonzero rows strictly increase; each has
    a positive leading entry.
    """
    cols = [list(v) for v in vectors if any(v)]
    basis: list[list[int]] = []
    for row in range(n):
        nz = [c for c in cols if c[row] != 0]
        rest = [c for c in cols if c[row] == 0]
        while len(nz) > 1:
            nz.sort(key=lambda c: abs(c[row]))
            a, b = nz[0], nz[1]
            q = b[row] // a[row]
            for i in range(n):
                b[i] -= q * a[i]
            if not any(b):
                nz.remove(b)
            elif b[row] == 0:
                nz.remove(b)
                rest.append(b)
        if nz:
            pivot = nz[0]
            if pivot[row] < 0:
                pivot = [-x for x in pivot]
            basis.append(pivot)
        cols = rest
    return basis


def in_column_span(v: Sequence[int], vectors: Sequence[Sequence[int]], n: int) -> bool:
    """Integer membership of v in the span of the given column vectors."""
    basis = column_echelon(vectors, n)
    work = list(v)
    for b in basis:
        p = next(i for i, x in enumerate(b) if x != 0)
        if work[p] % b[p] != 0:
            return False
        q = work[p] // b[p]
        for i in range(n):
            work[i] -= q * b[i]
    return not any(work)


def coset_count(
    vectors: Sequence[Sequence[int]], n: int, cap: int = 1024
) -> Optional[int]:
    """Count Z^n modulo the column span by breadth-first enumeration.

    Returns None when the quotient is infinite or has more than cap
    elements.  Representatives are canonicalized by floor reduction
    against the echelon basis, so the walk visits each coset once.
    """
    if n == 0:
        return 1
    basis = column_echelon(vectors, n)
    if len(basis) < n:
        return None

    def canon(vec: Sequence[int]) -> tuple[int, ...]:
        work = list(vec)
        for b in basis:
            p = next(i for i, x in enumerate(b) if x != 0)
            q = work[p] // b[p]
            if q:
                for i in range(n):
                    work[i] -= q * b[i]
        return tuple(work)

    zero = canon([0] * n)
    seen = {zero}
    frontier = [zero]
    while frontier:
        cur = frontier.pop()
        for i in range(n):
            for step in (1, -1):
                nxt = list(cur)
                nxt[i] += step
                rep = canon(nxt)
                if rep not in seen:
                    if len(seen) >= cap:
                        return None
                    seen.add(rep)
                    frontier.append(rep)
    return len(seen)


def matrix_columns(entries: Sequence[Sequence[int]]) -> list[list[int]]:
    if not entries:
        return []
    return [[row[j] for row in entries] for j in range(len(entries[0]))]


def brute_minimal_multiplier(
    chi: Sequence[int],
    induced: Sequence[Sequence[int]],
    bound: int = 6,
    r_max: int = 8,
) -> Optional[tuple[int, tuple[int, ...]]]:
    """Smallest r with r*chi an integer combination of the induced rows,
    found by exhaustive search over coefficients in [-bound, bound]."""
    k = len(induced)
    width = len(chi)
    for r in range(1, r_max + 1):
        target = [r * x for x in chi]
        for combo in iter_product(range(-bound, bound + 1), repeat=k):
            if all(
                sum(c * row[j] for c, row in zip(combo, induced)) == target[j]
                for j in range(width)
            ):
                return r, combo
    return None


def permutation_fixed_points(perm_matrix_entries: Sequence[Sequence[int]]) -> int:
    return sum(row[i] for i, row in enumerate(perm_matrix_entries))
