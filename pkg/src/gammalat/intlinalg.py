"""Exact integer linear algebra.

Hermite and Smith normal forms with their unimodular transforms, cokernel
structure, integer linear solving, and minimal-multiplier computations.
Everything runs on Python's arbitrary-precision integers; no floating
point is used anywhere.  All outputs are canonical: the same input always
produces the identical object, so downstream reports are reproducible
byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import NotInRationalSpan

__all__ = [
    "IntMatrix",
    "SnfDecomposition",
    "FiniteAbelianGroup",
    "hermite_normal_form",
    "smith_normal_form",
    "cokernel_structure",
    "minimal_multiplier",
    "solve_integer_linear",
    "kernel_basis",
    "matrix_rank",
    "scaled_inverse",
    "unimodular_inverse",
    "block_diagonal",
]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored as a tuple of row tuples."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.entries)}")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError(f"expected {self.cols} columns, got {len(row)}")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
        elif cols is not None:
            width = cols
        else:
            width = 0
        return IntMatrix(len(data), width, data)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_identity(self) -> bool:
        if not self.is_square():
            return False
        return all(
            self.entries[i][j] == (1 if i == j else 0)
            for i in range(self.rows)
            for j in range(self.cols)
        )

    def is_permutation_matrix(self) -> bool:
        """True if every row and column holds exactly one 1 and zeros elsewhere."""
        if not self.is_square():
            return False
        seen_cols = [False] * self.cols
        for row in self.entries:
            hits = [j for j, x in enumerate(row) if x != 0]
            if len(hits) != 1 or row[hits[0]] != 1:
                return False
            if seen_cols[hits[0]]:
                return False
            seen_cols[hits[0]] = True
        return True

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ot = other.entries
        out = []
        for row in self.entries:
            new_row = [0] * other.cols
            for k, a in enumerate(row):
                if a:
                    ork = ot[k]
                    for j in range(other.cols):
                        new_row[j] += a * ork[j]
            out.append(tuple(new_row))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def add(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in add")
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)),
        )

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(k * x for x in row) for row in self.entries))

    def neg(self) -> "IntMatrix":
        return self.scale(-1)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.entries else tuple(() for _ in range(self.cols)))

    def times_vector(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.entries)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def trace(self) -> int:
        if not self.is_square():
            raise ValueError("trace requires a square matrix")
        return sum(self.entries[i][i] for i in range(self.rows))

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise ValueError("determinant requires a square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            pivot = m[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = pivot
        return sign * m[n - 1][n - 1]

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def block_diagonal(blocks: Iterable[IntMatrix]) -> IntMatrix:
    """Direct sum of matrices along the diagonal; empty input gives the 0x0 matrix."""
    blocks = list(blocks)
    total_r = sum(b.rows for b in blocks)
    total_c = sum(b.cols for b in blocks)
    out = [[0] * total_c for _ in range(total_r)]
    r0 = 0
    c0 = 0
    for b in blocks:
        for i, row in enumerate(b.entries):
            for j, x in enumerate(row):
                out[r0 + i][c0 + j] = x
        r0 += b.rows
        c0 += b.cols
    return IntMatrix(total_r, total_c, tuple(tuple(row) for row in out))


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finite abelian group in invariant-factor form.

    ``invariant_factors`` are the cyclic orders > 1 with each dividing the
    next; the trivial group is the empty tuple.
    """

    invariant_factors: tuple[int, ...]

    def __post_init__(self) -> None:
        for d in self.invariant_factors:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a != 0:
                raise ValueError(f"invariant factors {a}, {b} violate the divisibility chain")

    @property
    def order(self) -> int:
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_trivial(self) -> bool:
        return not self.invariant_factors


@dataclass(frozen=True)
class SnfDecomposition:
    """Smith normal form ``u * a * v = d`` with unimodular ``u`` and ``v``.

    ``elementary_divisors`` are the nonzero diagonal entries of ``d``
    (including any 1s), positive and each dividing the next.
    """

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix
    elementary_divisors: tuple[int, ...]


def _swap_rows(m: list[list[int]], i: int, j: int) -> None:
    m[i], m[j] = m[j], m[i]


def _swap_cols(m: list[list[int]], i: int, j: int) -> None:
    for row in m:
        row[i], row[j] = row[j], row[i]


def _addmul_row(m: list[list[int]], dst: int, src: int, q: int) -> None:
    if q:
        mdst = m[dst]
        msrc = m[src]
        for j in range(len(mdst)):
            mdst[j] -= q * msrc[j]


def _addmul_col(m: list[list[int]], dst: int, src: int, q: int) -> None:
    if q:
        for row in m:
            row[dst] -= q * row[src]


def _negate_row(m: list[list[int]], i: int) -> None:
    m[i] = [-x for x in m[i]]


def hermite_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u * a = h``, ``u`` unimodular, ``h`` in row
    echelon form with positive pivots and every entry above a pivot reduced
    into ``[0, pivot)``.  Zero rows sink to the bottom.  Pivot selection
    (smallest absolute value, then smallest row index) is fixed, so the
    result is canonical.
    """
    h = [list(row) for row in a.entries]
    u = [[1 if i == j else 0 for j in range(a.rows)] for i in range(a.rows)]
    pr = 0
    for col in range(a.cols):
        if pr >= a.rows:
            break
        while True:
            nz = [i for i in range(pr, a.rows) if h[i][col] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(h[i][col]), i))
            if i0 != pr:
                _swap_rows(h, pr, i0)
                _swap_rows(u, pr, i0)
            if h[pr][col] < 0:
                _negate_row(h, pr)
                _negate_row(u, pr)
            p = h[pr][col]
            clean = True
            for i in range(pr + 1, a.rows):
                if h[i][col] != 0:
                    q = h[i][col] // p
                    _addmul_row(h, i, pr, q)
                    _addmul_row(u, i, pr, q)
                    if h[i][col] != 0:
                        clean = False
            if clean:
                break
        if pr < a.rows and h[pr][col] != 0:
            p = h[pr][col]
            for i in range(pr):
                q = h[i][col] // p
                _addmul_row(h, i, pr, q)
                _addmul_row(u, i, pr, q)
            pr += 1
    hm = IntMatrix(a.rows, a.cols, tuple(tuple(row) for row in h))
    um = IntMatrix(a.rows, a.rows, tuple(tuple(row) for row in u))
    return hm, um


def smith_normal_form(a: IntMatrix) -> SnfDecomposition:
    """Smith normal form with transforms.

    The diagonal is normalized to nonnegative entries forming a divisibility
    chain, nonzero entries first.  Pivot selection is fixed (smallest
    absolute value, then smallest position), so ``u``, ``d``, ``v`` are
    canonical for a given input.
    """
    r, c = a.rows, a.cols
    m = [list(row) for row in a.entries]
    u = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    v = [[1 if i == j else 0 for j in range(c)] for i in range(c)]
    t = 0
    while t < min(r, c):
        pivot = None
        key = None
        for i in range(t, r):
            mi = m[i]
            for j in range(t, c):
                x = mi[j]
                if x != 0:
                    k2 = (abs(x), i, j)
                    if key is None or k2 < key:
                        key = k2
                        pivot = (i, j)
        if pivot is None:
            break
        i0, j0 = pivot
        if i0 != t:
            _swap_rows(m, t, i0)
            _swap_rows(u, t, i0)
        if j0 != t:
            _swap_cols(m, t, j0)
            _swap_cols(v, t, j0)
        while True:
            # Clear the column below the pivot by Euclidean steps.
            for i in range(t + 1, r):
                if m[i][t] != 0:
                    q = m[i][t] // m[t][t]
                    _addmul_row(m, i, t, q)
                    _addmul_row(u, i, t, q)
            below = [i for i in range(t + 1, r) if m[i][t] != 0]
            if below:
                i0 = min(below, key=lambda i: (abs(m[i][t]), i))
                _swap_rows(m, t, i0)
                _swap_rows(u, t, i0)
                continue
            # Clear the row to the right of the pivot.
            for j in range(t + 1, c):
                if m[t][j] != 0:
                    q = m[t][j] // m[t][t]
                    _addmul_col(m, j, t, q)
                    _addmul_col(v, j, t, q)
            right = [j for j in range(t + 1, c) if m[t][j] != 0]
            if right:
                j0 = min(right, key=lambda j: (abs(m[t][j]), j))
                _swap_cols(m, t, j0)
                _swap_cols(v, t, j0)
                continue
            # Pivot must divide every remaining entry; if not, fold the
            # offending row into row t and keep reducing.
            p = m[t][t]
            offender = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if m[i][j] % p != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            for j in range(c):
                m[t][j] += m[offender][j]
            for j in range(r):
                u[t][j] += u[offender][j]
        if m[t][t] < 0:
            _negate_row(m, t)
            _negate_row(u, t)
        t += 1
    divisors = tuple(m[i][i] for i in range(min(r, c)) if m[i][i] != 0)
    dm = IntMatrix(r, c, tuple(tuple(row) for row in m))
    um = IntMatrix(r, r, tuple(tuple(row) for row in u))
    vm = IntMatrix(c, c, tuple(tuple(row) for row in v))
    return SnfDecomposition(um, dm, vm, divisors)


def matrix_rank(a: IntMatrix) -> int:
    """Rank over the rationals (= number of nonzero elementary divisors)."""
    return len(smith_normal_form(a).elementary_divisors)


def cokernel_structure(a: IntMatrix) -> tuple[FiniteAbelianGroup, int]:
    """Structure of ``Z^rows / (column span of a)``.

    Returns ``(torsion, free_rank)`` where ``torsion`` collects the
    elementary divisors > 1 and ``free_rank = rows - rank``.
    """
    snf = smith_normal_form(a)
    torsion = tuple(d for d in snf.elementary_divisors if d > 1)
    free_rank = a.rows - len(snf.elementary_divisors)
    return FiniteAbelianGroup(torsion), free_rank


def kernel_basis(a: IntMatrix) -> tuple[tuple[int, ...], ...]:
    """Basis of the integer kernel ``{x : a*x = 0}`` (a saturated lattice)."""
    snf = smith_normal_form(a)
    rank = len(snf.elementary_divisors)
    return tuple(snf.v.column(j) for j in range(rank, a.cols))


def _reduce_mod_hnf_rows(x: list[int], h: IntMatrix) -> list[int]:
    """Canonical representative of ``x`` modulo the row span of ``h`` (an HNF)."""
    for row in h.entries:
        pivot_col = None
        for j, val in enumerate(row):
            if val != 0:
                pivot_col = j
                break
        if pivot_col is None:
            continue
        p = row[pivot_col]
        q = x[pivot_col] // p
        if q:
            for j in range(len(x)):
                x[j] -= q * row[j]
    return x


def _canonicalize_solution(x: Sequence[int], a: IntMatrix) -> tuple[int, ...]:
    """Reduce a solution modulo the integer kernel of ``a`` to a canonical one."""
    kern = kernel_basis(a)
    if not kern:
        return tuple(x)
    h, _ = hermite_normal_form(IntMatrix.from_rows(kern, cols=a.cols))
    return tuple(_reduce_mod_hnf_rows(list(x), h))


def solve_integer_linear(a: IntMatrix, b: Sequence[int]) -> Optional[tuple[int, ...]]:
    """One integer solution of ``a*x = b``, or None if none exists.

    The returned solution is canonical: it is reduced modulo the integer
    kernel of ``a``, so equal inputs give the identical witness.
    """
    if len(b) != a.rows:
        raise ValueError("right-hand side length mismatch")
    snf = smith_normal_form(a)
    w = snf.u.times_vector(b)
    k = len(snf.elementary_divisors)
    y = [0] * a.cols
    for i in range(a.rows):
        if i < k:
            d = snf.d.entries[i][i]
            if w[i] % d != 0:
                return None
            if i < a.cols:
                y[i] = w[i] // d
        elif w[i] != 0:
            return None
    x = snf.v.times_vector(y)
    out = _canonicalize_solution(x, a)
    if a.times_vector(out) != tuple(int(val) for val in b):
        raise AssertionError("integer solve verification failed")
    return out


def minimal_multiplier(
    v: Sequence[int], basis: Sequence[Sequence[int]]
) -> tuple[int, tuple[int, ...]]:
    """Smallest ``r >= 1`` with ``r*v`` in the integer span of ``basis``.

    Returns ``(r, coeffs)`` with ``r*v = sum(coeffs[j] * basis[j])``.
    The valid multipliers form an ideal of Z, so the minimal positive one
    divides every other; it is read off the Smith form of the basis matrix.
    ``coeffs`` is canonical (reduced modulo the kernel of the basis matrix).
    Raises NotInRationalSpan if no multiple of ``v`` lies in the span.
    """
    target = tuple(int(x) for x in v)
    vectors = [tuple(int(x) for x in w) for w in basis]
    for w in vectors:
        if len(w) != len(target):
            raise ValueError("basis vector length mismatch")
    if not vectors:
        if any(target):
            raise NotInRationalSpan("nonzero vector, empty basis")
        return 1, ()
    n = len(target)
    bmat = IntMatrix(n, len(vectors), tuple(tuple(w[i] for w in vectors) for i in range(n)))
    snf = smith_normal_form(bmat)
    w = snf.u.times_vector(target)
    k = len(snf.elementary_divisors)
    r = 1
    for i in range(n):
        if i < k:
            d = snf.d.entries[i][i]
            step = d // gcd(d, w[i])
            r = r * step // gcd(r, step)
        elif w[i] != 0:
            raise NotInRationalSpan(f"component {i} obstructs rational solvability")
    y = [0] * bmat.cols
    for i in range(k):
        y[i] = r * w[i] // snf.d.entries[i][i]
    x = snf.v.times_vector(y)
    coeffs = _canonicalize_solution(x, bmat)
    if bmat.times_vector(coeffs) != tuple(r * x for x in target):
        raise AssertionError("minimal multiplier verification failed")
    return r, coeffs


def scaled_inverse(a: IntMatrix, e: int) -> IntMatrix:
    """The integer matrix ``e * a^-1`` for square nonsingular ``a``.

    Requires every elementary divisor of ``a`` to divide ``e`` (equivalently
    ``e`` annihilates the cokernel), which makes the result integral:
    from ``u*a*v = d`` we get ``e*a^-1 = v * (e*d^-1) * u``.
    """
    if not a.is_square():
        raise ValueError("scaled inverse requires a square matrix")
    n = a.rows
    if n == 0:
        return a
    snf = smith_normal_form(a)
    if len(snf.elementary_divisors) != n:
        raise ValueError("matrix is singular")
    for d in snf.elementary_divisors:
        if e % d != 0:
            raise ValueError(f"divisor {d} does not divide the scale {e}")
    middle = IntMatrix(
        n, n, tuple(tuple(e // snf.elementary_divisors[i] if i == j else 0 for j in range(n)) for i in range(n))
    )
    return snf.v.mul(middle).mul(snf.u)


def unimodular_inverse(a: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular matrix."""
    return scaled_inverse(a, 1)
