"""Dense exact linear algebra over the rationals.

Matrices are lists of rows of :class:`fractions.Fraction`; vectors are tuples.
Elimination is fraction-free: every row is cleared to integers and reduced with
Bareiss-style exact division, so intermediate entries stay bounded by minors of
the input instead of growing as nested fractions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Matrix = list[list[Fraction]]
Vector = tuple[Fraction, ...]


class InconsistentSystemError(ValueError):
    """Raised by :func:`solve_affine` when ``A x = b`` has no solution.

    ``certificate`` is a vector ``y`` with ``y A = 0`` and ``y b != 0``.
    """

    def __init__(self, certificate: Vector):
        super().__init__("linear system is inconsistent")
        self.certificate = certificate


@dataclass(frozen=True)
class AffineSolutionSet:
    particular: Vector
    nullspace: tuple[Vector, ...]

    @property
    def dim(self) -> int:
        return len(self.nullspace)

    def point(self, params: Sequence) -> Vector:
        x = list(self.particular)
        for t, v in zip(params, self.nullspace, strict=True):
            for i, vi in enumerate(v):
                x[i] += Fraction(t) * vi
        return tuple(x)


def as_matrix(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def as_vector(xs) -> Vector:
    return tuple(Fraction(x) for x in xs)


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Matrix, x: Sequence) -> Vector:
    return tuple(sum((aij * xj for aij, xj in zip(row, x)), Fraction(0)) for row in a)


def dot(x: Sequence, y: Sequence):
    return sum((a * b for a, b in zip(x, y, strict=True)), Fraction(0))


def trace(a: Matrix):
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def _integer_rows(a: Matrix) -> list[list[int]]:
    out = []
    for row in a:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def _ff_gauss_jordan(m: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free Gauss-Jordan on the first ``ncols`` columns, in place.

    Pivot choice is canonical: leftmost column first, then the smallest row
    index holding a nonzero entry. Returns the reduced integer rows (each pivot
    row scaled by the common final pivot) and the pivot columns.
    """
    nrows = len(m)
    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        pr = m[r]
        for i in range(nrows):
            if i == r:
                continue
            row = m[i]
            f = row[c]
            if f == 0:
                if piv != prev:
                    m[i] = [(piv * x) // prev for x in row]
                continue
            new = []
            for x, y in zip(row, pr):
                q, rem = divmod(piv * x - f * y, prev)
                assert rem == 0, "fraction-free step lost exactness"
                new.append(q)
            m[i] = new
        prev = piv
        pivots.append(c)
        r += 1
    return m, pivots


def rref(a: Matrix, ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (pivots normalised to 1) and pivot columns.

    Only the first ``ncols`` columns are eliminated; trailing columns (an
    augmented right-hand side) are carried along.
    """
    if not a:
        return [], []
    width = len(a[0])
    ncols = width if ncols is None else ncols
    m, pivots = _ff_gauss_jordan(_integer_rows(a), ncols)
    out: Matrix = []
    for r, c in enumerate(pivots):
        p = m[r][c]
        out.append([Fraction(x, p) for x in m[r]])
    for r in range(len(pivots), len(m)):
        out.append([Fraction(x) for x in m[r]])
    return out, pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1]) if a else 0


def row_space(a: Matrix) -> Matrix:
    """Canonical basis (nonzero RREF rows) of the row space of ``a``."""
    if not a:
        return []
    r, pivots = rref(a)
    return r[: len(pivots)]


def nullspace(a: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x : a x = 0}``, one vector per free column (in column order).

    ``ncols`` is required when ``a`` has no rows.
    """
    if not a:
        n = ncols or 0
        return [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    n = len(a[0])
    r, pivots = rref(a)
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -r[row][f]
        basis.append(tuple(v))
    return basis


def left_nullspace(a: Matrix) -> list[Vector]:
    return nullspace(transpose(a), ncols=len(a))


def solve_affine(a: Matrix, b: Sequence) -> AffineSolutionSet:
    """General solution of ``a x = b``.

    Raises :class:`InconsistentSystemError` carrying a left-kernel certificate
    when no solution exists.
    """
    if len(a) != len(b):
        raise ValueError(f"A has {len(a)} rows but b has {len(b)} entries")
    b = as_vector(b)
    if not a:
        raise ValueError("empty system: number of unknowns is undetermined")
    n = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    r, pivots = rref(aug, ncols=n)
    if any(row[n] != 0 for row in r[len(pivots):]):
        for y in left_nullspace(a):
            if dot(y, b) != 0:
                raise InconsistentSystemError(y)
        raise AssertionError("inconsistent system without certificate")
    x = [Fraction(0)] * n
    for row, pc in enumerate(pivots):
        x[pc] = r[row][n]
    return AffineSolutionSet(tuple(x), tuple(nullspace(a)))


def primitive_integer(v: Sequence) -> tuple[Fraction, tuple[int, ...]]:
    """Write a nonzero rational vector as ``scale * d`` with ``d`` coprime integers.

    ``scale`` is positive, so the sign pattern of ``d`` matches ``v``.
    """
    v = as_vector(v)
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return Fraction(g, den), tuple(x // g for x in ints)
