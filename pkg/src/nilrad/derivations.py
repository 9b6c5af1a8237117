"""Derivation algebra and the diagonal torus of derivations."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import LieLaw
from .linalg import Matrix, Vector, nullspace


@dataclass(frozen=True)
class DerivationSpace:
    basis: tuple[Matrix, ...]
    n: int

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class DiagonalTorus:
    generators: tuple[Vector, ...]
    n: int

    @property
    def dim(self) -> int:
        return len(self.generators)


def leibniz_system(law: LieLaw) -> Matrix:
    """Rows of the linear system ``D[x,y] = [Dx,y] + [x,Dy]`` on basis pairs.

    Unknown ``D[a][b]`` (column convention, ``D e_b = sum_a D[a][b] e_a``) sits
    at position ``a*n + b``.
    """
    c = law.tensor()
    n = law.n
    rows = []
    for p in range(n):
        for q in range(p + 1, n):
            for k in range(n):
                row = [Fraction(0)] * (n * n)
                for l in range(n):
                    if c[p][q][l]:
                        row[k * n + l] += c[p][q][l]
                for i in range(n):
                    if c[i][q][k]:
                        row[i * n + p] -= c[i][q][k]
                    if c[p][i][k]:
                        row[i * n + q] -= c[p][i][k]
                if any(row):
                    rows.append(row)
    return rows


def derivation_space(law: LieLaw) -> DerivationSpace:
    n = law.n
    basis = []
    for v in nullspace(leibniz_system(law), ncols=n * n):
        basis.append([list(v[r * n:(r + 1) * n]) for r in range(n)])
    return DerivationSpace(tuple(basis), n)


def is_derivation(law: LieLaw, d: Matrix) -> bool:
    """Direct check of the Leibniz rule on every pair of basis vectors."""
    n = law.n

    def apply(v):
        return tuple(sum((d[r][s] * v[s] for s in range(n)), Fraction(0)) for r in range(n))

    units = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    for p in range(n):
        for q in range(p + 1, n):
            x, y = units[p], units[q]
            lhs = apply(law.bracket(x, y))
            r1 = law.bracket(apply(x), y)
            r2 = law.bracket(x, apply(y))
            if any(a != b + c for a, b, c in zip(lhs, r1, r2)):
                return False
    return True


def diagonal_derivations(law: LieLaw) -> DiagonalTorus:
    """Diagonal ``a`` with ``a_k = a_i + a_j`` on every nonzero slot."""
    law._require_instantiated()
    n = law.n
    rows = []
    for i, j, k in law.brackets:
        row = [Fraction(0)] * n
        row[i - 1] += 1
        row[j - 1] += 1
        row[k - 1] -= 1
        rows.append(row)
    return DiagonalTorus(tuple(nullspace(rows, ncols=n)), n)


def diagonal_rank(law: LieLaw) -> int:
    """Dimension of the diagonal torus.

    A lower bound for the rank; exact when some maximal torus is diagonal in
    the given basis.
    """
    return diagonal_derivations(law).dim
