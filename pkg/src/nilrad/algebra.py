"""Lie algebra laws given by structure constants.

A law on R^n stores ``c_ij^k`` only for ``i < j`` (1-based basis labels, as in
``[e_i, e_j] = sum_k c_ij^k e_k``); the antisymmetric completion is computed on
access. Coefficients may be affine in one named parameter so that one-parameter
families can be stored once and instantiated at rational values.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .linalg import Matrix, Vector, row_space

Slot = tuple[int, int, int]


class NotNilpotentError(ValueError):
    """The central (or derived) series stabilised above zero."""

    def __init__(self, series: str, dim: int):
        super().__init__(f"{series} series stabilises at dimension {dim}; law is not nilpotent")
        self.dim = dim


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class ParamCoeff:
    """The coefficient ``a*lam + b``; ``a == 0`` for plain rationals."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @property
    def uses_param(self) -> bool:
        return self.a != 0

    def at(self, value) -> Fraction:
        return self.a * Fraction(value) + self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __neg__(self) -> ParamCoeff:
        return ParamCoeff(-self.a, -self.b)

    def __add__(self, other: ParamCoeff) -> ParamCoeff:
        return ParamCoeff(self.a + other.a, self.b + other.b)

    def __mul__(self, r) -> ParamCoeff:
        r = Fraction(r)
        return ParamCoeff(self.a * r, self.b * r)

    __rmul__ = __mul__


@dataclass(frozen=True)
class LieLaw:
    """Sparse structure constants of an n-dimensional algebra.

    ``brackets`` maps ``(i, j, k)`` with ``1 <= i < j <= n`` to the coefficient of
    ``e_k`` in ``[e_i, e_j]``. Values are :class:`Fraction` for instantiated laws
    or :class:`ParamCoeff` when a coefficient depends on ``param``.
    """

    n: int
    brackets: Mapping[Slot, object] = field(default_factory=dict)
    param: str | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be positive")
        clean: dict[Slot, object] = {}
        for (i, j, k), c in sorted(self.brackets.items()):
            if not (1 <= i < j <= self.n and 1 <= k <= self.n):
                raise ValueError(f"bad slot {(i, j, k)} for dimension {self.n}")
            if isinstance(c, ParamCoeff):
                if c.is_zero():
                    continue
                if not c.uses_param:
                    c = c.b
            else:
                c = Fraction(c)
                if c == 0:
                    continue
            clean[(i, j, k)] = c
        object.__setattr__(self, "brackets", clean)

    # -- basic queries ------------------------------------------------------

    @property
    def is_parametric(self) -> bool:
        return any(isinstance(c, ParamCoeff) for c in self.brackets.values())

    @property
    def slots(self) -> list[Slot]:
        return list(self.brackets)

    def __len__(self) -> int:
        return len(self.brackets)

    def coeff(self, i: int, j: int, k: int):
        """``c_ij^k`` with antisymmetric completion (``c_ji^k = -c_ij^k``)."""
        if i == j:
            return Fraction(0)
        if i < j:
            return self.brackets.get((i, j, k), Fraction(0))
        return -self.brackets.get((j, i, k), Fraction(0))

    def _require_instantiated(self) -> None:
        if self.is_parametric:
            raise ParameterError(f"law depends on parameter {self.param!r}; instantiate it first")

    def tensor(self) -> list[list[list[Fraction]]]:
        """Dense ``C[i][j][k]`` (0-based) with both orderings filled in."""
        self._require_instantiated()
        n = self.n
        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (i, j, k), v in self.brackets.items():
            c[i - 1][j - 1][k - 1] = v
            c[j - 1][i - 1][k - 1] = -v
        return c

    def bracket(self, x, y) -> Vector:
        """Bracket of two coordinate vectors."""
        self._require_instantiated()
        out = [Fraction(0)] * self.n
        for (i, j, k), v in self.brackets.items():
            w = x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1]
            if w:
                out[k - 1] += v * w
        return tuple(out)

    def basis_bracket(self, i: int, j: int) -> Vector:
        """``[e_i, e_j]`` as a coordinate vector (1-based labels)."""
        out = [Fraction(0)] * self.n
        for k in range(1, self.n + 1):
            out[k - 1] = Fraction(self.coeff(i, j, k))
        return tuple(out)

    # -- constructions ------------------------------------------------------

    def scaled(self, s) -> LieLaw:
        s = Fraction(s)
        return LieLaw(self.n, {key: v * s for key, v in self.brackets.items()}, self.param)

    def permuted(self, perm: Iterable[int]) -> LieLaw:
        """Relabel basis vectors: ``e_i`` becomes ``e_{perm[i-1]}`` (1-based)."""
        self._require_instantiated()
        p = list(perm)
        if sorted(p) != list(range(1, self.n + 1)):
            raise ValueError("perm must be a permutation of 1..n")
        out: dict[Slot, Fraction] = {}
        for (i, j, k), v in self.brackets.items():
            a, b, c = p[i - 1], p[j - 1], p[k - 1]
            if a > b:
                a, b, v = b, a, -v
            out[(a, b, c)] = out.get((a, b, c), Fraction(0)) + v
        return LieLaw(self.n, out)

    def without(self, slots: Iterable[Slot]) -> LieLaw:
        drop = set(slots)
        return LieLaw(self.n, {s: v for s, v in self.brackets.items() if s not in drop}, self.param)

    def __str__(self) -> str:
        parts = []
        for (i, j, k), v in self.brackets.items():
            parts.append(f"[e{i},e{j}] += {_coeff_str(v, self.param)} e{k}")
        return f"LieLaw(n={self.n}; " + ", ".join(parts) + ")"


def _coeff_str(c, param) -> str:
    if isinstance(c, ParamCoeff):
        return f"({c.a}*{param} + {c.b})"
    return str(c)


def abelian(n: int) -> LieLaw:
    return LieLaw(n, {})


def instantiate(law: LieLaw, value=None) -> LieLaw:
    """Bind the law's parameter to a rational ``value``; zero coefficients are pruned."""
    if not law.is_parametric:
        if value is not None:
            warnings.warn("parameter value supplied for a parameter-free law; ignored", stacklevel=2)
        return law
    if value is None:
        raise ParameterError(f"law needs a value for parameter {law.param!r}")
    value = Fraction(value)
    out = {}
    for slot, c in law.brackets.items():
        out[slot] = c.at(value) if isinstance(c, ParamCoeff) else c
    return LieLaw(law.n, out)


def direct_sum(a: LieLaw, b: LieLaw) -> LieLaw:
    a._require_instantiated()
    b._require_instantiated()
    out = dict(a.brackets)
    s = a.n
    for (i, j, k), v in b.brackets.items():
        out[(i + s, j + s, k + s)] = v
    return LieLaw(a.n + b.n, out)


@dataclass(frozen=True)
class JacobiViolation:
    triple: tuple[int, int, int]
    residual: Vector


def jacobi_violations(law: LieLaw) -> list[JacobiViolation]:
    """Basis triples ``i < j < k`` where the cyclic sum of double brackets is nonzero."""
    c = law.tensor()
    n = law.n
    out = []
    for i, j, k in combinations(range(n), 3):
        res = []
        for w in range(n):
            s = Fraction(0)
            for m in range(n):
                s += c[i][j][m] * c[m][k][w] + c[j][k][m] * c[m][i][w] + c[k][i][m] * c[m][j][w]
            res.append(s)
        if any(res):
            out.append(JacobiViolation((i + 1, j + 1, k + 1), tuple(res)))
    return out


def jacobi_check(law: LieLaw) -> bool:
    return not jacobi_violations(law)


def _bracket_span(law: LieLaw, left: Matrix, right: Matrix) -> Matrix:
    rows = []
    for x in left:
        for y in right:
            v = law.bracket(x, y)
            if any(v):
                rows.append(list(v))
    return row_space(rows)


def _unit_rows(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def descending_central_series(law: LieLaw) -> tuple[int, ...]:
    """Dimensions ``n = dim n^0 > dim n^1 > ... > 0`` with ``n^{k+1} = [n, n^k]``."""
    law._require_instantiated()
    full = _unit_rows(law.n)
    dims = [law.n]
    cur = full
    while dims[-1] > 0:
        cur = _bracket_span(law, full, cur)
        d = len(cur)
        if d == dims[-1]:
            raise NotNilpotentError("descending central", d)
        dims.append(d)
    return tuple(dims)


def derived_series(law: LieLaw) -> tuple[int, ...]:
    """Dimensions of ``n^(0) = n``, ``n^(k+1) = [n^(k), n^(k)]`` down to 0."""
    law._require_instantiated()
    dims = [law.n]
    cur = _unit_rows(law.n)
    while dims[-1] > 0:
        cur = _bracket_span(law, cur, cur)
        d = len(cur)
        if d == dims[-1]:
            raise NotNilpotentError("derived", d)
        dims.append(d)
    return tuple(dims)


def is_nilpotent(law: LieLaw) -> bool:
    try:
        descending_central_series(law)
    except NotNilpotentError:
        return False
    return True
