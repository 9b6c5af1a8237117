"""Pre-Einstein derivation, eigenvalue type, Min value and target moment map."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .algebra import LieLaw
from .derivations import DerivationSpace, derivation_space, diagonal_derivations
from .linalg import InconsistentSystemError, Vector, as_vector, dot, primitive_integer, solve_affine


class PreEinsteinError(ValueError):
    pass


class TorusNotMaximalError(PreEinsteinError):
    """The torus solution fails ``tr(phi psi) = tr(psi)`` for some derivation psi."""


class DegenerateTypeError(ValueError):
    """Eigenvalue type proportional to the identity (Min is undefined)."""


@dataclass(frozen=True)
class EigenType:
    """Distinct coprime positive integers ``d_1 < ... < d_r`` with multiplicities."""

    values: tuple[int, ...]
    mults: tuple[int, ...]

    @classmethod
    def from_vector(cls, d: Sequence[int]) -> EigenType:
        cnt = Counter(int(x) for x in d)
        vals = tuple(sorted(cnt))
        return cls(vals, tuple(cnt[v] for v in vals))

    @property
    def n(self) -> int:
        return sum(self.mults)

    def expanded(self) -> tuple[int, ...]:
        return tuple(v for v, m in zip(self.values, self.mults) for _ in range(m))

    def __str__(self) -> str:
        return "(" + "<".join(map(str, self.values)) + "; " + ",".join(map(str, self.mults)) + ")"


@dataclass(frozen=True)
class PreEinsteinResult:
    phi: Vector
    scale: Fraction | None
    d: tuple[int, ...] | None
    eig_type: EigenType | None

    @classmethod
    def from_phi(cls, phi: Sequence) -> PreEinsteinResult:
        phi = as_vector(phi)
        if not any(phi):
            return cls(phi, None, None, None)
        scale, d = primitive_integer(phi)
        et = EigenType.from_vector(d) if all(x > 0 for x in d) else None
        return cls(phi, scale, d, et)

    @property
    def positive(self) -> bool:
        return self.eig_type is not None


def _sums(et: EigenType) -> tuple[int, int, int]:
    s1 = sum(m * v for v, m in zip(et.values, et.mults))
    s2 = sum(m * v * v for v, m in zip(et.values, et.mults))
    return et.n, s1, s2


def pre_einstein(law: LieLaw, der: DerivationSpace | None = None) -> PreEinsteinResult:
    """Solve ``tr(phi D_j) = tr(D_j)`` over the diagonal torus, then verify on all of Der."""
    torus = diagonal_derivations(law)
    if torus.dim == 0:
        raise PreEinsteinError("no diagonal derivations (diagonal rank 0)")
    gens = torus.generators
    gram = [[dot(a, b) for b in gens] for a in gens]
    rhs = [sum(a) for a in gens]
    try:
        sol = solve_affine(gram, rhs)
    except InconsistentSystemError as exc:
        raise PreEinsteinError("trace system over the torus is inconsistent") from exc
    if sol.dim:
        raise PreEinsteinError("trace system over the torus is singular")
    n = law.n
    phi = [sum((c * g[i] for c, g in zip(sol.particular, gens)), Fraction(0)) for i in range(n)]
    der = der if der is not None else derivation_space(law)
    for psi in der.basis:
        tr_psi = sum((psi[i][i] for i in range(n)), Fraction(0))
        if sum((phi[i] * psi[i][i] for i in range(n)), Fraction(0)) != tr_psi:
            raise TorusNotMaximalError("diagonal torus not maximal: trace condition fails on Der")
    return PreEinsteinResult.from_phi(phi)


def necessary_conditions(result: PreEinsteinResult) -> tuple[bool, str]:
    """``phi > 0``; a failure rules out an Einstein nilradical."""
    bad = [i + 1 for i, x in enumerate(result.phi) if x <= 0]
    if bad:
        return False, "pre-Einstein derivation has non-positive eigenvalues at " + ",".join(map(str, bad))
    return True, ""


def min_value(et: EigenType) -> Fraction:
    n, s1, s2 = _sums(et)
    den = Fraction(n) - Fraction(s1 * s1, s2)
    if den == 0:
        raise DegenerateTypeError("type is proportional to the identity")
    return 1 / den


def min_decimal(value: Fraction) -> str:
    """Three significant digits, rounded half-up from a four-digit intermediate.

    This is the convention that reproduces the published Min column best
    (e.g. 65/94 -> 0.692); exact comparisons always use the rational. Values
    that are exactly representable drop trailing zeros (1, 0.9, 1.4).
    """
    x = Decimal(value.numerator) / Decimal(value.denominator)
    for digits in (4, 3):
        x = x.quantize(Decimal(1).scaleb(x.adjusted() - digits + 1), rounding=ROUND_HALF_UP)
    if Fraction(x) == value:
        x = x.normalize()
        if x == x.to_integral_value():
            x = x.quantize(Decimal(1))
    return str(x)


def target_moment_map(d: Sequence[int] | EigenType) -> tuple[Vector, Fraction]:
    """Diagonal of the moment map of a unit-norm nilsoliton with Einstein derivation ``diag(d)``.

    ``d`` may be positional (e.g. ``(1,1,2,3,3,4,5)``) or an :class:`EigenType`,
    which is expanded in increasing order. Returns ``(diagonal, c)`` where ``c``
    is the coefficient of the identity, equal to ``-min_value``.
    """
    if isinstance(d, EigenType):
        d = d.expanded()
    d = tuple(int(x) for x in d)
    if any(x <= 0 for x in d):
        raise ValueError("eigenvalues must be positive")
    et = EigenType.from_vector(d)
    n, s1, s2 = _sums(et)
    den = n * s2 - s1 * s1
    if den == 0:
        raise DegenerateTypeError("type is proportional to the identity")
    pref = Fraction(s1, den)
    c = -pref * Fraction(s2, s1)
    return tuple(c + pref * x for x in d), c


def graded_slots(d: Sequence[int]) -> list[tuple[int, int, int]]:
    """All ``(i, j, k)`` with ``i < j`` and ``d_i + d_j = d_k`` (lexicographic)."""
    n = len(d)
    out = []
    for i, j in combinations(range(n), 2):
        for k in range(n):
            if d[i] + d[j] == d[k]:
                out.append((i + 1, j + 1, k + 1))
    return out
