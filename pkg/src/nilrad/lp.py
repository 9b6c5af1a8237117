"""Exact rational linear feasibility with strict inequalities.

Strictness is handled by a margin variable ``t``: every strict constraint is
tightened by ``t``, ``t`` is maximised subject to ``0 <= t <= 1``, and the
system is strictly feasible iff the optimum is positive. The cap keeps the LP
bounded, so an unbounded margin still yields a finite witness.

The solver is a dense two-phase tableau simplex over :class:`Fraction` with
Bland's rule, which guarantees termination on degenerate problems.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import Matrix, Vector, as_matrix, as_vector, dot

FREE = "free"
NONNEG = ">=0"
POS = ">0"
_SIGNS = (FREE, NONNEG, POS)


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: Vector | None = None
    # 0-based positions of ``>0`` variables that are <= 0 on every relaxed solution
    forced_zero: tuple[int, ...] = ()
    # strict inequality rows that can never be made negative
    forced_rows: tuple[int, ...] = ()
    margin: Fraction | None = None

    @property
    def verdict(self) -> str:
        return "feasible" if self.feasible else "infeasible"


# -- simplex core ----------------------------------------------------------


def _pivot(tab: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    row = tab[r]
    p = row[c]
    if p != 1:
        row = [x / p for x in row]
        tab[r] = row
    for i, other in enumerate(tab):
        if i == r:
            continue
        f = other[c]
        if f:
            tab[i] = [x - f * y if y else x for x, y in zip(other, row)]
    basis[r] = c


def _run(tab, basis, cost_row: int, allowed: int) -> bool:
    """Minimise the objective stored in ``tab[cost_row]`` (reduced costs, rhs last).

    Only columns ``< allowed`` may enter. Returns False when unbounded.
    """
    m = cost_row
    while True:
        obj = tab[cost_row]
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        leave = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return False
        _pivot(tab, basis, leave, enter)


def simplex_min(a: Matrix, b: Sequence, c: Sequence) -> tuple[str, Vector | None, Fraction | None]:
    """Minimise ``c.y`` subject to ``a y = b``, ``y >= 0``.

    Returns ``(status, y, value)`` with status ``optimal``, ``infeasible`` or
    ``unbounded``.
    """
    a = as_matrix(a)
    b = list(as_vector(b))
    c = as_vector(c)
    m = len(a)
    n = len(c)
    if m == 0:
        if any(cj < 0 for cj in c):
            return "unbounded", None, None
        return "optimal", tuple(Fraction(0) for _ in range(n)), Fraction(0)
    rows = []
    for i in range(m):
        row = list(a[i])
        bi = b[i]
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
        art = [Fraction(int(k == i)) for k in range(m)]
        rows.append(row + art + [bi])
    # phase 1 objective: sum of artificials, expressed in reduced form
    p1 = [Fraction(0)] * (n + m + 1)
    for row in rows:
        for j in range(n):
            p1[j] -= row[j]
        p1[-1] -= row[-1]
    tab = rows + [p1]
    basis = [n + i for i in range(m)]
    _run(tab, basis, m, n + m)
    if tab[m][-1] != 0:
        return "infeasible", None, None
    # drive zero-valued artificials out of the basis; drop redundant rows
    r = 0
    while r < len(basis):
        if basis[r] >= n:
            col = next((j for j in range(n) if tab[r][j] != 0), None)
            if col is None:
                del tab[r]
                del basis[r]
                continue
            _pivot(tab, basis, r, col)
        r += 1
    m = len(basis)
    tab = [row[:n] + [row[-1]] for row in tab[:m]]
    obj = list(c) + [Fraction(0)]
    for i, bj in enumerate(basis):
        if obj[bj]:
            f = obj[bj]
            obj = [x - f * y for x, y in zip(obj, tab[i])]
    tab.append(obj)
    if not _run(tab, basis, m, n):
        return "unbounded", None, None
    y = [Fraction(0)] * n
    for i, bj in enumerate(basis):
        y[bj] = tab[i][-1]
    y = tuple(y)
    return "optimal", y, dot(c, y)


# -- feasibility front end -------------------------------------------------


class _Builder:
    """Translate sign-constrained variables and ``<= 0`` rows to standard form."""

    def __init__(self, signs: Sequence[str]):
        self.cols: list[tuple[int, int]] = []  # (variable, +1/-1)
        self.var_cols: list[list[int]] = []
        for i, s in enumerate(signs):
            if s not in _SIGNS:
                raise ValueError(f"unknown sign constraint {s!r}")
            idx = [len(self.cols)]
            self.cols.append((i, 1))
            if s == FREE:
                idx.append(len(self.cols))
                self.cols.append((i, -1))
            self.var_cols.append(idx)
        self.nvars = len(signs)
        self.extra = 0
        self.rows: list[dict[int, Fraction]] = []
        self.rhs: list[Fraction] = []

    def new_col(self) -> int:
        j = len(self.cols) + self.extra
        self.extra += 1
        return j

    def expand(self, coeffs: Sequence) -> dict[int, Fraction]:
        row: dict[int, Fraction] = {}
        for i, x in enumerate(coeffs):
            x = Fraction(x)
            if x:
                for j in self.var_cols[i]:
                    row[j] = row.get(j, Fraction(0)) + x * self.cols[j][1]
        return row

    def add(self, row: dict[int, Fraction], rhs) -> None:
        self.rows.append(row)
        self.rhs.append(Fraction(rhs))

    def solve(self, objective: dict[int, Fraction]):
        width = len(self.cols) + self.extra
        a = [[row.get(j, Fraction(0)) for j in range(width)] for row in self.rows]
        c = [objective.get(j, Fraction(0)) for j in range(width)]
        return simplex_min(a, self.rhs, c)

    def recover(self, y: Vector) -> Vector:
        x = [Fraction(0)] * self.nvars
        for j, (i, s) in enumerate(self.cols):
            x[i] += s * y[j]
        return tuple(x)


def _build(a_eq, b_eq, signs, a_in, strict_rows, margin: bool, relax: bool):
    bld = _Builder(signs)
    for row, bi in zip(a_eq, b_eq):
        bld.add(bld.expand(row), bi)
    t = bld.new_col() if margin else None
    for i, s in enumerate(signs):
        if s == POS and t is not None and not relax:
            # x_i - t - surplus = 0
            row = bld.expand([int(k == i) for k in range(len(signs))])
            row[t] = Fraction(-1)
            row[bld.new_col()] = Fraction(-1)
            bld.add(row, 0)
    for r, arow in enumerate(a_in):
        row = bld.expand(arow)
        if r in strict_rows and t is not None and not relax:
            row[t] = row.get(t, Fraction(0)) + 1
        row[bld.new_col()] = Fraction(1)
        bld.add(row, 0)
    if t is not None:
        bld.add({t: Fraction(1), bld.new_col(): Fraction(1)}, 1)
    return bld, t


def _check_witness(x, a_eq, b_eq, signs, a_in, strict_rows) -> None:
    for row, bi in zip(a_eq, b_eq):
        assert dot(row, x) == bi
    for xi, s in zip(x, signs):
        assert s != NONNEG or xi >= 0
        assert s != POS or xi > 0
    for r, row in enumerate(a_in):
        v = dot(row, x)
        assert v < 0 if r in strict_rows else v <= 0


def lp_feasible(
    a_eq: Matrix,
    b_eq: Sequence,
    signs: Sequence[str],
    a_in: Matrix | None = None,
    strict_rows: Sequence[int] = (),
    diagnose: bool = True,
) -> FeasibilityResult:
    """Decide ``a_eq x = b_eq``, per-variable signs, ``a_in x <= 0`` (``< 0`` on ``strict_rows``).

    ``signs`` entries are :data:`FREE`, :data:`NONNEG` or :data:`POS`. On
    success the witness satisfies every constraint exactly. On failure the
    result lists which strict constraints are forced to equality by the
    relaxed (non-strict) system, when that is the reason; ``diagnose=False``
    skips that extra work.
    """
    a_eq = as_matrix(a_eq)
    b_eq = as_vector(b_eq)
    a_in = as_matrix(a_in or [])
    strict = frozenset(strict_rows)
    n = len(signs)
    if len(a_eq) != len(b_eq):
        raise ValueError("a_eq and b_eq disagree in length")
    if any(len(r) != n for r in a_eq) or any(len(r) != n for r in a_in):
        raise ValueError("constraint rows must have one entry per variable")
    if not strict <= set(range(len(a_in))):
        raise ValueError("strict row index out of range")
    margin = POS in signs or bool(strict)
    bld, t = _build(a_eq, b_eq, signs, a_in, strict, margin, relax=False)
    status, y, _ = bld.solve({t: Fraction(-1)} if margin else {})
    if status == "optimal" and (not margin or y[t] > 0):
        x = bld.recover(y)
        _check_witness(x, a_eq, b_eq, signs, a_in, strict)
        return FeasibilityResult(True, witness=x, margin=y[t] if margin else None)
    if status != "optimal" or not diagnose:
        return FeasibilityResult(False)
    forced, forced_rows = _forced(a_eq, b_eq, signs, a_in, strict)
    return FeasibilityResult(False, forced_zero=forced, forced_rows=forced_rows, margin=Fraction(0))


def _forced(a_eq, b_eq, signs, a_in, strict):
    """Strict constraints that stay at zero on the whole relaxed solution set."""
    relaxed = [NONNEG if s == POS else s for s in signs]
    n = len(signs)
    bld, _ = _build(a_eq, b_eq, relaxed, a_in, frozenset(), margin=False, relax=True)
    if bld.solve({})[0] != "optimal":
        return (), ()
    forced = []
    for i, s in enumerate(signs):
        if s != POS:
            continue
        cap = [int(k == i) for k in range(n)]
        if _max_capped(a_eq, b_eq, relaxed, a_in, cap) <= 0:
            forced.append(i)
    forced_rows = []
    for r in sorted(strict):
        obj = [-x for x in a_in[r]]
        if _max_capped(a_eq, b_eq, relaxed, a_in, obj) <= 0:
            forced_rows.append(r)
    return tuple(forced), tuple(forced_rows)


def _max_capped(a_eq, b_eq, signs, a_in, objective) -> Fraction:
    """max min(objective.x, 1) over the non-strict system (0 when it is empty)."""
    bld, _ = _build(a_eq, b_eq, signs, a_in, frozenset(), margin=False, relax=True)
    # s = objective.x capped by 1: objective.x - s - slack = 0, s + slack2 = 1
    s = bld.new_col()
    row = bld.expand(objective)
    row[s] = Fraction(-1)
    row[bld.new_col()] = Fraction(-1)
    bld.add(row, 0)
    bld.add({s: Fraction(1), bld.new_col(): Fraction(1)}, 1)
    # s is nonnegative, so a feasible optimum of 0 means objective.x <= 0 everywhere
    status, y, _ = bld.solve({s: Fraction(-1)})
    if status != "optimal":
        return Fraction(0)
    return y[s]
