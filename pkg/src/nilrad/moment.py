"""Moment map of the GL(n) action on brackets, and the nilsoliton equations.

The unnormalised moment map is ``m(mu) = 4 Ric_mu``:

    m_rs = -2 sum_{j,k} c_rj^k c_sj^k + sum_{i,j} c_ij^r c_ij^s

with sums over ordered pairs. The norm is ``||mu||^2 = sum_{i,j,k} (c_ij^k)^2``
over ordered pairs, i.e. twice the sum over ``i < j``, which is the convention
making ``tr m(mu) = -||mu||^2``.

Exact laws (:class:`~nilrad.algebra.LieLaw`) give :class:`Fraction` results;
:class:`NumericLaw` (coefficients such as ``sqrt(611)/94``) gives floats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .algebra import LieLaw, Slot
from .derivations import derivation_space, leibniz_system
from .linalg import Matrix, dot, solve_affine
from .pre_einstein import DegenerateTypeError, EigenType, graded_slots, target_moment_map


class ZeroLawError(ValueError):
    pass


@dataclass(frozen=True)
class NumericLaw:
    """Structure constants in floating point (``i < j`` keys, as for LieLaw)."""

    n: int
    brackets: Mapping[Slot, float] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j, k), c in sorted(self.brackets.items()):
            if not (1 <= i < j <= self.n and 1 <= k <= self.n):
                raise ValueError(f"bad slot {(i, j, k)} for dimension {self.n}")
            if c != 0:
                clean[(i, j, k)] = float(c)
        object.__setattr__(self, "brackets", clean)

    @classmethod
    def from_law(cls, law: LieLaw) -> NumericLaw:
        law._require_instantiated()
        return cls(law.n, {s: float(v) for s, v in law.brackets.items()})

    @property
    def slots(self) -> list[Slot]:
        return list(self.brackets)

    def tensor(self) -> list[list[list[float]]]:
        n = self.n
        c = [[[0.0] * n for _ in range(n)] for _ in range(n)]
        for (i, j, k), v in self.brackets.items():
            c[i - 1][j - 1][k - 1] = v
            c[j - 1][i - 1][k - 1] = -v
        return c


def _is_numeric(law) -> bool:
    return isinstance(law, NumericLaw)


def norm_sq(law):
    s = sum((v * v for v in law.brackets.values()), 0.0 if _is_numeric(law) else Fraction(0))
    return 2 * s


def moment_map(law) -> Matrix:
    """The symmetric matrix ``m(mu) = 4 Ric_mu``."""
    if not law.brackets:
        raise ZeroLawError("moment map of the zero law is undefined")
    n = law.n
    zero = 0.0 if _is_numeric(law) else Fraction(0)
    m = [[zero] * n for _ in range(n)]
    # each stored slot contributes through both orderings (i,j) and (j,i)
    entries = [((i - 1, j - 1, k - 1), v) for (i, j, k), v in law.brackets.items()]
    for (i, j, k), v in entries:
        m[k][k] += 2 * v * v
    for (i1, j1, k1), v1 in entries:
        for (i2, j2, k2), v2 in entries:
            # sum_{i,j} c_ij^r c_ij^s : same unordered pair, different targets
            if (i1, j1) == (i2, j2) and k1 != k2:
                m[k1][k2] += 2 * v1 * v2
            # -2 sum_{j,k} c_rj^k c_sj^k over ordered pairs
            if k1 != k2:
                continue
            for r, j, s1 in ((i1, j1, 1), (j1, i1, -1)):
                for s, jj, s2 in ((i2, j2, 1), (j2, i2, -1)):
                    if j == jj:
                        m[r][s] -= 2 * (s1 * v1) * (s2 * v2)
    return m


def normalized_moment(law) -> Matrix:
    ns = norm_sq(law)
    if not ns:
        raise ZeroLawError("normalised moment map of the zero law is undefined")
    return [[x / ns for x in row] for row in moment_map(law)]


def functional_F(law):
    """Squared Frobenius norm of the normalised moment map; scale invariant."""
    return sum(x * x for row in normalized_moment(law) for x in row)


def pairing(law, alpha: Matrix):
    """``tr(m(mu) alpha)``."""
    m = moment_map(law)
    n = law.n
    if len(alpha) != n or any(len(r) != n for r in alpha):
        raise ValueError(f"alpha must be {n}x{n}")
    return sum(m[r][s] * alpha[s][r] for r in range(n) for s in range(n))


def jacobi_residual(law) -> float:
    """Largest absolute Jacobi residual over basis triples (numeric laws)."""
    c = law.tensor()
    n = law.n
    worst = 0.0
    for i, j, k in combinations(range(n), 3):
        for w in range(n):
            s = 0.0
            for m in range(n):
                s += c[i][j][m] * c[m][k][w] + c[j][k][m] * c[m][i][w] + c[k][i][m] * c[m][j][w]
            worst = max(worst, abs(float(s)))
    return worst


@dataclass(frozen=True)
class SolitonVerdict:
    soliton: bool
    c: float | Fraction
    derivation: list  # n x n fitted derivation part
    residual: float

    @property
    def label(self) -> str:
        return "soliton" if self.soliton else "not a soliton"


def _numeric_derivations(law: NumericLaw, tol: float) -> list[np.ndarray]:
    n = law.n
    rows = leibniz_system(law)
    if not rows:
        return [np.eye(n * n)[i].reshape(n, n) for i in range(n * n)]
    a = np.array(rows, dtype=float)
    _, s, vt = np.linalg.svd(a)
    cutoff = tol * max(1.0, s[0] if s.size else 1.0)
    r = int(np.sum(s > cutoff))
    return [vt[i].reshape(n, n) for i in range(r, n * n)]


def verify_soliton(law, tol: float = 1e-10) -> SolitonVerdict:
    """Fit ``m(mu) = c I + D`` with ``D`` in Der(mu); soliton iff residual <= tol and c < 0."""
    n = law.n
    if _is_numeric(law):
        jr = jacobi_residual(law)
        if jr > tol:
            raise ValueError(f"numeric law violates Jacobi (residual {jr:.3g})")
        m = np.array(moment_map(law), dtype=float)
        basis = [np.eye(n)] + _numeric_derivations(law, tol)
        a = np.stack([b.ravel() for b in basis], axis=1)
        x, *_ = np.linalg.lstsq(a, m.ravel(), rcond=None)
        fit = a @ x
        residual = float(np.linalg.norm(m.ravel() - fit))
        c = float(x[0])
        d = (fit.reshape(n, n) - c * np.eye(n)).tolist()
        return SolitonVerdict(residual <= tol and c < 0, c, d, residual)

    m = moment_map(law)
    ders = derivation_space(law).basis
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    basis = [ident] + list(ders)
    flat = [[x for row in b for x in row] for b in basis]
    mflat = [x for row in m for x in row]
    gram = [[dot(u, v) for v in flat] for u in flat]
    rhs = [dot(u, mflat) for u in flat]
    x = solve_affine(gram, rhs).particular
    fit = [sum((xi * u[p] for xi, u in zip(x, flat)), Fraction(0)) for p in range(n * n)]
    res_sq = sum((a - b) ** 2 for a, b in zip(mflat, fit))
    residual = math.sqrt(res_sq)
    c = x[0]
    d = [[fit[r * n + s] - (c if r == s else 0) for s in range(n)] for r in range(n)]
    return SolitonVerdict(residual <= tol and c < 0, c, d, residual)


# -- soliton polynomial system --------------------------------------------

Poly = dict[tuple[int, ...], Fraction]


def _padd(p: Poly, mono: tuple[int, ...], coef) -> None:
    mono = tuple(sorted(mono))
    v = p.get(mono, Fraction(0)) + coef
    if v:
        p[mono] = v
    else:
        p.pop(mono, None)


@dataclass(frozen=True)
class SolitonSystem:
    d: tuple[int, ...]
    slots: list[Slot]
    jacobi: list[tuple[tuple[int, int, int, int], Poly]]
    moment: list[tuple[tuple[int, int], Poly, Fraction]]


def soliton_system(d: Sequence[int]) -> SolitonSystem:
    """Equations on ``a_1..a_m`` (one per graded slot) for a nilsoliton with derivation ``diag(d)``."""
    d = tuple(int(x) for x in d)
    n = len(d)
    target, _ = target_moment_map(d)
    slots = graded_slots(d)
    if not slots:
        raise DegenerateTypeError("no brackets are compatible with this grading")
    # symbolic tensor: (i,j,k) -> (sign, variable index, 1-based)
    sym: dict[tuple[int, int, int], list[tuple[int, int]]] = {}
    for v, (i, j, k) in enumerate(slots, start=1):
        sym.setdefault((i - 1, j - 1, k - 1), []).append((1, v))
        sym.setdefault((j - 1, i - 1, k - 1), []).append((-1, v))

    def c(i, j, k):
        return sym.get((i, j, k), ())

    jac = []
    seen: set[tuple] = set()
    for i, j, l in combinations(range(n), 3):
        for w in range(n):
            p: Poly = {}
            for x, y, z in ((i, j, l), (j, l, i), (l, i, j)):
                for m in range(n):
                    for s1, v1 in c(x, y, m):
                        for s2, v2 in c(m, z, w):
                            _padd(p, (v1, v2), s1 * s2)
            if not p:
                continue
            key = tuple(sorted(p.items()))
            neg = tuple(sorted((mono, -cf) for mono, cf in p.items()))
            if key in seen or neg in seen:
                continue
            seen.add(key)
            jac.append(((i + 1, j + 1, l + 1, w + 1), p))

    mom = []
    for r in range(n):
        for s in range(r, n):
            p = {}
            for j in range(n):
                for k in range(n):
                    for s1, v1 in c(r, j, k):
                        for s2, v2 in c(s, j, k):
                            _padd(p, (v1, v2), -2 * s1 * s2)
            for i in range(n):
                for j in range(n):
                    for s1, v1 in c(i, j, r):
                        for s2, v2 in c(i, j, s):
                            _padd(p, (v1, v2), s1 * s2)
            rhs = target[r] if r == s else Fraction(0)
            if p or rhs:
                mom.append(((r + 1, s + 1), p, rhs))
    return SolitonSystem(d, slots, jac, mom)


def _poly_str(p: Poly) -> str:
    if not p:
        return "0"
    out = []
    for mono, cf in sorted(p.items()):
        term = "*".join(f"a{v}" for v in mono)
        mag = abs(cf)
        body = f"{mag}*{term}"
        if not out:
            out.append(body if cf > 0 else f"-{body}")
        else:
            out.append(f"{'+' if cf > 0 else '-'} {body}")
    return " ".join(out)


def emit_soliton_system(d: Sequence[int]) -> str:
    """Plain-text polynomial system, one equation per line.

    Lines starting with ``#`` are comments: the type header, the variable
    legend, and section markers.
    """
    sys_ = soliton_system(d)
    lines = ["# type " + ",".join(map(str, sys_.d)), f"# eigenvalue type {EigenType.from_vector(sys_.d)}"]
    for v, (i, j, k) in enumerate(sys_.slots, start=1):
        lines.append(f"# a{v}: [e{i},e{j}] -> e{k}")
    lines.append(f"# jacobi {len(sys_.jacobi)}")
    for _, p in sys_.jacobi:
        lines.append(f"{_poly_str(p)} = 0")
    lines.append(f"# moment {len(sys_.moment)}")
    for _, p, rhs in sys_.moment:
        lines.append(f"{_poly_str(p)} = {rhs}")
    return "\n".join(lines) + "\n"
