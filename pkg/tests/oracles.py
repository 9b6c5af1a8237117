"""Independent reference implementations used only by the tests.

Deliberately naive: plain Gauss-Jordan with Fraction pivots, no reuse of the
package's elimination or simplex code.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations


def solve_square(a, b):
    """Unique solution of a square system, or None if singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(a, b)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return None
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[r][n] for r in range(n)]


def vertices(a_eq, b_eq, nvars, box):
    """Vertices of {A x = b, x >= 0, sum x <= box} by brute force over active sets."""
    rows = [([Fraction(x) for x in r], Fraction(bi)) for r, bi in zip(a_eq, b_eq)]
    out = []
    # candidate tight inequalities: x_j = 0 (j < nvars) or sum x = box (j == nvars)
    cands = list(range(nvars + 1))
    for k in range(0, nvars + 1):
        need = nvars - len(rows)
        if k < need:
            continue
        for act in combinations(cands, k):
            sys_a = [r for r, _ in rows]
            sys_b = [bi for _, bi in rows]
            for j in act:
                if j < nvars:
                    sys_a.append([Fraction(int(t == j)) for t in range(nvars)])
                    sys_b.append(Fraction(0))
                else:
                    sys_a.append([Fraction(1)] * nvars)
                    sys_b.append(Fraction(box))
            x = _unique_solution(sys_a, sys_b, nvars)
            if x is None:
                continue
            if all(v >= 0 for v in x) and sum(x) <= box:
                out.append(tuple(x))
    return sorted(set(out))


def _unique_solution(a, b, n):
    """Solve an overdetermined system with full column rank, else None."""
    m = [list(r) + [bi] for r, bi in zip(a, b)]
    rows = len(m)
    piv_row = 0
    pivcols = []
    for c in range(n):
        p = next((r for r in range(piv_row, rows) if m[r][c] != 0), None)
        if p is None:
            return None
        m[piv_row], m[p] = m[p], m[piv_row]
        pv = m[piv_row][c]
        m[piv_row] = [x / pv for x in m[piv_row]]
        for r in range(rows):
            if r != piv_row and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[piv_row])]
        pivcols.append(c)
        piv_row += 1
    if any(m[r][n] != 0 for r in range(piv_row, rows)):
        return None
    return [m[r][n] for r in range(n)]


def hull_minnorm_in_relint(points):
    """Is the min-norm point of conv(points) in the relative interior of the hull?

    Brute force: for every subset, project the origin onto its affine hull and
    keep projections with nonnegative barycentric coordinates that satisfy the
    global optimality test <q, p> >= |p|^2. Then collect every nonnegative
    barycentric representation of that point over affinely independent subsets;
    the point is relatively interior iff the union of their supports is everything.
    """
    pts = [tuple(Fraction(x) for x in p) for p in points]
    m = len(pts)
    dot = lambda u, v: sum(x * y for x, y in zip(u, v))
    best = None
    for k in range(1, m + 1):
        for s in combinations(range(m), k):
            # KKT: G lam + nu 1 = 0, sum lam = 1
            a = [[dot(pts[i], pts[j]) for j in s] + [Fraction(1)] for i in s]
            a.append([Fraction(1)] * k + [Fraction(0)])
            sol = solve_square(a, [0] * k + [1])
            if sol is None:
                continue
            lam = sol[:k]
            if any(x < 0 for x in lam):
                continue
            p = tuple(sum(lam[t] * pts[i][c] for t, i in enumerate(s)) for c in range(len(pts[0])))
            nn = dot(p, p)
            if all(dot(q, p) >= nn for q in pts):
                best = p
                break
        if best is not None:
            break
    assert best is not None
    p = best
    support = set()
    dim = len(p)
    for k in range(1, m + 1):
        for s in combinations(range(m), k):
            # barycentric coordinates: sum lam_i pts_i = p, sum lam = 1
            a = [[pts[i][c] for i in s] for c in range(dim)] + [[Fraction(1)] * k]
            b = list(p) + [Fraction(1)]
            lam = _unique_solution(a, b, k)
            if lam is None or any(x < 0 for x in lam):
                continue
            support |= {i for t, i in enumerate(s) if lam[t] > 0}
    return support == set(range(m))
