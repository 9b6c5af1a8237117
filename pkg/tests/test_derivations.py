from fractions import Fraction

import pytest
import sympy

from nilrad.algebra import LieLaw
from nilrad.derivations import derivation_space, diagonal_derivations, diagonal_rank, is_derivation

from conftest import law


def sympy_der_dim(lw: LieLaw) -> int:
    """dim Der from a symbolic Leibniz system built without the package's tensors."""
    n = lw.n
    d = sympy.Matrix(n, n, lambda r, c: sympy.Symbol(f"d{r}_{c}"))

    def br(x, y):
        out = sympy.zeros(n, 1)
        for (i, j, k), v in lw.brackets.items():
            out[k - 1] += sympy.Rational(v.numerator, v.denominator) * (x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1])
        return out

    eqs = []
    e = [sympy.Matrix([int(t == s) for t in range(n)]) for s in range(n)]
    for p in range(n):
        for q in range(p + 1, n):
            eqs += list(d * br(e[p], e[q]) - br(d * e[p], e[q]) - br(e[p], d * e[q]))
    eqs = [x for x in eqs if x != 0]
    if not eqs:
        return n * n
    a, _ = sympy.linear_eq_to_matrix(eqs, list(d))
    return n * n - a.rank()


CASES = [
    ("1.17", None, 11),
    ("2.2", None, 15),
    ("1.3(i)", 2, 13),
    ("3.1(i)", 0, 15),
    ("3.1(i)", 1, 15),
    ("3.1(i)", 3, 15),
    ("h3", None, 6),
    ("filiform4", None, 7),
]


@pytest.mark.parametrize("name, value, dim", CASES)
def test_der_dimension_against_sympy(name, value, dim):
    lw = law(name, value)
    assert derivation_space(lw).dim == dim == sympy_der_dim(lw)


@pytest.mark.parametrize("value", [2, -1, Fraction(1, 2)])
def test_curve_3_1_jumps_at_the_exceptional_orbit(value):
    # the printed law has a larger derivation algebra at these three points
    lw = law("3.1(i)", value)
    assert derivation_space(lw).dim == 17 == sympy_der_dim(lw)


@pytest.mark.parametrize("name, value", [(n, v) for n, v, _ in CASES])
def test_every_basis_element_is_a_derivation(name, value):
    lw = law(name, value)
    for d in derivation_space(lw).basis:
        assert is_derivation(lw, d)


def test_non_derivation_rejected(h3):
    ident = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    assert not is_derivation(h3, ident)
    assert is_derivation(h3, [[1, 0, 0], [0, 1, 0], [0, 0, 2]])


def test_torus(g117, g22):
    t = diagonal_derivations(g117)
    assert t.dim == 1
    g = t.generators[0]
    assert [x / g[0] for x in g] == [1, 1, 2, 3, 3, 4, 5]
    assert diagonal_rank(g22) == 2
    assert diagonal_rank(law("abelian3")) == 3
