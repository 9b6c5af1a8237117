from fractions import Fraction as F

import pytest

from nilrad.algebra import LieLaw
from nilrad.pre_einstein import (
    DegenerateTypeError,
    EigenType,
    PreEinsteinError,
    PreEinsteinResult,
    graded_slots,
    min_decimal,
    min_value,
    necessary_conditions,
    pre_einstein,
    target_moment_map,
)

from conftest import law


@pytest.mark.parametrize(
    "name, value, scale, d",
    [
        ("1.17", None, F(19, 65), (1, 1, 2, 3, 3, 4, 5)),
        ("2.2", None, F(1, 2), (1, 1, 1, 2, 2, 2, 3)),
        ("3.1(i)", 2, F(1, 2), (1, 1, 1, 2, 2, 2, 3)),
        ("3.1(i)", 0, F(1, 2), (1, 1, 1, 2, 2, 2, 3)),
        ("1.3(i)", 2, F(5, 17), (1, 2, 2, 3, 3, 4, 5)),
        ("h3", None, F(2, 3), (1, 1, 2)),
    ],
)
def test_pre_einstein_values(name, value, scale, d):
    pe = pre_einstein(law(name, value))
    assert pe.scale == scale and pe.d == d
    assert pe.phi == tuple(scale * x for x in d)


def test_trace_condition_on_all_derivations(g22):
    from nilrad.derivations import derivation_space

    pe = pre_einstein(g22)
    for psi in derivation_space(g22).basis:
        assert sum(pe.phi[i] * psi[i][i] for i in range(7)) == sum(psi[i][i] for i in range(7))


def test_eigen_type():
    et = EigenType.from_vector((1, 1, 2, 3, 3, 4, 5))
    assert str(et) == "(1<2<3<4<5; 2,1,2,1,1)"
    assert et.n == 7 and et.expanded() == (1, 1, 2, 3, 3, 4, 5)


@pytest.mark.parametrize(
    "d, value, text",
    [
        ((1, 1, 2, 3, 3, 4, 5), F(65, 94), "0.692"),
        ((1, 2, 2, 3, 3, 4, 5), F(17, 19), "0.895"),
        ((1, 1, 1, 2, 2, 2, 3), F(1), "1"),
        ((1, 1, 2), F(3), "3"),
    ],
)
def test_min(d, value, text):
    m = min_value(EigenType.from_vector(d))
    assert m == value and min_decimal(m) == text


def test_min_of_scalar_type_is_undefined():
    with pytest.raises(DegenerateTypeError):
        min_value(EigenType.from_vector((1, 1, 1)))


def test_min_decimal_rounding():
    assert min_decimal(F(7, 5)) == "1.4"
    assert min_decimal(F(9, 10)) == "0.9"
    assert min_decimal(F(25, 31)) == "0.807"  # 0.80645 -> 0.8065 -> 0.807


def test_target_moment_map():
    diag, c = target_moment_map((1, 1, 2, 3, 3, 4, 5))
    assert diag == (F(-23, 47), F(-23, 47), F(-27, 94), F(-4, 47), F(-4, 47), F(11, 94), F(15, 47))
    assert c == F(-65, 94)
    # sum of the diagonal is -1: unit norm
    assert sum(diag) == -1
    assert target_moment_map(EigenType.from_vector((1, 1, 2)))[0] == (-1, -1, 1)
    with pytest.raises(ValueError):
        target_moment_map((0, 1, 1))


def test_graded_slots():
    s = graded_slots((1, 1, 2, 3, 3, 4, 5))
    assert len(s) == 13 and s[0] == (1, 2, 3) and s[-1] == (3, 5, 7)


def test_necessary_conditions():
    ok, _ = necessary_conditions(PreEinsteinResult.from_phi((1, 1, 2)))
    assert ok
    res = PreEinsteinResult.from_phi((F(0), F(1), F(0), F(1)))
    ok, why = necessary_conditions(res)
    assert not ok and "1,3" in why
    assert not res.positive


def test_rank_zero_raises():
    # these three slots force every diagonal derivation to vanish
    lw = LieLaw(3, {(1, 2, 1): 1, (1, 2, 2): 1, (1, 3, 1): 1})
    with pytest.raises(PreEinsteinError):
        pre_einstein(lw)
