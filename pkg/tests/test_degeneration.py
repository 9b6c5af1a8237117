from fractions import Fraction as F

import pytest

from nilrad.algebra import jacobi_check
from nilrad.degeneration import (
    INDETERMINATE,
    NOT_EN,
    DegenerationCertificate,
    Invariants,
    InvalidDirectionError,
    assess,
    certificate_from_direction,
    exponent,
    find_degeneration,
    gphi_diag,
)
from nilrad.linalg import rref
from nilrad.nice import YES, nice_criterion
from nilrad.pre_einstein import pre_einstein

from conftest import law


def test_gphi_2_2(g22):
    rows = gphi_diag(g22, pre_einstein(g22).phi)
    assert rows[0] == [1] * 7
    # equivalent to a1 + a2 + a3 + 2(a4 + a5 + a6) + 3 a7 = 0
    want = [[1] * 7, [1, 1, 1, 2, 2, 2, 3]]
    assert rref(rows)[0] == rref(want)[0]
    # the displayed eliminations a4 = -a5-a6-2a7, a1 = a7-a2-a3 satisfy both rows
    a2, a3, a5, a6, a7 = F(1, 3), F(-2), F(5), F(1, 7), F(2)
    a = [a7 - a2 - a3, a2, a3, -a5 - a6 - 2 * a7, a5, a6, a7]
    assert all(sum(r[i] * a[i] for i in range(7)) == 0 for r in rows)


def test_gphi_h3(h3):
    rows = gphi_diag(h3, (F(2, 3), F(2, 3), F(4, 3)))
    # a3 = 0, a2 = -a1
    assert rref(rows)[0] == [[1, 1, 0], [0, 0, 1]]


def test_printed_direction_for_2_2(g22):
    phi = pre_einstein(g22).phi
    cert = certificate_from_direction(g22, phi, (1, -1, 0, -1, 0, 1, 0))
    assert cert.dropped == ((3, 6, 7),)
    assert cert.before.dim_der == 15 and cert.after.dim_der == 17
    assert assess(cert) == NOT_EN


def test_search_on_2_2(g22):
    phi = pre_einstein(g22).phi
    cert = find_degeneration(g22, phi)
    assert cert is not None and cert.after.dim_der == 17
    _check_certificate(g22, phi, cert)
    assert assess(cert) == NOT_EN


def _check_certificate(lw, phi, cert):
    assert sum(cert.X) == 0 and sum(p * x for p, x in zip(phi, cert.X)) == 0
    for s in lw.brackets:
        w = exponent(s, cert.X)
        assert w >= 0
        assert (w > 0) == (s in cert.dropped)
    assert cert.limit == lw.without(cert.dropped)
    for s, v in cert.limit.brackets.items():
        assert lw.brackets[s] == v
    assert jacobi_check(cert.limit)


def test_h3_has_no_degeneration(h3):
    assert find_degeneration(h3, pre_einstein(h3).phi) is None


def test_3_1_at_zero():
    lw = law("3.1(i)", 0)
    phi = pre_einstein(lw).phi
    cert = certificate_from_direction(lw, phi, (1, 1, 1, 2, -10, 2, 3))
    assert cert.dropped == ((1, 3, 5),)
    found = find_degeneration(lw, phi)
    assert found is not None
    _check_certificate(lw, phi, found)


def test_invalid_directions(g22):
    phi = pre_einstein(g22).phi
    with pytest.raises(InvalidDirectionError):
        certificate_from_direction(g22, phi, (1, 0, 0, 0, 0, 0, 0))  # trace nonzero
    with pytest.raises(InvalidDirectionError):
        certificate_from_direction(g22, phi, (-1, 1, 0, 1, 0, -1, 0))  # negative exponent
    with pytest.raises(InvalidDirectionError):
        certificate_from_direction(g22, phi, (0,) * 7)  # nothing dropped


def test_assess():
    h = law("h3")
    inv = Invariants.of(h)
    same = DegenerationCertificate((0, 0, 0), ((1, 2, 3),), h, inv, inv)
    assert assess(same) == INDETERMINATE
    with pytest.raises(ValueError):
        assess(None)


@pytest.mark.parametrize(
    "name, value",
    [("3.1(i)", 2), ("3.1(i)", -1), ("3.1(i)", F(1, 2)), ("h3", None), ("h3+R", None), ("filiform4", None)],
)
def test_nice_einstein_laws_never_assessed_not_en(name, value):
    lw = law(name, value)
    assert nice_criterion(lw).einstein == YES
    cert = find_degeneration(lw, pre_einstein(lw).phi)
    assert cert is None or assess(cert) != NOT_EN
