import json
from fractions import Fraction as F
from decimal import Decimal

import pytest

from nilrad import catalog
from nilrad.algebra import LieLaw, NotNilpotentError
from nilrad.classify import (
    EN,
    INCONCLUSIVE,
    NOT_EN_VERDICT,
    JacobiError,
    classify,
    classify_entry,
    classify_many,
    table,
    table_row,
)
from nilrad.derivations import diagonal_rank

from conftest import law


def test_records_loaded():
    recs = catalog.records()
    assert len(recs) == 124
    r = catalog.expected_record("1.17")
    assert r.en and r.phi == tuple(F(19, 65) * x for x in (1, 1, 2, 3, 3, 4, 5))
    assert r.min_exact == F(65, 94) and r.dcs == (5, 4, 2, 1)
    assert catalog.expected_record("3.1(i)", F(2)).en
    assert not catalog.expected_record("3.1(i)", F(0)).en
    assert not catalog.expected_record("3.1(i)", F(1)).en
    assert catalog.expected_record("3.1(i)") is None


def test_printed_min_column_within_display_precision():
    # the printed column mixes rounding and truncation, so compare to one unit
    # in the last printed place rather than digit for digit
    n = 0
    for r in catalog.records():
        if r.min_exact is None:
            continue
        d = Decimal(r.min_printed)
        ulp = Decimal(1).scaleb(d.as_tuple().exponent)
        assert abs(F(d) - r.min_exact) <= F(ulp), r.name
        n += 1
    assert n == 90


def test_builtin_entries():
    assert catalog.names()[:4] == ["1.17", "1.3(i)", "2.2", "3.1(i)"]
    assert catalog.get("1.17").fixture is not None
    with pytest.raises(KeyError):
        catalog.get("9.99")


def test_classify_3_1_at_two():
    rep = classify_entry(catalog.get("3.1(i)"), 2)
    assert rep.verdict == EN and rep.certificate == "nice-criterion"


def test_classify_2_2():
    rep = classify_entry(catalog.get("2.2"))
    assert rep.verdict == NOT_EN_VERDICT and rep.certificate == "degeneration"
    assert rep.details["degeneration"]["dim_der"] == [15, 17]
    assert rep.mismatches == []


def test_classify_1_17_needs_the_fixture(g117):
    bare = classify(g117, "1.17")
    assert bare.verdict == INCONCLUSIVE
    assert bare.details["soliton_system_type"] == [1, 1, 2, 3, 3, 4, 5]
    full = classify_entry(catalog.get("1.17"))
    assert full.verdict == EN and full.certificate == "soliton"
    assert full.min_exact == F(65, 94) and full.mismatches == []


def test_wrong_fixture_is_not_trusted(g22):
    rep = classify(g22, "2.2", fixture=catalog.get("1.17").fixture)
    assert rep.verdict == NOT_EN_VERDICT  # degeneration decides before the fixture is consulted
    rep = classify(law("1.3(i)", 2), "x", fixture=catalog.get("1.17").fixture)
    assert rep.verdict == INCONCLUSIVE and any("type differs" in d for d in rep.diagnostics)


def test_table_rows():
    rep = classify_entry(catalog.get("1.17"))
    assert " ".join(table_row(rep)[:6]) == "1.17 ✓ 19/65(1,1,2,3,3,4,5) 0.692 11 (5,4,2,1)"
    rep0 = classify_entry(catalog.get("3.1(i)"), 0)
    assert table_row(rep0)[1] == "-"
    assert table([]).splitlines() == ["name\tEN\tpre-Einstein derivation\tMin\tdim Der\tdim DCS\tmismatch"]


def test_json_rationals_are_strings():
    rep = classify_entry(catalog.get("1.17"))
    data = json.loads(table([rep], "json"))[0]
    assert data["phi_scale"] == "19/65" and data["min"] == "65/94" and data["min_decimal"] == "0.692"
    assert data["verdict"] == "EN"


def test_rank_zero_needs_an_adapted_basis():
    # the 4-dimensional filiform algebra in a basis where no grading is diagonal
    lw = LieLaw(4, {(1, 2, 3): 1, (1, 2, 4): 1, (1, 3, 4): 1, (2, 3, 4): 1})
    assert diagonal_rank(lw) == 0
    assert classify(lw).verdict == INCONCLUSIVE
    assert classify(lw, torus_adapted=True).verdict == NOT_EN_VERDICT


def test_bad_inputs(g117):
    with pytest.raises(JacobiError):
        classify(LieLaw(7, {**g117.brackets, (3, 5, 7): -1}))
    with pytest.raises(NotNilpotentError):
        classify(LieLaw(2, {(1, 2, 2): 1}))
    with pytest.raises(ValueError):
        classify_entry(catalog.get("3.1(i)"))


def test_parallel_matches_serial():
    jobs = [("entry", (catalog.get(n), v), {}) for n, v in
            (("3.1(i)", 2), ("2.2", None), ("3.1(i)", 0), ("h3", None), ("filiform4", None))]
    serial = [r.to_dict() for r in classify_many(jobs, 1)]
    parallel = [r.to_dict() for r in classify_many(jobs, 3)]
    assert serial == parallel
    assert [r["label"] for r in serial] == ["3.1(i)[2]", "2.2", "3.1(i)[0]", "h3", "filiform4"]


SAMPLES = [("1.17", None), ("2.2", None), ("1.3(i)", 2), ("1.3(i)", 0), ("3.1(i)", 2), ("3.1(i)", 0), ("3.1(i)", 1)]


@pytest.mark.parametrize("name, value", SAMPLES)
def test_bundled_entries_match_their_records(name, value):
    rep = classify_entry(catalog.get(name), value)
    exp = rep.expected
    assert exp is not None
    assert rep.phi == exp.phi
    assert rep.dim_der == exp.dim_der
    assert tuple(rep.dcs[1:-1]) == exp.dcs
    if exp.min_exact is not None:
        assert rep.min_exact == exp.min_exact
