import pytest

from _support import census_mismatches
from hassepairs.errors import BadDiscriminant, FieldTooLarge
from hassepairs.fixtures import load_fixtures, run_fixture_suite
from hassepairs.forms import class_number
from hassepairs.oracles import SmallField, brute_force_curve_census, class_number_a_outer, window_partners


def test_census_examples():
    assert brute_force_curve_census(3)[7] == {"0": 1}
    assert set(brute_force_curve_census(7)[4]) == {"0", "2"}
    assert brute_force_curve_census(2, 2)[7] == {"0:0": 2}


@pytest.mark.parametrize("pa, total", [((2, 1), 5), ((3, 1), 8), ((5, 1), 12), ((7, 1), 18), ((2, 2), 13), ((2, 3), 17), ((3, 2), 22)])
def test_census_class_totals(pa, total):
    census = brute_force_curve_census(*pa)
    assert sum(sum(b.values()) for b in census.values()) == total


def test_census_orders_in_window():
    for n in brute_force_curve_census(5):
        assert (5 + 1 - n) ** 2 <= 4 * 5


def test_field_too_large():
    with pytest.raises(FieldTooLarge):
        SmallField(3, 5)
    with pytest.raises(FieldTooLarge):
        brute_force_curve_census(211)


def test_small_field_axioms():
    K = SmallField(3, 2)
    assert K.modulus == [1, 0, 1]  # x^2 + 1 is the first irreducible by base-3 code
    for x in range(1, K.q):
        assert K.mul[x, K.inv[x]] == 1
        assert K.add[x, K.neg[x]] == 0


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27, 32, 49, 64, 81, 97, 121, 125, 128])
def test_enumerate_set_matches_census(q):
    assert census_mismatches(q) == []


def test_class_number_two_paths():
    for d in range(-3, -5001, -1):
        if d % 4 in (0, 1):
            assert class_number(d) == class_number_a_outer(d)
    with pytest.raises(BadDiscriminant):
        class_number_a_outer(-6)


def test_window_partners():
    assert window_partners(101) == [83, 89, 97, 103, 107, 109, 113]
    assert window_partners(2) == [3, 5]
    assert window_partners(3) == [2, 5, 7]


def test_fixture_suite_passes():
    res = run_fixture_suite()
    assert len(res) == len(load_fixtures()) == 18
    assert [r.name for r in res if not r.passed] == []
    assert all(r.source for r in res)
    note = {r.name: r.note for r in res}["22801-22501"]
    assert note and "-603" in note


def test_fixture_failure_is_reported(tmp_path):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"name": "x", "pair": [3, 7], "statuses": ["ordinary", "ordinary"], "delta": -24, "source": "test"}\n')
    (r,) = run_fixture_suite(bad)
    assert not r.passed and len(r.failures) == 2
