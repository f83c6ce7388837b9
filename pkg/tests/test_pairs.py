import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hassepairs.arith import is_prime, is_square, primes_up_to
from hassepairs.errors import (
    EqualInputs,
    HasseBoundViolated,
    NonNegative,
    NotEvenSupersingular,
    NotFundamental,
    NotHasse,
    NotOddPair,
)
from hassepairs.pairs import (
    EvenCase,
    PairRecord,
    Split,
    Status,
    classify_pair,
    consecutive_prime_power_scan,
    decompose_discriminant,
    enumerate_hasse_pairs,
    even_ss_case,
    exceptional_flag,
    factor_prime_power,
    hasse_pair_list,
    is_hasse,
    pair_invariants,
    split_type,
    sqrt_gap_equality_pairs,
    waterhouse_case,
    waterhouse_status,
)

SS, ORD, EMPTY = Status.SUPERSINGULAR, Status.ORDINARY, Status.EMPTY


@pytest.fixture(scope="module")
def pairs_1e4():
    return hasse_pair_list(10 ** 4, symmetric=True)


def test_factor_prime_power():
    assert (factor_prime_power(243).p, factor_prime_power(243).a) == (3, 5)
    assert (factor_prime_power(22501).p, factor_prime_power(22501).a) == (22501, 1)
    assert factor_prime_power(12) is None
    assert factor_prime_power(2 ** 61 - 1).a == 1
    assert factor_prime_power(3 ** 40).a == 40


def _naive_prime_power(n):
    for p in range(2, n + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return n == 1
    return False


def test_factor_prime_power_small_exhaustive():
    for n in range(2, 5000):
        assert (factor_prime_power(n) is not None) == _naive_prime_power(n)


def test_is_hasse():
    assert is_hasse(3, 7)
    assert not is_hasse(5, 11)
    assert is_hasse(81, 64) and is_hasse(64, 81)
    with pytest.raises(EqualInputs):
        is_hasse(7, 7)


@given(st.integers(2, 10 ** 6), st.integers(2, 10 ** 6))
def test_hasse_predicate_matches_real_inequality(a, b):
    # compare against an exact test on sqrt: |sqrt a - sqrt b| <= 1  <=>  (a + b - 1)^2 <= 4ab and ...
    if a == b:
        return
    lo, hi = min(a, b), max(a, b)
    # sqrt(hi) <= sqrt(lo) + 1  <=>  hi - lo - 1 <= 2 sqrt(lo)
    d = hi - lo - 1
    exact = d <= 0 or d * d <= 4 * lo
    from hassepairs.pairs import is_hasse as h

    if factor_prime_power(a) and factor_prime_power(b):
        assert h(a, b) == exact


def test_pair_invariants():
    assert pair_invariants(3, 7) == (-3, 5, -3)
    assert pair_invariants(625, 587) == (39, -37, -979)
    assert pair_invariants(22801, 22501) == (301, -299, -603)
    with pytest.raises(NotHasse):
        pair_invariants(5, 11)


def test_decompose_discriminant():
    assert decompose_discriminant(-1875) == (25, -3)
    assert decompose_discriminant(-979) == (1, -979)
    assert decompose_discriminant(-12) == (2, -3)
    assert decompose_discriminant(-603) == (3, -67)
    with pytest.raises(NonNegative):
        decompose_discriminant(5)


def test_waterhouse():
    assert waterhouse_status(3, -3) is SS and waterhouse_case(3, -3) == "d"
    assert waterhouse_status(7, 5) is ORD
    assert waterhouse_status(49, 7) is EMPTY
    assert waterhouse_status(256, 14) is EMPTY
    assert waterhouse_status(243, -12) is EMPTY
    with pytest.raises(HasseBoundViolated):
        waterhouse_status(7, 6)


def _waterhouse_by_brute_force(p, a, t):
    """Status from tiny field point counts: exhaustive over short Weierstrass
    (odd p >= 5) is independent of the case analysis."""
    q = p
    sq = [0] * q
    for y in range(q):
        sq[y * y % q] += 1
    traces = set()
    for A in range(q):
        for B in range(q):
            if (4 * A ** 3 + 27 * B * B) % q:
                n = 1 + sum(sq[(x ** 3 + A * x + B) % q] for x in range(q))
                traces.add(q + 1 - n)
    return t in traces


def test_waterhouse_prime_fields_against_point_counts():
    for p in primes_up_to(60)[2:]:
        r = math.isqrt(4 * p)
        for t in range(-r, r + 1):
            assert (waterhouse_status(p, t) is not EMPTY) == _waterhouse_by_brute_force(p, 1, t)


def test_classify_examples():
    cells = {(3, 7): (SS, ORD), (4, 3): (SS, SS), (16, 11): (EMPTY, ORD), (8, 7): (EMPTY, SS),
             (256, 243): (EMPTY, EMPTY), (49, 43): (EMPTY, ORD), (2, 4): (ORD, ORD)}
    for (a, b), (s1, s2) in cells.items():
        r = classify_pair(a, b)
        assert (r.e1_status, r.e2_status) == (s1, s2)
    r = classify_pair(64, 81)
    assert (r.delta, r.conductor_f, r.fundamental_D) == (0, 0, 0)
    assert r.split1 is Split.UNDEFINED is r.split2


def test_record_roundtrip():
    for a, b in [(3, 7), (64, 81), (22801, 22501), (256, 243)]:
        r = classify_pair(a, b)
        assert PairRecord.from_dict(r.as_dict()) == r


def test_enumerate_small():
    got = {(r.q1.q, r.q2.q) for r in enumerate_hasse_pairs(8)}
    assert {(2, 3), (2, 4), (3, 4), (4, 5), (4, 8), (2, 5), (3, 7)} <= got
    odd = {(r.q1.q, r.q2.q) for r in enumerate_hasse_pairs(7, odd_only=True)}
    assert odd == {(3, 5), (3, 7), (5, 7)}
    assert list(enumerate_hasse_pairs(2)) == []


def test_enumerate_matches_naive():
    pps = [n for n in range(2, 1500) if _naive_prime_power(n)]
    naive = [(a, b) for i, a in enumerate(pps) for b in pps[i + 1:] if (b - a - 1) <= 0 or (b - a - 1) ** 2 <= 4 * a]
    assert [(r.q1.q, r.q2.q) for r in enumerate_hasse_pairs(1499)] == naive


def test_split_type():
    assert split_type(-3, 3) is Split.RAMIFIED
    assert split_type(-3, 7) is Split.SPLIT
    assert split_type(-3, 17) is Split.INERT
    with pytest.raises(NotFundamental):
        split_type(-12, 5)


def test_exceptional_and_even_cases():
    assert not exceptional_flag(classify_pair(49, 43))
    assert not exceptional_flag(classify_pair(625, 587))
    with pytest.raises(NotOddPair):
        exceptional_flag(classify_pair(2, 3))
    assert even_ss_case(64, 81) is EvenCase.SPECIAL_64_81
    assert even_ss_case(16, 25) is EvenCase.FERMAT_SQUARE
    assert even_ss_case(1024, 961) is EvenCase.MERSENNE_SQUARE
    assert even_ss_case(4, 3) is EvenCase.PAIR_4_3
    assert even_ss_case(2, 3) is EvenCase.ORDINARY_OTHER_SIDE
    with pytest.raises(NotEvenSupersingular):
        even_ss_case(3, 7)


def test_consecutive_scan():
    assert consecutive_prime_power_scan(10 ** 6) == [(8, 9)]
    assert consecutive_prime_power_scan(8) == []
    assert consecutive_prime_power_scan(100) == [(8, 9)]


def test_sqrt_gap_equality():
    eq = sqrt_gap_equality_pairs(2000)
    assert (81, 64) in eq and (9, 4) in eq
    for a, b in eq:
        assert is_square(a) and is_square(b) and math.isqrt(a) - math.isqrt(b) == 1
    pp = [q for q in range(2, 2001) if factor_prime_power(q)]
    naive = [(a, b) for b in pp for a in pp if a > b and (a - b - 1) ** 2 == 4 * b]
    assert sorted(eq) == sorted(naive)
    assert eq == [(9, 4), (16, 9), (25, 16), (64, 49), (81, 64), (289, 256), (1024, 961)]


# ---- sweeps to 10^4 over ordered pairs


def test_trace_identities(pairs_1e4):
    for r in pairs_1e4:
        assert r.t1 + r.t2 == 2
        assert r.t1 ** 2 - 4 * r.q1.q == r.delta == r.t2 ** 2 - 4 * r.q2.q
        if r.delta < 0:
            assert r.conductor_f ** 2 * r.fundamental_D == r.delta


def test_same_base_coprime(pairs_1e4):
    for r in pairs_1e4:
        if r.q1.p == r.q2.p:
            assert math.gcd(r.delta, r.q1.q * r.q2.q) == 1


def test_odd_pairs(pairs_1e4):
    for r in pairs_1e4:
        if not r.is_odd:
            continue
        assert (r.e1_status, r.e2_status) != (SS, SS)
        assert Split.SPLIT in (r.split1, r.split2)
        assert r.delta < 0 and r.delta % 4 == 1 and not is_square(-r.delta)
        assert not exceptional_flag(r)


def test_pure_prime_pairs(pairs_1e4):
    ss = set()
    for r in pairs_1e4:
        if r.q1.a == 1:
            assert r.e1_status is not EMPTY
            if r.e2_status is not EMPTY and r.q2.a == 1 and r.e1_status is SS:
                ss.add((r.q1.q, r.q2.q))
    assert ss == {(2, 3), (2, 5), (3, 7)}


def test_even_ordinary(pairs_1e4):
    even_ord = {(r.q1.q, r.q2.q) for r in pairs_1e4 if r.q1.p == 2 and r.e1_status is ORD}
    assert even_ord == {(2, 4), (4, 2), (4, 8), (8, 4)}


def test_even_supersingular_dichotomy(pairs_1e4):
    for r in pairs_1e4:
        if r.q1.p == 2 and r.e1_status is SS:
            case = even_ss_case(r.q1.q, r.q2.q)
            assert (case is EvenCase.ORDINARY_OTHER_SIDE) == (r.e2_status is ORD)


def test_empty_empty(pairs_1e4):
    assert {(r.q1.q, r.q2.q) for r in pairs_1e4 if r.table_cell == "empty-empty"} == {(256, 243), (243, 256)}


def test_primes_sanity():
    assert all(is_prime(p) for p in primes_up_to(1000))
