import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hassepairs.errors import (
    DivisionByZero,
    FieldMismatch,
    FieldOverflow,
    MalformedDecimal,
    NonPrimeBase,
    ZeroLinearCoefficient,
    ZeroPolynomial,
)
from hassepairs.field import (
    decimal_mod,
    fe_arith,
    fe_sqrt,
    make_field,
    poly_roots,
    solve_artin_schreier,
)
from hassepairs.oracles import SmallField


def test_prime_field():
    F = make_field(7, 1)
    assert F.a == 1 and F.q == 7
    assert fe_arith("pow", F(3), 6) == F.one


def test_f4_modulus_and_gamma():
    F = make_field(2, 2)
    assert F.modulus == (1, 1, 1)
    g = F.gen
    assert fe_arith("mul", g, g) == g + F.one


def _is_irreducible_bruteforce(mod, p):
    # no roots and no monic factor of degree <= a/2, by full product search
    a = len(mod) - 1
    for d in range(1, a // 2 + 1):
        for f in itertools.product(range(p), repeat=d):
            for g in itertools.product(range(p), repeat=a - d):
                prod = np.polymul(list(reversed(list(f) + [1])), list(reversed(list(g) + [1]))) % p
                if list(reversed(prod.tolist())) == list(mod):
                    return False
    return True


def test_f625_modulus_is_minimal():
    F = make_field(5, 4)
    code = lambda m: sum(c * 5 ** i for i, c in enumerate(m[:-1]))  # noqa: E731
    assert F.modulus[-1] == 1 and _is_irreducible_bruteforce(F.modulus, 5)
    for v in range(code(F.modulus)):
        m = tuple((v // 5 ** i) % 5 for i in range(4)) + (1,)
        if m[0]:
            assert not _is_irreducible_bruteforce(m, 5)


def test_division():
    F = make_field(587)
    assert fe_arith("div", F(1), F(2)) == F(294)
    with pytest.raises(DivisionByZero):
        fe_arith("div", F(1), F(0))


def test_errors():
    with pytest.raises(NonPrimeBase):
        make_field(9, 1)
    with pytest.raises(FieldOverflow):
        make_field(2, 128)
    with pytest.raises(FieldMismatch):
        make_field(5)(1) + make_field(7)(1)


def test_reproducible():
    assert make_field(3, 5).modulus == make_field(3, 5).modulus
    assert make_field(3, 4).modulus == tuple(SmallField(3, 4).modulus)


@pytest.mark.parametrize("p,a", [(2, 2), (2, 3), (3, 2), (5, 2), (2, 5), (3, 3), (7, 2), (2, 7), (13, 2)])
def test_tables_match_schoolbook_oracle(p, a):
    F = make_field(p, a)
    K = SmallField(p, a)
    assert tuple(K.modulus) == F.modulus
    T = F.tables
    x, y = np.meshgrid(np.arange(F.q), np.arange(F.q), indexing="ij")
    assert np.array_equal(T.add(x, y), K.add)
    assert np.array_equal(T.mul(x, y), K.mul)


def test_sqrt_examples():
    F = make_field(7)
    assert fe_sqrt(F(4)) == F(2)
    assert fe_sqrt(F(5)) is None
    G = make_field(2, 2)
    r = fe_sqrt(G.gen)
    assert r == G.gen + G.one and r * r == G.gen


@pytest.mark.parametrize("p,a", [(3, 1), (7, 1), (13, 1), (3, 2), (5, 2), (2, 4), (3, 5), (2, 10), (17, 2), (11, 3)])
def test_sqrt_of_squares_exhaustive(p, a):
    F = make_field(p, a)
    for x in F.elements():
        r = fe_sqrt(x * x)
        assert r in (x, -x)
        assert r.key <= (-r).key


def test_group_order():
    rng = random.Random(1)
    for p, a in [(2, 16), (3, 10), (251, 2), (65521, 1), (7, 5)]:
        F = make_field(p, a)
        for _ in range(100):
            x = F.from_index(rng.randrange(1, F.q))
            assert x ** (F.q - 1) == F.one


def test_artin_schreier():
    F2 = make_field(2)
    assert solve_artin_schreier(F2(1), F2(0)) == {F2(0), F2(1)}
    assert solve_artin_schreier(F2(1), F2(1)) == set()
    F4 = make_field(2, 2)
    g = F4.gen
    sols = solve_artin_schreier(g, g * g)
    brute = {y for y in F4.elements() if y * y + g * y == g * g}
    assert sols == brute and len(sols) == 2
    with pytest.raises(ZeroLinearCoefficient):
        solve_artin_schreier(F4.zero, g)


@pytest.mark.parametrize("a", [3, 4, 6])
def test_artin_schreier_exhaustive(a):
    F = make_field(2, a)
    els = list(F.elements())
    for A in els[1:]:
        for B in els:
            assert solve_artin_schreier(A, B) == {y for y in els if y * y + A * y == B}


def test_poly_roots_examples():
    F = make_field(7)
    assert poly_roots([F(-1), F(0), F(1)], F) == {F(1): 1, F(6): 1}
    assert poly_roots([F(9), F(-6), F(1)], F) == {F(3): 2}
    with pytest.raises(ZeroPolynomial):
        poly_roots([F(0)], F)


def test_poly_roots_random_against_evaluation():
    rng = random.Random(7)
    for _ in range(1000):
        p, a = rng.choice([(7, 1), (101, 1), (2, 4), (3, 3), (9973, 1), (5, 2)])
        F = make_field(p, a)
        deg = rng.randint(1, 8)
        coeffs = [F.from_index(rng.randrange(F.q)) for _ in range(deg)] + [F.from_index(rng.randrange(1, F.q))]
        roots = poly_roots(coeffs, F)
        if F.q <= 200:
            brute = [x for x in F.elements() if sum((c * x ** i for i, c in enumerate(coeffs)), F.zero).is_zero()]
            assert list(roots) == sorted(brute, key=lambda r: r.key)
        assert sum(roots.values()) <= deg


def test_decimal_mod():
    s = "141359947154721358697753474691071362751004672000"
    assert decimal_mod(s, 7) == int(s) % 7
    assert decimal_mod("-1", 5) == 4
    assert decimal_mod("0", 2) == 0
    with pytest.raises(MalformedDecimal):
        decimal_mod("12a", 5)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=-(10 ** 60), max_value=10 ** 60), st.sampled_from([2, 3, 7, 587, 1000003]))
def test_decimal_mod_property(n, p):
    assert decimal_mod(str(n), p) == n % p


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([(2, 3), (3, 4), (5, 3), (31, 2), (1021, 1)]), st.data())
def test_field_axioms(pa, data):
    F = make_field(*pa)
    el = st.integers(min_value=0, max_value=F.q - 1).map(F.from_index)
    x, y, z = data.draw(el), data.draw(el), data.draw(el)
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    if not y.is_zero():
        assert (x / y) * y == x
    assert x ** F.p == x.frobenius()
