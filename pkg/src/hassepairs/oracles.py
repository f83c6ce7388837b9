"""Naive reference implementations used to validate the main code paths.

Nothing here imports the field, curve or graph modules: the small-field
arithmetic is rebuilt from scratch (trial-division irreducibility, schoolbook
multiplication tables) and curves are counted by scanning every (x, y).
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np

from .errors import BadDiscriminant, FieldTooLarge

CENSUS_LIMIT = 200


# -------------------------------------------------------------- small fields


def _poly_divides(g: list[int], f: list[int], p: int) -> bool:
    """Does monic g divide f over F_p (constant-first coefficient lists)?"""
    r = list(f)
    dg = len(g) - 1
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if c:
            for i in range(dg + 1):
                r[k - dg + i] = (r[k - dg + i] - c * g[i]) % p
    return not any(r[:dg])


def _irreducible_by_trial_division(f: list[int], p: int) -> bool:
    a = len(f) - 1
    for d in range(1, a // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if _poly_divides(list(tail) + [1], f, p):
                return False
    return True


class SmallField:
    """F_{p^a} with full addition and multiplication tables (q <= 200)."""

    def __init__(self, p: int, a: int):
        self.p, self.a, self.q = p, a, p ** a
        if self.q > CENSUS_LIMIT:
            raise FieldTooLarge(f"oracle field of order {self.q}")
        if a == 1:
            self.modulus = [0, 1]
        else:
            for code in range(p ** a):
                digits = [(code // p ** i) % p for i in range(a)]
                if digits[0] and _irreducible_by_trial_division(digits + [1], p):
                    self.modulus = digits + [1]
                    break
        q = self.q
        vecs = [self.digits(v) for v in range(q)]
        self.add = np.zeros((q, q), dtype=np.int64)
        self.mul = np.zeros((q, q), dtype=np.int64)
        for x in range(q):
            for y in range(q):
                self.add[x, y] = self.encode([(u + w) % p for u, w in zip(vecs[x], vecs[y])])
                self.mul[x, y] = self.encode(self._mulpoly(vecs[x], vecs[y]))
        self.neg = np.array([self.encode([(-u) % p for u in vecs[x]]) for x in range(q)])
        self.inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            self.inv[x] = int(np.flatnonzero(self.mul[x] == 1)[0])

    def digits(self, v: int) -> list[int]:
        return [(v // self.p ** i) % self.p for i in range(self.a)]

    def encode(self, digits) -> int:
        return sum(int(d) * self.p ** i for i, d in enumerate(digits))

    def label(self, v: int) -> str:
        return str(v) if self.a == 1 else ":".join(map(str, self.digits(v)))

    def const(self, n: int) -> int:
        return n % self.p

    def _mulpoly(self, f, g):
        p, a, m = self.p, self.a, self.modulus
        prod = [0] * (2 * a - 1)
        for i, x in enumerate(f):
            for k, y in enumerate(g):
                prod[i + k] = (prod[i + k] + x * y) % p
        for k in range(len(prod) - 1, a - 1, -1):
            c = prod[k]
            if c:
                for i in range(a + 1):
                    prod[k - a + i] = (prod[k - a + i] - c * m[i]) % p
        return prod[:a]

    def pw(self, x, e: int):
        out = np.ones_like(np.asarray(x))
        for _ in range(e):
            out = self.mul[out, x]
        return out


# -------------------------------------------------------------- census


def _invariants(K: SmallField, a1, a2, a3, a4, a6):
    """(discriminant, j) arrays for coefficient arrays, by the general formulas."""
    M, A, c = K.mul, K.add, K.const

    def lin(*terms):  # sum of (integer, product-array) terms
        acc = np.zeros_like(np.asarray(a6))
        for k, v in terms:
            acc = A[acc, M[c(k), v]]
        return acc

    b2 = lin((1, M[a1, a1]), (4, a2))
    b4 = lin((2, a4), (1, M[a1, a3]))
    b6 = lin((1, M[a3, a3]), (4, a6))
    b8 = lin((1, M[M[a1, a1], a6]), (4, M[a2, a6]), (-1, M[M[a1, a3], a4]), (1, M[a2, M[a3, a3]]), (-1, M[a4, a4]))
    c4 = lin((1, M[b2, b2]), (-24, b4))
    disc = lin((-1, M[M[b2, b2], b8]), (-8, M[M[b4, b4], b4]), (-27, M[b6, b6]), (9, M[M[b2, b4], b6]))
    j = M[M[M[c4, c4], c4], K.inv[disc]]
    return disc, j


def _naive_counts(K: SmallField, a1, a2, a3, a4, a6) -> np.ndarray:
    """Count affine solutions by scanning every (x, y), plus infinity."""
    q = K.q
    M, A = K.mul, K.add
    counts = np.ones(len(a6), dtype=np.int64)
    for y in range(q):
        for x in range(q):
            lhs = A[M[y, y], A[M[a1, M[x, y]], M[a3, y]]]
            rhs = A[A[M[M[x, x], x], M[a2, M[x, x]]], A[M[a4, x], a6]]
            counts += lhs == rhs
    return counts


def _orbits(K: SmallField, tuples: np.ndarray, act) -> list[int]:
    """Indices of one representative per orbit; ``act(row)`` returns every
    image of a tuple under the transformation group as an array of rows."""
    q = K.q
    code = lambda arr: sum(arr[..., i] * q ** i for i in range(arr.shape[-1]))  # noqa: E731
    pos = {int(k): i for i, k in enumerate(code(tuples))}
    seen = np.zeros(len(tuples), dtype=bool)
    reps = []
    for i in range(len(tuples)):
        if seen[i]:
            continue
        reps.append(i)
        for k in np.unique(code(act(tuples[i]))):
            seen[pos[int(k)]] = True
    return reps


def _families(K: SmallField):
    """Reduced Weierstrass families covering every curve, each with the group
    of coordinate changes preserving the family.

    Yields (parameter tuples, action on one tuple, expansion to a1..a6).
    """
    q, p = K.q, K.p
    M, A, N = K.mul, K.add, K.neg
    F = np.arange(q)
    U = np.arange(1, q)
    Ui = K.inv[U]
    if p >= 5:
        a4, a6 = (g.ravel() for g in np.meshgrid(F, F, indexing="ij"))

        def act(t):
            return np.stack([M[K.pw(Ui, 4), t[0]], M[K.pw(Ui, 6), t[1]]], axis=1)

        tup = np.stack([a4, a6], axis=1)
        yield tup, act, lambda t: (0 * t[:, 0], 0 * t[:, 0], 0 * t[:, 0], t[:, 0], t[:, 1])
    elif p == 3:
        a2, a4, a6 = (g.ravel() for g in np.meshgrid(F, F, F, indexing="ij"))
        uu, rr = (g.ravel() for g in np.meshgrid(Ui, F, indexing="ij"))

        def act(t):
            b2 = M[K.pw(uu, 2), t[0]]
            b4 = M[K.pw(uu, 4), A[t[1], N[M[rr, t[0]]]]]
            b6 = M[K.pw(uu, 6), A[A[t[2], M[rr, t[1]]], A[M[M[rr, rr], t[0]], K.pw(rr, 3)]]]
            return np.stack([b2, b4, b6], axis=1)

        tup = np.stack([a2, a4, a6], axis=1)
        yield tup, act, lambda t: (0 * t[:, 0], t[:, 0], 0 * t[:, 0], t[:, 1], t[:, 2])
    else:
        # a1 = 1: y^2 + xy = x^3 + a2 x^2 + a6
        a2, a6 = (g.ravel() for g in np.meshgrid(F, F, indexing="ij"))

        def act1(t):
            return np.stack([A[t[0], A[F, M[F, F]]], np.full(q, t[1])], axis=1)

        yield np.stack([a2, a6], axis=1), act1, lambda t: (1 + 0 * t[:, 0], t[:, 0], 0 * t[:, 0], 0 * t[:, 0], t[:, 1])
        # a1 = a2 = 0: y^2 + a3 y = x^3 + a4 x + a6, a3 != 0
        a3, a4, a6 = (g.ravel() for g in np.meshgrid(U, F, F, indexing="ij"))
        uu, ss, tt = (g.ravel() for g in np.meshgrid(Ui, F, F, indexing="ij"))

        def act0(t):
            s2 = M[ss, ss]
            b3 = M[K.pw(uu, 3), t[0]]
            b4 = M[K.pw(uu, 4), A[A[t[1], M[ss, t[0]]], M[s2, s2]]]
            inner = A[A[t[2], M[s2, t[1]]], A[M[M[s2, s2], s2], A[M[tt, t[0]], M[tt, tt]]]]
            b6 = M[K.pw(uu, 6), inner]
            return np.stack([b3, b4, b6], axis=1)

        yield np.stack([a3, a4, a6], axis=1), act0, lambda t: (0 * t[:, 0], 0 * t[:, 0], t[:, 0], t[:, 1], t[:, 2])


@lru_cache(maxsize=None)
def brute_force_curve_census(p: int, a: int = 1) -> dict[int, dict[str, int]]:
    """order -> {j label: number of isomorphism classes} over F_{p^a}, q <= 200."""
    K = SmallField(p, a)
    out: dict[int, dict[str, int]] = {}
    for tuples, act, expand in _families(K):
        cols = expand(tuples)
        disc, _ = _invariants(K, *cols)
        tuples = tuples[disc != 0]
        reps = tuples[_orbits(K, tuples, act)]
        cols = expand(reps)
        _, j = _invariants(K, *cols)
        counts = _naive_counts(K, *cols)
        for n, jj in zip(counts.tolist(), j.tolist()):
            bucket = out.setdefault(n, {})
            bucket[K.label(jj)] = bucket.get(K.label(jj), 0) + 1
    return {n: dict(sorted(b.items())) for n, b in sorted(out.items())}


# -------------------------------------------------------------- class numbers


def class_number_a_outer(disc: int) -> int:
    """Reduced forms counted with a as the outer loop (second, independent path)."""
    if disc >= 0 or disc % 4 not in (0, 1):
        raise BadDiscriminant(str(disc))
    h = 0
    a = 1
    while 3 * a * a <= -disc:
        for b in range(-a + 1, a + 1):
            if (b * b - disc) % (4 * a):
                continue
            c = (b * b - disc) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, abs(b)), c) == 1:
                h += 1
        a += 1
    return h


# -------------------------------------------------------------- partners


def window_partners(p: int) -> list[int]:
    """Primes l != p with |sqrt(p) - sqrt(l)| <= 1, by trial division on the window."""

    def prime(n):
        return n > 1 and all(n % d for d in range(2, math.isqrt(n) + 1))

    lo = max(2, p - 2 * math.isqrt(p) - 2)
    hi = p + 2 * math.isqrt(p) + 2
    return [l for l in range(lo, hi + 1) if l != p and prime(l) and (p + 1 - l) ** 2 <= 4 * p]
