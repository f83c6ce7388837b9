"""Elliptic curves over F_{p^a}: models, exact point counts, twist families
and the sets of isomorphism classes with a prescribed number of points."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import FieldTooLarge, SingularModel, TargetOutOfHasseWindow
from .field import FieldElement, FiniteField, FieldTables, make_field

COUNT_LIMIT = 1 << 24


class Shape(str, Enum):
    SHORT_W = "short_weierstrass"
    CHAR3 = "char3"
    CHAR2_ORDINARY = "char2_ordinary"
    CHAR2_SUPERSINGULAR = "char2_supersingular"


@dataclass(frozen=True)
class CurveModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    field: FiniteField
    a1: FieldElement
    a2: FieldElement
    a3: FieldElement
    a4: FieldElement
    a6: FieldElement

    @classmethod
    def from_ints(cls, field: FiniteField, a1=0, a2=0, a3=0, a4=0, a6=0) -> "CurveModel":
        conv = lambda c: c if isinstance(c, FieldElement) else field(c)  # noqa: E731
        return cls(field, conv(a1), conv(a2), conv(a3), conv(a4), conv(a6))

    @property
    def coeffs(self) -> tuple[FieldElement, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def key(self) -> tuple:
        return tuple(c.key for c in self.coeffs)

    @property
    def shape(self) -> Shape:
        p = self.field.p
        if p >= 5:
            return Shape.SHORT_W
        if p == 3:
            return Shape.CHAR3
        return Shape.CHAR2_ORDINARY if not self.a1.is_zero() else Shape.CHAR2_SUPERSINGULAR

    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.coeffs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def discriminant(self) -> FieldElement:
        b2, b4, b6, b8 = self.b_invariants()
        return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def is_singular(self) -> bool:
        return self.discriminant.is_zero()

    def serialize(self) -> list[str]:
        return [c.serialize() for c in self.coeffs]

    def __str__(self) -> str:
        a1, a2, a3, a4, a6 = self.coeffs
        lhs = "y^2"
        if not a1.is_zero():
            lhs += f" + ({a1})xy"
        if not a3.is_zero():
            lhs += f" + ({a3})y"
        rhs = "x^3"
        for c, mon in ((a2, "x^2"), (a4, "x"), (a6, "")):
            if not c.is_zero():
                rhs += f" + ({c}){mon}"
        return f"{lhs} = {rhs} over {self.field}"


def j_invariant(curve: CurveModel) -> FieldElement:
    disc = curve.discriminant
    if disc.is_zero():
        raise SingularModel(str(curve))
    b2, b4, _, _ = curve.b_invariants()
    c4 = b2 * b2 - 24 * b4
    return c4 * c4 * c4 / disc


# -------------------------------------------------------------- point counts


def _count_many(T: FieldTables, rows: dict[str, np.ndarray]) -> np.ndarray:
    """Point counts of a batch of models given as columns of coefficient
    indices (keys a1..a6, each an int64 vector of the same length)."""
    q, p = T.q, T.p
    n = len(rows["a6"])
    X = np.arange(q, dtype=np.int64)
    X2 = T.mul(X, X)
    X3 = T.mul(X2, X)
    out = np.empty(n, dtype=np.int64)
    chunk = max(1, (1 << 21) // q)
    for lo in range(0, n, chunk):
        sl = slice(lo, min(n, lo + chunk))
        col = {k: v[sl][:, None] for k, v in rows.items()}
        rhs = T.add(X3[None, :], T.mul(col["a2"], X2[None, :]))
        rhs = T.add(rhs, T.mul(col["a4"], X[None, :]))
        rhs = T.add(rhs, col["a6"])
        h = T.add(T.mul(col["a1"], X[None, :]), col["a3"])
        if p != 2:
            # (y + h/2)^2 = rhs + h^2/4
            inv4 = pow(4, -1, p)
            rhs = T.add(rhs, T.mul(T.mul(h, h), inv4))
            out[sl] = q + 1 + T.chi(rhs).sum(axis=1)
        else:
            hz = h == 0
            hs = np.where(hz, 1, h)
            z = T.mul(rhs, T.inv(T.mul(hs, hs)))
            good = (T.trace_table[z] == 0) & ~hz
            out[sl] = 1 + hz.sum(axis=1) + 2 * good.sum(axis=1)
    return out


def count_points(curve: CurveModel) -> int:
    """|E(F_q)| including the point at infinity."""
    F = curve.field
    if F.q > COUNT_LIMIT:
        raise FieldTooLarge(f"q = {F.q} beyond exhaustive counting")
    if curve.is_singular():
        raise SingularModel(str(curve))
    rows = {k: np.array([c.index], dtype=np.int64) for k, c in zip(("a1", "a2", "a3", "a4", "a6"), curve.coeffs)}
    return int(_count_many(F.tables, rows)[0])


# -------------------------------------------------------------- twist families


def _coset_reps(F: FiniteField, d: int) -> list[FieldElement]:
    """Smallest element (canonical order) of each coset of (F*)^d in F*."""
    T = F.tables
    d = math.gcd(d, F.q - 1)
    xs = np.arange(1, F.q, dtype=np.int64)
    keys = T.sort_keys(xs)
    cls = T.log[xs] % d
    reps = []
    for k in range(d):
        sel = xs[cls == k]
        reps.append(F.from_index(int(sel[np.argmin(keys[cls == k])])))
    return sorted(reps, key=lambda x: x.key)


@lru_cache(maxsize=None)
def _trace_one_element(p: int, a: int) -> FieldElement:
    """Smallest element of absolute trace 1 (characteristic 2)."""
    F = make_field(p, a)
    T = F.tables
    xs = np.flatnonzero(T.trace_table == 1)
    return F.from_index(int(xs[np.argmin(T.sort_keys(xs))]))


def _generic_models(F: FiniteField, j: FieldElement) -> list[CurveModel]:
    """Base model and quadratic twist for j with Aut = {+-1}."""
    p = F.p
    if p >= 5:
        k = F(1728) - j
        A = 3 * j * k
        B = 2 * j * k * k
        c = F.nonresidue
        return [CurveModel.from_ints(F, a4=A, a6=B), CurveModel.from_ints(F, a4=c * c * A, a6=c * c * c * B)]
    if p == 3:
        a6 = -j.inverse()
        c = F.nonresidue
        return [CurveModel.from_ints(F, a2=1, a6=a6), CurveModel.from_ints(F, a2=c, a6=c * c * c * a6)]
    d = _trace_one_element(F.p, F.a)
    return [CurveModel.from_ints(F, a1=1, a6=j.inverse()), CurveModel.from_ints(F, a1=1, a2=d, a6=j.inverse())]


def _special_j(F: FiniteField) -> list[FieldElement]:
    if F.p >= 5:
        return sorted({F(0), F(1728)}, key=lambda x: x.key)
    return [F(0)]


def _char3_j0_candidates(F: FiniteField) -> list[CurveModel]:
    T = F.tables
    R = np.arange(F.q, dtype=np.int64)
    R3 = T.power(R, 3)
    out = []
    for a4 in _coset_reps(F, 4):
        image = np.unique(T.add(R3, T.mul(R, a4.index)))
        for a6 in _additive_coset_reps(F, image):
            out.append(CurveModel.from_ints(F, a4=a4, a6=a6))
    return out


def _char2_j0_candidates(F: FiniteField) -> list[CurveModel]:
    T = F.tables
    S = np.arange(F.q, dtype=np.int64)
    S4 = T.power(S, 4)
    out = []
    for a3 in _coset_reps(F, 3):
        image = np.unique(T.add(S4, T.mul(S, a3.index)))
        a3sq = a3 * a3
        # a6 ranges over F / Im(t^2 + a3 t): zero and an element c with Tr(c/a3^2) = 1
        c = _trace_one_element(F.p, F.a) * a3sq
        for a4 in _additive_coset_reps(F, image):
            for a6 in (F.zero, c):
                out.append(CurveModel.from_ints(F, a3=a3, a4=a4, a6=a6))
    return out


def _additive_coset_reps(F: FiniteField, image: np.ndarray) -> list[FieldElement]:
    """Minimal representatives of F modulo an additive subgroup (given as the
    sorted array of its element indices)."""
    T = F.tables
    seen = np.zeros(F.q, dtype=bool)
    order = np.argsort(T.sort_keys(np.arange(F.q, dtype=np.int64)), kind="stable")
    reps = []
    for v in order:
        if seen[v]:
            continue
        reps.append(F.from_index(int(v)))
        seen[T.add(image, int(v))] = True
    return reps


def _iso_char3_j0(m1: CurveModel, m2: CurveModel) -> bool:
    """y^2 = x^3 + a4 x + a6 models: x -> u^2 x + r, y -> u^3 y."""
    F = m1.field
    T = F.tables
    U = np.arange(1, F.q, dtype=np.int64)
    ratio = (m1.a4 / m2.a4).index
    R = np.arange(F.q, dtype=np.int64)
    lhs = T.add(T.add(T.power(R, 3), T.mul(R, m1.a4.index)), m1.a6.index)
    for u in U[T.power(U, 4) == ratio]:
        target = T.mul(T.power(np.int64(u), 6), m2.a6.index)
        if np.any(lhs == target):
            return True
    return False


def _iso_char2_j0(m1: CurveModel, m2: CurveModel) -> bool:
    """y^2 + a3 y = x^3 + a4 x + a6 models: x -> u^2 x + s^2, y -> u^3 y + u^2 s x + t."""
    F = m1.field
    T = F.tables
    U = np.arange(1, F.q, dtype=np.int64)
    S = np.arange(F.q, dtype=np.int64)
    a3, a4, a6 = m1.a3.index, m1.a4.index, m1.a6.index
    a3sq_inv = T.inv(T.mul(a3, a3))
    lhs4 = T.add(T.add(T.power(S, 4), T.mul(S, a3)), a4)
    ratio = T.div(a3, m2.a3.index)
    for u in U[T.power(U, 3) == ratio]:
        ok_s = S[lhs4 == T.mul(T.power(np.int64(u), 4), m2.a4.index)]
        for s in ok_s:
            # t^2 + a3 t = u^6 b6 + a6 + s^2 a4 + s^6
            rhs = T.mul(T.power(np.int64(u), 6), m2.a6.index)
            rhs = T.add(rhs, a6)
            rhs = T.add(rhs, T.mul(T.power(np.int64(s), 2), a4))
            rhs = T.add(rhs, T.power(np.int64(s), 6))
            if T.trace_table[T.mul(rhs, a3sq_inv)] == 0:
                return True
    return False


def _dedupe(models: list[CurveModel], iso) -> list[CurveModel]:
    reps: list[CurveModel] = []
    for m in sorted(models, key=lambda m: m.key):
        if not any(iso(r, m) for r in reps):
            reps.append(m)
    return reps


@lru_cache(maxsize=64)
def _j0_classes_small_char(p: int, a: int) -> tuple[CurveModel, ...]:
    F = make_field(p, a)
    if p == 3:
        return tuple(_dedupe(_char3_j0_candidates(F), _iso_char3_j0))
    return tuple(_dedupe(_char2_j0_candidates(F), _iso_char2_j0))


def curves_with_j(field: FiniteField, j: FieldElement) -> list[CurveModel]:
    """One model for each F_q-isomorphism class with j-invariant ``j``."""
    F = field
    if F.q > COUNT_LIMIT:
        raise FieldTooLarge(f"q = {F.q}")
    p = F.p
    if p >= 5 and j == F(0):
        return [CurveModel.from_ints(F, a6=b) for b in _coset_reps(F, 6)]
    if p >= 5 and j == F(1728):
        return [CurveModel.from_ints(F, a4=b) for b in _coset_reps(F, 4)]
    if p < 5 and j.is_zero():
        return list(_j0_classes_small_char(F.p, F.a))
    return _generic_models(F, j)


# -------------------------------------------------------------- enumeration


@dataclass(frozen=True)
class CurveClass:
    model: CurveModel
    j: FieldElement
    order: int
    trace: int

    @property
    def key(self) -> tuple:
        return (self.j.key, self.model.key)


def is_supersingular(cls: CurveClass) -> bool:
    return cls.trace % cls.model.field.p == 0


def _generic_columns(F: FiniteField):
    """Non-special j indices and coefficient columns of their base models."""
    T = F.tables
    p = F.p
    J = np.arange(F.q, dtype=np.int64)
    special = np.array([s.index for s in _special_j(F)])
    J = J[~np.isin(J, special)]
    zeros = np.zeros_like(J)
    if p >= 5:
        k = T.sub(1728 % p, J)
        A = T.mul(3 % p, T.mul(J, k))
        B = T.mul(2, T.mul(J, T.mul(k, k)))
        rows = {"a1": zeros, "a2": zeros, "a3": zeros, "a4": A, "a6": B}
    elif p == 3:
        rows = {"a1": zeros, "a2": zeros + 1, "a3": zeros, "a4": zeros, "a6": T.neg(T.inv(J))}
    else:
        rows = {"a1": zeros + 1, "a2": zeros, "a3": zeros, "a4": zeros, "a6": T.inv(J)}
    return J, rows


def generic_trace_table_direct(p: int, a: int) -> np.ndarray:
    """Reference version of :func:`_generic_trace_table`: count every base
    model over every x (O(q^2))."""
    F = make_field(p, a)
    J, rows = _generic_columns(F)
    table = np.zeros(F.q, dtype=np.int64)
    table[J] = F.q + 1 - _count_many(F.tables, rows)
    return table


def _shift_correlation(F: FiniteField, poly_values: np.ndarray, weight: np.ndarray) -> np.ndarray:
    """C[b] = sum_x weight[poly_values[x] + b] for every b, computed as a
    correlation over the additive group (Z/p)^a with an FFT."""
    q, p, a = F.q, F.p, F.a
    hist = np.bincount(poly_values, minlength=q).astype(np.float64).reshape((p,) * a)
    w = weight.astype(np.float64).reshape((p,) * a)
    C = np.fft.ifftn(np.conj(np.fft.fftn(hist)) * np.fft.fftn(w)).real
    return np.rint(C).astype(np.int64).reshape(q)


@lru_cache(maxsize=16)
def _generic_trace_table(p: int, a: int) -> np.ndarray:
    """Trace of the base model (see :func:`_generic_models`) for every j,
    indexed by j; entries at the special j-invariants are meaningless.

    Character sums are shared between curves: in odd characteristic the sum
    sum_x chi(g(x) + b) is a shift-correlation in b, after scaling x^3 + Ax + B
    to one of at most four representatives of A; in characteristic 2 the
    count reduces to a Kloosterman sum, a cyclic convolution over log indices.
    """
    F = make_field(p, a)
    T = F.tables
    q = F.q
    J, rows = _generic_columns(F)
    X = np.arange(q, dtype=np.int64)
    table = np.zeros(q, dtype=np.int64)
    if p == 2:
        psi = 1 - 2 * T.trace_table[T.exp[: q - 1]].astype(np.float64)
        f = np.fft.rfft(psi)
        K = np.rint(np.fft.irfft(f * f, n=q - 1)).astype(np.int64)
        w = T.power(rows["a6"], q // 2)  # sqrt(a6)
        table[J] = -K[T.log[w]]
        return table
    chi = T.chi(X)
    X3 = T.power(X, 3)
    if p == 3:
        S = _shift_correlation(F, T.add(X3, T.mul(X, X)), chi)
        table[J] = -S[rows["a6"]]
        return table
    A, B = rows["a4"], rows["a6"]
    n = q - 1
    d = math.gcd(4, n)
    inv = pow(4 // d, -1, n // d) if n // d > 1 else 0
    reps = [int(T.exp[k]) for k in range(d)]  # representatives g^k of F*/(F*)^4
    logA = T.log[A]
    k = logA % d
    ulog = ((logA - k) // d * inv) % (n // d) if n // d > 1 else np.zeros_like(logA)
    Bscaled = T.mul(B, T.exp[(-6 * ulog) % n])
    for r in range(d):
        sel = k == r
        if not sel.any():
            continue
        S = _shift_correlation(F, T.add(X3, T.mul(X, reps[r])), chi)
        table[J[sel]] = -S[Bscaled[sel]]
    return table


def enumerate_set(field: FiniteField, target_order: int) -> list[CurveClass]:
    """All isomorphism classes over ``field`` with exactly ``target_order`` points,
    sorted by (j, model) in the canonical order."""
    F = field
    q = F.q
    t = q + 1 - target_order
    if t * t > 4 * q:
        raise TargetOutOfHasseWindow(f"order {target_order} outside the Hasse window of {q}")
    if q > COUNT_LIMIT:
        raise FieldTooLarge(f"q = {q}")
    out: list[CurveClass] = []
    small_char_ss = F.p < 5 and t % F.p == 0
    if not small_char_ss:
        # in characteristic 2 and 3 the only supersingular j is 0, so the
        # generic table is only needed for ordinary traces there
        tt = _generic_trace_table(F.p, F.a)
        special = {s.index for s in _special_j(F)}
        for jv in np.flatnonzero((tt == t) | (tt == -t)):
            jv = int(jv)
            if jv in special:
                continue
            j = F.from_index(jv)
            base, twist = _generic_models(F, j)
            tb = int(tt[jv])
            if tb == t:
                out.append(CurveClass(base, j, target_order, t))
            if -tb == t:
                out.append(CurveClass(twist, j, target_order, t))
    for j in _special_j(F):
        if F.p < 5 and not small_char_ss:
            continue
        for m in curves_with_j(F, j):
            n = count_points(m)
            if n == target_order:
                out.append(CurveClass(m, j, n, t))
    out.sort(key=lambda c: c.key)
    return out


def j_set(classes: list[CurveClass]) -> list[FieldElement]:
    seen = []
    for c in classes:
        if not seen or seen[-1] != c.j:
            seen.append(c.j)
    return seen
