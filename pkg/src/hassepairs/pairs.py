"""Hasse pairs of prime powers and their arithmetic invariants.

Everything here is exact integer arithmetic; no floating point.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .arith import (
    factorint,
    is_fundamental_discriminant,
    kronecker,
    prime_power,
    primes_up_to,
    valuation,
)
from .errors import (
    BadDiscriminant,
    EqualInputs,
    HasseBoundViolated,
    NonNegative,
    NotEvenSupersingular,
    NotFundamental,
    NotHasse,
    NotOddPair,
    NotPrimePower,
)


class Status(str, Enum):
    ORDINARY = "ordinary"
    SUPERSINGULAR = "supersingular"
    EMPTY = "empty"


class Split(str, Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"
    UNDEFINED = "undefined"


class EvenCase(str, Enum):
    SPECIAL_64_81 = "special_2^6_3^4"
    FERMAT_SQUARE = "fermat_square"
    MERSENNE_SQUARE = "mersenne_square"
    PAIR_4_3 = "pair_4_3"
    ORDINARY_OTHER_SIDE = "ordinary_other_side"


@dataclass(frozen=True, order=True)
class PrimePower:
    q: int
    p: int
    a: int

    @classmethod
    def of(cls, n: "int | PrimePower") -> "PrimePower":
        if isinstance(n, PrimePower):
            return n
        pa = factor_prime_power(n)
        if pa is None:
            raise NotPrimePower(f"{n} is not a prime power")
        return pa

    def __int__(self) -> int:
        return self.q


def factor_prime_power(n: int) -> PrimePower | None:
    """``PrimePower(n, p, a)`` if n = p^a with p prime, else None."""
    if n < 2:
        return None
    pa = prime_power(n)
    return None if pa is None else PrimePower(n, *pa)


def _q(x) -> int:
    return x.q if isinstance(x, PrimePower) else int(x)


def is_hasse(q1, q2) -> bool:
    """(q2 + 1 - q1)^2 <= 4 q2, i.e. |sqrt(q1) - sqrt(q2)| <= 1."""
    q1, q2 = _q(q1), _q(q2)
    if q1 == q2:
        raise EqualInputs(f"q1 = q2 = {q1}")
    return (q2 + 1 - q1) ** 2 <= 4 * q2


def pair_invariants(q1, q2) -> tuple[int, int, int]:
    """(t1, t2, delta) of a Hasse pair."""
    if not is_hasse(q1, q2):
        raise NotHasse(f"({_q(q1)}, {_q(q2)}) is not a Hasse pair")
    q1, q2 = _q(q1), _q(q2)
    t1 = q1 + 1 - q2
    t2 = q2 + 1 - q1
    delta = (q1 - q2) ** 2 - 2 * (q1 + q2) + 1
    return t1, t2, delta


def decompose_discriminant(delta: int) -> tuple[int, int]:
    """(f, D) with delta = f^2 D and D fundamental."""
    if delta >= 0:
        raise NonNegative(f"delta = {delta} is not negative")
    if delta % 4 not in (0, 1):
        raise BadDiscriminant(f"{delta} is not a discriminant")
    core, f = -1, 1
    for p, e in factorint(delta).items():
        f *= p ** (e // 2)
        if e % 2:
            core *= p
    if core % 4 != 1:
        core *= 4
        f //= 2
    return f, core


# ---------------------------------------------------------------- Waterhouse


def waterhouse_case(q, t: int) -> str | None:
    """Fine case of the trace classification: 'a'..'e', or None if empty."""
    pp = PrimePower.of(q)
    q, p, a = pp.q, pp.p, pp.a
    if t * t > 4 * q:
        raise HasseBoundViolated(f"t = {t} outside the Hasse bound for q = {q}")
    if math.gcd(t, p) == 1:
        return "a"
    if a % 2 == 0:
        r = math.isqrt(q)
        if abs(t) == 2 * r:
            return "b"
        if abs(t) == r and p % 3 != 1:
            return "c"
    elif p in (2, 3) and t * t == p ** (a + 1):
        return "d"
    if t == 0 and (a % 2 == 1 or p % 4 != 1):
        return "e"
    return None


def waterhouse_status(q, t: int) -> Status:
    case = waterhouse_case(q, t)
    if case is None:
        return Status.EMPTY
    return Status.ORDINARY if case == "a" else Status.SUPERSINGULAR


# ---------------------------------------------------------------- splitting


def split_type(D: int, p: int) -> Split:
    if D >= 0 or not is_fundamental_discriminant(D):
        raise NotFundamental(f"{D} is not a negative fundamental discriminant")
    if D % p == 0:
        return Split.RAMIFIED
    return Split.SPLIT if kronecker(D, p) == 1 else Split.INERT


# ---------------------------------------------------------------- records


@dataclass(frozen=True)
class PairRecord:
    q1: PrimePower
    q2: PrimePower
    t1: int
    t2: int
    delta: int
    conductor_f: int
    fundamental_D: int
    e1_status: Status
    e2_status: Status
    e1_case: str | None
    e2_case: str | None
    split1: Split
    split2: Split

    @property
    def table_cell(self) -> str:
        return f"{self.e1_status.value}-{self.e2_status.value}"

    @property
    def is_odd(self) -> bool:
        return self.q1.p != 2 and self.q2.p != 2

    def as_dict(self) -> dict:
        return {
            "q1": self.q1.q,
            "q2": self.q2.q,
            "p1": self.q1.p,
            "a1": self.q1.a,
            "p2": self.q2.p,
            "a2": self.q2.a,
            "t1": self.t1,
            "t2": self.t2,
            "delta": self.delta,
            "conductor": self.conductor_f,
            "fundamental_discriminant": self.fundamental_D,
            "e1": {"status": self.e1_status.value, "case": self.e1_case},
            "e2": {"status": self.e2_status.value, "case": self.e2_case},
            "table_cell": self.table_cell,
            "splits": [self.split1.value, self.split2.value],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PairRecord":
        return cls(
            q1=PrimePower(d["q1"], d["p1"], d["a1"]),
            q2=PrimePower(d["q2"], d["p2"], d["a2"]),
            t1=d["t1"],
            t2=d["t2"],
            delta=d["delta"],
            conductor_f=d["conductor"],
            fundamental_D=d["fundamental_discriminant"],
            e1_status=Status(d["e1"]["status"]),
            e2_status=Status(d["e2"]["status"]),
            e1_case=d["e1"]["case"],
            e2_case=d["e2"]["case"],
            split1=Split(d["splits"][0]),
            split2=Split(d["splits"][1]),
        )


def classify_pair(q1, q2) -> PairRecord:
    pp1, pp2 = PrimePower.of(q1), PrimePower.of(q2)
    t1, t2, delta = pair_invariants(pp1, pp2)
    c1, c2 = waterhouse_case(pp1, t1), waterhouse_case(pp2, t2)
    status = lambda c: Status.EMPTY if c is None else (Status.ORDINARY if c == "a" else Status.SUPERSINGULAR)  # noqa: E731
    if delta < 0:
        f, D = decompose_discriminant(delta)
        s1, s2 = split_type(D, pp1.p), split_type(D, pp2.p)
    else:
        # delta = 0: degenerate quadratic algebra
        f, D = 0, 0
        s1 = s2 = Split.UNDEFINED
    return PairRecord(pp1, pp2, t1, t2, delta, f, D, status(c1), status(c2), c1, c2, s1, s2)


def _prime_power_list(max_q: int) -> list[int]:
    out = []
    for p in primes_up_to(max_q):
        x = p
        while x <= max_q:
            out.append(x)
            x *= p
    out.sort()
    return out


def enumerate_hasse_pairs(max_q: int, odd_only: bool = False) -> Iterator[PairRecord]:
    """Every Hasse pair q1 < q2 <= max_q of prime powers, sorted by (q1, q2)."""
    if max_q > 1 << 32:
        raise ValueError("max_q above 2^32")
    pps = _prime_power_list(max_q)
    if odd_only:
        pps = [q for q in pps if q % 2]
    for i, q1 in enumerate(pps):
        # q2 <= (sqrt(q1) + 1)^2 = q1 + 2 sqrt(q1) + 1
        hi = q1 + 2 * math.isqrt(q1) + 2
        stop = bisect.bisect_right(pps, hi, lo=i + 1)
        for q2 in pps[i + 1 : stop]:
            if is_hasse(q1, q2):
                yield classify_pair(q1, q2)


def hasse_pair_list(max_q: int, odd_only: bool = False, symmetric: bool = False) -> list[PairRecord]:
    """Like :func:`enumerate_hasse_pairs`; ``symmetric`` also adds (q2, q1),
    everything sorted by (q1, q2)."""
    recs = list(enumerate_hasse_pairs(max_q, odd_only))
    if symmetric:
        recs += [classify_pair(r.q2, r.q1) for r in recs]
        recs.sort(key=lambda r: (r.q1.q, r.q2.q))
    return recs


# ---------------------------------------------------------------- special cases


def _split_t(t: int, p: int) -> tuple[int, int]:
    if t == 0:
        raise ValueError("t = 0 has no p-adic decomposition")
    b = valuation(t, p)
    return t // p ** b, b


def exceptional_flag(record: PairRecord) -> bool:
    """True iff both sides satisfy b_i >= 1, a_i > 2 b_i and p_i^{2b_i} || delta."""
    if not record.is_odd:
        raise NotOddPair("exceptional_flag needs an odd pair")
    if record.q1.a <= 2 or record.q2.a <= 2:
        return False
    for pp, t in ((record.q1, record.t1), (record.q2, record.t2)):
        _, b = _split_t(t, pp.p)
        if b < 1 or pp.a <= 2 * b:
            return False
        if valuation(record.delta, pp.p) != 2 * b:
            return False
    return True


def even_ss_case(q1, q2) -> EvenCase:
    """Which case of the even-supersingular dichotomy (q1 a power of 2) holds."""
    rec = classify_pair(q1, q2)
    if rec.q1.p != 2 or rec.e1_status is not Status.SUPERSINGULAR:
        raise NotEvenSupersingular(f"({rec.q1.q}, {rec.q2.q}) has no supersingular even side E1")
    a1 = rec.q1.a
    if (rec.q1.q, rec.q2.q) == (64, 81):
        tag = EvenCase.SPECIAL_64_81
    elif (rec.q1.q, rec.q2.q) == (4, 3):
        tag = EvenCase.PAIR_4_3
    elif a1 % 2 == 0 and rec.q2.a == 2 and abs(rec.t1) == 2 ** (a1 // 2 + 1):
        m = a1 // 2
        p2 = rec.q2.p
        if p2 == 2 ** m + 1 and m & (m - 1) == 0:
            tag = EvenCase.FERMAT_SQUARE
        elif p2 == 2 ** m - 1:
            tag = EvenCase.MERSENNE_SQUARE
        else:  # pragma: no cover  (no consecutive powers fall here)
            raise AssertionError(f"unexpected case for {rec.q1.q, rec.q2.q}")
    else:
        tag = EvenCase.ORDINARY_OTHER_SIDE
    expected = Status.ORDINARY if tag is EvenCase.ORDINARY_OTHER_SIDE else Status.SUPERSINGULAR
    if rec.e2_status is not expected:
        raise AssertionError(f"dichotomy fails at ({rec.q1.q}, {rec.q2.q}): {tag} vs {rec.e2_status}")
    return tag


def consecutive_prime_power_scan(bound: int) -> list[tuple[int, int]]:
    """Pairs (2^alpha, p^beta), alpha, beta >= 2, differing by one, both <= bound."""
    if bound > 1 << 32:
        raise ValueError("bound above 2^32")
    out = []
    x = 4
    while x <= bound:
        for y in (x - 1, x + 1):
            if 2 <= y <= bound:
                pp = factor_prime_power(y)
                if pp is not None and pp.p != 2 and pp.a >= 2:
                    out.append((x, y))
        x *= 2
    return sorted(out)


def sqrt_gap_equality_pairs(bound: int) -> list[tuple[int, int]]:
    """Prime powers q1 > q2 <= bound with sqrt(q1) - sqrt(q2) = 1 exactly.

    Both must be perfect squares of consecutive integers."""
    out = []
    r = 2
    while (r + 1) ** 2 <= bound:
        a, b = r * r, (r + 1) ** 2
        if factor_prime_power(a) and factor_prime_power(b):
            out.append((b, a))
        r += 1
    return out
