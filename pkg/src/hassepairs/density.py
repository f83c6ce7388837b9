"""Sieving, Andrica-type gap scans and per-prime Hasse partner counts."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BoundTooLarge, TableTooSmall

SIEVE_LIMIT = 10 ** 8


@dataclass
class SieveTable:
    bound: int
    is_prime: np.ndarray  # bool, index n
    prime_powers: np.ndarray  # sorted int64
    _primes: np.ndarray | None = field(default=None, repr=False)

    @property
    def primes(self) -> np.ndarray:
        if self._primes is None:
            self._primes = np.flatnonzero(self.is_prime)
        return self._primes

    def prime_count(self, lo: int, hi: int) -> int:
        """Number of primes in [lo, hi] (clipped to the table)."""
        P = self.primes
        return int(np.searchsorted(P, hi, side="right") - np.searchsorted(P, lo, side="left"))

    def primes_between(self, lo: int, hi: int) -> list[int]:
        P = self.primes
        return P[np.searchsorted(P, lo, side="left") : np.searchsorted(P, hi, side="right")].tolist()


def sieve(x: int) -> SieveTable:
    if x < 2:
        raise ValueError("sieve bound must be at least 2")
    if x > SIEVE_LIMIT:
        raise BoundTooLarge(f"sieve bound {x} exceeds 10^8")
    flags = np.ones(x + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for n in range(3, math.isqrt(x) + 1, 2):
        if flags[n]:
            flags[n * n :: 2 * n] = False
    primes = np.flatnonzero(flags)
    powers = [primes]
    for p in primes[: np.searchsorted(primes, math.isqrt(x), side="right")].tolist():
        pk = p * p
        extra = []
        while pk <= x:
            extra.append(pk)
            pk *= p
        powers.append(np.array(extra, dtype=np.int64))
    pp = np.sort(np.concatenate(powers).astype(np.int64))
    return SieveTable(x, flags, pp, primes)


@dataclass(frozen=True)
class AndricaReport:
    over: str
    bound: int
    checked: int
    violations: list[tuple[int, int]]
    equalities: list[tuple[int, int]]


def andrica_scan(table: SieveTable, over: str = "primes") -> AndricaReport:
    """Consecutive (q, q') with sqrt(q') - sqrt(q) >= 1, decided in integers.

    For q' > q the gap is < 1 iff q' - q - 1 < 2 sqrt(q), i.e. d < 0 or d^2 < 4q
    with d = q' - q - 1; d^2 == 4q is the boundary case.
    """
    if over in ("primes", "prime"):
        seq = table.primes.astype(np.int64)
    elif over in ("prime_powers", "prime-powers", "powers"):
        seq = table.prime_powers
    else:
        raise ValueError(f"unknown sequence {over!r}")
    q, q2 = seq[:-1], seq[1:]
    d = q2 - q - 1
    lhs = d * d  # fits: gaps below 10^8 are tiny
    big = (d >= 0) & (lhs >= 4 * q)
    eq = big & (lhs == 4 * q)
    viol = big & ~eq
    pairs = lambda m: [(int(a), int(b)) for a, b in zip(q[m], q2[m])]  # noqa: E731
    name = "primes" if over in ("primes", "prime") else "prime_powers"
    return AndricaReport(name, table.bound, len(q), pairs(viol), pairs(eq))


def hasse_window(p: int) -> tuple[int, int]:
    """Integer range [lo, hi] of l with (sqrt(p) - 1)^2 <= l <= (sqrt(p) + 1)^2.

    l is in the window iff (p + 1 - l)^2 <= 4p.
    """
    r = math.isqrt(4 * p)  # largest t with t^2 <= 4p
    return max(p + 1 - r, 0), p + 1 + r


def hasse_partner_count(p: int, table: SieveTable) -> int:
    lo, hi = hasse_window(p)
    if hi > table.bound:
        raise TableTooSmall(f"need primes up to {hi}, table holds {table.bound}")
    return table.prime_count(lo, hi) - (1 if p <= table.bound and table.is_prime[p] else 0)


def hasse_partners(p: int, table: SieveTable) -> list[int]:
    lo, hi = hasse_window(p)
    if hi > table.bound:
        raise TableTooSmall(f"need primes up to {hi}, table holds {table.bound}")
    return [l for l in table.primes_between(lo, hi) if l != p]


def partner_threshold(p: int) -> float:
    return 0.5 * math.sqrt(p) / math.log(p)


def threshold_report(table: SieveTable, x: int) -> list[tuple[int, int, float]]:
    """Primes p <= x whose partner count falls below sqrt(p) / (2 log p)."""
    _, hi = hasse_window(x)
    if hi > table.bound:
        raise TableTooSmall(f"need primes up to {hi}, table holds {table.bound}")
    out = []
    for p in table.primes_between(2, x):
        n = hasse_partner_count(p, table)
        thr = partner_threshold(p)
        if n < thr:
            out.append((p, n, thr))
    return out


def partner_counts(table: SieveTable, x: int) -> np.ndarray:
    """Vectorised partner counts for every prime p <= x, in order."""
    P = table.primes
    ps = P[: np.searchsorted(P, x, side="right")].astype(np.int64)
    r = np.array([math.isqrt(4 * int(p)) for p in ps.tolist()], dtype=np.int64)
    lo, hi = np.maximum(ps + 1 - r, 0), ps + 1 + r
    if len(ps) and hi[-1] > table.bound:
        raise TableTooSmall(f"need primes up to {int(hi[-1])}, table holds {table.bound}")
    return np.searchsorted(P, hi, side="right") - np.searchsorted(P, lo, side="left") - 1


def prime_powers_without_partner(table: SieveTable, x: int, odd_only: bool = False) -> list[int]:
    """Prime powers q <= x with no prime-power partner (odd partner if ``odd_only``).

    Partners may exceed x; the table must reach the top of the window of x.
    """
    _, hi = hasse_window(x)
    if hi > table.bound:
        raise TableTooSmall(f"need prime powers up to {hi}, table holds {table.bound}")
    pp = table.prime_powers
    pool = pp[pp % 2 == 1] if odd_only else pp
    qs = pp[: np.searchsorted(pp, x, side="right")]
    if odd_only:
        qs = qs[qs % 2 == 1]
    r = np.array([math.isqrt(4 * int(q)) for q in qs.tolist()], dtype=np.int64)
    lo, hi = np.maximum(qs + 1 - r, 0), qs + 1 + r
    n = np.searchsorted(pool, hi, side="right") - np.searchsorted(pool, lo, side="left") - 1
    return qs[n < 1].tolist()
