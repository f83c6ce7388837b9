"""Class numbers of imaginary quadratic orders via reduced binary quadratic forms."""

from __future__ import annotations

import math
from functools import lru_cache

from .arith import divisors
from .errors import BadDiscriminant
from .pairs import decompose_discriminant

MAX_ABS_DISC = 10 ** 8


def _check(disc: int) -> None:
    if disc >= 0 or disc % 4 not in (0, 1):
        raise BadDiscriminant(f"{disc} is not a negative discriminant")
    if -disc > MAX_ABS_DISC:
        raise BadDiscriminant(f"|{disc}| above 10^8")


def reduced_forms(disc: int) -> list[tuple[int, int, int]]:
    """Reduced primitive forms (a, b, c) with b^2 - 4ac = disc, sorted."""
    _check(disc)
    out = []
    b = disc % 2
    bmax = math.isqrt(-disc // 3)
    while b <= bmax:
        ac = (b * b - disc) // 4
        a = max(b, 1)
        while a * a <= ac:
            if ac % a == 0:
                c = ac // a
                if math.gcd(math.gcd(a, b), c) == 1:
                    out.append((a, b, c))
                    if 0 < b < a < c:
                        out.append((a, -b, c))
            a += 1
        b += 2
    return sorted(out)


@lru_cache(maxsize=4096)
def class_number(disc: int) -> int:
    return len(reduced_forms(disc))


def kronecker_class_number(delta: int) -> int:
    """Sum of h(g^2 D) over the divisors g of the conductor of ``delta``."""
    f, D = decompose_discriminant(delta)
    return sum(class_number(g * g * D) for g in divisors(f))
