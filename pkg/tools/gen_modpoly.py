#!/usr/bin/env python3
"""Generate classical modular polynomial tables ``phi_<l>.txt``.

The roots of Phi_l(X, j(tau)) are j(l*tau) and j((tau + k)/l), 0 <= k < l.
Their power sums are modular functions for SL2(Z) and therefore polynomials
in j; Newton's identities then give the coefficients of Phi_l.  Every step is
exact integer arithmetic on truncated q-expansions, so only the coefficients
of j^k between q^-k and q^0 are ever needed.

Usage: gen_modpoly.py OUTDIR [l ...]
"""

import sys
from pathlib import Path


def sigma3(n):
    return sum(d ** 3 for d in range(1, n + 1) if n % d == 0)


def normalized_j(prec):
    """Coefficients of q*j(q) up to q^prec (constant term first)."""
    e4 = [1] + [240 * sigma3(n) for n in range(1, prec + 1)]
    # prod (1 - q^n)^24 inverted, via the Euler product expanded to prec
    eta24 = [1] + [0] * prec
    for n in range(1, prec + 1):
        for _ in range(24):
            for i in range(prec, n - 1, -1):
                eta24[i] -= eta24[i - n]
    inv = [0] * (prec + 1)
    inv[0] = 1
    for n in range(1, prec + 1):
        inv[n] = -sum(eta24[i] * inv[n - i] for i in range(1, n + 1))
    e4sq = mul(e4, e4, prec)
    return mul(mul(e4sq, e4, prec), inv, prec)


def mul(a, b, prec):
    out = [0] * (prec + 1)
    for i, x in enumerate(a[: prec + 1]):
        if x:
            for k, y in enumerate(b[: prec + 1 - i]):
                out[i + k] += x * y
    return out


def powers_of_j(jn, kmax):
    """pw[k][n] = coefficient of q^(n-k) in j^k for 0 <= n <= k."""
    pw = [[1]]
    cur = [1]
    for k in range(1, kmax + 1):
        # extend the previous power by one coefficient with Miller's recurrence
        # applied to J^k where J = q*j; J^k[n] = sum_{i>=1} ((k+1)i - n) J[i] J^k[n-i] / n
        nxt = [1] * (k + 1)
        for n in range(1, k + 1):
            acc = 0
            for i in range(1, n + 1):
                acc += ((k + 1) * i - n) * jn[i] * nxt[n - i]
            assert acc % n == 0
            nxt[n] = acc // n
        cur = nxt
        pw.append(cur)
    return pw


def to_j_polynomial(series, top, pw):
    """Express a Laurent series given as {exponent: coeff} for exponents
    -top..0 as a polynomial in j of degree top; returns coefficient list."""
    s = dict(series)
    poly = [0] * (top + 1)
    for d in range(top, -1, -1):
        c = s.get(-d, 0)
        if c:
            poly[d] = c
            for n, v in enumerate(pw[d]):
                s[n - d] = s.get(n - d, 0) - c * v
    assert all(v == 0 for e, v in s.items() if e <= 0), "residual in principal part"
    return poly


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for k, y in enumerate(b):
                out[i + k] += x * y
    return out


def modular_polynomial(l):
    kmax = l * (l + 1)
    jn = normalized_j(kmax + 1)
    pw = powers_of_j(jn, kmax)
    power_sums = []
    for m in range(1, l + 2):
        series = {}
        coeffs = pw[m]  # j^m at exponents -m..0
        for n, v in enumerate(coeffs):
            e = n - m
            series[l * e] = series.get(l * e, 0) + v
            if e % l == 0:
                series[e // l] = series.get(e // l, 0) + l * v
        power_sums.append(to_j_polynomial(series, m * l, pw))
    # Newton: m e_m = sum_{i=1}^m (-1)^(i-1) e_{m-i} s_i
    elem = [[1]]
    for m in range(1, l + 2):
        acc = [0]
        for i in range(1, m + 1):
            term = poly_mul(elem[m - i], power_sums[i - 1])
            if len(term) > len(acc):
                acc += [0] * (len(term) - len(acc))
            sign = 1 if i % 2 else -1
            for k, v in enumerate(term):
                acc[k] += sign * v
        assert all(v % m == 0 for v in acc)
        acc = [v // m for v in acc]
        while len(acc) > 1 and acc[-1] == 0:
            acc.pop()
        assert len(acc) <= l + 2
        elem.append(acc)
    # Phi(X, Y) = sum_m (-1)^m e_m(Y) X^(l+1-m)
    table = {}
    for m in range(0, l + 2):
        sign = -1 if m % 2 else 1
        for k, v in enumerate(elem[m]):
            if v:
                table[(l + 1 - m, k)] = sign * v
    for (i, k), v in table.items():
        assert table.get((k, i)) == v, "not symmetric"
    return table


def main(argv):
    out = Path(argv[1])
    out.mkdir(parents=True, exist_ok=True)
    degrees = [int(x) for x in argv[2:]] or [2, 3, 5, 7, 11, 13, 17, 19]
    for l in degrees:
        table = modular_polynomial(l)
        lines = [f"# classical modular polynomial Phi_{l}(X, Y) = sum c X^i Y^j, i >= j listed"]
        for (i, k) in sorted(table, reverse=True):
            if i >= k:
                lines.append(f"{i} {k} {table[(i, k)]}")
        (out / f"phi_{l}.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"phi_{l}: {len(lines) - 1} entries", flush=True)


if __name__ == "__main__":
    main(sys.argv)
