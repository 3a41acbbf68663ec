"""Smith normal form over Z and ranks of integer matrices over Q and F_p."""

from __future__ import annotations

from math import gcd


def smith_divisors(rows) -> list[int]:
    """Nonnegative elementary divisors d1 | d2 | ... of an integer matrix
    (zeros excluded, so the length is the rank over Q)."""
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if a else 0
    divisors = []
    top = 0
    while top < m and top < n:
        piv = _min_pivot(a, top, m, n)
        if piv is None:
            break
        while True:
            i0, j0 = piv
            a[top], a[i0] = a[i0], a[top]
            if j0 != top:
                for r in a:
                    r[top], r[j0] = r[j0], r[top]
            d = a[top][top]
            clean = True
            for i in range(top + 1, m):
                q = a[i][top] // d
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[top])]
                if a[i][top]:
                    clean = False
            for j in range(top + 1, n):
                q = a[top][j] // d
                if q:
                    for r in a:
                        r[j] -= q * r[top]
                if a[top][j]:
                    clean = False
            if clean:
                # pivot must divide the remaining block
                offender = None
                for i in range(top + 1, m):
                    for j in range(top + 1, n):
                        if a[i][j] % d:
                            offender = i
                            break
                    if offender is not None:
                        break
                if offender is None:
                    break
                a[top] = [x + y for x, y in zip(a[top], a[offender])]
            piv = _min_pivot(a, top, m, n)
        divisors.append(abs(a[top][top]))
        top += 1
    # normalize the divisibility chain
    for i in range(len(divisors) - 1):
        for j in range(i + 1, len(divisors)):
            g = gcd(divisors[i], divisors[j])
            if g:
                divisors[i], divisors[j] = g, divisors[i] * divisors[j] // g
    return divisors


def _min_pivot(a, top, m, n):
    piv = None
    best = None
    for i in range(top, m):
        row = a[i]
        for j in range(top, n):
            v = row[j]
            if v and (best is None or abs(v) < best):
                best = abs(v)
                piv = (i, j)
                if best == 1:
                    return piv
    return piv


def rank_from_divisors(divisors, p: int) -> int:
    """Rank over F_p (p prime) or over Q (p = 0)."""
    if p == 0:
        return len(divisors)
    return sum(1 for d in divisors if d % p)


def prime_factors(n: int) -> set[int]:
    n = abs(n)
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.add(n)
    return out
