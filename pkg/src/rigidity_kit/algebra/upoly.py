"""Dense univariate polynomials over F_p.

A polynomial is a list of ints in [0, p), lowest degree first, with no
trailing zeros; the zero polynomial is ``[]``. Used for root finding on
lines, resultants of slices, and the irreducibility certificates.
"""
from __future__ import annotations

import random
from typing import Sequence


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a: Sequence[int]) -> int:
    return len(a) - 1


def normalize(a: Sequence[int], p: int) -> list[int]:
    return trim([x % p for x in a])


def add(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                 for i in range(n)])


def sub(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                 for i in range(n)])


def scale(a, c, p):
    c %= p
    return trim([x * c % p for x in a]) if c else []


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([x % p for x in out])


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(r) <= db:
        return [], trim(r)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * inv % p
        if c:
            q[k - db] = c
            for j in range(db + 1):
                r[k - db + j] = (r[k - db + j] - c * b[j]) % p
    return trim(q), trim(r[:db])


def mod(a, b, p):
    return divmod_(a, b, p)[1]


def monic(a, p):
    if not a:
        return []
    return scale(a, pow(a[-1], -1, p), p)


def gcd(a, b, p):
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def derivative(a, p):
    return trim([i * a[i] % p for i in range(1, len(a))])


def evaluate(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def powmod(base, e: int, m, p):
    result = [1]
    base = mod(base, m, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = mod(mul(base, base, p), m, p)
    return result


def is_squarefree(a, p) -> bool:
    if len(a) <= 2:
        return True
    da = derivative(a, p)
    if not da:
        return False
    return len(gcd(a, da, p)) == 1


def interpolate(xs: Sequence[int], ys: Sequence[int], p: int) -> list[int]:
    """Lagrange interpolation through distinct nodes."""
    out: list[int] = []
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi % p == 0:
            continue
        num = [1]
        den = 1
        for j, xj in enumerate(xs):
            if j != i:
                num = mul(num, [-xj % p, 1], p)
                den = den * (xi - xj) % p
        out = add(out, scale(num, yi * pow(den, -1, p), p), p)
    return out


def resultant(a, b, p) -> int:
    """Res(a, b) by the Euclidean recurrence."""
    a, b = trim(list(a)), trim(list(b))
    if not a or not b:
        return 0
    res = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * pow(b[0], da, p) % p
        r = mod(a, b, p)
        if not r:
            return 0
        dr = len(r) - 1
        if da * db % 2:
            res = -res
        res = res * pow(b[-1], da - dr, p) % p
        a, b = b, r


def _prime_divisors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(f, p) -> bool:
    """Rabin's test for a polynomial of positive degree."""
    f = monic(trim(list(f)), p)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    for q in _prime_divisors(n):
        h = powmod(x, p ** (n // q), f, p)
        if len(gcd(sub(h, x, p), f, p)) > 1:
            return False
    return mod(sub(powmod(x, p ** n, f, p), x, p), f, p) == []


def distinct_degree(f, p) -> list[tuple[list[int], int]]:
    """Distinct-degree factorization of a monic squarefree polynomial."""
    f = monic(list(f), p)
    out = []
    d = 0
    h = [0, 1]
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(sub(h, [0, 1], p), f, p)
        if len(g) > 1:
            out.append((g, d))
            f = divmod_(f, g, p)[0]
            h = mod(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(f, d: int, p: int, rng: random.Random) -> list[list[int]]:
    """Cantor-Zassenhaus splitting of a product of distinct degree-d irreducibles."""
    f = monic(list(f), p)
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        g = gcd(a, f, p)
        if len(g) == 1:
            b = powmod(a, (p ** d - 1) // 2, f, p)
            g = gcd(sub(b, [1], p), f, p)
        if 1 < len(g) < len(f):
            rest = divmod_(f, g, p)[0]
            return equal_degree(g, d, p, rng) + equal_degree(rest, d, p, rng)


def squarefree_decomposition(f, p) -> list[tuple[list[int], int]]:
    """Pairs (g, k) with f = lc * prod g^k, each g squarefree and coprime."""
    f = monic(trim(list(f)), p)
    if len(f) <= 1:
        return []
    out: list[tuple[list[int], int]] = []
    df = derivative(f, p)
    if not df:
        # f is a p-th power: take the p-th root coefficientwise
        root = [f[i] for i in range(0, len(f), p)]
        return [(g, k * p) for g, k in squarefree_decomposition(root, p)]
    c = gcd(f, df, p)
    w = divmod_(f, c, p)[0]
    k = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        z = divmod_(w, y, p)[0]
        if len(z) > 1:
            out.append((z, k))
        k += 1
        w = y
        c = divmod_(c, y, p)[0]
    if len(c) > 1:
        root = [c[i] for i in range(0, len(c), p)]
        out.extend((g, kk * p) for g, kk in squarefree_decomposition(root, p))
    return out


def factor(f, p, rng: random.Random | None = None) -> list[tuple[list[int], int]]:
    """Complete factorization into monic irreducibles with multiplicities."""
    rng = rng or random.Random(0)
    out = []
    for g, k in squarefree_decomposition(f, p):
        for h, d in distinct_degree(g, p):
            for irr in equal_degree(h, d, p, rng):
                out.append((irr, k))
    out.sort()
    return out


def roots(f, p, rng: random.Random | None = None) -> list[int]:
    """Distinct roots in F_p, sorted."""
    f = monic(trim(list(f)), p)
    if len(f) <= 1:
        return []
    rng = rng or random.Random(0)
    g = gcd(sub(powmod([0, 1], p, f, p), [0, 1], p), f, p)
    if len(g) <= 1:
        return []
    return sorted(-h[0] % p for h in equal_degree(g, 1, p, rng))
