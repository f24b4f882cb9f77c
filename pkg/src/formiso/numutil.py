"""Integer number theory helpers: primality, factoring, roots, CRT,
rational reconstruction and small discrete logarithms.

Everything here is exact and deterministic given the seed arguments.
"""

import math
import random

from .errors import PreconditionError

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Miller-Rabin, deterministic for n < 3.3 * 10^24 via fixed bases."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n):
    n += 1
    if n <= 2:
        return 2
    if n % 2 == 0:
        n += 1
    while not is_prime(n):
        n += 2
    return n


def _pollard_rho(n, rng):
    if n % 2 == 0:
        return 2
    while True:
        c = rng.randrange(1, n)
        x = y = rng.randrange(2, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def factorint(n, seed=0):
    """Prime factorization as a dict {p: e}. Trial division then Pollard rho."""
    if n < 1:
        raise PreconditionError("factorint expects a positive integer")
    out = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 7
    inc = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while f * f <= n and f < 100000:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += inc[i % 8]
        i += 1
    if n == 1:
        return out
    rng = random.Random(seed)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m, rng)
        stack.append(d)
        stack.append(m // d)
    return out


def int_nth_root(a, n):
    """Floor of the n-th root of a >= 0."""
    if a < 0:
        raise PreconditionError("negative radicand")
    if a == 0:
        return 0
    if n == 1:
        return a
    if n == 2:
        return math.isqrt(a)
    x = 1 << (a.bit_length() // n + 1)
    while True:
        y = ((n - 1) * x + a // x ** (n - 1)) // n
        if y >= x:
            return x
        x = y


def exact_nth_root(a, n):
    """The integer x with x**n == a, or None. Handles negative a for odd n."""
    neg = a < 0
    if neg and n % 2 == 0:
        return None
    r = int_nth_root(-a if neg else a, n)
    if r ** n != (-a if neg else a):
        return None
    return -r if neg else r


def crt_pair(r1, m1, r2, m2):
    """Solve x = r1 mod m1, x = r2 mod m2 for coprime moduli."""
    g, u, _ = ext_gcd(m1, m2)
    if g != 1:
        raise PreconditionError("crt moduli not coprime")
    m = m1 * m2
    return (r1 + (r2 - r1) * u % m2 * m1) % m, m


def ext_gcd(a, b):
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def rational_reconstruct(r, m, num_bound, den_bound):
    """Find u/v = r mod m with |u| <= num_bound, 0 < v <= den_bound.

    Returns (u, v) or None.  Requires 2 * num_bound * den_bound < m for
    uniqueness; we only use it with exact verification downstream, so a
    spurious hit is harmless.
    """
    r %= m
    v0, v1 = 0, 1
    u0, u1 = m, r
    while u1 > num_bound:
        q = u0 // u1
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if v1 == 0:
        return None
    if v1 < 0:
        u1, v1 = -u1, -v1
    if v1 > den_bound:
        return None
    if math.gcd(abs(u1), v1) != 1:
        return None
    return u1, v1


def _bsgs(base, target, order, mul, one):
    """Baby-step giant-step in a generic group of known order."""
    m = int_nth_root(order, 2) + 1
    table = {}
    cur = one
    for j in range(m):
        table.setdefault(cur, j)
        cur = mul(cur, base)
    # factor = base^-m
    inv_m = _gpow(base, order - m % order, mul, one)
    cur = target
    for i in range(m + 1):
        if cur in table:
            return (i * m + table[cur]) % order
        cur = mul(cur, inv_m)
    return None


def _gpow(g, e, mul, one):
    r = one
    while e:
        if e & 1:
            r = mul(r, g)
        g = mul(g, g)
        e >>= 1
    return r


def discrete_log(base, target, order, mul, one, seed=0):
    """Pohlig-Hellman discrete log of target to the given base.

    base must have the stated (multiplicative) order; returns e with
    base^e = target, or None if target is outside the cyclic subgroup.
    """
    residues = []
    moduli = []
    for p, k in factorint(order, seed=seed).items():
        pk = p ** k
        g_i = _gpow(base, order // pk, mul, one)
        h_i = _gpow(target, order // pk, mul, one)
        # lift digit by digit in the p-subgroup
        e_i = 0
        gamma = _gpow(g_i, p ** (k - 1), mul, one)  # order p
        for j in range(k):
            exp = p ** (k - 1 - j)
            h_j = _gpow(mul(h_i, _gpow(g_i, (pk - e_i) % pk, mul, one)), exp, mul, one)
            d = _bsgs(gamma, h_j, p, mul, one)
            if d is None:
                return None
            e_i += d * p ** j
        residues.append(e_i)
        moduli.append(pk)
    r, m = 0, 1
    for r2, m2 in zip(residues, moduli):
        r, m = crt_pair(r, m, r2, m2)
    return r
