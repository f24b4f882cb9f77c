"""Dense univariate polynomial kernels over F_p on plain coefficient lists.

Representation: a polynomial is a list of ints in [0, p), index = degree,
with no trailing zeros; [] is the zero polynomial.  These kernels carry the
performance-sensitive work: multiplication is done by packing coefficients
into single big integers (Kronecker substitution) so the inner loop runs in
GMP, division uses Newton iteration on the reversed divisor, and gcd uses a
half-gcd reduction.  Every routine is exact.

The half-gcd only ever applies unimodular row operations coming from true
quotient steps, so a degree bound that fails to hold can only cost speed,
never correctness; the outer gcd loop forces a plain division step per
round, which guarantees termination.
"""

import gmpy2

_MUL_SCHOOLBOOK = 24
_DIV_SCHOOLBOOK = 48
_GCD_PLAIN = 192


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a):
    return len(a) - 1


def padd(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = a[:]
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def psub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return trim(out)


def pneg(a, p):
    return [(-c) % p for c in a]


def pscale(a, c, p):
    c %= p
    if c == 0:
        return []
    return [c * x % p for x in a]


def pmul(a, b, p):
    """Product of two F_p polynomials; Kronecker substitution when large."""
    if not a or not b:
        return []
    la, lb = len(a), len(b)
    if min(la, lb) <= _MUL_SCHOOLBOOK:
        out = [0] * (la + lb - 1)
        if la > lb:
            a, b, la, lb = b, a, lb, la
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return trim([c % p for c in out])
    bound = min(la, lb) * (p - 1) * (p - 1)
    limb = bound.bit_length() + 1
    prod = gmpy2.pack(a, limb) * gmpy2.pack(b, limb)
    return trim([int(c) % p for c in gmpy2.unpack(prod, limb)])


def pmul_int(a, b):
    """Product of two signed integer polynomials via Kronecker mod 2^K."""
    if not a or not b:
        return []
    la, lb = len(a), len(b)
    if min(la, lb) <= _MUL_SCHOOLBOOK:
        out = [0] * (la + lb - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return out
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    bound = 2 * min(la, lb) * ma * mb + 1
    k = bound.bit_length() + 1
    mask = (1 << k) - 1
    half = 1 << (k - 1)
    pa = gmpy2.pack([c & mask for c in a], 2 * k + 32)
    pb = gmpy2.pack([c & mask for c in b], 2 * k + 32)
    raw = gmpy2.unpack(pa * pb, 2 * k + 32)
    out = []
    for c in raw:
        r = int(c) & mask
        out.append(r - (1 << k) if r >= half else r)
    while len(out) < la + lb - 1:
        out.append(0)
    return out[: la + lb - 1]


def _inv_series(b, k, p):
    """Inverse of b modulo x^k (b[0] != 0) by Newton iteration."""
    inv0 = pow(b[0], p - 2, p)
    g = [inv0]
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        t = pmul(g, b[:prec], p)
        t = t[:prec]
        # g <- g*(2 - b*g) mod x^prec
        t = [(-c) % p for c in t]
        if t:
            t[0] = (t[0] + 2) % p
        else:
            t = [2 % p]
        g = pmul(g, t, p)[:prec]
    return trim(g[:k])


def pdivmod(a, b, p):
    """Quotient and remainder; Newton division for large operands."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return [], a[:]
    if db == 0:
        inv = pow(b[0], p - 2, p)
        return [c * inv % p for c in a], []
    if da - db <= _DIV_SCHOOLBOOK or db <= _DIV_SCHOOLBOOK:
        r = a[:]
        inv = pow(b[-1], p - 2, p)
        q = [0] * (da - db + 1)
        for i in range(da - db, -1, -1):
            c = r[i + db] % p
            if c:
                c = c * inv % p
                q[i] = c
                for j, bj in enumerate(b):
                    r[i + j] = (r[i + j] - c * bj) % p
        del r[db:]
        return trim(q), trim(r)
    k = da - db + 1
    rb = b[::-1]
    ra = a[::-1]
    qr = pmul(ra[:k], _inv_series(rb, k, p), p)[:k]
    while len(qr) < k:
        qr.append(0)
    q = trim(qr[::-1])
    r = psub(a, pmul(q, b, p), p)
    return q, r


def pmod(a, b, p):
    return pdivmod(a, b, p)[1]


def monic(a, p):
    if not a:
        return []
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def _mat_vec(m, a, b, p):
    (m00, m01), (m10, m11) = m
    return (
        padd(pmul(m00, a, p), pmul(m01, b, p), p),
        padd(pmul(m10, a, p), pmul(m11, b, p), p),
    )


def _mat_mul(m, n, p):
    (a, b), (c, d) = m
    (e, f), (g, h) = n
    return (
        (padd(pmul(a, e, p), pmul(b, g, p), p), padd(pmul(a, f, p), pmul(b, h, p), p)),
        (padd(pmul(c, e, p), pmul(d, g, p), p), padd(pmul(c, f, p), pmul(d, h, p), p)),
    )


_IDENT = (([1], []), ([], [1]))


def _quot_update(M, q, p):
    """Left-multiply M by the quotient-step matrix [[0,1],[1,-q]]."""
    (m00, m01), (m10, m11) = M
    return (
        (m10, m11),
        (psub(m00, pmul(q, m10, p), p), psub(m01, pmul(q, m11, p), p)),
    )


def _hgcd(a, b, p):
    """Half-gcd: unimodular M with M*(a,b) having second entry of degree
    below ceil(deg a / 2) when the theory applies.  Returns (M, a', b').

    M is always an exact product of quotient-step matrices, so applying it
    preserves gcds regardless of truncation luck."""
    da = len(a) - 1
    m = (da + 1) // 2
    if not b or len(b) - 1 < m:
        return _IDENT, a, b
    if da <= _GCD_PLAIN:
        M = _IDENT
        while b and len(b) - 1 >= m:
            q, r = pdivmod(a, b, p)
            a, b = b, r
            M = _quot_update(M, q, p)
        return M, a, b
    a1, b1 = a[m:], b[m:]
    M1, _, _ = _hgcd(a1, b1, p)
    a2, b2 = _mat_vec(M1, a, b, p)
    if not b2 or len(b2) - 1 < m:
        return M1, a2, b2
    q, r = pdivmod(a2, b2, p)
    a2, b2 = b2, r
    M = _quot_update(M1, q, p)
    if not b2 or len(b2) - 1 < m:
        return M, a2, b2
    k = 2 * m - (len(a2) - 1)
    if k <= 0 or k >= len(a2):
        return M, a2, b2
    M2, _, _ = _hgcd(a2[k:], b2[k:] if len(b2) > k else [], p)
    a3, b3 = _mat_vec(M2, a2, b2, p)
    return _mat_mul(M2, M, p), a3, b3


def pgcd(a, b, p):
    """Monic gcd; half-gcd accelerated, with gcd(f, 0) = monic(f)."""
    a, b = a[:], b[:]
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(a) - 1 <= _GCD_PLAIN:
            while b:
                a, b = b, pmod(a, b, p)
            break
        _, a, b = _hgcd(a, b, p)
        if b:
            a, b = b, pmod(a, b, p)
    return monic(a, p)


def peval(a, x, p):
    r = 0
    for c in reversed(a):
        r = (r * x + c) % p
    return r


def pderiv(a, p):
    return trim([i * a[i] % p for i in range(1, len(a))])


def ppowmod(base, e, mod, p):
    """base^e modulo mod (and p)."""
    r = [1 % p]
    base = pmod(base, mod, p)
    while e:
        if e & 1:
            r = pmod(pmul(r, base, p), mod, p)
        e >>= 1
        if e:
            base = pmod(pmul(base, base, p), mod, p)
    return r


def pshift(a, c, p):
    """Taylor shift a(x + c).  Convolution method needs p > deg a; fall
    back to divide and conquer otherwise."""
    c %= p
    if not a or c == 0:
        return a[:]
    d = len(a) - 1
    if p > d:
        fact = [1] * (d + 1)
        for i in range(1, d + 1):
            fact[i] = fact[i - 1] * i % p
        invf = [1] * (d + 1)
        invf[d] = pow(fact[d], p - 2, p)
        for i in range(d, 0, -1):
            invf[i - 1] = invf[i] * i % p
        u = [a[i] * fact[i] % p for i in range(d + 1)]
        u.reverse()
        cs = [1]
        for i in range(1, d + 1):
            cs.append(cs[-1] * c % p)
        s = [cs[i] * invf[i] % p for i in range(d + 1)]
        conv = pmul(u, s, p)
        out = [0] * (d + 1)
        for j in range(d + 1):
            k = d - j
            v = conv[k] if k < len(conv) else 0
            out[j] = v * invf[j] % p
        return trim(out)
    return _shift_dc(a, c, p)


def _shift_dc(a, c, p):
    if len(a) <= 16:
        # Horner-style synthetic shift
        out = []
        for coef in reversed(a):
            # out <- out*(x+c) + coef
            nxt = [0] * (len(out) + 1)
            for i, v in enumerate(out):
                nxt[i + 1] = (nxt[i + 1] + v) % p
                nxt[i] = (nxt[i] + v * c) % p
            nxt[0] = (nxt[0] + coef) % p
            out = nxt
        return trim(out)
    m = len(a) // 2
    lo = _shift_dc(a[:m], c, p)
    hi = _shift_dc(a[m:], c, p)
    # (x+c)^m by repeated squaring
    pw = [c % p, 1]
    res = [1]
    e = m
    while e:
        if e & 1:
            res = pmul(res, pw, p)
        e >>= 1
        if e:
            pw = pmul(pw, pw, p)
    return padd(lo, pmul(hi, res, p), p)


def prandom(deg, p, rng, monic_out=False):
    a = [rng.randrange(p) for _ in range(deg + 1)]
    a[-1] = 1 if monic_out else rng.randrange(1, p)
    return a


def psquarefree(f, p):
    """The radical: product of the distinct irreducible factors, monic.

    Factors whose multiplicity is divisible by p hide entirely inside
    gcd(f, f'); they are recovered from the p-th-power part."""
    f = monic(f, p)
    if len(f) <= 2:
        return f
    d = pderiv(f, p)
    if not d:
        return psquarefree(f[::p], p)  # f is a polynomial in x^p
    g = pgcd(f, d, p)
    v = pdivmod(f, g, p)[0]
    v = monic(v, p)
    rest = f
    gg = pgcd(rest, v, p)
    while len(gg) > 1:
        rest = pdivmod(rest, gg, p)[0]
        gg = pgcd(rest, v, p)
    if len(rest) > 1:
        v = pmul(v, psquarefree(rest[::p], p), p)
    return monic(v, p)


def proots(f, p, rng):
    """Roots in F_p of f (any multiplicities), via gcd with x^p - x and
    equal-degree splitting.  Returns a list of ints."""
    f = trim(f[:])
    if len(f) <= 1:
        return []
    f = psquarefree(f, p)
    x = [0, 1]
    xq = ppowmod(x, p, f, p)
    lin = pgcd(psub(xq, x, p), f, p)
    out = []
    stack = [lin]
    while stack:
        h = stack.pop()
        if len(h) <= 1:
            continue
        if len(h) == 2:
            out.append((-h[0]) * pow(h[1], p - 2, p) % p)
            continue
        if p == 2:
            for r in (0, 1):
                if peval(h, r, p) == 0:
                    out.append(r)
            continue
        while True:
            a = rng.randrange(p)
            t = ppowmod([a, 1], (p - 1) // 2, h, p)
            t = psub(t, [1], p)
            d = pgcd(t, h, p)
            if 0 < len(d) - 1 < len(h) - 1:
                stack.append(d)
                stack.append(pdivmod(h, d, p)[0])
                break
    return out
