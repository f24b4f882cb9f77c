"""Integer-coefficient polynomial helpers backing the rational-field paths.

Polynomials are lists of Python ints, index = degree, no trailing zeros.
The main entry point is `rational_roots`, which finds all roots in Q of an
integer polynomial by root finding modulo a random large prime, quadratic
Hensel lifting, and rational reconstruction; every candidate is verified
exactly, so unlucky primes can only cost retries, never wrong answers.
"""

import math
import random

from . import modp, numutil
from .errors import PreconditionError


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def content(a):
    g = 0
    for c in a:
        g = math.gcd(g, abs(c))
        if g == 1:
            return 1
    return g


def primitive(a):
    g = content(a)
    if g <= 1:
        return a[:]
    return [c // g for c in a]


def deriv(a):
    return trim([i * a[i] for i in range(1, len(a))])


def reduce_mod(a, p):
    return modp.trim([c % p for c in a])


def eval_at(a, x):
    r = 0
    for c in reversed(a):
        r = r * x + c
    return r


def eval_rational(a, num, den):
    """a(num/den) * den^deg, an integer; zero iff num/den is a root."""
    r = 0
    pw = 1
    acc = 0
    d = len(a) - 1
    for i, c in enumerate(a):
        acc += c * num ** i * den ** (d - i)
    return acc


def divexact(f, g, max_primes=600):
    """Exact quotient f // g in Z[x], or None if g does not divide f.

    Computed by CRT over large primes and verified by multiplying back
    (the verification runs on a geometric schedule to avoid quadratic
    behavior on large quotients).
    """
    f = trim(f[:])
    g = trim(g[:])
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    if not f:
        return []
    if len(f) < len(g):
        return None
    rng = random.Random(0xD17)
    crt_q = None
    crt_m = 1
    dq = len(f) - len(g)
    rounds = 0
    next_try = 1
    for _ in range(max_primes):
        p = numutil.next_prime(rng.randrange(1 << 61, 1 << 62))
        if g[-1] % p == 0:
            continue
        fp = reduce_mod(f, p)
        gp = reduce_mod(g, p)
        qp, rp = modp.pdivmod(fp, gp, p)
        if rp:
            return None
        qp += [0] * (dq + 1 - len(qp))
        crt_q, crt_m = _crt_vec(crt_q, crt_m, qp, p)
        rounds += 1
        if rounds < next_try:
            continue
        next_try = rounds + max(1, rounds // 3)
        # symmetric lift and verify by multiplying back
        half = crt_m // 2
        qq = trim([c - crt_m if c > half else c for c in crt_q])
        if modp.pmul_int(qq, g) == f:
            return qq
    return None


def _crt_vec(vec0, m0, vec1, p):
    """Combine residue vectors mod m0 and mod p (coprime); one inverse."""
    if vec0 is None:
        return [c % p for c in vec1], p
    inv = pow(m0 % p, -1, p)
    out = []
    for c0, c1 in zip(vec0, vec1):
        t = (c1 - c0) % p * inv % p
        out.append(c0 + m0 * t)
    return out, m0 * p


def divexact_rational(f, g, max_primes=400):
    """Exact quotient f / g in Q[x] for integer polynomials, or None.

    Unlike `divexact` this allows the quotient to have rational
    coefficients (denominators divide powers of lc(g)).  Computed by CRT
    over word-size primes with per-coefficient rational reconstruction,
    then verified exactly; no scaled big-integer model is ever formed.
    """
    import math as _math

    f = trim(f[:])
    g = trim(g[:])
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    if not f:
        return []
    if len(f) < len(g):
        return None
    rng = random.Random(0xD1F)
    crt_q = None
    crt_m = 1
    dq = len(f) - len(g)
    next_try = 1
    rounds = 0
    for _ in range(max_primes):
        p = numutil.next_prime(rng.randrange(1 << 61, 1 << 62))
        if g[-1] % p == 0:
            continue
        qp, rp = modp.pdivmod(reduce_mod(f, p), reduce_mod(g, p), p)
        if rp:
            return None
        qp += [0] * (dq + 1 - len(qp))
        crt_q, crt_m = _crt_vec(crt_q, crt_m, qp, p)
        rounds += 1
        if rounds < next_try:
            continue
        next_try = rounds + max(1, rounds // 3)
        bound = _math.isqrt(crt_m // 2)
        recon = []
        for c in crt_q:
            uv = numutil.rational_reconstruct(c, crt_m, bound, bound)
            if uv is None:
                recon = None
                break
            recon.append(uv)
        if recon is None:
            continue
        # verify: clear denominators and multiply back
        den = 1
        for _, v in recon:
            den = den // _math.gcd(den, v) * v
        q_int = [u * (den // v) for u, v in recon]
        if modp.pmul_int(q_int, g) == [c * den for c in f]:
            from fractions import Fraction

            return [Fraction(u, v) for u, v in recon]
    return None


def int_poly_gcd(f, g, max_primes=80):
    """Primitive gcd in Z[x] by the modular algorithm with exact checks."""
    f = trim(f[:])
    g = trim(g[:])
    if not f:
        return primitive(g) if g else []
    if not g:
        return primitive(f)
    cf, cg = content(f), content(g)
    cont = math.gcd(cf, cg)
    f = [c // cf for c in f]
    g = [c // cg for c in g]
    lc_bound = math.gcd(abs(f[-1]), abs(g[-1]))
    rng = random.Random(0x9CD)
    best = None  # (deg, crt coeffs, modulus)
    for _ in range(max_primes):
        p = numutil.next_prime(rng.randrange(1 << 61, 1 << 62))
        if f[-1] % p == 0 or g[-1] % p == 0:
            continue
        gp = modp.pgcd(reduce_mod(f, p), reduce_mod(g, p), p)
        d = len(gp) - 1
        if d == 0:
            return [cont] if cont else [1]
        hp = modp.pscale(gp, lc_bound % p, p)
        hp += [0] * (d + 1 - len(hp))
        if best is None or d < best[0]:
            best = (d, [c % p for c in hp], p)
        elif d == best[0]:
            vec, m = _crt_vec(best[1], best[2], hp, p)
            best = (d, vec, m)
        else:
            continue  # unlucky prime, higher degree
        half = best[2] // 2
        cand = trim([c - best[2] if c > half else c for c in best[1]])
        cand = primitive(cand)
        if cand and divexact(f, cand) is not None and divexact(g, cand) is not None:
            return [c * cont for c in cand] if cont > 1 else cand
    raise PreconditionError("modular gcd did not stabilize")


def squarefree_part(f):
    """f with all multiplicities reduced to one (primitive)."""
    f = primitive(trim(f[:]))
    if len(f) <= 2:
        return f
    g = int_poly_gcd(f, deriv(f))
    if len(g) == 1:
        return f
    q = divexact(f, g)
    if q is None:
        raise PreconditionError("internal: gcd does not divide")
    return primitive(q)


def rational_roots(f, max_attempts=12):
    """All rational roots of an integer polynomial, as Fraction objects."""
    from fractions import Fraction

    f = trim(f[:])
    if not f:
        raise PreconditionError("zero polynomial has every root")
    roots = set()
    k = 0
    while f and f[0] == 0:
        f.pop(0)
        k += 1
    if k:
        roots.add(Fraction(0))
    if len(f) <= 1:
        return roots
    f = squarefree_part(f)
    d = len(f) - 1
    if d == 1:
        roots.add(Fraction(-f[0], f[1]))
        return roots
    num_bound = abs(f[0])
    den_bound = abs(f[-1])
    target = 2 * num_bound * den_bound + 1
    rng = random.Random(0x0707)
    for _ in range(max_attempts):
        p = numutil.next_prime(rng.randrange(1 << 59, 1 << 60))
        if f[-1] % p == 0:
            continue
        fp = reduce_mod(f, p)
        fpd = modp.pderiv(fp, p)
        if len(modp.pgcd(fp, fpd, p)) != 1:
            continue  # not squarefree mod p; pick another prime
        for r0 in modp.proots(fp, p, rng):
            r, m = _hensel_lift(f, r0, p, target)
            rec = numutil.rational_reconstruct(r, m, num_bound, den_bound)
            if rec is None:
                continue
            u, v = rec
            if eval_rational(f, u, v) == 0:
                roots.add(Fraction(u, v))
        return roots
    raise PreconditionError("no usable prime found for rational root search")


def shift_int(a, c):
    """Taylor shift a(x + c) for integer polynomials, divide and conquer."""
    if not a or c == 0:
        return a[:]
    if len(a) <= 16:
        out = []
        for coef in reversed(a):
            nxt = [0] * (len(out) + 1)
            for i, v in enumerate(out):
                nxt[i + 1] += v
                nxt[i] += v * c
            nxt[0] += coef
            out = nxt
        return trim(out)
    m = len(a) // 2
    lo = shift_int(a[:m], c)
    hi = shift_int(a[m:], c)
    pw = [c, 1]
    res = [1]
    e = m
    while e:
        if e & 1:
            res = modp.pmul_int(res, pw)
        e >>= 1
        if e:
            pw = modp.pmul_int(pw, pw)
    hi_shift = modp.pmul_int(hi, res)
    n = max(len(lo), len(hi_shift))
    out = [0] * n
    for i, v in enumerate(lo):
        out[i] += v
    for i, v in enumerate(hi_shift):
        out[i] += v
    return trim(out)


def _hensel_lift(f, r, p, target):
    """Quadratically lift a simple root r of f mod p until modulus >= target."""
    m = p
    fp = reduce_mod(f, p)
    w = pow(modp.peval(modp.pderiv(fp, p), r, p), p - 2, p)  # 1/f'(r) mod p
    while m < target:
        m2 = m * m
        fr = eval_at(f, r) % m2
        r = (r - fr * w) % m2
        # refresh the inverse of f'(r) mod m2
        d = eval_at(deriv(f), r) % m2
        w = w * (2 - d * w) % m2
        m = m2
    return r, m
