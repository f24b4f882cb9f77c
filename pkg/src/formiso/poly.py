"""Univariate polynomials over any supported base field.

Coefficients are field elements, index = degree, no trailing zeros; the
zero polynomial has an empty coefficient list.  Prime-field instances
route multiplication, division and gcd through the fast dense kernels in
`modp`; rational root finding routes through `intpoly`.  Root finding and
factorization over F_q use gcds with x^q - x, distinct-degree splitting
and Cantor-Zassenhaus equal-degree splitting (with the trace construction
in characteristic 2).  All randomized steps take an explicit seed.
"""

import random
from fractions import Fraction

from . import intpoly, modp, numutil
from .errors import FieldMismatchError, PreconditionError
from .fields import QQ, FpElement

_gcd_int = numutil.ext_gcd


class Poly:
    """Dense univariate polynomial over a field."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = [field.elem(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = cs

    @classmethod
    def _make(cls, field, cs):
        # internal: coefficients already elements and trimmed
        self = object.__new__(cls)
        self.field = field
        self.coeffs = cs
        return self

    @classmethod
    def from_raw(cls, field, ints):
        return cls._make(field, [FpElement(field, v) for v in ints])

    @classmethod
    def x(cls, field):
        return cls(field, [field.zero, field.one])

    @classmethod
    def constant(cls, field, c):
        return cls(field, [c])

    @classmethod
    def random(cls, field, deg, rng, monic=False):
        cs = [field.random_element(rng) for _ in range(deg + 1)]
        while not cs[-1]:
            cs[-1] = field.random_element(rng)
        if monic:
            cs[-1] = field.one
        return cls(field, cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def raw(self):
        """Int coefficient list (prime fields only)."""
        return [c.v for c in self.coeffs]

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        return "Poly(" + " + ".join(
            f"({c})*x^{i}" if i else f"({c})" for i, c in enumerate(self.coeffs) if c
        ) + ")"

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and other.field == self.field
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field, tuple(self.coeffs)))

    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatchError("polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = a[:]
        for i, c in enumerate(b):
            out[i] = out[i] + c
        while out and not out[-1]:
            out.pop()
        return Poly._make(self.field, out)

    def __sub__(self, other):
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.zero
        out = [
            (self.coeffs[i] if i < len(self.coeffs) else z)
            - (other.coeffs[i] if i < len(other.coeffs) else z)
            for i in range(n)
        ]
        while out and not out[-1]:
            out.pop()
        return Poly._make(self.field, out)

    def __neg__(self):
        return Poly._make(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.field.elem(other)
            if not c:
                return Poly._make(self.field, [])
            return Poly._make(self.field, [x * c for x in self.coeffs])
        self._check(other)
        f = self.field
        if not self.coeffs or not other.coeffs:
            return Poly._make(f, [])
        if f.kind == "prime":
            return Poly.from_raw(f, modp.pmul(self.raw(), other.raw(), f.char))
        if f.kind == "rational" and min(len(self.coeffs), len(other.coeffs)) > 16:
            ia, sa = _int_model(self)
            ib, sb = _int_model(other)
            prod = modp.pmul_int(ia, ib)
            scale = Fraction(1) / (sa * sb)
            return Poly._make(f, [Fraction(c) * scale for c in prod])
        out = [f.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        while out and not out[-1]:
            out.pop()
        return Poly._make(f, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        self._check(other)
        f = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if f.kind == "prime":
            q, r = modp.pdivmod(self.raw(), other.raw(), f.char)
            return Poly.from_raw(f, q), Poly.from_raw(f, r)
        if (
            f.kind == "rational"
            and len(other.coeffs) > 16
            and len(self.coeffs) >= len(other.coeffs)
        ):
            exact = _div_exact_rational(self, other)
            if exact is not None:
                return exact, Poly._make(f, [])
        a = self.coeffs[:]
        b = other.coeffs
        db = len(b) - 1
        if len(a) - 1 < db:
            return Poly._make(f, []), Poly._make(f, a)
        inv = f.one / b[-1]
        q = [f.zero] * (len(a) - db)
        for i in range(len(a) - db - 1, -1, -1):
            c = a[i + db] * inv
            if c:
                q[i] = c
                for j, bj in enumerate(b):
                    a[i + j] = a[i + j] - c * bj
        r = a[:db]
        while r and not r[-1]:
            r.pop()
        while q and not q[-1]:
            q.pop()
        return Poly._make(f, q), Poly._make(f, r)

    def __pow__(self, e):
        if e < 0:
            raise PreconditionError("negative polynomial power")
        r = Poly(self.field, [self.field.one])
        base = self
        while e:
            if e & 1:
                r = r * base
            e >>= 1
            if e:
                base = base * base
        return r

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        if lead == self.field.one:
            return self
        inv = self.field.one / lead
        return Poly._make(self.field, [c * inv for c in self.coeffs])

    def derivative(self):
        f = self.field
        out = [f.elem(i) * self.coeffs[i] for i in range(1, len(self.coeffs))]
        while out and not out[-1]:
            out.pop()
        return Poly._make(f, out)

    def __call__(self, x):
        x = self.field.elem(x)
        if self.field.kind == "rational" and len(self.coeffs) > 32:
            # integer two-variable Horner avoids Fraction normalization
            ints, s = _int_model(self)
            u, v = x.numerator, x.denominator
            r = 0
            vp = 1
            d = len(ints) - 1
            for i in range(d, -1, -1):
                r = r * u + ints[i] * vp
                if i:
                    vp *= v
            return Fraction(r, v ** d) / s
        r = self.field.zero
        for c in reversed(self.coeffs):
            r = r * x + c
        return r

    def shift_compose(self, a, b):
        """self(a*x + b)."""
        f = self.field
        out = Poly._make(f, [])
        lin = Poly(f, [b, a])
        for c in reversed(self.coeffs):
            out = out * lin + Poly.constant(f, c)
        return out

    def powmod(self, e, mod):
        f = self.field
        if f.kind == "prime":
            return Poly.from_raw(f, modp.ppowmod(self.raw(), e, mod.raw(), f.char))
        r = Poly(f, [f.one])
        base = self % mod
        while e:
            if e & 1:
                r = r * base % mod
            e >>= 1
            if e:
                base = base * base % mod
        return r

    def is_irreducible(self):
        return is_irreducible(self)

    def roots(self, seed=0):
        return roots_in_field(self, seed=seed)


def poly_gcd(a, b):
    """Monic gcd; gcd(a, 0) = monic(a)."""
    if a.field != b.field:
        raise FieldMismatchError("gcd of polynomials over different fields")
    f = a.field
    if f.kind == "prime":
        return Poly.from_raw(f, modp.pgcd(a.raw(), b.raw(), f.char))
    if f.kind == "rational":
        return _gcd_rational(a, b)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def _gcd_rational(a, b):
    """Gcd over Q via the primitive integer gcd (no coefficient blowup)."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    g = intpoly.int_poly_gcd(_int_model(a)[0], _int_model(b)[0])
    return Poly(QQ, [Fraction(c) for c in g]).monic()


def _int_model(a):
    """Clear denominators: returns (primitive int coefficient list, scale)
    with scale * a equal to the integer model."""
    import math

    den = 1
    for c in a.coeffs:
        den = den // math.gcd(den, c.denominator) * c.denominator
    ints = [int(c * den) for c in a.coeffs]
    cont = intpoly.content(ints)
    if cont > 1:
        ints = [c // cont for c in ints]
    return ints, Fraction(den, cont if cont else 1)


def _div_exact_rational(a, b):
    """Fast path for exact division over Q, or None when b does not divide a.

    Modular division with rational reconstruction on primitive integer
    models; the result is verified exactly before it is returned.
    """
    ia, sa = _int_model(a)
    ib, sb = _int_model(b)
    q = intpoly.divexact_rational(ia, ib)
    if q is None:
        return None
    scale = sb / sa
    return Poly._make(QQ, [c * scale for c in q])


def squarefree_part_poly(a):
    """Product of the distinct irreducible factors of a, monic."""
    if a.is_zero():
        raise PreconditionError("zero polynomial")
    f = a.field
    if a.degree == 0:
        return Poly(f, [f.one])
    d = a.derivative()
    if d.is_zero():
        # characteristic p and a is a polynomial in x^p, i.e. a p-th power
        return squarefree_part_poly(_pth_root_poly(a))
    g = poly_gcd(a, d)
    v = (a // g).monic()  # distinct factors whose multiplicity is prime to p
    if f.char:
        # factors with multiplicity divisible by p survive entirely in g
        rest = a
        gg = poly_gcd(rest, v)
        while gg.degree > 0:
            rest = rest // gg
            gg = poly_gcd(rest, v)
        if rest.degree > 0:
            v = (v * squarefree_part_poly(_pth_root_poly(rest))).monic()
    return v


def _pth_root_poly(a):
    """For f(x) = g(x^p), recover g with p-th roots of the coefficients."""
    f = a.field
    p = f.char
    out = []
    for i in range(0, len(a.coeffs), p):
        c = a.coeffs[i]
        if f.ext_degree == 1:
            out.append(c)  # Frobenius is the identity on F_p
        else:
            out.append(f.frobenius(c, f.ext_degree - 1))
    return Poly(f, out)


def roots_in_field(a, seed=0):
    """The set of roots of a lying in its base field, each listed once."""
    if a.is_zero():
        raise PreconditionError("zero polynomial")
    f = a.field
    if a.degree == 0:
        return set()
    if f.kind == "rational":
        ints, _ = _int_model(a)
        return set(intpoly.rational_roots(ints))
    rng = random.Random(seed)
    if f.kind == "prime":
        return {FpElement(f, r) for r in modp.proots(a.raw(), f.char, rng)}
    a = squarefree_part_poly(a)
    q = f.order
    x = Poly.x(f)
    xq = x.powmod(q, a)
    lin = poly_gcd(xq - x, a)
    out = set()
    stack = [lin]
    while stack:
        h = stack.pop()
        if h.degree < 1:
            continue
        if h.degree == 1:
            out.add(-h.coeffs[0] / h.coeffs[1])
            continue
        for piece in _split_once(h, 1, rng):
            stack.append(piece)
    return out


def _split_once(h, d, rng):
    """Split a product of distinct degree-d irreducibles into two pieces."""
    f = h.field
    q = f.order
    while True:
        u = Poly.random(f, 2 * d - 1 if h.degree > 1 else 1, rng)
        if f.char == 2:
            t = Poly._make(f, [])
            v = u % h
            r = f.ext_degree * d
            for _ in range(r):
                t = (t + v) % h
                v = v * v % h
            g = poly_gcd(t, h)
        else:
            t = u.powmod((q ** d - 1) // 2, h) - Poly(f, [f.one])
            g = poly_gcd(t, h)
        if 0 < g.degree < h.degree:
            return g, h // g


def distinct_degree_factor(a):
    """[(d, product of irreducible factors of degree d)], a squarefree monic."""
    f = a.field
    q = f.order
    out = []
    x = Poly.x(f)
    h = x.powmod(q, a)
    d = 1
    rest = a.monic()
    while rest.degree >= 2 * d:
        g = poly_gcd(h - x, rest)
        if g.degree > 0:
            out.append((d, g))
            rest = rest // g
            h = h % rest
        d += 1
        if rest.degree < 2 * d:
            break
        h = h.powmod(q, rest)
    if rest.degree > 0:
        out.append((rest.degree, rest))
    return out


def factor(a, seed=0):
    """Full factorization over a finite field: [(irreducible monic, mult)]."""
    f = a.field
    if not f.is_finite:
        raise PreconditionError("factorization implemented for finite fields only")
    if a.is_zero():
        raise PreconditionError("zero polynomial")
    rng = random.Random(seed)
    out = {}
    stack = [(a.monic(), 1)]
    while stack:
        g, mult = stack.pop()
        if g.degree == 0:
            continue
        d = g.derivative()
        if d.is_zero():
            stack.append((_pth_root_poly(g), mult * f.char))
            continue
        sf = poly_gcd(g, d)
        if sf.degree > 0:
            stack.append((sf, mult))
            g = g // sf
        for dd, prod in distinct_degree_factor(g):
            pieces = [prod]
            while pieces:
                h = pieces.pop()
                if h.degree == dd:
                    key = h.monic()
                    out[key] = out.get(key, 0) + mult
                    continue
                g1, g2 = _split_once(h, dd, rng)
                pieces.append(g1)
                pieces.append(g2)
    from .fields import element_key

    return sorted(
        out.items(), key=lambda kv: (kv[0].degree, [element_key(c) for c in kv[0].coeffs])
    )


def is_irreducible(a):
    """Rabin test over a finite field."""
    f = a.field
    if not f.is_finite:
        raise PreconditionError("irreducibility test implemented for finite fields only")
    n = a.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    q = f.order
    x = Poly.x(f)
    if (x.powmod(q ** n, a) - x) % a != Poly._make(f, []):
        return False
    for ell in numutil.factorint(n):
        g = poly_gcd(x.powmod(q ** (n // ell), a) - x, a)
        if g.degree != 0:
            return False
    return True
