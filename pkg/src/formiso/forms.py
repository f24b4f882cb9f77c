"""Binary forms of degree n and the GL2 action on them.

Coefficient convention: a form f = sum_i a_i x^i z^(n-i) is stored as the
list [a_0, ..., a_n], so index = power of x.  This indexing is used
everywhere (JSON files, invariant formulas, the solver's normalizations),
so it is worth stating once: a_n is the x^n coefficient and a_0 the z^n
coefficient; the point (1:0) is a root exactly when a_n = 0.

The action is (M.f)(x, z) = f(M^{-1}(x, z)), computed with the true matrix
inverse so that scalar bookkeeping stays exact.  Substitution f(N(x, z))
is the workhorse: over prime fields it runs in softly-linear time by
splitting N into triangular substitutions and a swap; over the rationals
it clears denominators and works on integer polynomials; other fields use
a quadratic Horner scheme.
"""

import math
from fractions import Fraction

from . import intpoly, modp
from .errors import FieldMismatchError, PreconditionError
from .fields import QQ, FpElement, element_key
from .poly import Poly, squarefree_part_poly


class Moebius:
    """An invertible 2x2 matrix acting on forms; compared projectively."""

    __slots__ = ("field", "a", "b", "c", "d")

    def __init__(self, field, a, b, c, d):
        self.field = field
        self.a = field.elem(a)
        self.b = field.elem(b)
        self.c = field.elem(c)
        self.d = field.elem(d)
        if not self.det():
            raise PreconditionError("singular matrix")

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def det(self):
        return self.a * self.d - self.b * self.c

    def inverse(self):
        dt = self.det()
        return Moebius(self.field, self.d / dt, -self.b / dt, -self.c / dt, self.a / dt)

    def __mul__(self, other):
        if self.field != other.field:
            raise FieldMismatchError("matrices over different fields")
        return Moebius(
            self.field,
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def scale(self, lam):
        lam = self.field.elem(lam)
        return Moebius(self.field, self.a * lam, self.b * lam, self.c * lam, self.d * lam)

    def apply_point(self, x, z):
        return (self.a * x + self.b * z, self.c * x + self.d * z)

    def key(self):
        """Canonical projective key: scaled so the first nonzero entry is 1."""
        for e in self.entries():
            if e:
                inv = self.field.one / e
                return tuple(element_key(v * inv) for v in self.entries())
        raise PreconditionError("zero matrix")

    def __eq__(self, other):
        return isinstance(other, Moebius) and self.field == other.field and self.key() == other.key()

    def __hash__(self):
        return hash((self.field, self.key()))

    def __repr__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"

    @classmethod
    def identity(cls, field):
        return cls(field, field.one, field.zero, field.zero, field.one)

    @classmethod
    def random(cls, field, rng, bound=10):
        while True:
            if field.is_finite:
                vals = [field.random_element(rng) for _ in range(4)]
            else:
                vals = [Fraction(rng.randint(-bound, bound)) for _ in range(4)]
            if vals[0] * vals[3] - vals[1] * vals[2]:
                return cls(field, *vals)


class BinaryForm:
    """Homogeneous form of declared degree n with coefficients a_0..a_n."""

    __slots__ = ("field", "degree", "coeffs")

    def __init__(self, field, degree, coeffs):
        if len(coeffs) != degree + 1:
            raise PreconditionError(f"need {degree + 1} coefficients for degree {degree}")
        self.field = field
        self.degree = degree
        self.coeffs = [field.elem(c) for c in coeffs]

    def is_zero(self):
        return not any(self.coeffs)

    def copy(self):
        return BinaryForm(self.field, self.degree, self.coeffs[:])

    def __eq__(self, other):
        return (
            isinstance(other, BinaryForm)
            and self.field == other.field
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.degree, tuple(element_key(c) for c in self.coeffs)))

    def __repr__(self):
        terms = []
        n = self.degree
        for i in range(n, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            xs = f"x^{i}" if i > 1 else ("x" if i == 1 else "")
            zs = f"z^{n - i}" if n - i > 1 else ("z" if n - i == 1 else "")
            terms.append(f"({c}){xs}{zs}" if (xs or zs) else f"({c})")
        return " + ".join(terms) if terms else "0"

    def __add__(self, other):
        if self.degree != other.degree or self.field != other.field:
            raise PreconditionError("can only add forms of the same degree and field")
        return BinaryForm(
            self.field, self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other):
        if self.degree != other.degree or self.field != other.field:
            raise PreconditionError("can only subtract forms of the same degree and field")
        return BinaryForm(
            self.field, self.degree, [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def scaled(self, lam):
        lam = self.field.elem(lam)
        return BinaryForm(self.field, self.degree, [c * lam for c in self.coeffs])

    def evaluate(self, x, z):
        f = self.field
        x, z = f.elem(x), f.elem(z)
        r = f.zero
        zp = f.one
        for i in range(self.degree, -1, -1):
            r = r * x + self.coeffs[i] * zp
            if i:
                zp = zp * z
        return r

    def partial_x(self):
        f = self.field
        n = self.degree
        if n == 0:
            return BinaryForm(f, 0, [f.zero])
        return BinaryForm(f, n - 1, [f.elem(i + 1) * self.coeffs[i + 1] for i in range(n)])

    def partial_z(self):
        f = self.field
        n = self.degree
        if n == 0:
            return BinaryForm(f, 0, [f.zero])
        return BinaryForm(f, n - 1, [f.elem(n - i) * self.coeffs[i] for i in range(n)])

    def poly_x(self):
        """f(x, 1) as a univariate polynomial."""
        return Poly(self.field, self.coeffs)

    def poly_z(self):
        """f(1, z) as a univariate polynomial."""
        return Poly(self.field, list(reversed(self.coeffs)))

    def x_degree(self):
        for i in range(self.degree, -1, -1):
            if self.coeffs[i]:
                return i
        return -1

    def leading_index(self):
        return self.x_degree()

    def normalized(self):
        """Scaled so the leading (highest x-power) nonzero coefficient is 1."""
        i = self.x_degree()
        if i < 0:
            raise PreconditionError("zero form")
        inv = self.field.one / self.coeffs[i]
        return self.scaled(inv)

    @classmethod
    def from_poly(cls, field, degree, pol):
        cs = list(pol.coeffs) + [field.zero] * (degree + 1 - len(pol.coeffs))
        if len(cs) != degree + 1:
            raise PreconditionError("polynomial degree exceeds declared form degree")
        return cls(field, degree, cs)

    @classmethod
    def random(cls, field, degree, rng, bound=10, separable=False):
        while True:
            if field.is_finite:
                cs = [field.random_element(rng) for _ in range(degree + 1)]
            else:
                cs = [Fraction(rng.randint(-bound, bound)) for _ in range(degree + 1)]
            form = cls(field, degree, cs)
            if form.is_zero():
                continue
            if not separable or is_separable(form):
                return form


def substitute(f, N):
    """The composite form f(N(x, z)) for a Moebius matrix N."""
    if f.field != N.field:
        raise FieldMismatchError("form and matrix over different fields")
    fld = f.field
    n = f.degree
    if fld.kind == "prime" and n >= 8:
        return _substitute_fp(f, N)
    if fld.kind == "rational" and n >= 8:
        return _substitute_qq(f, N)
    return _substitute_horner(f, N)


def _substitute_horner(f, N):
    """Generic O(n^2) scheme: Horner in u = Ax+Bz against powers of v = Cx+Dz.

    Vectors are x-power coefficient lists of homogeneous forms whose degree
    is implicit in the position of the Horner loop.
    """
    fld = f.field
    n = f.degree
    A, B, C, D = N.entries()
    zero = fld.zero
    r = [f.coeffs[n]]
    vpow = [fld.one]  # (Cx+Dz)^k, updated incrementally
    for k in range(1, n + 1):
        # r <- r * (Ax+Bz)
        nr = [zero] * (len(r) + 1)
        for i, c in enumerate(r):
            if c:
                nr[i + 1] = nr[i + 1] + c * A
                nr[i] = nr[i] + c * B
        # vpow <- vpow * (Cx+Dz)
        nv = [zero] * (len(vpow) + 1)
        for i, c in enumerate(vpow):
            if c:
                nv[i + 1] = nv[i + 1] + c * C
                nv[i] = nv[i] + c * D
        vpow = nv
        a = f.coeffs[n - k]
        if a:
            for i, c in enumerate(vpow):
                if c:
                    nr[i] = nr[i] + a * c
        r = nr
    return BinaryForm(fld, n, r)


def _upper_sub_raw(raw, n, A, B, D, p):
    """f(Ax + Bz, Dz) on an int coefficient list of length n+1."""
    dp = [1] * (n + 1)
    for i in range(1, n + 1):
        dp[i] = dp[i - 1] * D % p
    tilde = [raw[i] * dp[n - i] % p for i in range(n + 1)]
    shifted = modp.pshift(tilde, B % p, p)
    shifted += [0] * (n + 1 - len(shifted))
    ap = 1
    out = [0] * (n + 1)
    for j in range(n + 1):
        out[j] = shifted[j] * ap % p
        ap = ap * (A % p) % p
    return out


def _substitute_fp(f, N):
    p = f.field.char
    n = f.degree
    raw = [c.v for c in f.coeffs]
    A, B, C, D = (e.v for e in N.entries())
    if C == 0:
        out = _upper_sub_raw(raw, n, A, B, D, p)
    elif A == 0 and D == 0:
        # pure antidiagonal [[0,B],[C,0]] = swap then diag(C, B)
        out = _upper_sub_raw(raw[::-1], n, C, 0, B, p)
    else:
        # N = U1 * W * U2 with U1 = [[e, A], [0, C]], e = -det/C, W = swap,
        # U2 = [[1, D/C], [0, 1]]
        det = (A * D - B * C) % p
        cinv = pow(C, p - 2, p)
        e = (-det) * cinv % p
        step1 = _upper_sub_raw(raw, n, e, A, C, p)
        step2 = step1[::-1]
        out = _upper_sub_raw(step2, n, 1, D * cinv % p, 1, p)
    fld = f.field
    return BinaryForm(fld, n, [FpElement(fld, v) for v in out])


def _substitute_qq(f, N):
    """Rational substitution through primitive integer models."""
    n = f.degree
    den_f = 1
    for c in f.coeffs:
        den_f = den_f * c.denominator // math.gcd(den_f, c.denominator)
    raw = [int(c * den_f) for c in f.coeffs]
    ents = [N.a, N.b, N.c, N.d]
    den_m = 1
    for c in ents:
        den_m = den_m * c.denominator // math.gcd(den_m, c.denominator)
    A, B, C, D = (int(c * den_m) for c in ents)
    scale = Fraction(1, den_f) * Fraction(1, den_m ** n)
    if C == 0:
        out = _upper_sub_int(raw, n, A, B, D)
    elif A == 0 and D == 0:
        out = _upper_sub_int(raw[::-1], n, C, 0, B)
    else:
        # integer Bruhat split: scale U1 and U2 by C to stay integral
        det = A * D - B * C
        step1 = _upper_sub_int(raw, n, -det, A * C, C * C)  # C * U1
        step2 = step1[::-1]
        out = _upper_sub_int(step2, n, C, D, C)  # C * U2
        scale = scale * Fraction(1, C ** (2 * n))
    return BinaryForm(QQ, n, [Fraction(v) * scale for v in out])


def _upper_sub_int(raw, n, A, B, D):
    dp = [1] * (n + 1)
    for i in range(1, n + 1):
        dp[i] = dp[i - 1] * D
    tilde = [raw[i] * dp[n - i] for i in range(n + 1)]
    shifted = intpoly.shift_int(tilde, B)
    shifted += [0] * (n + 1 - len(shifted))
    out = [0] * (n + 1)
    ap = 1
    for j in range(n + 1):
        out[j] = shifted[j] * ap
        ap = ap * A
    return out


def act(M, f):
    """(M.f)(x, z) = f(M^{-1}(x, z))."""
    return substitute(f, M.inverse())


def primitive_rescale(f):
    """(g, c) with g = c * f having primitive integer coefficients.

    Identity (scale 1) over fields other than Q."""
    if f.field.kind != "rational":
        return f, f.field.one
    den = 1
    for co in f.coeffs:
        den = den // math.gcd(den, co.denominator) * co.denominator
    ints = [int(co * den) for co in f.coeffs]
    cont = 0
    for v in ints:
        cont = math.gcd(cont, abs(v))
    c = Fraction(den, cont if cont else 1)
    return f.scaled(c), c


def is_proportional(f, g):
    """The scalar lam with f = lam * g, or None."""
    if f.field != g.field or f.degree != g.degree:
        return None
    lam = None
    for a, b in zip(f.coeffs, g.coeffs):
        if not a and not b:
            continue
        if not b:
            return None
        cand = a / b
        if lam is None:
            lam = cand
        elif lam != cand:
            return None
    return lam  # None only if both forms are zero


def squarefree_part(f):
    """The product of the distinct linear factors over the closure, with the
    root at infinity (z | f) counted once; monic in its leading coefficient."""
    if f.is_zero():
        raise PreconditionError("zero form")
    d = f.x_degree()
    inf_mult = f.degree - d
    u = Poly(f.field, f.coeffs[: d + 1])
    s = squarefree_part_poly(u)
    deg_out = s.degree + (1 if inf_mult else 0)
    cs = list(s.coeffs) + [f.field.zero] * (deg_out + 1 - len(s.coeffs))
    return BinaryForm(f.field, deg_out, cs)


def distinct_root_count(f):
    return squarefree_part(f).degree


def is_separable(f):
    """No repeated roots over the closure (and the right number of them)."""
    if f.is_zero():
        return False
    return distinct_root_count(f) == f.degree


def resultant(P, Q):
    """Resultant of two forms taken at their declared degrees (Sylvester)."""
    fld = P.field
    dp, dq = P.degree, Q.degree
    m = dp + dq
    if m == 0:
        return fld.one
    rows = []
    pc = list(reversed(P.coeffs))  # leading first
    qc = list(reversed(Q.coeffs))
    for i in range(dq):
        rows.append([fld.zero] * i + pc + [fld.zero] * (m - i - dp - 1))
    for i in range(dp):
        rows.append([fld.zero] * i + qc + [fld.zero] * (m - i - dq - 1))
    return _det(fld, rows)


def _det(fld, rows):
    n = len(rows)
    det = fld.one
    sign = False
    for col in range(n):
        piv = None
        for r in range(col, n):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            return fld.zero
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            sign = not sign
        pval = rows[col][col]
        det = det * pval
        inv = fld.one / pval
        for r in range(col + 1, n):
            factor = rows[r][col]
            if factor:
                factor = factor * inv
                for cc in range(col, n):
                    rows[r][cc] = rows[r][cc] - factor * rows[col][cc]
    return -det if sign else det


# For quartics, form_discriminant = QUARTIC_DISC_RATIO * (4 I^3 - J^2) with
# I, J as in covariants.quartic_ij.  The constant is asserted by the tests.
QUARTIC_DISC_RATIO = Fraction(16, 27)


def form_discriminant(f):
    """Resultant of the two partials; zero iff f has a repeated root.

    Under substitution by M this picks up the factor det(M)^(n(n-1)).
    """
    if f.degree < 2:
        raise PreconditionError("discriminant needs degree >= 2")
    if f.field.char and f.field.char <= f.degree:
        raise PreconditionError("characteristic too small for the partial-derivative discriminant")
    return resultant(f.partial_x(), f.partial_z())
