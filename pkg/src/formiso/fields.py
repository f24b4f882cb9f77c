"""Exact base fields: the rationals, prime fields F_p and extensions F_{p^r}.

Rational elements are `fractions.Fraction` (always in lowest terms with
positive denominator).  Prime-field elements wrap a single int in [0, p);
extension elements wrap a coefficient tuple of length r over F_p, reduced
modulo a single global modulus per field.  Towers are flattened eagerly:
an extension of an extension is realized as one extension of F_p.

All randomized routines take an explicit `random.Random` (or a seed) so
results are reproducible.
"""

import math
import random
from fractions import Fraction

from . import modp, numutil
from .errors import CapabilityError, CharacteristicError, FieldMismatchError, PreconditionError


class Rationals:
    """The field Q.  Elements are Fraction instances."""

    char = 0
    ext_degree = 1
    order = None
    is_finite = False
    kind = "rational"

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def elem(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def random_element(self, rng, bound=10):
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    def is_square(self, a):
        a = self.elem(a)
        if a < 0:
            return False
        return (
            numutil.exact_nth_root(a.numerator, 2) is not None
            and numutil.exact_nth_root(a.denominator, 2) is not None
        )

    def nth_root(self, a, n, rng=None):
        """Some x in Q with x**n == a, or None."""
        if n < 1:
            raise PreconditionError("n must be >= 1")
        a = self.elem(a)
        if a == 0:
            return Fraction(0)
        num = numutil.exact_nth_root(a.numerator, n)
        den = numutil.exact_nth_root(a.denominator, n)
        if num is None or den is None:
            return None
        return Fraction(num, den)

    def sqrt(self, a, rng=None):
        return self.nth_root(a, 2)

    def frobenius(self, a, s=1):
        raise CharacteristicError("Frobenius is undefined in characteristic 0")


QQ = Rationals()


class FpElement:
    """Element of F_p, a thin wrapper around an int in [0, p)."""

    __slots__ = ("field", "v")

    def __init__(self, field, v):
        self.field = field
        self.v = v % field.char

    def _lift(self, other):
        if isinstance(other, FpElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatchError("elements of different prime fields")
            return other.v
        if isinstance(other, int):
            return other % self.field.char
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElement(self.field, self.v + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElement(self.field, self.v - o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElement(self.field, o - self.v)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElement(self.field, self.v * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError("division by zero in F_p")
        p = self.field.char
        return FpElement(self.field, self.v * pow(o, p - 2, p))

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_p")
        p = self.field.char
        return FpElement(self.field, o * pow(self.v, p - 2, p))

    def __pow__(self, e):
        p = self.field.char
        if e < 0:
            if self.v == 0:
                raise ZeroDivisionError("inverting zero in F_p")
            return FpElement(self.field, pow(pow(self.v, p - 2, p), -e, p))
        return FpElement(self.field, pow(self.v, e, p))

    def __neg__(self):
        return FpElement(self.field, -self.v)

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.field == other.field and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.field.char
        return NotImplemented

    def __bool__(self):
        return self.v != 0

    def __hash__(self):
        return hash((self.field.char, self.v))

    def __repr__(self):
        return f"{self.v}"


class PrimeField:
    """F_p for prime p."""

    ext_degree = 1
    is_finite = True
    kind = "prime"

    _cache = {}

    def __new__(cls, p):
        f = cls._cache.get(p)
        if f is None:
            if not numutil.is_prime(p):
                raise PreconditionError(f"{p} is not prime")
            f = super().__new__(cls)
            f.char = p
            f.order = p
            cls._cache[p] = f
        return f

    def __repr__(self):
        return f"GF({self.char})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.char == self.char

    def __hash__(self):
        return hash(("Fp", self.char))

    @property
    def zero(self):
        return FpElement(self, 0)

    @property
    def one(self):
        return FpElement(self, 1)

    def elem(self, x):
        if isinstance(x, FpElement):
            if x.field != self:
                raise FieldMismatchError("element of a different field")
            return x
        if isinstance(x, int):
            return FpElement(self, x)
        if isinstance(x, str):
            num, _, den = x.partition("/")
            v = int(num)
            if den:
                v = v * pow(int(den), self.char - 2, self.char)
            return FpElement(self, v)
        if isinstance(x, Fraction):
            if x.denominator % self.char == 0:
                raise CharacteristicError(f"denominator of {x} vanishes mod {self.char}")
            return FpElement(self, x.numerator * pow(x.denominator, self.char - 2, self.char))
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def from_rational(self, x):
        return self.elem(Fraction(x))

    def random_element(self, rng):
        return FpElement(self, rng.randrange(self.char))

    def frobenius(self, a, s=1):
        return self.elem(a)

    def is_square(self, a):
        a = self.elem(a)
        if a.v == 0 or self.char == 2:
            return True
        return pow(a.v, (self.char - 1) // 2, self.char) == 1

    def nth_root(self, a, n, rng=None):
        return _finite_nth_root(self, self.elem(a), n, rng)

    def sqrt(self, a, rng=None):
        return self.nth_root(a, 2, rng)


class ExtElement:
    """Element of F_{p^r}: coefficient tuple over F_p, reduced mod modulus."""

    __slots__ = ("field", "vec")

    def __init__(self, field, vec):
        self.field = field
        self.vec = vec  # tuple of length r, already reduced

    def _lift(self, other):
        f = self.field
        if isinstance(other, ExtElement):
            if other.field != f:
                raise FieldMismatchError("elements of different extension fields")
            return other.vec
        if isinstance(other, int):
            return f._embed_int(other)
        if isinstance(other, FpElement):
            if other.field.char != f.char:
                raise FieldMismatchError("characteristic mismatch")
            return f._embed_int(other.v)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.field.char
        return ExtElement(self.field, tuple((x + y) % p for x, y in zip(self.vec, o)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.field.char
        return ExtElement(self.field, tuple((x - y) % p for x, y in zip(self.vec, o)))

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.field.char
        return ExtElement(self.field, tuple((y - x) % p for x, y in zip(self.vec, o)))

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return ExtElement(self.field, self.field._mul_vec(self.vec, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self * ExtElement(self.field, self.field._inv_vec(o))

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return ExtElement(self.field, self.field._mul_vec(o, self.field._inv_vec(self.vec)))

    def __pow__(self, e):
        f = self.field
        if e < 0:
            base = f._inv_vec(self.vec)
            e = -e
        else:
            base = self.vec
        r = f._embed_int(1)
        while e:
            if e & 1:
                r = f._mul_vec(r, base)
            e >>= 1
            if e:
                base = f._mul_vec(base, base)
        return ExtElement(f, r)

    def __neg__(self):
        p = self.field.char
        return ExtElement(self.field, tuple((-x) % p for x in self.vec))

    def __eq__(self, other):
        if isinstance(other, ExtElement):
            return self.field == other.field and self.vec == other.vec
        if isinstance(other, (int, FpElement)):
            o = self._lift(other)
            return o is not NotImplemented and self.vec == o
        return NotImplemented

    def __bool__(self):
        return any(self.vec)

    def __hash__(self):
        return hash((self.field.char, self.field.ext_degree, self.vec))

    def __repr__(self):
        return f"{list(self.vec)}"


class ExtensionField:
    """F_{p^r} given by a monic irreducible modulus of degree r over F_p."""

    is_finite = True
    kind = "extension"

    def __init__(self, p, modulus):
        if not numutil.is_prime(p):
            raise PreconditionError(f"{p} is not prime")
        mod = [c % p for c in modulus]
        mod = modp.trim(mod[:])
        r = len(mod) - 1
        if r < 2:
            raise PreconditionError("extension degree must be at least 2")
        if mod[-1] != 1:
            raise PreconditionError("modulus must be monic")
        if not _irreducible_mod_p(mod, p):
            raise PreconditionError("modulus is reducible over F_p")
        self.char = p
        self.ext_degree = r
        self.modulus = tuple(mod)
        self.order = p ** r
        # reduction table: _red[j] = x^(r+j) reduced mod the modulus
        table = [[(-c) % p for c in mod[:-1]]]
        for _ in range(r - 2):
            prev = [0] + table[-1]
            c = prev.pop()
            if c:
                for i in range(r):
                    prev[i] = (prev[i] + c * table[0][i]) % p
            table.append(prev)
        self._red = table

    def __repr__(self):
        return f"GF({self.char}^{self.ext_degree})"

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.char == self.char
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("Fq", self.char, self.modulus))

    def _embed_int(self, c):
        vec = [0] * self.ext_degree
        vec[0] = c % self.char
        return tuple(vec)

    def _mul_vec(self, u, v):
        p = self.char
        r = self.ext_degree
        conv = [0] * (2 * r - 1)
        for i, x in enumerate(u):
            if x:
                for j, y in enumerate(v):
                    conv[i + j] += x * y
        out = [c % p for c in conv[:r]]
        for k in range(r, 2 * r - 1):
            c = conv[k] % p
            if c:
                red = self._red[k - r]
                for i in range(r):
                    out[i] = (out[i] + c * red[i]) % p
        return tuple(out)

    def _inv_vec(self, u):
        if not any(u):
            raise ZeroDivisionError("inverting zero in extension field")
        # extended Euclid in F_p[x] against the modulus
        p = self.char
        a = list(self.modulus)
        b = modp.trim(list(u))
        t0, t1 = [], [1]
        while b:
            q, r = modp.pdivmod(a, b, p)
            a, b = b, r
            t0, t1 = t1, modp.psub(t0, modp.pmul(q, t1, p), p)
        # a is now a nonzero constant gcd
        inv = pow(a[0], p - 2, p)
        out = [c * inv % p for c in t0]
        out += [0] * (self.ext_degree - len(out))
        return tuple(out[: self.ext_degree])

    @property
    def zero(self):
        return ExtElement(self, self._embed_int(0))

    @property
    def one(self):
        return ExtElement(self, self._embed_int(1))

    def elem(self, x):
        if isinstance(x, ExtElement):
            if x.field != self:
                raise FieldMismatchError("element of a different field")
            return x
        if isinstance(x, int):
            return ExtElement(self, self._embed_int(x))
        if isinstance(x, FpElement):
            if x.field.char != self.char:
                raise FieldMismatchError("characteristic mismatch")
            return ExtElement(self, self._embed_int(x.v))
        if isinstance(x, (list, tuple)):
            p = self.char
            vec = [int(c) % p for c in x]
            if len(vec) > self.ext_degree:
                raise PreconditionError("coefficient vector too long")
            vec += [0] * (self.ext_degree - len(vec))
            return ExtElement(self, tuple(vec))
        if isinstance(x, str):
            num, _, den = x.partition("/")
            e = self.elem(int(num))
            if den:
                e = e / self.elem(int(den))
            return e
        if isinstance(x, Fraction):
            if x.denominator % self.char == 0:
                raise CharacteristicError(f"denominator of {x} vanishes mod {self.char}")
            return self.elem(x.numerator) / self.elem(x.denominator)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def from_rational(self, x):
        return self.elem(Fraction(x))

    def random_element(self, rng):
        return ExtElement(self, tuple(rng.randrange(self.char) for _ in range(self.ext_degree)))

    def frobenius(self, a, s=1):
        """a^(p^s)."""
        return self.elem(a) ** (self.char ** s)

    def in_subfield(self, a, s):
        """Whether a lies in F_{p^s} (s must divide the extension degree)."""
        if self.ext_degree % s:
            raise PreconditionError("s does not divide the extension degree")
        return self.frobenius(a, s) == self.elem(a)

    def is_square(self, a):
        a = self.elem(a)
        if not a or self.char == 2:
            return True
        return a ** ((self.order - 1) // 2) == self.one

    def nth_root(self, a, n, rng=None):
        return _finite_nth_root(self, self.elem(a), n, rng)

    def sqrt(self, a, rng=None):
        return self.nth_root(a, 2, rng)


def element_key(x):
    """A sortable, hashable canonical key for a field element."""
    if isinstance(x, Fraction):
        return (x.numerator, x.denominator)
    if isinstance(x, FpElement):
        return (x.v,)
    if isinstance(x, ExtElement):
        return tuple(x.vec)
    raise TypeError(f"not a field element: {x!r}")


def GF(p, r=1, modulus=None, seed=0):
    """Finite-field constructor.  For r > 1 a modulus is found if not given."""
    if r == 1:
        return PrimeField(p)
    if modulus is None:
        modulus = find_irreducible(p, r, seed=seed)
    return ExtensionField(p, modulus)


def field_from_json(desc):
    """Parse {"char": p, "deg": r, "modulus": [...]}; char 0 means Q."""
    char = desc.get("char", 0)
    if char == 0:
        return QQ
    deg = desc.get("deg", 1)
    if deg == 1:
        return PrimeField(char)
    return ExtensionField(char, desc["modulus"])


def field_to_json(field):
    if field.char == 0:
        return {"char": 0, "deg": 1}
    if field.ext_degree == 1:
        return {"char": field.char, "deg": 1}
    return {"char": field.char, "deg": field.ext_degree, "modulus": list(field.modulus)}


def _irreducible_mod_p(mod, p):
    """Rabin irreducibility test for a monic polynomial over F_p."""
    r = len(mod) - 1
    if r == 1:
        return True
    x = [0, 1]
    xq = modp.ppowmod(x, p ** r, mod, p)
    if modp.psub(xq, x, p):
        return False
    for ell in numutil.factorint(r):
        h = modp.ppowmod(x, p ** (r // ell), mod, p)
        if len(modp.pgcd(modp.psub(h, x, p), mod, p)) != 1:
            return False
    return True


def find_irreducible(p, r, seed=0):
    """A monic irreducible polynomial of degree r over F_p (deterministic
    given the seed; tries x^r + x + c style sparse candidates first)."""
    if r == 1:
        return [0, 1]
    for c in range(p):
        for b in (0, 1, 2):
            cand = [c % p] + [0] * (r - 1) + [1]
            if b:
                cand[1] = b % p
            if modp.trim(cand[:]) == cand and _irreducible_mod_p(cand, p):
                return cand
    rng = random.Random(seed)
    while True:
        cand = [rng.randrange(p) for _ in range(r)] + [1]
        if _irreducible_mod_p(cand, p):
            return cand


def _finite_nth_root(field, a, n, rng=None):
    """Solve x^n = a in a finite field, or return None.

    Reduces to d-th roots for d | q-1, then extracts each prime-power part
    of d with one discrete log in the corresponding Sylow subgroup (the
    Tonelli-Shanks generalization to arbitrary n).
    """
    if n < 1:
        raise PreconditionError("n must be >= 1")
    if rng is None:
        rng = random.Random(0x5EED)
    if not a:
        return field.zero
    q = field.order
    one = field.one
    e = n % (q - 1)
    if e == 0:
        return one if a == one else None
    d = math.gcd(e, q - 1)
    if a ** ((q - 1) // d) != one:
        return None
    # peel the part of e prime to (q-1)/d; x^e = a reduces to x^d = y
    e1 = e // d
    m = (q - 1) // d
    y = a ** pow(e1, -1, m) if m > 1 else a
    x = y
    for ell, k in numutil.factorint(d).items():
        x = _prime_power_root(field, x, ell, k, rng)
        if x is None:
            return None
    return x


def _prime_power_root(field, y, ell, k, rng):
    """An ell^k-th root of y, for ell prime with ell^k | q-1; None if absent."""
    q = field.order
    one = field.one
    if y == one:
        return one
    t = q - 1
    s = 0
    while t % ell == 0:
        t //= ell
        s += 1
    lk = ell ** k
    # split y = y_a * y_b with y_a in the ell-Sylow and y_b of order | t
    if t > 1:
        u = pow(ell ** s, -1, t)
        y_b = y ** (ell ** s * u % (q - 1))
        y_a = y * y_b ** (q - 2)
        root_b = y_b ** pow(lk, -1, t)
    else:
        y_b, y_a, root_b = one, y, one
    if y_a == one:
        return root_b
    # generator of the ell-Sylow subgroup
    while True:
        z = field.random_element(rng)
        if not z:
            continue
        z = z ** t
        if z != one and z ** (ell ** (s - 1)) != one:
            break
    alpha = numutil.discrete_log(z, y_a, ell ** s, lambda u_, v_: u_ * v_, one)
    if alpha is None or alpha % lk:
        return None
    return root_b * z ** (alpha // lk)


def build_extension(base, g, seed=0):
    """Adjoin a root of g (irreducible over `base`) to a finite field.

    Returns (ext, embed, root): the compositum realized as one extension of
    F_p with an explicit modulus, a map embedding base elements, and the
    image of a root of g.  Number fields are out of scope.
    """
    from .poly import Poly

    if base.char == 0:
        raise CapabilityError("root adjunction over Q is not supported")
    if not isinstance(g, Poly):
        raise PreconditionError("g must be a Poly over the base field")
    if g.field != base:
        raise FieldMismatchError("g is not defined over the base field")
    s = g.degree
    if s < 1:
        raise PreconditionError("g must be nonconstant")
    if not g.is_irreducible():
        raise PreconditionError("g is reducible over the base field")
    p = base.char
    r = base.ext_degree * s
    if s == 1:
        # the root already lives in the base field
        root = -g.coeffs[0] / g.coeffs[1]
        return base, (lambda a: a), root
    ext = GF(p, r, seed=seed)
    if base.ext_degree == 1:
        embed = lambda a: ext.elem(base.elem(a).v)
    else:
        # embed by sending the base generator to a root of the base modulus
        base_mod = Poly(ext, [ext.elem(c) for c in base.modulus])
        roots = sorted(base_mod.roots(), key=lambda e: e.vec)
        gen_img = roots[0]
        pows = [ext.one]
        for _ in range(base.ext_degree - 1):
            pows.append(pows[-1] * gen_img)

        def embed(a, _pows=pows):
            a = base.elem(a)
            acc = ext.zero
            for c, pw in zip(a.vec, _pows):
                if c:
                    acc = acc + pw * c
            return acc

    g_up = Poly(ext, [embed(c) for c in g.coeffs])
    roots = sorted(g_up.roots(), key=lambda e: e.vec)
    if not roots:
        raise PreconditionError("internal: adjoined polynomial has no root upstairs")
    return ext, embed, roots[0]
