"""Transvectants and covariants of binary forms.

A covariant of order r and degree d sends degree-n forms to degree-r forms
with C(M.f) = det(M)^(-w) M.C(f), w = (nd - r)/2.  Transvectants are
computed with the univariate counterpart of the classical differential
formula, with all scalar factors evaluated exactly in Q and mapped into
the base field afterwards; a vanishing denominator mod p raises
CharacteristicError instead of silently wrong output.

Recipes are immutable expression trees encoded as nested tuples:
    "f"                      the form itself
    ("mul", r1, r2, ...)     product of covariants
    ("tv", h, r1, r2)        h-th transvectant
"""

import math
import random
from fractions import Fraction

from .errors import CharacteristicError, PreconditionError
from .fields import element_key
from .forms import BinaryForm, Moebius, act
from .poly import Poly

# ---------------------------------------------------------------------------
# transvectants


def _deriv_vec(cs, field):
    return [field.elem(i) * cs[i] for i in range(1, len(cs))]


def transvectant(c1, c2, h):
    """(c1, c2)_h by the univariate counterpart formula, exactly.

    Operands are taken at their declared orders r1, r2 (padded coefficient
    vectors); the result has declared order r1 + r2 - 2h.
    """
    if c1.field != c2.field:
        raise PreconditionError("transvectant operands over different fields")
    field = c1.field
    r1, r2 = c1.degree, c2.degree
    if h < 0 or h > min(r1, r2):
        raise PreconditionError(f"level {h} exceeds min order ({r1}, {r2})")
    p = field.char
    scale = Fraction(
        math.factorial(h) * math.factorial(r1 - h) * math.factorial(r2 - h),
        math.factorial(r1) * math.factorial(r2),
    )
    try:
        scale_el = field.elem(scale)
    except CharacteristicError:
        raise CharacteristicError(
            f"transvectant scale {scale} undefined in characteristic {p}"
        )
    r = r1 + r2 - 2 * h
    acc = [field.zero] * (r1 + r2 - h + 1)
    cur = list(c1.coeffs)
    stack1 = [cur]  # stack1[k] = d^k c1 / dx^k
    for _ in range(h):
        cur = _deriv_vec(cur, field)
        stack1.append(cur)
    der2 = list(c2.coeffs)
    # binomial weights C(r2-i, h-i) * C(r1-h+i, i) pair the (h-i)-th
    # derivative of c1 with the i-th derivative of c2; this is the exact
    # dehomogenization of the classical bivariate differential formula
    for i in range(h + 1):
        b1 = math.comb(r2 - i, h - i)
        b2 = math.comb(r1 - h + i, i)
        coef = field.elem(b1 * b2 if i % 2 == 0 else -b1 * b2)
        if coef:
            u = stack1[h - i]
            v = der2
            for a_idx, a_val in enumerate(u):
                if a_val:
                    w = a_val * coef
                    for b_idx, b_val in enumerate(v):
                        if b_val:
                            acc[a_idx + b_idx] = acc[a_idx + b_idx] + w * b_val
        if i < h:
            der2 = _deriv_vec(der2, field)
    for j in range(r + 1, len(acc)):
        if acc[j]:
            raise PreconditionError("internal: transvectant degree bound violated")
    return BinaryForm(field, r, [c * scale_el for c in acc[: r + 1]])


def transvectant_bivariate(c1, c2, h):
    """Reference implementation with the bivariate differential formula;
    used to cross-check the univariate counterpart in tests."""
    field = c1.field
    r1, r2 = c1.degree, c2.degree
    if h < 0 or h > min(r1, r2):
        raise PreconditionError("level too large")
    scale = Fraction(
        math.factorial(r1 - h) * math.factorial(r2 - h),
        math.factorial(r1) * math.factorial(r2),
    )
    scale_el = field.elem(scale)
    total = None
    for i in range(h + 1):
        u = c1
        for _ in range(h - i):
            u = u.partial_x()
        for _ in range(i):
            u = u.partial_z()
        v = c2
        for _ in range(i):
            v = v.partial_x()
        for _ in range(h - i):
            v = v.partial_z()
        term = _form_mul(u, v).scaled(field.elem(math.comb(h, i) * (-1) ** i))
        total = term if total is None else total + term
    return total.scaled(scale_el)


def _form_mul(f, g):
    field = f.field
    out = [field.zero] * (f.degree + g.degree + 1)
    for i, a in enumerate(f.coeffs):
        if a:
            for j, b in enumerate(g.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
    return BinaryForm(field, f.degree + g.degree, out)


def c24_fast(f):
    """The scaled quartic covariant (n!)^2/(n-2)! * (f, f)_(n-2).

    Closed-form coefficient sums, O(n) products; needs even n >= 6 and
    characteristic 0 or p > n.
    """
    n = f.degree
    field = f.field
    if n % 2 or n < 6:
        raise PreconditionError("closed-form quartic covariant needs even degree >= 6")
    p = field.char
    if p and p <= n:
        raise CharacteristicError("characteristic must exceed the degree")
    if field.kind == "prime":
        return _c24_fast_fp(f)
    a = f.coeffs
    fact = [math.factorial(i) for i in range(n + 3)]
    c0 = c1 = c2 = c3 = c4 = field.zero
    for k in range(n - 1):
        w = fact[n - k] * fact[k + 2]
        if k % 2:
            w = -w
        wf = field.elem(w)
        c0 = c0 + wf * (a[n - 2 - k] * a[k])
        c1 = c1 + wf * (a[n - 1 - k] * a[k] * (n - 1 - k) + a[n - 2 - k] * a[k + 1] * (k + 1))
        c2 = c2 + wf * (
            a[k + 2] * a[n - 2 - k] * ((k + 2) * (k + 1))
            + a[k + 1] * a[n - 1 - k] * (2 * (n - 1 - k) * (k + 1))
            + a[k] * a[n - k] * ((n - k) * (n - 1 - k))
        )
        c3 = c3 + wf * (a[n - k] * a[k + 1] * (n - 1 - k) + a[n - 1 - k] * a[k + 2] * (k + 1))
        c4 = c4 + wf * (a[n - k] * a[k + 2])
    c2 = c2 / field.elem(2)
    return BinaryForm(field, 4, [c0, c1, c2, c3, c4])


def _c24_fast_fp(f):
    n = f.degree
    field = f.field
    p = field.char
    a = [c.v for c in f.coeffs]
    fact = [1] * (n + 3)
    for i in range(1, n + 3):
        fact[i] = fact[i - 1] * i % p
    c = [0, 0, 0, 0, 0]
    for k in range(n - 1):
        w = fact[n - k] * fact[k + 2] % p
        if k % 2:
            w = p - w
        c[0] = (c[0] + w * (a[n - 2 - k] * a[k])) % p
        c[1] = (c[1] + w * (a[n - 1 - k] * a[k] * (n - 1 - k) + a[n - 2 - k] * a[k + 1] * (k + 1))) % p
        c[2] = (
            c[2]
            + w
            * (
                a[k + 2] * a[n - 2 - k] * ((k + 2) * (k + 1))
                + a[k + 1] * a[n - 1 - k] * (2 * (n - 1 - k) * (k + 1))
                + a[k] * a[n - k] * ((n - k) * (n - 1 - k))
            )
        ) % p
        c[3] = (c[3] + w * (a[n - k] * a[k + 1] * (n - 1 - k) + a[n - 1 - k] * a[k + 2] * (k + 1))) % p
        c[4] = (c[4] + w * (a[n - k] * a[k + 2])) % p
    c[2] = c[2] * pow(2, p - 2, p) % p
    from .fields import FpElement

    return BinaryForm(field, 4, [FpElement(field, v) for v in c])


C24_SCALE = lambda n: Fraction(math.factorial(n) ** 2, math.factorial(n - 2))


# ---------------------------------------------------------------------------
# binary quartics: invariants, reconstruction, automorphisms


def quartic_ij(q):
    """The degree-2 and degree-3 invariants of a binary quartic."""
    if q.degree != 4:
        raise PreconditionError("quartic expected")
    if q.field.char in (2, 3):
        raise CharacteristicError("quartic invariants need characteristic != 2, 3")
    a0, a1, a2, a3, a4 = q.coeffs
    i_val = 12 * (a4 * a0) - 3 * (a3 * a1) + a2 * a2
    j_val = (
        72 * (a4 * a2 * a0)
        + 9 * (a3 * a2 * a1)
        - 27 * (a4 * (a1 * a1))
        - 27 * (a0 * (a3 * a3))
        - 2 * (a2 * a2 * a2)
    )
    return i_val, j_val


def quartic_disc(q):
    i_val, j_val = quartic_ij(q)
    return 4 * (i_val ** 3) - j_val ** 2


def quartic_from_ij(field, i_val, j_val):
    """A split quartic with the given invariants up to scaling."""
    i_val = field.elem(i_val)
    j_val = field.elem(j_val)
    if not (4 * i_val ** 3 - j_val ** 2):
        raise PreconditionError("singular invariants: 4I^3 = J^2")
    if not j_val:
        return BinaryForm(field, 4, [field.zero, field.one, field.zero, field.one, field.zero])
    c = field.elem(-27) * i_val ** 3 / (j_val * j_val)
    return BinaryForm(field, 4, [c, c, field.zero, field.one, field.zero])


def quartic_aut_group(q):
    """Geometric automorphism class of a separable quartic: A4, D8 or D4."""
    i_val, j_val = quartic_ij(q)
    if not (4 * i_val ** 3 - j_val ** 2):
        raise PreconditionError("singular quartic")
    if not i_val:
        return "A4"
    if not j_val:
        return "D8"
    return "D4"


def quartic_aut_order(tag):
    return {"A4": 12, "D8": 8, "D4": 4}[tag]


def quartic_iso_over_root_field(q, seed=0):
    """A matrix conjugating q into its split model over a root field of q.

    Returns (ext, embed, M, target): target = quartic_from_ij(I, J) over the
    base field, ext a field where q has a root (the base itself when
    possible), embed the base-to-ext map, and M over ext with
    act(M, q) ~ target.  Needs distinct roots and I, J both nonzero.
    """
    from .fields import build_extension
    from .forms import is_proportional

    field = q.field
    i_val, j_val = quartic_ij(q)
    if not (4 * i_val ** 3 - j_val ** 2):
        raise PreconditionError("quartic has repeated roots")
    if not i_val or not j_val:
        raise PreconditionError("I and J must both be nonzero")
    target = quartic_from_ij(field, i_val, j_val)

    ext, embed = field, (lambda a: a)
    root = None  # None encodes the root at infinity
    if q.coeffs[4]:
        aff = sorted(q.poly_x().roots(seed=seed), key=element_key)
        if aff:
            root = aff[0]
        else:
            if field.char == 0:
                from .errors import CapabilityError

                raise CapabilityError("rational quartic without rational root: out of scope")
            from .poly import factor

            pieces = factor(q.poly_x(), seed=seed)
            g = min((h for h, _ in pieces), key=lambda h: h.degree)
            ext, embed, root = build_extension(field, g, seed=seed)
    q_up = BinaryForm(ext, 4, [embed(c) for c in q.coeffs])
    # move the root to infinity, then kill the x^2 z^2 term, then rescale x
    if root is None:
        n1 = Moebius.identity(ext)
    else:
        n1 = Moebius(ext, root, ext.one, ext.one, ext.zero)
    q1 = _compose(q_up, n1)
    c3 = q1.coeffs[3]
    if not c3:
        raise PreconditionError("internal: repeated root surfaced while splitting")
    n2 = Moebius(ext, ext.one, -q1.coeffs[2] / (3 * c3), ext.zero, ext.one)
    q2 = _compose(q1, n2)
    a1 = q2.coeffs[1] / q2.coeffs[3]
    a0 = q2.coeffs[0] / q2.coeffs[3]
    b0 = embed(target.coeffs[0])
    b1 = embed(target.coeffs[1])
    lam = (a0 * b1) / (b0 * a1)
    n3 = Moebius(ext, lam, ext.zero, ext.zero, ext.one)
    m = (n1 * n2 * n3).inverse()
    target_up = BinaryForm(ext, 4, [embed(c) for c in target.coeffs])
    if is_proportional(act(m, q_up), target_up) is None:
        raise PreconditionError("internal: split-model conjugation failed verification")
    return ext, embed, m, target


def _compose(f, n):
    from .forms import substitute

    return substitute(f, n)


# ---------------------------------------------------------------------------
# canonical representative of a weighted invariant tuple


def canonical_representative(values, degrees):
    """Normalize a weighted-projective invariant tuple.

    With d = gcd of the degrees at nonzero positions, picks integers c_i
    (zero at zero positions) with sum c_i d_i = d, minimizing sum |c_i| and
    breaking ties by lexicographically largest c, then returns
    (values_i / I^(d_i/d)) for I = prod values_i^c_i.  The result is
    unchanged under values_i -> t^(d_i) values_i.
    """
    if len(values) != len(degrees):
        raise PreconditionError("values/degrees length mismatch")
    active = [i for i, v in enumerate(values) if v]
    if not active:
        raise PreconditionError("all invariants vanish")
    d = 0
    for i in active:
        d = math.gcd(d, degrees[i])
    c = _min_l1_combination([degrees[i] for i in active], d)
    i_elem = None
    for idx, ci in zip(active, c):
        if ci == 0:
            continue
        term = values[idx] ** ci
        i_elem = term if i_elem is None else i_elem * term
    out = []
    for v, deg in zip(values, degrees):
        if not v:
            out.append(v)
        else:
            out.append(v / i_elem ** (deg // d))
    return out


def _min_l1_combination(degs, d):
    """Integer vector c with sum c_i degs_i = d, minimal sum |c_i|,
    lexicographically largest among the minima."""
    m = len(degs)
    suffix_max = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        suffix_max[i] = max(degs[i], suffix_max[i + 1])
    for budget in range(1, 64):
        best = None

        def rec(i, rem, total, prefix):
            nonlocal best
            if i == m:
                if total == d and (best is None or prefix > best):
                    best = list(prefix)
                return
            for ci in range(rem, -rem - 1, -1):
                t = total + ci * degs[i]
                r = rem - abs(ci)
                if abs(d - t) > r * suffix_max[i + 1]:
                    continue
                prefix.append(ci)
                rec(i + 1, r, t, prefix)
                prefix.pop()

        rec(0, budget, 0, [])
        if best is not None:
            return best
    raise PreconditionError("no small combination found for invariant weights")


# ---------------------------------------------------------------------------
# covariant recipes


def recipe_order(recipe, n):
    if recipe == "f":
        return n
    if recipe[0] == "mul":
        return sum(recipe_order(r, n) for r in recipe[1:])
    if recipe[0] == "tv":
        h = recipe[1]
        o = recipe_order(recipe[2], n) + recipe_order(recipe[3], n) - 2 * h
        if o < 0:
            raise PreconditionError("negative order in recipe")
        return o
    raise PreconditionError(f"bad recipe node {recipe!r}")


def recipe_degree(recipe):
    if recipe == "f":
        return 1
    if recipe[0] == "mul":
        return sum(recipe_degree(r) for r in recipe[1:])
    if recipe[0] == "tv":
        return recipe_degree(recipe[2]) + recipe_degree(recipe[3])
    raise PreconditionError(f"bad recipe node {recipe!r}")


def recipe_weight(recipe, n):
    return (n * recipe_degree(recipe) - recipe_order(recipe, n)) // 2


def eval_recipe(recipe, f, _memo=None):
    """Evaluate a recipe tree on a form; zero results are legitimate."""
    if _memo is None:
        _memo = {}
    key = recipe
    if key in _memo:
        return _memo[key]
    if recipe == "f":
        out = f
    elif recipe[0] == "mul":
        out = eval_recipe(recipe[1], f, _memo)
        for child in recipe[2:]:
            out = _form_mul(out, eval_recipe(child, f, _memo))
    elif recipe[0] == "tv":
        h = recipe[1]
        c1 = eval_recipe(recipe[2], f, _memo)
        c2 = eval_recipe(recipe[3], f, _memo)
        if recipe[2] == recipe[3] == "f" and h == f.degree - 2 and f.degree >= 6 and f.degree % 2 == 0:
            scale = C24_SCALE(f.degree)
            out = c24_fast(f).scaled(f.field.one / f.field.elem(scale))
        else:
            out = transvectant(c1, c2, h)
    else:
        raise PreconditionError(f"bad recipe node {recipe!r}")
    _memo[key] = out
    return out


def recipe_to_json(recipe):
    if recipe == "f":
        return "f"
    if recipe[0] == "mul":
        return {"op": "mul", "args": [recipe_to_json(r) for r in recipe[1:]]}
    if recipe[0] == "tv":
        return {"op": "tv", "h": recipe[1], "args": [recipe_to_json(recipe[2]), recipe_to_json(recipe[3])]}
    raise PreconditionError(f"bad recipe node {recipe!r}")


def recipe_from_json(obj):
    if obj == "f":
        return "f"
    if obj["op"] == "mul":
        return ("mul",) + tuple(recipe_from_json(a) for a in obj["args"])
    if obj["op"] == "tv":
        a, b = obj["args"]
        return ("tv", int(obj["h"]), recipe_from_json(a), recipe_from_json(b))
    raise PreconditionError(f"bad recipe json {obj!r}")


def random_covariant(n, order, degree, seed=0, max_tries=400):
    """A random recipe of the given order and degree for degree-n forms,
    built as iterated transvectants of products against the form itself.

    Raises when n*degree - order is odd (such a covariant is identically
    zero) or when no recipe shape fits within the retry budget.
    """
    if (n * degree - order) % 2:
        raise PreconditionError(
            f"no covariant of order {order} and degree {degree} for degree {n} (parity)"
        )
    if degree < 2 or order < 0:
        raise PreconditionError("need degree >= 2 and order >= 0")
    rng = random.Random(seed)
    for _ in range(max_tries):
        recipe = _random_recipe(n, order, degree, rng)
        if recipe is not None:
            return recipe
    raise PreconditionError(f"no recipe found for order {order}, degree {degree}, n {n}")


def _random_recipe(n, order, degree, rng, depth=0):
    if degree == 1:
        return "f" if order == n else None
    # split degree - 1 into product factor degrees
    remaining = degree - 1
    parts = []
    while remaining:
        part = rng.randint(1, remaining)
        parts.append(part)
        remaining -= part
    factors = []
    orders = []
    for part in parts:
        if part == 1:
            factors.append("f")
            orders.append(n)
            continue
        # pick an achievable order for this factor: o' = n*part - 2*w'
        w_max = n * part // 2
        w = rng.randint(0, w_max)
        o_sub = n * part - 2 * w
        sub = _random_recipe(n, o_sub, part, rng, depth + 1)
        if sub is None:
            return None
        factors.append(sub)
        orders.append(o_sub)
    o_total = sum(orders)
    h = (n + o_total - order) // 2
    if (n + o_total - order) % 2 or h < 0 or h > min(n, o_total):
        return None
    prod = factors[0] if len(factors) == 1 else ("mul",) + tuple(factors)
    if prod == "f" and h % 2 == 1:
        return None  # (f, f)_h with odd h vanishes identically
    return ("tv", h, prod, "f")


# the smallest useful covariants, named by their (degree, order)
def c_2_4(n):
    return ("tv", n - 2, "f", "f")


def c_3_4(n):
    return ("tv", n - 2, ("tv", n // 2, "f", "f"), "f")


# shipped invariant recipe chains (order-0 covariants) for sextics and octics
def invariant_recipes(n):
    """A list of (name, degree, recipe) for order-0 covariants of degree-n
    forms.  These chains separate orbits well in practice; they are not
    normalization-matched to any published tables."""
    if n == 6:
        i4 = ("tv", 4, "f", "f")          # order 4, degree 2
        ell = ("tv", 4, i4, "f")          # order 2, degree 3
        return [
            ("a2", 2, ("tv", 6, "f", "f")),
            ("b4", 4, ("tv", 4, i4, i4)),
            ("c6", 6, ("tv", 4, ("tv", 2, i4, i4), i4)),
            ("d6", 6, ("tv", 2, ell, ell)),
        ]
    if n == 8:
        g = ("tv", 4, "f", "f")           # order 8, degree 2
        k = ("tv", 4, g, g)               # order 8, degree 4
        m = ("tv", 4, k, g)               # order 8, degree 6
        m2 = ("tv", 4, m, g)              # order 8, degree 8
        return [
            ("j2", 2, ("tv", 8, "f", "f")),
            ("j3", 3, ("tv", 8, g, "f")),
            ("j4", 4, ("tv", 8, g, g)),
            ("j5", 5, ("tv", 8, k, "f")),
            ("j6", 6, ("tv", 8, k, g)),
            ("j7", 7, ("tv", 8, m, "f")),
            ("j8", 8, ("tv", 8, m, g)),
            ("j9", 9, ("tv", 8, m2, "f")),
            ("j10", 10, ("tv", 8, m2, g)),
        ]
    raise PreconditionError(f"no shipped invariant list for degree {n}")
