"""Explicit descent of hyperelliptic models over finite fields.

Two routes are implemented.  The cocycle route builds a family
M_sigma in Isom(f, f^sigma) satisfying the Weil relation
M_(tau sigma) = M_tau^sigma M_sigma for the cyclic Galois group of
F_(p^r) / F_(p^s), fixing the scalar obstruction with a norm equation,
and then averages a random matrix against the cocycle (Hilbert 90) to get
a descent matrix A; the normalized act(A, f) has subfield coefficients by
construction and is machine-checked.  The covariant route conjugates a
separable quartic covariant c of f into its split model and applies the
same matrix to f itself; when Aut(c) = Aut(f) the result is a model over
the field of moduli.
"""

import random

from .covariants import (
    eval_recipe,
    quartic_from_ij,
    quartic_ij,
    quartic_iso_over_root_field,
)
from .errors import CapabilityError, PreconditionError
from .fields import GF, element_key
from .forms import BinaryForm, Moebius, act, is_proportional
from .hyperelliptic import HyperellipticCurve, _embedding
from .isom_direct import is_gl2_equiv_fast
from .isom_covariant import stratum_covariants
from . import numutil


class Cocycle:
    """Weil cocycle for Gal(F_(p^r) / F_(p^s)), maps indexed by Frobenius
    powers; the cyclic closure M^(sigma^(m-1)) ... M^sigma M = id holds
    exactly (GL2 level), which is verified at construction."""

    def __init__(self, top, sub_degree, maps):
        self.top = top
        self.sub_degree = sub_degree
        self.maps = maps  # maps[j] = M_(sigma^j), maps[0] = identity
        m = len(maps)
        if maps[0].key() != Moebius.identity(top).key():
            raise PreconditionError("cocycle must start at the identity")
        closure = _twisted_power(maps[1], m, sub_degree, top)
        if not _is_identity_exact(closure, top):
            raise PreconditionError("cocycle closure is not the identity")

    @property
    def order(self):
        return len(self.maps)


def _frob_matrix(m, s, field):
    return Moebius(
        field,
        field.frobenius(m.a, s),
        field.frobenius(m.b, s),
        field.frobenius(m.c, s),
        field.frobenius(m.d, s),
    )


def _frob_form(f, s):
    field = f.field
    return BinaryForm(field, f.degree, [field.frobenius(c, s) for c in f.coeffs])


def _twisted_power(m, count, s, field):
    """M^(sigma^(count-1)) * ... * M^sigma * M for sigma = Frob_(p^s)."""
    total = m
    cur = m
    for _ in range(count - 1):
        cur = _frob_matrix(cur, s, field)
        total = cur * total
    return total


def _is_identity_exact(m, field):
    return (
        m.a == field.one and m.d == field.one and not m.b and not m.c
    )


def _norm_solve(field, sub_degree, target, seed=0):
    """lambda in the field with prod of Frobenius conjugates = target."""
    q_top = field.order
    q_sub = field.char ** sub_degree
    cof = (q_top - 1) // (q_sub - 1)
    rng = random.Random(seed)
    # find a generator of the top multiplicative group
    fac = numutil.factorint(q_top - 1)
    while True:
        g = field.random_element(rng)
        if not g:
            continue
        if all(g ** ((q_top - 1) // ell) != field.one for ell in fac):
            break
    base = g ** cof  # generates the subfield multiplicative group
    e = numutil.discrete_log(base, target, q_sub - 1, lambda a, b: a * b, field.one)
    if e is None:
        raise PreconditionError("norm target outside the subfield group")
    return g ** e


def build_cocycle(f, target_subfield_s, seed=0):
    """A Weil cocycle for descending f from F_(p^r) to F_(p^s), or None.

    Searches Isom(f, f^sigma) over the base field and, if no choice closes
    to a scalar there, over the one quadratic enlargement; the closing
    scalar is then removed with a norm equation.  Returns None only when
    the enlargement also fails (not observed for descendable data).
    """
    field = f.field
    if not field.is_finite:
        raise CapabilityError("cocycles are implemented over finite fields")
    r = field.ext_degree
    s = target_subfield_s
    if r % s:
        raise PreconditionError("target subfield degree must divide the extension degree")
    if r == s:
        return Cocycle(field, s, [Moebius.identity(field)])
    coc = _build_cocycle_at(f, field, s, seed)
    if coc is not None:
        return coc
    # one quadratic enlargement, mirroring the lambda-in-L story
    ext = GF(field.char, 2 * r, seed=seed)
    embed = _embedding(field, ext)
    f_up = BinaryForm(ext, f.degree, [embed(c) for c in f.coeffs])
    return _build_cocycle_at(f_up, ext, s, seed)


def _build_cocycle_at(f, field, s, seed):
    m = field.ext_degree // s
    f_sigma = _frob_form(f, s)
    isoms = is_gl2_equiv_fast(f, f_sigma, seed=seed)
    if not isoms:
        raise PreconditionError(
            "Isom(f, f^sigma) is empty: the invariants do not descend"
        )
    for m0 in isoms.matrices:
        closure = _twisted_power(m0, m, s, field)
        if closure.b or closure.c or closure.a != closure.d:
            continue  # not a scalar matrix; try the next coset element
        c_scalar = closure.a
        # remove the scalar with a norm equation: N(lambda) = 1 / c
        lam = _norm_solve(field, s, field.one / c_scalar, seed=seed)
        m_sigma = m0.scale(lam)
        maps = [Moebius.identity(field)]
        cur = m_sigma
        for _ in range(m - 1):
            maps.append(cur)
            cur = _frob_matrix(cur, s, field) * m_sigma
        if not _is_identity_exact(cur, field):
            continue
        return Cocycle(field, s, maps)
    return None


def hilbert90_descend(f, cocycle, seed=0):
    """(A, f_model, twist) from averaging against the cocycle.

    A = sum over tau of P^tau M_tau for random P until A is invertible;
    then act(A, f), normalized to leading coefficient 1, has coefficients
    in F_(p^s) (hard-checked), and f_model is that form expressed over the
    subfield, rescaled by a subfield representative of the leading
    scalar's square class when one exists.  twist reports whether the
    curve-level identification needs the quadratic extension.
    """
    field = cocycle.top
    s = cocycle.sub_degree
    if f.field != field:
        embed = _embedding(f.field, field)
        f = BinaryForm(field, f.degree, [embed(c) for c in f.coeffs])
    rng = random.Random(seed)
    a_mat = None
    for _ in range(64):
        p_mat = Moebius.random(field, rng)
        acc = [field.zero] * 4
        for j, m_j in enumerate(cocycle.maps):
            pj = _frob_matrix(p_mat, s * j, field) if j else p_mat
            term = pj * m_j
            acc = [x + y for x, y in zip(acc, term.entries())]
        if acc[0] * acc[3] - acc[1] * acc[2]:
            a_mat = Moebius(field, *acc)
            break
    if a_mat is None:
        raise PreconditionError("no invertible Hilbert-90 average found")
    if cocycle.order > 1:
        lhs = _frob_matrix(a_mat, s, field).inverse() * a_mat
        if lhs.key() != cocycle.maps[1].key():
            raise PreconditionError("internal: averaged matrix fails the cocycle check")
    h = act(a_mat, f)
    lead = h.coeffs[h.x_degree()]
    h_norm = h.scaled(field.one / lead)
    for c in h_norm.coeffs:
        if field.frobenius(c, s) != c:
            raise PreconditionError("internal: descended coefficients escape the subfield")
    sub, f_model, twist = _push_down(h_norm, field, s, lead)
    # equivalence over the top field is witnessed by a_mat itself
    if is_proportional(h, _lift(f_model, sub, field)) is None:
        raise PreconditionError("internal: model not proportional to act(A, f)")
    return a_mat, f_model, twist


def _push_down(h_norm, field, s, lead):
    """Express a Frobenius-stable form over F_(p^s); normalize the twist."""
    p = field.char
    sub = GF(p, s) if s > 1 else GF(p)
    down = _push_down_map(sub, field)
    coeffs = [down(c) for c in h_norm.coeffs]
    f_model = BinaryForm(sub, h_norm.degree, coeffs)
    twist = False
    if not field.is_square(lead):
        v = _sub_nonsquare(sub)
        if field.is_square(lead * _lift_elem(v, sub, field)):
            f_model = f_model.scaled(sub.one / v)
            # now act(A, f) = (lead * v) * lift(f_model) with square scalar
        else:
            twist = True
    return sub, f_model, twist


def _sub_nonsquare(sub):
    rng = random.Random(1)
    while True:
        v = sub.random_element(rng)
        if v and not sub.is_square(v):
            return v


def _lift_elem(v, sub, field):
    if sub.ext_degree == 1:
        return field.elem(v.v)
    return _embedding(sub, field)(v)


def _lift(form, sub, field):
    if sub == field:
        return form
    if sub.ext_degree == 1:
        return BinaryForm(field, form.degree, [field.elem(c.v) for c in form.coeffs])
    embed = _embedding(sub, field)
    return BinaryForm(field, form.degree, [embed(c) for c in form.coeffs])


def _push_down_map(sub, field):
    """Inverse of the canonical embedding on the sigma-stable subfield."""
    if sub == field:
        return lambda c: c
    if sub.ext_degree == 1:
        def down_prime(c):
            vec = c.vec
            if any(vec[1:]):
                raise PreconditionError("element not in the prime field")
            return sub.elem(vec[0])

        return down_prime
    embed = _embedding(sub, field)
    # solve the F_p-linear system embed(x) = c
    p = field.char
    r = field.ext_degree
    s = sub.ext_degree
    cols = []
    basis = []
    for i in range(s):
        vec = [0] * s
        vec[i] = 1
        e = embed(sub.elem(vec))
        cols.append(list(e.vec))
    # Gaussian elimination setup: r x s system over F_p
    def down(c):
        # solve cols * x = c.vec
        aug = [[cols[j][i] for j in range(s)] + [c.vec[i]] for i in range(r)]
        x = _solve_mod_p(aug, s, p)
        if x is None:
            raise PreconditionError("element not in the subfield image")
        return sub.elem(x)

    return down


def _solve_mod_p(aug, ncols, p):
    rows = len(aug)
    piv_rows = []
    col = 0
    r_i = 0
    where = [-1] * ncols
    for col in range(ncols):
        piv = None
        for rr in range(r_i, rows):
            if aug[rr][col] % p:
                piv = rr
                break
        if piv is None:
            continue
        aug[r_i], aug[piv] = aug[piv], aug[r_i]
        inv = pow(aug[r_i][col], p - 2, p)
        aug[r_i] = [v * inv % p for v in aug[r_i]]
        for rr in range(rows):
            if rr != r_i and aug[rr][col] % p:
                fac = aug[rr][col]
                aug[rr] = [(a - fac * b) % p for a, b in zip(aug[rr], aug[r_i])]
        where[col] = r_i
        r_i += 1
    x = [0] * ncols
    for col in range(ncols):
        if where[col] >= 0:
            x[col] = aug[where[col]][ncols] % p
    # consistency check
    for rr in range(rows):
        acc = sum(aug[rr][c] * x[c] for c in range(ncols)) % p
        if acc != aug[rr][ncols] % p:
            return None
    return x


def covariant_descend(x, stratum=None, seed=0, recipes=None):
    """Descend a hyperelliptic model through a separable quartic covariant.

    Picks the first covariant c in the stratum list (or the supplied
    recipes) with nonzero discriminant and nonzero I, J; conjugates c into
    its split model over a root field of c; applies the same matrix to the
    branch form and normalizes.  Returns (f_model, ext_degree, transcript)
    or None when every candidate covariant is singular (the excluded
    strata).  When Aut(c) = Aut(f) at the checked level, the model's
    coefficients generate the field of moduli.
    """
    f = x.form
    field = f.field
    if recipes is None:
        if stratum is not None:
            recipes, note = stratum_covariants(x.genus, stratum)
        elif x.genus in (2, 3):
            recipes, note = stratum_covariants(x.genus, "generic")
        else:
            recipes, note = [("tv", f.degree - 2, "f", "f")], None
    transcript = {"tried": []}
    for recipe in recipes:
        c = eval_recipe(recipe, f)
        if c.is_zero() or c.degree != 4:
            transcript["tried"].append({"recipe": recipe, "status": "not quartic"})
            continue
        i_val, j_val = quartic_ij(c)
        disc = 4 * i_val ** 3 - j_val ** 2
        if not disc or not i_val or not j_val:
            transcript["tried"].append({"recipe": recipe, "status": "singular or I J zero"})
            continue
        ext, embed, m_c, target = quartic_iso_over_root_field(c, seed=seed)
        f_up = BinaryForm(ext, f.degree, [embed(co) for co in f.coeffs])
        h = act(m_c, f_up)
        lead_idx = h.x_degree()
        h_norm = h.scaled(ext.one / h.coeffs[lead_idx])
        transcript["tried"].append({"recipe": recipe, "status": "ok"})
        transcript["covariant"] = recipe
        transcript["I"] = i_val
        transcript["J"] = j_val
        transcript["split_model"] = target
        transcript["root_field_degree"] = ext.ext_degree // field.ext_degree
        transcript["matrix"] = m_c
        # find the smallest subfield holding the model and push down
        if ext.is_finite:
            r = ext.ext_degree
            sub_deg = r
            for s in sorted(d for d in range(1, r + 1) if r % d == 0):
                if all(ext.frobenius(co, s) == co for co in h_norm.coeffs):
                    sub_deg = s
                    break
            if sub_deg < r:
                model_field = GF(ext.char, sub_deg)
                down = _push_down_map(model_field, ext)
                model = BinaryForm(
                    model_field, h_norm.degree, [down(co) for co in h_norm.coeffs]
                )
            else:
                model = h_norm
            transcript["model_field_degree"] = sub_deg
            return model, transcript["root_field_degree"], transcript
        return h_norm, transcript["root_field_degree"], transcript
    return None


def genus5_family_descend(q4, q5, q6, p, seed=0):
    """Descend the three-parameter genus-5 family member to F_p.

    Needs p = +-1 mod 9 (so that t^3 - 3t + 1 splits), distinct admissible
    parameters, and the expected covariant gates; returns (f_model,
    transcript)."""
    from fractions import Fraction

    if p % 9 not in (1, 8):
        raise PreconditionError("t^3 - 3t + 1 does not split mod this prime")
    field = GF(p)
    from .poly import Poly, roots_in_field

    cubic = Poly(field, [1, -3, 0, 1])
    roots = sorted(roots_in_field(cubic, seed=seed), key=element_key)
    if len(roots) != 3:
        raise PreconditionError("cubic did not split (unexpected)")
    r1, r2, r3 = roots
    qs = [field.elem(Fraction(q)) for q in (q4, q5, q6)]
    if len({element_key(q) for q in qs}) != 3:
        raise PreconditionError("parameters must be distinct")
    if not (r3 - r2) or any(not (q - r1) for q in qs):
        raise PreconditionError("degenerate parameters modulo p")
    # y^2 = prod (x^4 - 2 lam_i x^2 + 1), lam_i from the cross ratios
    total = BinaryForm(field, 0, [field.one])
    from .covariants import _form_mul

    for q in qs:
        lam = field.one - 2 * ((r3 - r1) / (r3 - r2)) * ((q - r2) / (q - r1))
        quart = BinaryForm(field, 4, [field.one, field.zero, -2 * lam, field.zero, field.one])
        total = _form_mul(total, quart)
    x = HyperellipticCurve(total)
    c = eval_recipe(("tv", 10, "f", "f"), total)
    i_val, j_val = quartic_ij(c)
    if not (4 * i_val ** 3 - j_val ** 2) or not i_val or not j_val:
        raise PreconditionError("family covariant gate failed")
    out = covariant_descend(x, recipes=[("tv", 10, "f", "f")], seed=seed)
    if out is None:
        raise PreconditionError("covariant descent failed for the family member")
    model, ext_deg, transcript = out
    return model, transcript
