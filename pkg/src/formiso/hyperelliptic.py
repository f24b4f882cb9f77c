"""Hyperelliptic curves y^2 = f(x, z) in weight-(1, g+1, 1) coordinates.

A curve is carried by a separable binary form of even degree 2g + 2; odd
degree inputs are homogenized with a root at infinity.  Isomorphisms are
pairs (M, e) acting by (x, z, y) -> (ax+bz, cx+dz, ey), unique up to
(M, e) ~ (lam M, lam^(g+1) e); they are computed by lifting the form-level
matrices: each M with M.f1 = mu f2 lifts to the two maps (M, +sqrt(mu))
and (M, -sqrt(mu)) when mu is a square, and witnesses a quadratic twist
otherwise.
"""

from .errors import PreconditionError
from .fields import element_key
from .forms import BinaryForm, is_separable
from .isom_direct import is_gl2_equiv_fast


class HyperellipticCurve:
    """y^2 = f(x, z) for a separable form f of degree 2g + 2."""

    def __init__(self, form, genus=None):
        if form.degree % 2:
            form = homogenize_odd(form)
        g = form.degree // 2 - 1
        if genus is not None and genus != g:
            raise PreconditionError(f"degree {form.degree} form gives genus {g}, not {genus}")
        if g < 1:
            raise PreconditionError("genus must be at least 1")
        if form.field.char == 2:
            raise PreconditionError("characteristic 2 is out of scope")
        if not is_separable(form):
            raise PreconditionError("the branch form must be separable")
        self.form = form
        self.genus = g

    @property
    def field(self):
        return self.form.field

    def __repr__(self):
        return f"HyperellipticCurve(genus {self.genus}, y^2 = {self.form})"


def homogenize_odd(form):
    """Degree 2g+1 input -> degree 2g+2 form with a root at infinity."""
    f = form.field
    return BinaryForm(f, form.degree + 1, list(form.coeffs) + [f.zero])


class CurveIso:
    """(M, e): (x, z, y) -> (M(x, z), e y), taken up to the hyperelliptic
    weight equivalence (M, e) ~ (lam M, lam^(g+1) e)."""

    __slots__ = ("matrix", "e", "genus")

    def __init__(self, matrix, e, genus):
        self.matrix = matrix
        self.e = e
        self.genus = genus

    def key(self):
        # scale M so its first nonzero entry is 1; e rescales accordingly
        field = self.matrix.field
        for v in self.matrix.entries():
            if v:
                lam = field.one / v
                scaled = self.matrix.scale(lam)
                return (scaled.key(), element_key(self.e * lam ** (self.genus + 1)))
        raise PreconditionError("zero matrix")

    def __eq__(self, other):
        return isinstance(other, CurveIso) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"({self.matrix}, y -> ({self.e}) y)"


def curve_isoms(x1, x2, seed=0, allow_quadratic_twist_field=False):
    """Curve isomorphisms X1 -> X2 over the base field, plus a twist report.

    Returns (isos, twists): isos is the list of CurveIso with
    act(M, f1) = e^2 f2 exactly; twists records the form-level matrices
    whose scalar mu is a nonsquare (the isomorphism then exists over the
    quadratic extension; with the flag set it is realized there).
    """
    if x1.field != x2.field:
        raise PreconditionError("curves over different fields")
    if x1.genus != x2.genus:
        return [], []
    field = x1.field
    g = x1.genus
    res = is_gl2_equiv_fast(x1.form, x2.form, seed=seed)
    isos = []
    twists = []
    for m, mu in res.pairs():
        root = field.sqrt(mu) if field.is_finite else field.sqrt(mu)
        if root is not None:
            isos.append(CurveIso(m, root, g))
            isos.append(CurveIso(m, -root, g))
        else:
            entry = {"matrix": m, "mu": mu}
            if allow_quadratic_twist_field and field.is_finite:
                entry["extension"] = _lift_to_quadratic(field, m, mu, g)
            twists.append(entry)
    # dedup under the weight equivalence
    seen = {}
    for iso in isos:
        seen.setdefault(iso.key(), iso)
    isos = [seen[k] for k in sorted(seen)]
    return isos, twists


def _lift_to_quadratic(field, m, mu, genus):
    from .fields import GF
    from .forms import Moebius

    ext = GF(field.char, field.ext_degree * 2)
    if field.ext_degree == 1:
        embed = lambda a: ext.elem(a.v)
    else:
        from .fields import build_extension
        from .poly import Poly

        raise PreconditionError("quadratic twist lifting implemented over prime fields")
    m_up = Moebius(ext, *[embed(v) for v in m.entries()])
    root = ext.sqrt(embed(mu))
    return CurveIso(m_up, root, genus)


def curve_automorphisms(x, seed=0):
    isos, _ = curve_isoms(x, x, seed=seed)
    return isos


def reduced_aut_order(x, max_ext=4, seed=0):
    """Order of the reduced automorphism group, by sweeping extensions.

    Over F_q the form's automorphisms are computed over F_(q^j) for
    j = 1..max_ext and the largest stabilized order is reported together
    with the first extension degree attaining it.  Over Q only the
    rational automorphisms are counted (geometric search over Q is out of
    scope for the core).
    """
    field = x.field
    if not field.is_finite:
        if max_ext != 1:
            raise PreconditionError("geometric sweep needs a finite base field")
        return len(is_gl2_equiv_fast(x.form, x.form, seed=seed)), 1
    from .fields import GF, build_extension
    from .poly import Poly

    orders = []
    for j in range(1, max_ext + 1):
        if j == 1:
            fj = x.form
        else:
            ext = GF(field.char, field.ext_degree * j, seed=seed)
            embed = _embedding(field, ext)
            fj = BinaryForm(ext, x.form.degree, [embed(c) for c in x.form.coeffs])
        orders.append(len(is_gl2_equiv_fast(fj, fj, seed=seed)))
    best = max(orders)
    first = 1 + orders.index(best)
    return best, first


def _embedding(base, ext):
    """Field embedding F_(p^r) -> F_(p^(r j)) (canonical root choice)."""
    from .poly import Poly

    if base.ext_degree == 1:
        return lambda a: ext.elem(a.v)
    base_mod = Poly(ext, [ext.elem(c) for c in base.modulus])
    roots = sorted(base_mod.roots(), key=element_key)
    gen_img = roots[0]
    pows = [ext.one]
    for _ in range(base.ext_degree - 1):
        pows.append(pows[-1] * gen_img)

    def embed(a, _pows=pows):
        acc = ext.zero
        for c, pw in zip(a.vec, _pows):
            if c:
                acc = acc + pw * c
        return acc

    return embed
