"""Direct computation of Isom(f1, f2) = {M in PGL2(k) : M.f1 ~ f2}.

The method normalizes f1 so its x^n coefficient is nonzero and its
x^(n-1) z coefficient vanishes, then looks for isomorphisms in the shape
M ~ [[1, beta/t], [gamma, 1/t]].  Writing the coefficient identities of
f2(x + beta z, gamma x + z) = f1(alpha x, delta z) row by row (an exact
binomial expansion, so no characteristic assumptions beyond p not
dividing n), each usable row i gives a relation

    L_i(gamma) = A_(n-i) * f2_x(1, gamma)^i * t^i,   t = delta / alpha,

with L_i an explicit polynomial in gamma (the left side is divisible by
f2(1, gamma); failure of that exact division is a hard internal error).
Eliminating t between two rows, or using rows whose right side vanishes,
pins gamma to the roots of a gcd of low-degree polynomials; each root
then determines beta and at most a few candidates for t, and every
candidate matrix is verified by exact resubstitution before it is
reported.  Matrices with a vanishing "diagonal" entry escape the shape;
retrying against act(S, f2) for S in {identity, two unit shears, swap}
provably covers every class.

Everything is seeded and deterministic; over very small fields a shape
whose gamma-localization degenerates falls back to the exhaustive PGL2
oracle, and over large fields such degeneracy raises CapabilityError
(we have never observed it off the constructed corner cases).
"""

import math
import random

from .errors import CapabilityError, FieldMismatchError, PreconditionError
from .fields import element_key
from .forms import (
    BinaryForm,
    Moebius,
    act,
    is_proportional,
    primitive_rescale,
    squarefree_part,
    substitute,
)
from .poly import Poly, poly_gcd, roots_in_field

_ORACLE_FALLBACK_LIMIT = 10 ** 6


class IsomResult:
    """Verified projective isomorphisms with their witness scalars.

    matrices[i] is a PGL2 class (exact GL2 representative) and scalars[i]
    the lambda with act(matrices[i], f1) = lambda * f2, rechecked at
    construction time.
    """

    def __init__(self, f1, f2, pairs):
        seen = {}
        for m, lam in pairs:
            key = m.key()
            if key in seen:
                continue
            seen[key] = (m, lam)
        items = sorted(seen.items(), key=lambda kv: kv[0])
        self.matrices = [m for _, (m, _) in items]
        self.scalars = [lam for _, (_, lam) in items]
        for m, lam in zip(self.matrices, self.scalars):
            if is_proportional(act(m, f1), f2) != lam or not lam:
                raise PreconditionError("internal: unverified matrix in result")

    def __len__(self):
        return len(self.matrices)

    def __bool__(self):
        return bool(self.matrices)

    def keys(self):
        return {m.key() for m in self.matrices}

    def pairs(self):
        return list(zip(self.matrices, self.scalars))


def normalize_input(f1, seed=0):
    """(g, T) with act(T, f1) = g, g having A_n != 0 and A_(n-1) = 0."""
    field = f1.field
    n = f1.degree
    if field.char and n % field.char == 0:
        raise PreconditionError("characteristic divides the degree")
    if f1.is_zero():
        raise PreconditionError("zero form")
    rng = random.Random(seed)
    shear = None
    if f1.coeffs[n]:
        shear = Moebius.identity(field)
    else:
        # z -> t x + z moves the x^n coefficient to f1(1, t); a form has at
        # most n roots, so n+1 distinct attempts suffice when the field is
        # big enough (tiny fields can genuinely vanish on the whole line)
        for t_val in _shear_candidates(field, n, rng):
            if f1.evaluate(field.one, t_val):
                shear = Moebius(field, field.one, field.zero, t_val, field.one).inverse()
                break
        if shear is None:
            raise PreconditionError("cannot arrange a nonzero leading coefficient")
    g = act(shear, f1)
    an = g.coeffs[n]
    u = -g.coeffs[n - 1] / (field.elem(n) * an)
    translate = Moebius(field, field.one, u, field.zero, field.one).inverse()
    g = act(translate, g)
    if not g.coeffs[n] or g.coeffs[n - 1]:
        raise PreconditionError("internal: normalization failed")
    return g, translate * shear


def _shear_candidates(field, n, rng):
    if field.kind == "prime":
        for c in range(1, min(field.char, n + 2)):
            yield field.elem(c)
        if field.char > n + 2:
            for _ in range(8):
                yield field.random_element(rng)
    elif field.kind == "extension":
        count = 0
        seen = set()
        while count < min(field.order, 3 * (n + 2)):
            e = field.random_element(rng)
            k = element_key(e)
            if k in seen:
                continue
            seen.add(k)
            count += 1
            yield e
    else:
        for c in range(1, n + 3):
            yield field.elem(c)


def _gamma_row(f2, i):
    """The polynomial E_i(gamma): A_n-free left side of row i, already
    multiplied through by f2_x(1,gamma)^i via the beta substitution."""
    field = f2.field
    n = f2.degree
    b = f2.coeffs
    fx = Poly(field, list(reversed(f2.partial_x().coeffs)))
    fz = Poly(field, list(reversed(f2.partial_z().coeffs)))
    total = Poly(field, [])
    fx_pow = [Poly(field, [field.one])]
    fz_pow = [Poly(field, [field.one])]
    for _ in range(i):
        fx_pow.append(fx_pow[-1] * fx)
        fz_pow.append(fz_pow[-1] * fz)
    for j in range(i + 1):
        # W_(i,j)(gamma) = sum_e b[n-i+j-e] C(n-i+j-e, j) C(i-j+e, e) gamma^e
        w = []
        for e in range(0, n - i + j + 1):
            m = n - i + j - e
            if m < 0 or m > n:
                w.append(field.zero)
                continue
            c = math.comb(m, j) * math.comb(i - j + e, e)
            w.append(field.elem(c) * b[m])
        wp = Poly(field, w)
        term = fz_pow[j] * fx_pow[i - j] * wp
        if j % 2:
            total = total - term
        else:
            total = total + term
    return total


def gamma_system(f2, f1n, rows=(2, 3, 4)):
    """Row data for the gamma equations of the pair (normalized f1, f2).

    Returns ({i: (L_i, A_(n-i))}, A_n) where L_i is a polynomial in gamma
    built purely from f2, such that

        A_n * L_i(gamma) = A_(n-i) * f2_x(1, gamma)^i * t^i

    holds at every valid (gamma, t).  Keeping the f1 coefficients out of
    the polynomials matters over Q, where a normalized f1 can have large
    coefficients while f2 stays small.  The left sides are divided exactly
    by f2(1, gamma); a nonzero remainder is a hard error.
    """
    field = f2.field
    n = f2.degree
    if f1n.degree != n:
        raise PreconditionError("degree mismatch")
    an = f1n.coeffs[n]
    if not an:
        raise PreconditionError("f1 is not normalized")
    p2 = Poly(field, list(reversed(f2.coeffs)))
    out = {}
    for i in rows:
        if i < 2 or i > n:
            continue
        q, r = divmod(_gamma_row(f2, i), p2)
        if not r.is_zero():
            raise PreconditionError("internal: gamma row not divisible by f2(1, gamma)")
        out[i] = (q, f1n.coeffs[n - i])
    return out, an


def candidate_gammas(system, an):
    """Monic gcd of the gamma-elimination polynomials.

    Rows with vanishing right side constrain gamma directly; pairs of
    active rows are crossed to eliminate t:

        an^((j-i)/g) A_(n-j)^(i/g) L_i^(j/g) = A_(n-i)^(j/g) L_j^(i/g)

    for g = gcd(i, j).  The scalar ratio is reduced once before it is
    multiplied into the small polynomials.  Returns None when every
    constraint vanishes identically (the degenerate case)."""
    constraints = []
    active = []
    for i, (l_i, a_i) in sorted(system.items()):
        if not a_i:
            if not l_i.is_zero():
                constraints.append(l_i)
        else:
            active.append((i, l_i, a_i))
    if active:
        # cross the smallest active row against each other one: for rows
        # (2, 3) and (2, 4) these are the classic elimination polynomials
        # of degree 6(n-2) and 4(n-2)
        i, li, ai = active[0]
        field = li.field
        for j, lj, aj in active[1:]:
            g = math.gcd(i, j)
            ratio = (ai ** (j // g)) / (an ** ((j - i) // g) * aj ** (i // g))
            if field.kind == "rational":
                c1 = field.elem(ratio.denominator)
                c2 = field.elem(ratio.numerator)
            else:
                c1, c2 = field.one, ratio
            cross = li ** (j // g) * Poly.constant(field, c1) - lj ** (
                i // g
            ) * Poly.constant(field, c2)
            if not cross.is_zero():
                constraints.append(cross)
    if not constraints:
        return None
    g = constraints[0]
    for c in constraints[1:]:
        if g.degree == 0:
            break
        g = poly_gcd(g, c)
    return g.monic()


def _resolve_t(system, an, gamma, fx_at, field):
    """Candidate values of t at a root gamma, from t^i = an L_i/(A f_x^i)."""
    rels = []
    for i, (l_i, a_i) in sorted(system.items()):
        if not a_i:
            continue
        denom = a_i * fx_at ** i
        if not denom:
            return None
        val = an * l_i(gamma) / denom
        if not val:
            return None  # t would be zero: impossible for invertible M
        rels.append((i, val))
    if not rels:
        return None
    d = 0
    for i, _ in rels:
        d = math.gcd(d, i)
    # combine the relations into t^d
    target = field.one
    rem = d
    # use extended combination: find integers u_i with sum u_i * i = d
    idxs = [i for i, _ in rels]
    combo = _int_combination(idxs, d)
    for (i, val), u in zip(rels, combo):
        if u:
            target = target * val ** u
    if d == 1:
        return [target]
    xpoly = [field.zero] * (d + 1)
    xpoly[0] = -target
    xpoly[d] = field.one
    return sorted(roots_in_field(Poly(field, xpoly)), key=element_key)


def _int_combination(idxs, d):
    """Integers u_i with sum u_i * idxs_i = d (gcd of the idxs)."""
    from .numutil import ext_gcd

    combo = [0] * len(idxs)
    g = idxs[0]
    combo[0] = 1
    for k in range(1, len(idxs)):
        g2, u, v = ext_gcd(g, idxs[k])
        combo = [c * u for c in combo]
        combo[k] = v
        g = g2
    assert g == d
    return combo


def _solve_shape(g_norm, f2, seed):
    """All isomorphisms g_norm -> f2 whose matrix has nonzero corners.

    Returns (pairs, degenerate): pairs is a list of verified (M, lambda)
    with act(M, g_norm) = lambda * f2, and degenerate is True when the
    gamma localization collapsed (no constraints at all).
    """
    field = g_norm.field
    n = g_norm.degree
    # choose rows: the classic 2,3,4 plus, when those right sides vanish,
    # the smallest rows with nonzero A_(n-i) (needed both for the cross
    # elimination and to resolve t); vanished small rows still constrain
    # gamma directly, so keep them
    i_cap = n if n <= 64 else 16
    rows = set(i for i in (2, 3, 4) if i <= n)
    actives = [i for i in range(2, i_cap + 1) if g_norm.coeffs[n - i]]
    rows.update(actives[:3])
    rows.update(i for i in range(2, min(n, 6) + 1) if not g_norm.coeffs[n - i])
    system, an = gamma_system(f2, g_norm, rows=tuple(sorted(rows)))
    gpoly = candidate_gammas(system, an)
    if gpoly is None:
        return [], True
    if gpoly.degree == 0:
        return [], False  # no common root: nothing in this shape
    fxp = Poly(field, list(reversed(f2.partial_x().coeffs)))
    fzp = Poly(field, list(reversed(f2.partial_z().coeffs)))
    p2 = Poly(field, list(reversed(f2.coeffs)))
    pairs = []
    for gamma in sorted(roots_in_field(gpoly, seed=seed), key=element_key):
        if not p2(gamma):
            continue  # alpha would vanish
        fx_at = fxp(gamma)
        if not fx_at:
            continue  # Euler: no valid matrix has this gamma
        beta = -fzp(gamma) / fx_at
        ts = _resolve_t(system, an, gamma, fx_at, field)
        if not ts:
            continue
        for t in ts:
            r = field.one / t
            ent = (field.one, beta * r, gamma, r)
            if not (ent[0] * ent[3] - ent[1] * ent[2]):
                continue
            m = Moebius(field, *ent)
            sub = substitute(f2, m)
            lam_inv = is_proportional(sub, g_norm)
            if lam_inv:
                pairs.append((m, field.one / lam_inv))
    return pairs, False


def _retry_shapes(field, seed, extra):
    """Conjugators covering every PGL2 class.

    The shape solver needs both "corner" entries m11, m22 nonzero.  If one
    of them vanishes, invertibility forces both off-diagonal entries to be
    nonzero, so the swapped matrix has nonzero corners: identity plus swap
    is a provably complete retry set.  Extra shears and random conjugators
    are only added to rescue degenerate gamma localizations."""
    one, zero = field.one, field.zero
    shapes = [
        Moebius.identity(field),
        Moebius(field, zero, one, one, zero),
    ]
    if extra:
        shapes.append(Moebius(field, one, one, zero, one))
        shapes.append(Moebius(field, one, zero, one, one))
        rng = random.Random(seed)
        for _ in range(extra):
            shapes.append(Moebius.random(field, rng))
    return shapes


def is_gl2_equiv_fast(f1, f2, seed=0):
    """The complete set of k-rational classes M with M.f1 ~ f2."""
    if f1.field != f2.field:
        raise FieldMismatchError("forms over different fields")
    field = f1.field
    n = f1.degree
    if f2.degree != n:
        return IsomResult(f1, f2, [])
    if n < 3:
        raise PreconditionError("degree must be at least 3")
    if field.char and n % field.char == 0:
        raise PreconditionError("characteristic divides the degree")
    if squarefree_part(f1).degree < 3 or squarefree_part(f2).degree < 3:
        raise PreconditionError("both forms need at least 3 distinct roots")
    try:
        g_norm, t_mat = normalize_input(f1, seed=seed)
    except PreconditionError:
        return _small_field_oracle_or_raise(f1, f2, "normalization impossible")
    # over Q, solve against primitive integer rescalings to keep every
    # downstream polynomial integral; the witnesses are rescaled back
    g_solver, c_g = primitive_rescale(g_norm)
    pairs = []
    degenerate = False
    for s in _retry_shapes(field, seed, extra=0):
        f2s, c_2 = primitive_rescale(act(s, f2))
        shape_pairs, shape_degenerate = _solve_shape(g_solver, f2s, seed)
        degenerate = degenerate or shape_degenerate
        s_inv = s.inverse()
        adjust = c_2 / c_g
        for m, lam in shape_pairs:
            pairs.append((s_inv * m * t_mat, lam * adjust))
    if degenerate:
        # a shape could not localize gamma; only tiny fields are rescued
        extra_pairs, solved = _degenerate_rescue(f1, f2, g_norm, t_mat, seed)
        if not solved:
            raise CapabilityError(
                "gamma localization degenerated over a large field; "
                "no complete answer available"
            )
        pairs.extend(extra_pairs)
    return IsomResult(f1, f2, pairs)


def _degenerate_rescue(f1, f2, g_norm, t_mat, seed):
    field = f1.field
    if field.kind == "prime":
        p = field.char
        if p * (p * p - 1) <= _ORACLE_FALLBACK_LIMIT:
            from .oracle import oracle_isom

            ms, lams = oracle_isom(f1, f2)
            return list(zip(ms, lams)), True
    # large field: try extra shear and random shapes before giving up
    g_solver, c_g = primitive_rescale(g_norm)
    pairs = []
    any_clean = False
    for s in _retry_shapes(field, seed + 1, extra=8)[2:]:
        f2s, c_2 = primitive_rescale(act(s, f2))
        shape_pairs, shape_degenerate = _solve_shape(g_solver, f2s, seed)
        if not shape_degenerate:
            any_clean = True
        s_inv = s.inverse()
        adjust = c_2 / c_g
        for m, lam in shape_pairs:
            pairs.append((s_inv * m * t_mat, lam * adjust))
    return pairs, any_clean


def _small_field_oracle_or_raise(f1, f2, why):
    field = f1.field
    if field.kind == "prime":
        p = field.char
        if p * (p * p - 1) <= _ORACLE_FALLBACK_LIMIT:
            from .oracle import oracle_isom

            ms, lams = oracle_isom(f1, f2)
            return IsomResult(f1, f2, list(zip(ms, lams)))
    raise CapabilityError(why)


def automorphisms(f, seed=0):
    return is_gl2_equiv_fast(f, f, seed=seed)
