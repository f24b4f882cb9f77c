"""Exhaustive PGL2(F_p) isomorphism oracle for small prime fields.

The test suites lean on this as ground truth: it enumerates all of
PGL2(F_p) and keeps the matrices M with M.f1 ~ f2.  A value table of f1
over the projective line makes the per-matrix test O(1) for the filtering
pass; survivors get an exact verification, so the point filter can never
let a wrong matrix through (and, when n <= p, never hides a right one;
for n > p the exact check re-tests every enumerated class).
"""

from .errors import FieldMismatchError, PreconditionError
from .fields import FpElement
from .forms import BinaryForm, Moebius, act, is_proportional

ORACLE_LIMIT = 10 ** 6


def pgl2_size(p):
    return p * (p * p - 1)


def enumerate_pgl2(field):
    """Canonical representatives of PGL2(F_p): first nonzero entry is 1."""
    p = field.char
    one = 1
    out = []
    for b in range(p):
        for c in range(p):
            for d in range(p):
                if (d - b * c) % p:  # det of [[1,b],[c,d]]
                    out.append((one, b, c, d))
    for c in range(p):
        for d in range(p):
            if c:  # det of [[0,1],[c,d]] = -c
                out.append((0, one, c, d))
    return out


def oracle_isom(f1, f2):
    """Exact Isom(f1, f2) subset of PGL2(F_p) by exhaustive enumeration.

    Returns (matrices, scalars) with act(M, f1) = lam * f2 verified.
    """
    field = f1.field
    if field != f2.field:
        raise FieldMismatchError("forms over different fields")
    if field.kind != "prime":
        raise PreconditionError("oracle runs over prime fields only")
    p = field.char
    if pgl2_size(p) > ORACLE_LIMIT:
        raise PreconditionError(f"field too large for the oracle: |PGL2| = {pgl2_size(p)}")
    if f1.degree != f2.degree:
        return [], []
    n = f1.degree
    raw1 = [c.v for c in f1.coeffs]
    raw2 = [c.v for c in f2.coeffs]

    def eval_raw(raw, x, z):
        r = 0
        zp = 1
        for i in range(n, -1, -1):
            r = (r * x + raw[i] * zp) % p
            if i:
                zp = zp * z % p
        return r

    # probe points where f2 does not vanish (there may be none when n >= p+1)
    points = [(t, 1) for t in range(p)] + [(1, 0)]
    probes = [(x, z, eval_raw(raw2, x, z)) for x, z in points]
    probes = [t for t in probes if t[2]][:3]
    matrices = []
    scalars = []
    for a, b, c, d in enumerate_pgl2(field):
        # a true M satisfies f1(N(pt)) = lam * f2(pt) at every point, for
        # N = M^{-1}; enumerate N directly and filter before verifying
        ok = True
        lam_num = lam_den = None
        for x, z, v2 in probes:
            v1 = eval_raw(raw1, (a * x + b * z) % p, (c * x + d * z) % p)
            if lam_num is None:
                if not v1:
                    ok = False
                    break
                lam_num, lam_den = v1, v2
            elif v1 * lam_den % p != v2 * lam_num % p:
                ok = False
                break
        if not ok:
            continue
        ninv = Moebius(
            field,
            FpElement(field, a),
            FpElement(field, b),
            FpElement(field, c),
            FpElement(field, d),
        )
        m = ninv.inverse()
        lam = is_proportional(act(m, f1), f2)
        if lam is not None and lam:
            matrices.append(m)
            scalars.append(lam)
    return matrices, scalars


def oracle_keys(f1, f2):
    """Projective keys of the oracle's matrices (the set tests compare)."""
    ms, _ = oracle_isom(f1, f2)
    return {m.key() for m in ms}
