"""Covariant-reduction computation of Isom(f1, f2).

Instead of solving the degree-n problem directly, evaluate a low-order
covariant C on both forms (the same recipe, with the same randomness) and
compute the isomorphisms of the two covariant values; every isomorphism
of the original forms is among them, so filtering by exact resubstitution
gives the answer.  Generic forms are dispatched by the quartic covariant
(f, f)_(n-2) alone; singular covariant values are perturbed by random
same-type covariants a bounded number of times, and on total failure the
direct method is the fallback.
"""

import random

from .covariants import c24_fast, eval_recipe, random_covariant
from .errors import CharacteristicError, PreconditionError
from .fields import element_key
from .forms import act, is_proportional, squarefree_part
from .isom_direct import IsomResult, is_gl2_equiv_fast


class CovariantSearchConfig:
    """Loop bounds for the covariant search.

    The default (order <= 4, degree <= 2, no perturbation) tries only
    (f, f)_(n-2) and falls back; `deep()` widens to order min(8, n),
    degree 10, with 10 singular-value perturbations.
    """

    def __init__(self, b_order=4, b_degree=2, b_singular=0, seed=0):
        self.b_order = b_order
        self.b_degree = b_degree
        self.b_singular = b_singular
        self.seed = seed

    @classmethod
    def generic(cls, seed=0):
        return cls(4, 2, 0, seed)

    @classmethod
    def deep(cls, n, seed=0):
        return cls(min(8, n), 10, 10, seed)


def _separable_cut(c):
    """The covariant value itself when separable, else its squarefree part;
    None when fewer than 3 distinct roots remain."""
    if c.is_zero():
        return None
    sf = squarefree_part(c)
    if sf.degree < 3:
        return None
    return c if sf.degree == c.degree else sf


def is_gl2_equiv_covariant(f1, f2, cfg=None, seed=None):
    """Isom(f1, f2) via covariant reduction, falling back to the direct
    method when no usable covariant value appears."""
    if cfg is None:
        cfg = CovariantSearchConfig()
    if seed is not None:
        cfg = CovariantSearchConfig(cfg.b_order, cfg.b_degree, cfg.b_singular, seed)
    field = f1.field
    n = f1.degree
    if f2.degree != n or f1.field != f2.field:
        return is_gl2_equiv_fast(f1, f2, seed=cfg.seed)
    p = field.char
    if p and p <= 2 * n + 3:
        # transvectant constants are unreliable this close to the
        # characteristic; the direct method covers small fields anyway
        return is_gl2_equiv_fast(f1, f2, seed=cfg.seed)
    rng = random.Random(cfg.seed)
    orders = range(3, cfg.b_order + 1)
    for o in orders:
        if n % 2 == 0 and o % 2:
            continue  # odd-order covariants of even-degree forms vanish
        for d in range(2, cfg.b_degree + 1):
            if (n * d - o) % 2:
                continue
            try:
                recipe = _pick_recipe(n, o, d, rng)
            except PreconditionError:
                continue
            if recipe is None:
                continue
            try:
                c1 = _eval(recipe, f1)
                c2 = _eval(recipe, f2)
            except CharacteristicError:
                continue
            res = _try_covariant_pair(f1, f2, c1, c2, cfg.seed)
            if res is not None:
                return res
            for _ in range(cfg.b_singular):
                try:
                    other = random_covariant(n, o, d, seed=rng.randrange(1 << 30))
                    kappa = _random_kappa(field, rng)
                    c1p = c1 + _eval(other, f1).scaled(kappa)
                    c2p = c2 + _eval(other, f2).scaled(kappa)
                except (PreconditionError, CharacteristicError):
                    continue
                res = _try_covariant_pair(f1, f2, c1p, c2p, cfg.seed)
                if res is not None:
                    return res
                c1, c2 = c1p, c2p
    return is_gl2_equiv_fast(f1, f2, seed=cfg.seed)


def _pick_recipe(n, o, d, rng):
    if (o, d) == (4, 2):
        return ("tv", n - 2, "f", "f")
    return random_covariant(n, o, d, seed=rng.randrange(1 << 30))


def _eval(recipe, f):
    n = f.degree
    if recipe == ("tv", n - 2, "f", "f") and n >= 6 and n % 2 == 0:
        return c24_fast(f)  # same covariant up to the fixed (n!)^2/(n-2)! factor
    return eval_recipe(recipe, f)


def _random_kappa(field, rng):
    if field.is_finite:
        while True:
            k = field.random_element(rng)
            if k:
                return k
    return field.elem(rng.randint(1, 10))


def _try_covariant_pair(f1, f2, c1, c2, seed):
    """Solve at the covariant level and filter; None when unusable."""
    cc1 = _separable_cut(c1)
    cc2 = _separable_cut(c2)
    if cc1 is None or cc2 is None:
        return None
    if cc1.degree != cc2.degree:
        # covariant degrees differ only when the forms are inequivalent
        return IsomResult(f1, f2, [])
    try:
        cov_isoms = is_gl2_equiv_fast(cc1, cc2, seed=seed)
    except PreconditionError:
        return None
    pairs = []
    for m in cov_isoms.matrices:
        lam = is_proportional(act(m, f1), f2)
        if lam:
            pairs.append((m, lam))
    return IsomResult(f1, f2, pairs)


def stratum_covariants(genus, aut_tag):
    """Hand-encoded quartic/sextic covariant recipes that stay separable on
    the given automorphism stratum of genus 2 or 3 hyperelliptic curves.

    Returns (recipes, note); an empty recipe list with a note means no
    order-4 or order-6 covariant has three distinct roots on that stratum.
    """
    if genus == 3:
        n = 8
        c24 = ("tv", 6, "f", "f")
        i44 = ("tv", 4, "f", "f")
        c34 = ("tv", 6, i44, "f")
        c44 = ("tv", 4, ("tv", 6, i44, "f"), "f")
        c44p = ("tv", 6, ("tv", 4, i44, "f"), "f")
        c54 = ("tv", 7, ("tv", 1, ("tv", 6, i44, "f"), "f"), "f")
        c36 = ("tv", 5, i44, "f")
        table = {
            "D4": ([c24, c34, c44, c44p, c54], None),
            "C4": ([c24, c34, c44, c44p], None),
            "C2^3": ([c24, c34, c44], None),
            "C2xC4": ([c34], None),
            "D12": ([c36], "sextic covariant; quartics are all singular"),
            "U6": ([c36], "sextic covariant; quartics are all singular"),
            "C2xD8": ([], "no order 4 or 6 covariant with three distinct roots"),
            "C14": ([], "no order 4 or 6 covariant with three distinct roots"),
            "generic": ([c24, c34, c44, c44p, c54], None),
        }
        if aut_tag in table:
            return table[aut_tag]
        raise PreconditionError(f"unknown genus-3 stratum {aut_tag!r}")
    if genus == 2:
        n = 6
        c24 = ("tv", 4, "f", "f")
        alt1 = ("tv", 4, ("tv", 4, ("tv", 2, "f", "f"), "f"), "f")
        alt2 = ("tv", 6, ("tv", 2, ("tv", 3, ("tv", 2, "f", "f"), "f"), "f"), "f")
        table = {
            "D8": ([c24], None),
            "D4": ([c24, alt1, alt2], None),
            "D12": ([], "no quartic covariant with nonzero discriminant"),
            "C10": ([], "no quartic covariant with nonzero discriminant"),
            "generic": ([c24, alt1, alt2], None),
        }
        if aut_tag in table:
            return table[aut_tag]
        raise PreconditionError(f"unknown genus-2 stratum {aut_tag!r}")
    raise PreconditionError("stratum tables cover genus 2 and 3 only")
