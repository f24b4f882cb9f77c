"""Field of moduli of a form (equivalently of its hyperelliptic curve),
computed through invariants.

The canonical representative of the weighted tuple of invariant values is
unchanged under f -> lam * M.f, so its coordinates live in the field of
moduli; over F_(p^r) the smallest subfield containing them is found by
Frobenius-stability over the divisors of r.  The shipped invariant lists
are transvectant chains (see covariants.invariant_recipes); they separate
orbits well at the sizes we handle, which the equivalence tests check
empirically, but no claim of completeness as generating sets is made.
"""

from .covariants import canonical_representative, eval_recipe, invariant_recipes, quartic_ij, recipe_degree, recipe_order
from .errors import PreconditionError


class ModuliPoint:
    """Canonical representative plus the minimal field containing it."""

    def __init__(self, representative, degrees, moduli_field, subfield_degree):
        self.representative = representative
        self.degrees = degrees
        self.moduli_field = moduli_field
        self.subfield_degree = subfield_degree

    def __repr__(self):
        return f"ModuliPoint({self.representative} over {self.moduli_field})"


class InvariantTuple:
    def __init__(self, values, degrees, names=None):
        if len(values) != len(degrees):
            raise PreconditionError("values/degrees mismatch")
        if not any(values):
            raise PreconditionError("all invariants vanish on this form")
        self.values = values
        self.degrees = degrees
        self.names = names or [f"i{d}" for d in degrees]


def default_recipes(n):
    """The shipped order-0 recipe set for forms of degree n."""
    if n == 4:
        return None  # quartics use the closed I, J forms
    return invariant_recipes(n)


def invariant_profile(f, recipes=None):
    """Evaluate an order-0 recipe list on f; defaults per degree."""
    n = f.degree
    if recipes is None:
        recipes = default_recipes(n)
    if recipes is None:
        i_val, j_val = quartic_ij(f)
        return InvariantTuple([i_val, j_val], [2, 3], ["I", "J"])
    values, degrees, names = [], [], []
    for name, deg, recipe in recipes:
        if recipe_order(recipe, n) != 0:
            raise PreconditionError(f"recipe {name} is not an invariant")
        if recipe_degree(recipe) != deg:
            raise PreconditionError(f"recipe {name} has degree {recipe_degree(recipe)}, not {deg}")
        val = eval_recipe(recipe, f)
        values.append(val.coeffs[0])
        degrees.append(deg)
        names.append(name)
    return InvariantTuple(values, degrees, names)


def moduli_representative(f, recipes=None):
    prof = invariant_profile(f, recipes)
    rep = canonical_representative(prof.values, prof.degrees)
    return rep, prof.degrees


def field_of_moduli(f, recipes=None):
    """The canonical representative and, over F_(p^r), the minimal
    subfield F_(p^s) containing every coordinate."""
    rep, degrees = moduli_representative(f, recipes)
    field = f.field
    if not field.is_finite:
        return ModuliPoint(rep, degrees, field, 1)
    r = field.ext_degree
    sub_deg = r
    for s in sorted(_divisors(r)):
        if all(field.frobenius(v, s) == v for v in rep):
            sub_deg = s
            break
    if field.ext_degree == 1:
        mf = field
    else:
        from .fields import GF

        mf = GF(field.char, sub_deg) if sub_deg > 1 else GF(field.char)
    return ModuliPoint(rep, degrees, mf, sub_deg)


def _divisors(r):
    out = []
    for d in range(1, r + 1):
        if r % d == 0:
            out.append(d)
    return out
