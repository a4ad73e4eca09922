"""Built-in example algebras.

All of them are free graded-commutative algebras on a few generators,
truncated above a top degree.  Degree truncation of a free commutative
algebra keeps the d.g.a. axioms exact (every associator or Leibniz residual
that would involve a killed product dies on both sides), while the bialgebra
axiom survives only when the coefficients cooperate; that is precisely what
separates ``fp-trunc`` over F_p from the same constants over the rationals.

Names accepted by ``builtin_presentation`` / the CLI:

* ``lambda1``, ``lambda2``, ``lambda3`` - exterior Hopf algebras on 1..3
  primitive degree-1 generators, zero differential, over Q by default.
* ``acyclic`` - the free c.d.g.a. on x (degree 1) and y (degree 2) with
  dx = y, truncated at a configurable top degree; algebra only.
* ``fp-trunc`` - k[x]/(x^p) with |x| = 2 and primitive x; a Hopf algebra
  over F_p, and an invalid bialgebra over Q.
"""

from __future__ import annotations

from .fields import GF, QQ
from .graded import GradedBasis, GradedMap
from .structures import (
    DGAlgebraPresentation,
    DGCoalgebraPresentation,
    DGHopfPresentation,
)


def _monomial_name(gens, expo) -> str:
    parts = []
    for (name, _), e in zip(gens, expo):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def _monomial_degree(gens, expo) -> int:
    return sum(e * deg for (_, deg), e in zip(gens, expo))


def _odd_word(gens, expo) -> tuple:
    return tuple(i for i, ((_, deg), e) in enumerate(zip(gens, expo))
                 if e and deg % 2)


def free_graded_commutative(gens, top, field, d_gens=None, with_delta=True):
    """Free graded-commutative algebra on ``gens``, truncated above ``top``.

    ``gens`` is a list of (name, degree) pairs; odd-degree generators square
    to zero.  ``d_gens`` maps a generator name to {monomial_name: coeff} and
    is extended as an algebra derivation.  Returns (basis, mu, d, delta);
    delta (all generators primitive) is None when ``with_delta`` is false.
    """
    gens = list(gens)
    k = len(gens)

    # enumerate exponent vectors by total degree, unit first
    monomials = []

    def rec(i, expo, deg):
        if i == k:
            monomials.append((deg, expo))
            return
        name, gdeg = gens[i]
        cap = 1 if gdeg % 2 else (top - deg) // gdeg if gdeg else 0
        for e in range(cap + 1):
            if deg + e * gdeg <= top:
                rec(i + 1, expo + (e,), deg + e * gdeg)

    rec(0, (), 0)
    monomials.sort(key=lambda pair: (pair[0], _monomial_name(gens, pair[1])))
    expos = [expo for _, expo in monomials]
    index = {expo: i for i, expo in enumerate(expos)}
    basis = GradedBasis(
        tuple(_monomial_name(gens, e) for e in expos),
        tuple(deg for deg, _ in monomials),
    )
    h = (basis,)
    one = field.one

    def product(ea, eb):
        """(sign, exponent) of the product, or None when it dies."""
        oa, ob = _odd_word(gens, ea), _odd_word(gens, eb)
        if set(oa) & set(ob):
            return None
        ec = tuple(a + b for a, b in zip(ea, eb))
        if _monomial_degree(gens, ec) > top:
            return None
        sign = 1
        for i in ob:
            sign *= (-1) ** sum(1 for j in oa if j > i)
        return sign, ec

    mu_cols = {}
    for ia, ea in enumerate(expos):
        for ib, eb in enumerate(expos):
            res = product(ea, eb)
            if res is None:
                continue
            sign, ec = res
            mu_cols[(ia, ib)] = {(index[ec],): one if sign > 0 else -one}
    mu = GradedMap(h * 2, h, 0, field, mu_cols)

    # differential: derivation extension of the generator images
    d_gens = d_gens or {}
    name_to_idx = {basis.labels[i]: i for i in range(len(basis))}
    d_cols = {}

    def leading(expo):
        for i, e in enumerate(expo):
            if e:
                return i
        return None

    def decrement(expo, i):
        return expo[:i] + (expo[i] - 1,) + expo[i + 1:]

    for deg, expo in monomials:
        if deg == 0:
            continue
        i = leading(expo)
        rest = decrement(expo, i)
        gname, gdeg = gens[i]
        vec = {}
        # d(g * rest) = d(g) * rest + (-1)^{|g|} g * d(rest)
        for tgt_name, coeff in (d_gens.get(gname) or {}).items():
            c = field(coeff)
            ta = expos[name_to_idx[tgt_name]]
            res = product(ta, rest)
            if res is None:
                continue
            sign, ec = res
            key = (index[ec],)
            new = vec.get(key, field.zero) + (c if sign > 0 else -c)
            if new:
                vec[key] = new
            elif key in vec:
                del vec[key]
        gexpo = tuple(1 if j == i else 0 for j in range(k))
        for (ri,), c in d_cols.get((index[rest],), {}).items():
            res = product(gexpo, expos[ri])
            if res is None:
                continue
            sign, ec = res
            if gdeg % 2:
                sign = -sign
            key = (index[ec],)
            new = vec.get(key, field.zero) + (c if sign > 0 else -c)
            if new:
                vec[key] = new
            elif key in vec:
                del vec[key]
        if vec:
            d_cols[(index[expo],)] = vec
    d = GradedMap(h, h, 1, field, d_cols)

    delta = None
    if with_delta:
        # multiplicative extension of primitive generators, in degree order
        delta_cols = {(0,): {(0, 0): one}}
        for deg, expo in monomials:
            if deg == 0:
                continue
            i = leading(expo)
            rest = decrement(expo, i)
            gi = index[tuple(1 if j == i else 0 for j in range(k))]
            dg = {(gi, 0): one, (0, gi): one}
            dr = delta_cols[(index[rest],)]
            vec = {}
            for (a, b), c1 in dg.items():
                db = basis.degrees[b]
                for (cc, dd), c2 in dr.items():
                    sign = -1 if (db % 2 and basis.degrees[cc] % 2) else 1
                    for (ac,), c3 in mu.column((a, cc)).items():
                        for (bd,), c4 in mu.column((b, dd)).items():
                            key = (ac, bd)
                            term = c1 * c2 * c3 * c4
                            if sign < 0:
                                term = -term
                            new = vec.get(key, field.zero) + term
                            if new:
                                vec[key] = new
                            elif key in vec:
                                del vec[key]
            delta_cols[(index[expo],)] = vec
        delta = GradedMap(h, h * 2, 0, field, delta_cols)

    return basis, mu, d, delta


def exterior_hopf(num_generators: int, field=QQ) -> DGHopfPresentation:
    """The exterior Hopf algebra on primitive degree-1 generators, d = 0."""
    gens = [(f"x{i + 1}", 1) for i in range(num_generators)]
    basis, mu, d, delta = free_graded_commutative(gens, num_generators, field)
    alg = DGAlgebraPresentation(basis, mu, d, field)
    coalg = DGCoalgebraPresentation(basis, delta, d, field)
    return DGHopfPresentation(alg, coalg)


def acyclic_cdga(top: int = 8, field=QQ) -> DGAlgebraPresentation:
    """The contractible free c.d.g.a. on x (|x|=1), y (|y|=2) with dx = y."""
    gens = [("x", 1), ("y", 2)]
    basis, mu, d, _ = free_graded_commutative(
        gens, top, field, d_gens={"x": {"y": 1}}, with_delta=False)
    return DGAlgebraPresentation(basis, mu, d, field)


def truncated_polynomial_hopf(p: int, field=None) -> DGHopfPresentation:
    """k[x]/(x^p) with |x| = 2, primitive x, d = 0.

    Valid over F_p; over the rationals the bialgebra axiom fails at the
    truncation boundary because the middle binomial coefficients survive.
    """
    if field is None:
        field = GF(p)
    gens = [("x", 2)]
    basis, mu, d, delta = free_graded_commutative(gens, 2 * (p - 1), field)
    alg = DGAlgebraPresentation(basis, mu, d, field)
    coalg = DGCoalgebraPresentation(basis, delta, d, field)
    return DGHopfPresentation(alg, coalg)


def truncated_polynomial_raw(p: int, field):
    """The fp-trunc structure constants over an arbitrary field, unvalidated.

    Used to exercise the failure path: over Q the constants do not form a
    bialgebra, so only the raw maps are returned.
    """
    gens = [("x", 2)]
    return free_graded_commutative(gens, 2 * (p - 1), field)


BUILTIN_NAMES = ("lambda1", "lambda2", "lambda3", "acyclic", "fp-trunc")


def builtin_presentation(name: str, *, p: int = 3, top: int = 8, field=None):
    """A built-in presentation by name; see the module docstring."""
    if name == "lambda1":
        return exterior_hopf(1, field or QQ)
    if name == "lambda2":
        return exterior_hopf(2, field or QQ)
    if name == "lambda3":
        return exterior_hopf(3, field or QQ)
    if name == "acyclic":
        return acyclic_cdga(top, field or QQ)
    if name == "fp-trunc":
        return truncated_polynomial_hopf(p, field)
    raise KeyError(f"unknown example {name!r}; choose from {BUILTIN_NAMES}")
