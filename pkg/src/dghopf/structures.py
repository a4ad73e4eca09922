"""Presentations of d.g. algebras / coalgebras / Hopf algebras and their checks.

A presentation holds the structure constants of mu, delta, d over a
``GradedBasis``; the unit and counit are never stored because connectedness
makes them canonical (degree-0 element at index 0).  Validation reports carry
the exact residual of each axiom, and the antipode is always recomputed by its
degree induction and cross-checked against any supplied one.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .graded import (
    GradedBasis,
    GradedMap,
    Slots,
    permutation_map,
    tensor_many,
    tensor_of_maps,
    tensor_power_with_identity,
    transposition,
)


# ---------------------------------------------------------------------------
# validity reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    residual: tuple | None = None  # (target_names, source_names, value-as-str)

    def describe(self) -> str:
        if self.ok:
            return f"{self.name}: ok"
        tgt, src, val = self.residual
        return f"{self.name}: residual {val} at {tgt} <- {src}"


@dataclass
class ValidityReport:
    subject: str
    checks: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, residual_map: GradedMap, pres) -> None:
        first = residual_map.first_nonzero()
        if first is None:
            self.checks.append(CheckResult(name, True))
        else:
            tgt, src, val = first
            named = (
                _names(residual_map.target, tgt),
                _names(residual_map.source, src),
                str(val),
            )
            self.checks.append(CheckResult(name, False, named))

    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def lines(self) -> list[str]:
        return [c.describe() for c in self.checks]


def _names(slots: Slots, label) -> tuple[str, ...]:
    return tuple(slots[k].labels[i] for k, i in enumerate(label))


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------

class DGAlgebraPresentation:
    """A d.g. algebra given by structure constants for mu and d."""

    def __init__(self, basis: GradedBasis, mu: GradedMap, d: GradedMap, field):
        self.basis = basis
        self.field = field
        h = (basis,)
        if mu.source != h * 2 or mu.target != h or mu.degree != 0:
            raise ValueError("mu must be a degree-0 map H⊗H -> H")
        if d.source != h or d.target != h or d.degree != 1:
            raise ValueError("d must be a degree-1 map H -> H")
        self.mu = mu
        self.d = d

    @property
    def eta(self) -> GradedMap:
        """Canonical unit k -> H (degree-0 basis element)."""
        return GradedMap((), (self.basis,), 0, self.field,
                         {(): {(0,): self.field.one}}, _trusted=True)

    def is_commutative(self) -> bool:
        swap = permutation_map(transposition(2, 1, 2), (self.basis,) * 2, self.field)
        return (self.mu - self.mu.compose(swap)).is_zero()


class DGCoalgebraPresentation:
    """A d.g. coalgebra given by structure constants for delta and d."""

    def __init__(self, basis: GradedBasis, delta: GradedMap, d: GradedMap, field):
        self.basis = basis
        self.field = field
        h = (basis,)
        if delta.source != h or delta.target != h * 2 or delta.degree != 0:
            raise ValueError("delta must be a degree-0 map H -> H⊗H")
        if d.source != h or d.target != h or d.degree != 1:
            raise ValueError("d must be a degree-1 map H -> H")
        self.delta = delta
        self.d = d

    @property
    def epsilon(self) -> GradedMap:
        """Canonical counit H -> k (projection onto degree 0)."""
        return GradedMap((self.basis,), (), 0, self.field,
                         {(0,): {(): self.field.one}}, _trusted=True)


class DGHopfPresentation:
    """A d.g. Hopf algebra: shared basis and differential, antipode attached.

    The antipode is always recomputed from the diagonal; a supplied one is
    only accepted after an exact comparison (uniqueness makes disagreement an
    input error).
    """

    def __init__(self, algebra: DGAlgebraPresentation,
                 coalgebra: DGCoalgebraPresentation,
                 antipode: GradedMap | None = None):
        if algebra.basis != coalgebra.basis:
            raise ValueError("algebra and coalgebra must share a basis")
        if algebra.d != coalgebra.d:
            raise ValueError("algebra and coalgebra must share the differential")
        if algebra.field != coalgebra.field:
            raise ValueError("algebra and coalgebra must share the ground field")
        self.algebra = algebra
        self.coalgebra = coalgebra
        self.basis = algebra.basis
        self.field = algebra.field
        computed = compute_antipode(self.basis, algebra.mu, coalgebra.delta,
                                    self.field)
        if antipode is not None and antipode != computed:
            diff = (antipode - computed).first_nonzero()
            raise ValueError(f"supplied antipode disagrees with the inductive "
                             f"one at {diff}")
        self.antipode = computed

    @property
    def mu(self) -> GradedMap:
        return self.algebra.mu

    @property
    def delta(self) -> GradedMap:
        return self.coalgebra.delta

    @property
    def d(self) -> GradedMap:
        return self.algebra.d

    @property
    def eta(self) -> GradedMap:
        return self.algebra.eta

    @property
    def epsilon(self) -> GradedMap:
        return self.coalgebra.epsilon


# ---------------------------------------------------------------------------
# bimodule coefficients
# ---------------------------------------------------------------------------

class Bimodule:
    """A d.g. bimodule (M, lam, rho, d_M) over a d.g. algebra.

    ``lam: A⊗M -> M`` and ``rho: M⊗A -> M`` have degree 0; ``d_M`` has
    degree 1.  ``self_bimodule`` realizes the regular bimodule M = A with
    lam = rho = mu.
    """

    def __init__(self, algebra: DGAlgebraPresentation, basis: GradedBasis,
                 lam: GradedMap, rho: GradedMap, d_M: GradedMap):
        self.algebra = algebra
        self.basis = basis
        self.lam = lam
        self.rho = rho
        self.d = d_M
        self.field = algebra.field

    @classmethod
    def self_bimodule(cls, algebra: DGAlgebraPresentation) -> "Bimodule":
        return cls(algebra, algebra.basis, algebra.mu, algebra.mu, algebra.d)

    def is_symmetric(self) -> bool:
        swap = permutation_map(transposition(2, 1, 2),
                               (self.basis, self.algebra.basis), self.field)
        # rho = lam∘(1,2) on M⊗A
        return (self.rho - self.lam.compose(swap)).is_zero()


class Bicomodule:
    """A d.g. bicomodule (N, lam, rho, d_N) over a d.g. coalgebra.

    ``lam: N -> C⊗N`` and ``rho: N -> N⊗C`` have degree 0.
    """

    def __init__(self, coalgebra: DGCoalgebraPresentation, basis: GradedBasis,
                 lam: GradedMap, rho: GradedMap, d_N: GradedMap):
        self.coalgebra = coalgebra
        self.basis = basis
        self.lam = lam
        self.rho = rho
        self.d = d_N
        self.field = coalgebra.field

    @classmethod
    def self_bicomodule(cls, coalgebra: DGCoalgebraPresentation) -> "Bicomodule":
        return cls(coalgebra, coalgebra.basis, coalgebra.delta, coalgebra.delta,
                   coalgebra.d)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def validate_dga(pres: DGAlgebraPresentation, subject: str = "dga") -> ValidityReport:
    """Check associativity, unit laws, d²=0 and the Leibniz rule exactly."""
    basis, field = pres.basis, pres.field
    h = (basis,)
    mu, d = pres.mu, pres.d
    one = GradedMap.identity(h, field)
    report = ValidityReport(subject)

    assoc = mu.compose(tensor_of_maps(mu, one)) - mu.compose(tensor_of_maps(one, mu))
    report.add("associativity", assoc, pres)

    eta = pres.eta
    report.add("left unit", mu.compose(tensor_of_maps(eta, one)) - one, pres)
    report.add("right unit", mu.compose(tensor_of_maps(one, eta)) - one, pres)

    report.add("d squared", d.compose(d), pres)
    leibniz = d.compose(mu) - mu.compose(
        tensor_of_maps(d, one) + tensor_of_maps(one, d))
    report.add("derivation", leibniz, pres)
    return report


def validate_dgc(pres: DGCoalgebraPresentation, subject: str = "dgc") -> ValidityReport:
    """Check coassociativity, counit laws, d²=0 and the co-Leibniz rule."""
    basis, field = pres.basis, pres.field
    h = (basis,)
    delta, d = pres.delta, pres.d
    one = GradedMap.identity(h, field)
    report = ValidityReport(subject)

    coassoc = tensor_of_maps(delta, one).compose(delta) \
        - tensor_of_maps(one, delta).compose(delta)
    report.add("coassociativity", coassoc, pres)

    eps = pres.epsilon
    report.add("left counit", tensor_of_maps(eps, one).compose(delta) - one, pres)
    report.add("right counit", tensor_of_maps(one, eps).compose(delta) - one, pres)

    report.add("d squared", d.compose(d), pres)
    coleibniz = delta.compose(d) - (
        tensor_of_maps(d, one) + tensor_of_maps(one, d)).compose(delta)
    report.add("coderivation", coleibniz, pres)
    return report


def validate_hopf(pres: DGHopfPresentation, subject: str = "hopf") -> ValidityReport:
    """Full d.g.h.a. validation: both halves, bialgebra, antipode identities."""
    basis, field = pres.basis, pres.field
    h = (basis,)
    mu, delta, S = pres.mu, pres.delta, pres.antipode
    one = GradedMap.identity(h, field)
    report = ValidityReport(subject)
    report.checks.extend(validate_dga(pres.algebra, subject).checks)
    report.checks.extend(validate_dgc(pres.coalgebra, subject).checks)

    # bialgebra condition delta∘mu = (mu⊗mu)∘(2,3)∘(delta⊗delta)
    swap23 = permutation_map(transposition(4, 2, 3), h * 4, field)
    rhs = tensor_of_maps(mu, mu).compose(swap23).compose(
        tensor_of_maps(delta, delta))
    report.add("bialgebra", delta.compose(mu) - rhs, pres)

    # epsilon is an algebra map, eta a coalgebra map
    eps, eta = pres.epsilon, pres.eta
    report.add("counit algebra map",
               eps.compose(mu) - tensor_of_maps(eps, eps), pres)
    report.add("unit coalgebra map",
               delta.compose(eta) - tensor_of_maps(eta, eta), pres)

    eta_eps = eta.compose(eps)
    left = mu.compose(tensor_of_maps(S, one)).compose(delta)
    right = mu.compose(tensor_of_maps(one, S)).compose(delta)
    report.add("antipode left", left - eta_eps, pres)
    report.add("antipode right", right - eta_eps, pres)

    # graded antialgebra property S∘mu = mu∘(S⊗S)∘(1,2); verified rather
    # than assumed since only examples pin the sign convention
    swap = permutation_map(transposition(2, 1, 2), h * 2, field)
    anti = S.compose(mu) - mu.compose(tensor_of_maps(S, S)).compose(swap)
    report.add("antipode antialgebra", anti, pres)

    # differential compatibility of the antipode follows from uniqueness;
    # check it anyway because it is cheap and catches bad inputs
    report.add("antipode chain map", S.compose(pres.d) - pres.d.compose(S), pres)
    return report


def compute_antipode(basis: GradedBasis, mu: GradedMap, delta: GradedMap,
                     field) -> GradedMap:
    """The unique antipode of a connected bialgebra, by induction on degree.

    S is the identity in degree 0, and for positive-degree x with reduced
    diagonal sum x'⊗x'' (both factors positive) it is
    S(x) = -x - sum x'·S(x'').
    """
    h = (basis,)
    cols: dict = {(0,): {(0,): field.one}}
    for deg in range(1, basis.top_degree + 1):
        for i in basis.indices_of_degree(deg):
            vec = {(i,): -field.one}
            for (a, b), coeff in delta.column((i,)).items():
                if basis.degrees[a] == 0 or basis.degrees[b] == 0:
                    continue
                s_b = cols[(b,)]  # |b| < deg, already computed
                for (sb,), c2 in s_b.items():
                    for (out,), c3 in mu.column((a, sb)).items():
                        key = (out,)
                        new = vec.get(key, field.zero) - coeff * c2 * c3
                        if new:
                            vec[key] = new
                        elif key in vec:
                            del vec[key]
            cols[(i,)] = vec
    return GradedMap(h, h, 0, field, cols)


# ---------------------------------------------------------------------------
# A(n)-algebra / C(m)-coalgebra relation checkers
# ---------------------------------------------------------------------------

@dataclass
class RelationReport:
    """Exact residuals of the higher-structure relations, one per arity."""
    residuals: dict  # ell -> GradedMap

    @property
    def ok(self) -> bool:
        return all(r.is_zero() for r in self.residuals.values())

    def first_failure(self):
        for ell in sorted(self.residuals):
            r = self.residuals[ell]
            if not r.is_zero():
                return ell, r.first_nonzero()
        return None


def _family_degree_check(maps: dict, kind: str):
    for ell, f in maps.items():
        if f.degree != 2 - ell:
            raise ValueError(f"{kind}({ell}) must have degree {2 - ell}")


def check_an_relations(maps: dict, n: int, basis: GradedBasis, field) -> RelationReport:
    """Residuals of the A(n) relations for a family {mu^(ell)}, ell <= n.

    For each ell the signed sum over j+k = ell+1, 0 <= i < j of
    (-1)**(i+i*k+ell*k+k) mu^(j)∘(1^i ⊗ mu^(k) ⊗ 1^(j-i-1)) must vanish.
    """
    _family_degree_check(maps, "mu")
    h = (basis,)
    residuals = {}
    for ell in range(1, n + 1):
        total = GradedMap.zero(h * ell, h, 3 - ell, field)
        for j in range(1, ell + 1):
            k = ell + 1 - j
            fj, fk = maps.get(j), maps.get(k)
            if fj is None or fk is None or fj.is_zero() or fk.is_zero():
                continue
            for i in range(j):
                inner = tensor_power_with_identity(fk, i, j - i - 1, basis)
                sign = (-1) ** (i + i * k + ell * k + k)
                term = fj.compose(inner)
                total = total + (term if sign > 0 else -term)
        residuals[ell] = total
    return RelationReport(residuals)


def check_cm_relations(maps: dict, m: int, basis: GradedBasis, field) -> RelationReport:
    """Residuals of the C(m) relations for a family {delta^(ell)}, dual sum."""
    _family_degree_check(maps, "delta")
    h = (basis,)
    residuals = {}
    for ell in range(1, m + 1):
        total = GradedMap.zero(h, h * ell, 3 - ell, field)
        for j in range(1, ell + 1):
            k = ell + 1 - j
            fj, fk = maps.get(j), maps.get(k)
            if fj is None or fk is None or fj.is_zero() or fk.is_zero():
                continue
            for i in range(j):
                inner = tensor_power_with_identity(fk, i, j - i - 1, basis)
                sign = (-1) ** (i + i * k + ell * k + k)
                term = inner.compose(fj)
                total = total + (term if sign > 0 else -term)
        residuals[ell] = total
    return RelationReport(residuals)


def strict_an_family(pres: DGAlgebraPresentation) -> dict:
    return {1: pres.d, 2: pres.mu}


def strict_cm_family(pres: DGCoalgebraPresentation) -> dict:
    return {1: pres.d, 2: pres.delta}


# ---------------------------------------------------------------------------
# interior tensor-power structure maps
# ---------------------------------------------------------------------------

def _iterated_diagonal(H: DGHopfPresentation, n: int) -> GradedMap:
    """H -> H^{⊗n} by iterating delta; coassociativity makes bracketing moot."""
    h = (H.basis,)
    out = GradedMap.identity(h, H.field)
    for k in range(1, n):
        out = tensor_power_with_identity(H.delta, 0, k - 1, H.basis).compose(out)
    return out


def _iterated_product(H: DGHopfPresentation, n: int) -> GradedMap:
    """H^{⊗n} -> H by iterating mu; associativity makes bracketing moot."""
    h = (H.basis,)
    out = GradedMap.identity(h, H.field)
    for k in range(1, n):
        out = out.compose(tensor_power_with_identity(H.mu, 0, k - 1, H.basis))
    return out


def interior_bimodule_power(H: DGHopfPresentation, n: int) -> tuple:
    """The n-fold interior bimodule structure (lam^n, rho^n) on H^{⊗n}.

    lam^n = mu^{⊗n} ∘ (1 3 5 ... 2n-1 2 4 ... 2n) ∘ (diagonal tower on the
    acting factor): the permutation interleaves the n diagonal components
    with the n module factors, then multiplies pairwise; rho^n is the mirror
    image.  The tower of delta's is composed in the unique shape-compatible
    order, which coassociativity collapses to the iterated diagonal.  n = 0
    gives the counit action on the ground field.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    basis, field = H.basis, H.field
    h = (basis,)
    if n == 0:
        lam = GradedMap((basis,), (), 0, field,
                        {(0,): {(): field.one}}, _trusted=True)
        return lam, lam
    from .graded import interleave_permutation
    diag = _iterated_diagonal(H, n)
    interleave = permutation_map(interleave_permutation(n), h * (2 * n), field)
    mu_pow = tensor_many([H.mu] * n)
    lam = mu_pow.compose(interleave).compose(
        tensor_of_maps(diag, GradedMap.identity(h * n, field)))
    rho = mu_pow.compose(interleave).compose(
        tensor_of_maps(GradedMap.identity(h * n, field), diag))
    return lam, rho


def interior_bicomodule_power(H: DGHopfPresentation, m: int) -> tuple:
    """The m-fold interior bicomodule structure (lam_m, rho_m) on H^{⊗m}.

    lam_m = (product tower) ∘ (1 3 5 ... 2m-1 2 4 ... 2m)^{-1} ∘ delta^{⊗m}:
    split every factor, un-interleave, and multiply the m left components
    into the new coacting factor; rho_m collects the right components.
    m = 0 gives the unit coaction.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    basis, field = H.basis, H.field
    h = (basis,)
    if m == 0:
        lam = GradedMap((), (basis,), 0, field,
                        {(): {(0,): field.one}}, _trusted=True)
        return lam, lam
    from .graded import interleave_permutation, inverse_permutation
    delta_pow = tensor_many([H.delta] * m)
    uninterleave = permutation_map(
        inverse_permutation(interleave_permutation(m)), h * (2 * m), field)
    mult = _iterated_product(H, m)
    ident = GradedMap.identity(h * m, field)
    lam = tensor_of_maps(mult, ident).compose(uninterleave).compose(delta_pow)
    rho = tensor_of_maps(ident, mult).compose(uninterleave).compose(delta_pow)
    return lam, rho


def bimodule_power_recursive(H: DGHopfPresentation, n: int) -> tuple:
    """(lam^n, rho^n) by the defining recursion; cross-check for the closed form.

    lam^n = (mu ⊗ lam^{n-1}) ∘ (2,3) ∘ (delta ⊗ 1^{⊗n}) and
    rho^n = (rho^{n-1} ⊗ mu) ∘ (n,n+1) ∘ (1^{⊗n} ⊗ delta), with base mu.
    """
    basis, field = H.basis, H.field
    h = (basis,)
    lam, rho = H.mu, H.mu
    for k in range(2, n + 1):
        swap_l = permutation_map(transposition(k + 2, 2, 3), h * (k + 2), field)
        lam = tensor_of_maps(H.mu, lam).compose(swap_l).compose(
            tensor_of_maps(H.delta, GradedMap.identity(h * k, field)))
        swap_r = permutation_map(transposition(k + 2, k, k + 1), h * (k + 2), field)
        rho = tensor_of_maps(rho, H.mu).compose(swap_r).compose(
            tensor_of_maps(GradedMap.identity(h * k, field), H.delta))
    return lam, rho


def bicomodule_power_recursive(H: DGHopfPresentation, m: int) -> tuple:
    """(lam_m, rho_m) by the defining recursion; cross-check for the closed form.

    lam_m = (mu ⊗ 1^{⊗m}) ∘ (2,3) ∘ (delta ⊗ lam_{m-1}) and
    rho_m = (1^{⊗m} ⊗ mu) ∘ (m,m+1) ∘ (rho_{m-1} ⊗ delta), with base delta.
    """
    basis, field = H.basis, H.field
    h = (basis,)
    lam, rho = H.delta, H.delta
    for k in range(2, m + 1):
        swap_l = permutation_map(transposition(k + 2, 2, 3), h * (k + 2), field)
        lam = tensor_power_with_identity(H.mu, 0, k, basis).compose(
            swap_l).compose(tensor_of_maps(H.delta, lam))
        swap_r = permutation_map(transposition(k + 2, k, k + 1), h * (k + 2), field)
        rho = tensor_power_with_identity(H.mu, k, 0, basis).compose(
            swap_r).compose(tensor_of_maps(rho, H.delta))
    return lam, rho
