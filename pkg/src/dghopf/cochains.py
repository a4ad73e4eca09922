"""Hochschild, Cartier, and Hochschild-Cartier cochains and differentials.

A cochain is a degree-homogeneous map between tensor powers, stored
normalized: columns at source labels containing a degree-0 factor and (on
the coalgebra side) rows at such target labels are projected away at
construction.  Which sides are normalized depends on the complex: Hochschild
cochains normalize the source, Cartier cochains the target, and the triple
complex both.

The component differentials follow the operator-level formulas

    d_B(f)   = (-1)^p f∘d_(m-2) - d_M∘f
    del_B(f) = lam∘(1⊗f) - f∘bar_(m-1) + (-1)^(m+1) rho∘(f⊗1)
    d_Om(g)  = (-1)^q g∘d_N - d_(n-2)∘g
    del_Om(g)= (1⊗g)∘lam - cobar_(n-2)∘g + (-1)^(n+1) (g⊗1)∘rho
    d_C, del_C, delta_C = the same shapes with interior-power structure maps

and the total differentials carry the component sign prefactors

    D_B = d_B - (-1)^p del_B          on bidegree (p, m)
    D_Om = del_Om - (-1)^n d_Om       on bidegree (q, n)
    D_C = (-1)^(m(n+1)) d_C + (-1)^(n(p+1)) del_C + (-1)^(p(m+1)) delta_C

which make every assembled square vanish identically.
"""

from __future__ import annotations

from .graded import GradedMap, contains_unit, tensor_of_maps
from .resolutions import bar_diff, cobar_diff, internal_diff
from .structures import (
    Bicomodule,
    Bimodule,
    interior_bicomodule_power,
    interior_bimodule_power,
)


class Cochain:
    """A normalized homogeneous cochain wrapping a ``GradedMap``.

    ``p`` is the internal degree of the map, ``m``/``n`` the source/target
    arities.  Construction projects onto the normalized subspace for the
    requested sides; the projection is idempotent, so already-normalized
    input passes through unchanged.
    """

    __slots__ = ("map", "normal_source", "normal_target")

    def __init__(self, gmap: GradedMap, normal_source: bool = True,
                 normal_target: bool = True):
        col_keep = (lambda lab: not contains_unit(gmap.source, lab)) \
            if normal_source else None
        row_keep = (lambda lab: not contains_unit(gmap.target, lab)) \
            if normal_target else None
        if col_keep or row_keep:
            gmap = gmap.restrict(col_keep=col_keep, row_keep=row_keep)
        self.map = gmap
        self.normal_source = normal_source
        self.normal_target = normal_target

    @property
    def p(self) -> int:
        return self.map.degree

    @property
    def m(self) -> int:
        return len(self.map.source)

    @property
    def n(self) -> int:
        return len(self.map.target)

    def is_zero(self) -> bool:
        return self.map.is_zero()

    def same_flags(self, gmap: GradedMap) -> "Cochain":
        return Cochain(gmap, self.normal_source, self.normal_target)

    def __add__(self, other: "Cochain") -> "Cochain":
        return self.same_flags(self.map + other.map)

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self.same_flags(self.map - other.map)

    def __neg__(self) -> "Cochain":
        return self.same_flags(-self.map)

    def scale(self, c) -> "Cochain":
        return self.same_flags(self.map.scale(c))

    def __eq__(self, other):
        return isinstance(other, Cochain) and self.map == other.map

    def __hash__(self):
        raise TypeError("Cochain is not hashable")

    def __repr__(self):
        return f"Cochain(p={self.p}, m={self.m}, n={self.n}, {self.map!r})"


def normalize(gmap: GradedMap, normal_source: bool = True,
              normal_target: bool = True) -> Cochain:
    """Project a raw map onto the normalized cochain subspace."""
    return Cochain(gmap, normal_source, normal_target)


def _sign(k: int):
    return 1 if k % 2 == 0 else -1


class HochschildComplex:
    """The Hochschild double complex of a d.g.a. with bimodule coefficients."""

    theory = "hochschild"
    normal_sides = (True, False)

    def __init__(self, A, M: Bimodule | None = None):
        self.A = A
        self.M = M if M is not None else Bimodule.self_bimodule(A)
        self.field = A.field
        self._bars: dict = {}
        self._internals: dict = {}

    def make(self, gmap: GradedMap) -> Cochain:
        return Cochain(gmap, *self.normal_sides)

    def bar(self, m: int) -> GradedMap:
        if m not in self._bars:
            self._bars[m] = bar_diff(self.A, m)
        return self._bars[m]

    def internal(self, m: int) -> GradedMap:
        if m not in self._internals:
            self._internals[m] = internal_diff(self.A, m)
        return self._internals[m]

    def source_slots(self, m: int):
        return (self.A.basis,) * m

    def target_slots(self, n: int = 1):
        return (self.M.basis,)

    def d_B(self, f: Cochain) -> Cochain:
        """d_B: bidegree (1, 0)."""
        p, m = f.p, f.m
        out = (-self.M.d.compose(f.map))
        if m >= 1:
            term = f.map.compose(self.internal(m - 2))
            out = out + (term if _sign(p) > 0 else -term)
        return self.make(out)

    def del_B(self, f: Cochain) -> Cochain:
        """del_B: bidegree (0, 1)."""
        m = f.m
        one = GradedMap.identity((self.A.basis,), self.field)
        out = self.M.lam.compose(tensor_of_maps(one, f.map))
        if m >= 1:
            out = out - f.map.compose(self.bar(m - 1))
        rho_term = self.M.rho.compose(tensor_of_maps(f.map, one))
        out = out + (rho_term if _sign(m + 1) > 0 else -rho_term)
        return self.make(out)

    def signed_total(self, key, f: Cochain) -> dict:
        """D_B = d_B - (-1)^p del_B applied to the component at ``key``."""
        p, m = key
        out = {}
        dv = self.d_B(f)
        if not dv.is_zero():
            out[(p + 1, m)] = dv
        dh = self.del_B(f)
        if not dh.is_zero():
            out[(p, m + 1)] = dh if _sign(p) < 0 else -dh
        return out

    def total_degree(self, key) -> int:
        return key[0] + key[1]


class CartierComplex:
    """The Cartier double complex of a d.g.c. with bicomodule coefficients."""

    theory = "cartier"
    normal_sides = (False, True)

    def __init__(self, C, N: Bicomodule | None = None):
        self.C = C
        self.N = N if N is not None else Bicomodule.self_bicomodule(C)
        self.field = C.field
        self._cobars: dict = {}
        self._internals: dict = {}

    def make(self, gmap: GradedMap) -> Cochain:
        return Cochain(gmap, *self.normal_sides)

    def cobar(self, n: int) -> GradedMap:
        if n not in self._cobars:
            self._cobars[n] = cobar_diff(self.C, n)
        return self._cobars[n]

    def internal(self, n: int) -> GradedMap:
        if n not in self._internals:
            self._internals[n] = internal_diff(self.C, n)
        return self._internals[n]

    def source_slots(self, m: int = 1):
        return (self.N.basis,)

    def target_slots(self, n: int):
        return (self.C.basis,) * n

    def d_Omega(self, g: Cochain) -> Cochain:
        """d_Omega: bidegree (1, 0)."""
        q, n = g.p, g.n
        term = g.map.compose(self.N.d)
        out = term if _sign(q) > 0 else -term
        if n >= 1:
            out = out - self.internal(n - 2).compose(g.map)
        return self.make(out)

    def del_Omega(self, g: Cochain) -> Cochain:
        """del_Omega: bidegree (0, 1)."""
        n = g.n
        one = GradedMap.identity((self.C.basis,), self.field)
        out = tensor_of_maps(one, g.map).compose(self.N.lam)
        if n >= 1:
            out = out - self.cobar(n - 2).compose(g.map)
        rho_term = tensor_of_maps(g.map, one).compose(self.N.rho)
        out = out + (rho_term if _sign(n + 1) > 0 else -rho_term)
        return self.make(out)

    def signed_total(self, key, g: Cochain) -> dict:
        """D_Omega = del_Omega - (-1)^n d_Omega on the component at ``key``."""
        q, n = key
        out = {}
        dh = self.del_Omega(g)
        if not dh.is_zero():
            out[(q, n + 1)] = dh
        dv = self.d_Omega(g)
        if not dv.is_zero():
            out[(q + 1, n)] = dv if _sign(n) < 0 else -dv
        return out

    def total_degree(self, key) -> int:
        return key[0] + key[1]


class HopfComplex:
    """The Hochschild-Cartier triple complex of a d.g.h.a., coefficients H."""

    theory = "hopf"
    normal_sides = (True, True)

    def __init__(self, H):
        self.H = H
        self.field = H.field
        self._bars: dict = {}
        self._cobars: dict = {}
        self._internals: dict = {}
        self._bimod_powers: dict = {}
        self._bicomod_powers: dict = {}

    def make(self, gmap: GradedMap) -> Cochain:
        return Cochain(gmap, *self.normal_sides)

    def bar(self, m: int) -> GradedMap:
        if m not in self._bars:
            self._bars[m] = bar_diff(self.H.algebra, m)
        return self._bars[m]

    def cobar(self, n: int) -> GradedMap:
        if n not in self._cobars:
            self._cobars[n] = cobar_diff(self.H.coalgebra, n)
        return self._cobars[n]

    def internal(self, m: int) -> GradedMap:
        if m not in self._internals:
            self._internals[m] = internal_diff(self.H.algebra, m)
        return self._internals[m]

    def bimodule_power(self, n: int):
        if n not in self._bimod_powers:
            self._bimod_powers[n] = interior_bimodule_power(self.H, n)
        return self._bimod_powers[n]

    def bicomodule_power(self, m: int):
        if m not in self._bicomod_powers:
            self._bicomod_powers[m] = interior_bicomodule_power(self.H, m)
        return self._bicomod_powers[m]

    def source_slots(self, m: int):
        return (self.H.basis,) * m

    def target_slots(self, n: int):
        return (self.H.basis,) * n

    def d_C(self, f: Cochain) -> Cochain:
        """Tridegree (1,0,0): internal-degree differential."""
        p, m, n = f.p, f.m, f.n
        out = GradedMap.zero(f.map.source, f.map.target, p + 1, self.field)
        if m >= 1:
            term = f.map.compose(self.internal(m - 2))
            out = out + (term if _sign(p) > 0 else -term)
        if n >= 1:
            out = out - self.internal(n - 2).compose(f.map)
        return self.make(out)

    def del_C(self, f: Cochain) -> Cochain:
        """Tridegree (0,1,0): Hochschild direction with interior powers."""
        m, n = f.m, f.n
        lam, rho = self.bimodule_power(n)
        one = GradedMap.identity((self.H.basis,), self.field)
        out = lam.compose(tensor_of_maps(one, f.map))
        if m >= 1:
            out = out - f.map.compose(self.bar(m - 1))
        rho_term = rho.compose(tensor_of_maps(f.map, one))
        out = out + (rho_term if _sign(m + 1) > 0 else -rho_term)
        return self.make(out)

    def delta_C(self, f: Cochain) -> Cochain:
        """Tridegree (0,0,1): Cartier direction with interior powers."""
        m, n = f.m, f.n
        lam, rho = self.bicomodule_power(m)
        one = GradedMap.identity((self.H.basis,), self.field)
        out = tensor_of_maps(one, f.map).compose(lam)
        if n >= 1:
            out = out - self.cobar(n - 2).compose(f.map)
        rho_term = tensor_of_maps(f.map, one).compose(rho)
        out = out + (rho_term if _sign(n + 1) > 0 else -rho_term)
        return self.make(out)

    def signed_total(self, key, f: Cochain) -> dict:
        """D_C with the component prefactors, as a dict of new components."""
        p, m, n = key
        out = {}
        dc = self.d_C(f)
        if not dc.is_zero():
            out[(p + 1, m, n)] = dc if _sign(m * (n + 1)) > 0 else -dc
        hc = self.del_C(f)
        if not hc.is_zero():
            out[(p, m + 1, n)] = hc if _sign(n * (p + 1)) > 0 else -hc
        cc = self.delta_C(f)
        if not cc.is_zero():
            out[(p, m, n + 1)] = cc if _sign(p * (m + 1)) > 0 else -cc
        return out

    def total_degree(self, key) -> int:
        p, m, n = key
        return p + m + n - 1


def complex_for(presentation, theory: str, coefficients=None):
    """Build the differential context for a theory over a presentation."""
    if theory in ("hochschild", "harrison"):
        algebra = getattr(presentation, "algebra", presentation)
        return HochschildComplex(algebra, coefficients)
    if theory == "cartier":
        coalgebra = getattr(presentation, "coalgebra", presentation)
        return CartierComplex(coalgebra, coefficients)
    if theory == "hopf":
        return HopfComplex(presentation)
    raise ValueError(f"unknown theory {theory!r}")
