"""Order-by-order deformations of a d.g. Hopf algebra.

A truncated deformation carries coefficient families d_i, mu_i, delta_i
(normalized cochains of tridegree (1,1,1), (0,2,1), (0,1,2)) for
1 <= i <= N; validity means the six structure conditions

    d_t² = 0, associativity, coassociativity, bialgebra, derivation,
    coderivation

hold modulo t^{N+1}, checked exactly coefficient by coefficient.  The t^k
residuals of the six conditions assemble into a total 3-cochain with signs
pinned by one requirement: at k = 1 the assembly must equal D applied to the
infinitesimal d_1 + mu_1 + delta_1.  That makes the obstruction residual a
cocycle whose exactness is exactly the solvability of the extension step,
with extension by x solving D(x) = -residual.

Gauge transformations phi_t = 1 + sum t^i phi_i act by

    d'   = phi^{-1} ∘ d_t ∘ phi
    mu'  = phi^{-1} ∘ mu_t ∘ (phi ⊗ phi)
    delta' = (phi ⊗ phi)^{-1} ∘ delta_t ∘ phi

and the infinitesimal moves by exactly -D(phi_1) under transport, which is
what drives the rigidity loop: while the leading coefficients are
coboundaries D(psi), the gauge 1 + t^k psi clears them one order at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .cochains import Cochain, HopfComplex
from .cohomology import (
    AssembledComplex,
    ComplexWindow,
    TotalCochain,
    assemble,
    solve_coboundary,
)
from .graded import GradedMap, permutation_map, tensor_of_maps, transposition

D_KEY, MU_KEY, DELTA_KEY = (1, 1, 1), (0, 2, 1), (0, 1, 2)

CONDITION_NAMES = ("differential", "derivation", "coderivation",
                   "associativity", "bialgebra", "coassociativity")


def _series_term(series, i, template):
    if i < len(series):
        return series[i]
    return GradedMap.zero(template.source, template.target, template.degree,
                          template.field)


def series_compose(a: list, b: list, order: int) -> list:
    """Coefficients of (sum t^i a_i) ∘ (sum t^j b_j) through t^order."""
    out = []
    for k in range(order + 1):
        term = None
        for i in range(k + 1):
            if i >= len(a) or k - i >= len(b):
                continue
            piece = a[i].compose(b[k - i])
            term = piece if term is None else term + piece
        if term is None:
            term = a[0].compose(b[0]).scale(a[0].field.zero)
        out.append(term)
    return out


def series_tensor(a: list, b: list, order: int) -> list:
    out = []
    for k in range(order + 1):
        term = None
        for i in range(k + 1):
            if i >= len(a) or k - i >= len(b):
                continue
            piece = tensor_of_maps(a[i], b[k - i])
            term = piece if term is None else term + piece
        if term is None:
            zero = tensor_of_maps(a[0], b[0])
            term = zero.scale(zero.field.zero)
        out.append(term)
    return out


def series_invert(phi: list, order: int) -> list:
    """Inverse of a series with invertible (identity) leading term."""
    out = [phi[0]]
    for k in range(1, order + 1):
        term = None
        for i in range(1, k + 1):
            if i >= len(phi):
                continue
            piece = phi[i].compose(out[k - i])
            term = piece if term is None else term + piece
        out.append(-term if term is not None else phi[0].scale(phi[0].field.zero))
    return out


class TruncatedDeformation:
    """An order-N deformation of a d.g.h.a., exact in every coefficient."""

    def __init__(self, base, d_coeffs, mu_coeffs, delta_coeffs):
        n = len(d_coeffs)
        if not (len(mu_coeffs) == n == len(delta_coeffs)):
            raise ValueError("coefficient families must share the order")
        self.base = base
        self.d_coeffs = list(d_coeffs)
        self.mu_coeffs = list(mu_coeffs)
        self.delta_coeffs = list(delta_coeffs)
        for c, key in [(d_coeffs, D_KEY), (mu_coeffs, MU_KEY),
                       (delta_coeffs, DELTA_KEY)]:
            for coch in c:
                if (coch.p, coch.m, coch.n) != key:
                    raise ValueError(f"coefficient of tridegree "
                                     f"{(coch.p, coch.m, coch.n)}, wanted {key}")

    @property
    def order(self) -> int:
        return len(self.d_coeffs)

    @classmethod
    def trivial(cls, base, order: int) -> "TruncatedDeformation":
        field = base.field
        h = (base.basis,)
        dz = Cochain(GradedMap.zero(h, h, 1, field))
        mz = Cochain(GradedMap.zero(h * 2, h, 0, field))
        cz = Cochain(GradedMap.zero(h, h * 2, 0, field))
        return cls(base, [dz] * order, [mz] * order, [cz] * order)

    def truncate(self, order: int) -> "TruncatedDeformation":
        if order > self.order:
            raise ValueError("cannot truncate upward")
        return TruncatedDeformation(self.base, self.d_coeffs[:order],
                                    self.mu_coeffs[:order],
                                    self.delta_coeffs[:order])

    def d_series(self) -> list:
        return [self.base.d] + [c.map for c in self.d_coeffs]

    def mu_series(self) -> list:
        return [self.base.mu] + [c.map for c in self.mu_coeffs]

    def delta_series(self) -> list:
        return [self.base.delta] + [c.map for c in self.delta_coeffs]

    def coefficient_total(self, k: int) -> TotalCochain:
        """The order-k coefficients as a total 2-cochain d_k + mu_k + delta_k."""
        if not 1 <= k <= self.order:
            raise ValueError("coefficient order out of range")
        return TotalCochain("hopf", {
            D_KEY: self.d_coeffs[k - 1],
            MU_KEY: self.mu_coeffs[k - 1],
            DELTA_KEY: self.delta_coeffs[k - 1],
        })

    def is_trivial(self) -> bool:
        return all(c.is_zero() for c in
                   self.d_coeffs + self.mu_coeffs + self.delta_coeffs)

    def __eq__(self, other):
        return (isinstance(other, TruncatedDeformation)
                and self.base is other.base
                and self.d_coeffs == other.d_coeffs
                and self.mu_coeffs == other.mu_coeffs
                and self.delta_coeffs == other.delta_coeffs)


class GaugeTransformation:
    """phi_t = 1 + sum t^i phi_i with normalized degree-0 coefficients."""

    def __init__(self, base, phis):
        self.base = base
        self.phis = list(phis)
        for coch in self.phis:
            if (coch.p, coch.m, coch.n) != (0, 1, 1):
                raise ValueError("gauge coefficients must be (0,1,1)-cochains")

    @property
    def order(self) -> int:
        return len(self.phis)

    @classmethod
    def identity(cls, base, order: int) -> "GaugeTransformation":
        h = (base.basis,)
        z = Cochain(GradedMap.zero(h, h, 0, base.field))
        return cls(base, [z] * order)

    def series(self) -> list:
        one = GradedMap.identity((self.base.basis,), self.base.field)
        return [one] + [c.map for c in self.phis]

    def inverse(self) -> "GaugeTransformation":
        inv = series_invert(self.series(), self.order)
        return GaugeTransformation(self.base, [Cochain(m) for m in inv[1:]])

    def compose(self, other: "GaugeTransformation") -> "GaugeTransformation":
        """The gauge acting as self first, then other: series self ∘ other."""
        order = max(self.order, other.order)
        comp = series_compose(self.series(), other.series(), order)
        return GaugeTransformation(self.base, [Cochain(m) for m in comp[1:]])

    def is_identity(self) -> bool:
        return all(c.is_zero() for c in self.phis)


@dataclass
class ConditionResidual:
    order: int
    condition: str
    residual: GradedMap

    @property
    def ok(self) -> bool:
        return self.residual.is_zero()


@dataclass
class DeformationReport:
    residuals: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.residuals)

    def first_failure(self):
        for r in self.residuals:
            if not r.ok:
                return r
        return None


def structure_residuals(defm: TruncatedDeformation, k: int) -> dict:
    """The t^k residuals of the six conditions, signed for assembly.

    The orientation is fixed so that at k = 1 the assembled total 3-cochain
    equals D applied to the infinitesimal; with that choice a deformation
    valid to order k-1 extends by any x with D(x) = -residual.
    """
    base = defm.base
    field = base.field
    h = (base.basis,)
    ds = defm.d_series()
    ms = defm.mu_series()
    cs = defm.delta_series()
    one = [GradedMap.identity(h, field)]
    swap23 = [permutation_map(transposition(4, 2, 3), h * 4, field)]

    def at(series_result):
        return series_result[k]

    dd = at(series_compose(ds, ds, k))

    d_on_pair = [tensor_of_maps(a, one[0]) + tensor_of_maps(one[0], a) for a in ds]
    der = at(series_compose(ds, ms, k)) - at(series_compose(ms, d_on_pair, k))
    coder = at(series_compose(cs, ds, k)) - at(series_compose(d_on_pair, cs, k))

    assoc = at(series_compose(ms, series_tensor(ms, one, k), k)) \
        - at(series_compose(ms, series_tensor(one, ms, k), k))

    quartic = series_compose(
        series_compose(series_tensor(ms, ms, k), swap23, k),
        series_tensor(cs, cs, k), k)
    bial = at(series_compose(cs, ms, k)) - at(quartic)

    coassoc = at(series_compose(series_tensor(cs, one, k), cs, k)) \
        - at(series_compose(series_tensor(one, cs, k), cs, k))

    return {
        (2, 1, 1): -dd,
        (1, 2, 1): -der,
        (1, 1, 2): -coder,
        (0, 3, 1): assoc,
        (0, 2, 2): -bial,
        (0, 1, 3): -coassoc,
    }


def validate_deformation(defm: TruncatedDeformation) -> DeformationReport:
    """Exact residuals of all six conditions at every order 1..N."""
    report = DeformationReport()
    names = {
        (2, 1, 1): "differential",
        (1, 2, 1): "derivation",
        (1, 1, 2): "coderivation",
        (0, 3, 1): "associativity",
        (0, 2, 2): "bialgebra",
        (0, 1, 3): "coassociativity",
    }
    for k in range(1, defm.order + 1):
        for key, res in sorted(structure_residuals(defm, k).items()):
            report.residuals.append(ConditionResidual(k, names[key], res))
    return report


@dataclass
class ObstructionClass:
    order: int
    residual: TotalCochain
    class_status: str              # cocycle-verified | exact-with-witness | nonzero-class
    witness: TotalCochain | None = None
    certificate: object = None


class DeformationEngine:
    """Deformation calculus of one d.g.h.a. over its q = 3 window."""

    def __init__(self, H):
        self.H = H
        self.window = ComplexWindow("hopf", 3, 2)
        self.cplx = AssembledComplex(H, self.window, [1, 2, 3, 4])

    # -- basic invariants ------------------------------------------------

    def is_cocycle(self, total: TotalCochain) -> bool:
        image, clipped = self.cplx.apply_total(total)
        return (not clipped) and image.is_zero()

    def infinitesimal(self, defm: TruncatedDeformation) -> TotalCochain:
        """d_1 + mu_1 + delta_1, with its cocycle property verified."""
        report = validate_deformation(defm.truncate(1))
        if not report.ok:
            bad = report.first_failure()
            raise ValueError(
                f"deformation violates {bad.condition} at order {bad.order}")
        total = defm.coefficient_total(1)
        if not self.is_cocycle(total):
            raise AssertionError("valid order-1 coefficients failed the "
                                 "cocycle check")
        return total

    def obstruction(self, defm: TruncatedDeformation, k: int) -> ObstructionClass:
        """The order-k obstruction of a deformation valid to order k-1."""
        if k < 1:
            raise ValueError("obstruction order must be >= 1")
        prefix = defm.truncate(min(defm.order, k - 1))
        report = validate_deformation(prefix)
        if not report.ok:
            bad = report.first_failure()
            raise ValueError(
                f"deformation violates {bad.condition} at order {bad.order}")
        work = _pad(defm, k) if defm.order < k else defm
        comps = structure_residuals(work.truncate(k), k)
        total = TotalCochain("hopf", {key: Cochain(m) for key, m in comps.items()
                                      if not m.is_zero()})
        if not self.is_cocycle(total):
            raise AssertionError("obstruction residual is not a cocycle")
        return ObstructionClass(k, total, "cocycle-verified")

    def extend(self, defm: TruncatedDeformation):
        """Extend a valid order-(k-1) deformation to order k = order+1.

        Returns (extended, obstruction); on a nonzero obstruction class the
        first slot is None and the class carries the rank certificate.
        """
        k = defm.order + 1
        obs = self.obstruction(defm, k)
        witness, certificate = solve_coboundary(self.cplx, obs.residual.scale(-1))
        if witness is None:
            obs.class_status = "nonzero-class"
            obs.certificate = certificate
            return None, obs
        obs.class_status = "exact-with-witness"
        obs.witness = witness
        zero2 = TruncatedDeformation.trivial(self.H, 1)
        d_k = witness.components.get(D_KEY, zero2.d_coeffs[0])
        mu_k = witness.components.get(MU_KEY, zero2.mu_coeffs[0])
        delta_k = witness.components.get(DELTA_KEY, zero2.delta_coeffs[0])
        extended = TruncatedDeformation(
            self.H,
            defm.d_coeffs + [d_k],
            defm.mu_coeffs + [mu_k],
            defm.delta_coeffs + [delta_k])
        recheck = validate_deformation(extended)
        if not recheck.ok:
            raise AssertionError("extension failed exact re-validation")
        return extended, obs

    # -- gauge action ------------------------------------------------------

    def apply_gauge(self, defm: TruncatedDeformation,
                    gauge: GaugeTransformation) -> TruncatedDeformation:
        """Transport the deformation along phi_t, exactly, mod t^{N+1}."""
        if gauge.order < defm.order:
            raise ValueError("gauge order must be at least the deformation order")
        n = defm.order
        phi = gauge.series()
        psi = series_invert(phi, n)
        phi2 = series_tensor(phi, phi, n)
        psi2 = series_tensor(psi, psi, n)
        d_new = series_compose(series_compose(psi, defm.d_series(), n), phi, n)
        mu_new = series_compose(series_compose(psi, defm.mu_series(), n), phi2, n)
        delta_new = series_compose(series_compose(psi2, defm.delta_series(), n),
                                   phi, n)
        out = TruncatedDeformation(
            self.H,
            [Cochain(m) for m in d_new[1:]],
            [Cochain(m) for m in mu_new[1:]],
            [Cochain(m) for m in delta_new[1:]])
        if d_new[0] != self.H.d or mu_new[0] != self.H.mu \
                or delta_new[0] != self.H.delta:
            raise AssertionError("gauge transport moved the base structure")
        recheck = validate_deformation(out)
        if not recheck.ok:
            raise AssertionError("gauge transport broke a structure condition")
        return out

    def trivialize(self, defm: TruncatedDeformation):
        """A gauge carrying the deformation to the trivial one, if one exists.

        Returns (gauge, None) with apply_gauge(defm, gauge) trivial mod
        t^{N+1}, or (None, ObstructionClass) naming the first order whose
        leading class is not a coboundary.
        """
        n = defm.order
        current = defm
        total_gauge = GaugeTransformation.identity(self.H, n)
        for k in range(1, n + 1):
            leading = current.coefficient_total(k)
            if leading.is_zero():
                continue
            if not self.is_cocycle(leading):
                raise AssertionError("leading coefficients of a valid "
                                     "deformation must form a cocycle")
            psi, certificate = solve_coboundary(self.cplx, leading)
            if psi is None:
                return None, ObstructionClass(k, leading, "nonzero-class",
                                              certificate=certificate)
            zero = Cochain(GradedMap.zero((self.H.basis,), (self.H.basis,), 0,
                                          self.H.field))
            phis = [zero] * n
            phis[k - 1] = psi.components.get((0, 1, 1), zero)
            step = GaugeTransformation(self.H, phis)
            current = self.apply_gauge(current, step)
            if not current.coefficient_total(k).is_zero():
                raise AssertionError("gauge step failed to clear its order")
            total_gauge = total_gauge.compose(step)
        final = self.apply_gauge(defm, total_gauge)
        if not final.is_trivial():
            raise AssertionError("trivializing gauge failed re-verification")
        return total_gauge, None


def _pad(defm: TruncatedDeformation, order: int) -> TruncatedDeformation:
    extra = order - defm.order
    pad = TruncatedDeformation.trivial(defm.base, extra)
    return TruncatedDeformation(
        defm.base,
        defm.d_coeffs + pad.d_coeffs,
        defm.mu_coeffs + pad.mu_coeffs,
        defm.delta_coeffs + pad.delta_coeffs)


# ---------------------------------------------------------------------------
# seeded random families for property tests and the CLI
# ---------------------------------------------------------------------------

def random_gauge(engine: DeformationEngine, order: int, rng,
                 bound: int = 2) -> GaugeTransformation:
    """A seeded gauge with small integer coordinates in the window basis."""
    H = engine.H
    cplx = engine.cplx
    phis = []
    block = next((b for b in cplx.spaces[1] if b.key == (0, 1, 1)), None)
    dim = block.dim if block else 0
    base_offset = cplx.offsets[1].get((0, 1, 1), 0)
    for _ in range(order):
        vec = {}
        for i in range(dim):
            c = rng.randint(-bound, bound)
            if c:
                vec[base_offset + i] = H.field(c)
        total = cplx.devectorize(vec, 1)
        zero = Cochain(GradedMap.zero((H.basis,), (H.basis,), 0, H.field))
        phis.append(total.components.get((0, 1, 1), zero))
    return GaugeTransformation(H, phis)


def scrambled_trivial(engine: DeformationEngine, order: int,
                      rng, bound: int = 2) -> tuple:
    """A gauge transport of the trivial deformation; always valid."""
    gauge = random_gauge(engine, order, rng, bound)
    trivial = TruncatedDeformation.trivial(engine.H, order)
    return engine.apply_gauge(trivial, gauge), gauge


def random_infinitesimal(engine: DeformationEngine, rng,
                         bound: int = 2) -> TotalCochain:
    """A seeded integer combination of the degree-2 cocycle basis."""
    kernel = engine.cplx.matrices[2].kernel_basis()
    field = engine.H.field
    vec: dict = {}
    for base_vec in kernel:
        c = rng.randint(-bound, bound)
        if not c:
            continue
        for j, v in base_vec.items():
            new = vec.get(j, field.zero) + field(c) * v
            if new:
                vec[j] = new
            elif j in vec:
                del vec[j]
    return engine.cplx.devectorize(vec, 2)


def random_valid_deformation(engine: DeformationEngine, order: int, rng,
                             bound: int = 2):
    """Extend a random infinitesimal order by order; None if obstructed."""
    H = engine.H
    zero2 = TruncatedDeformation.trivial(H, 1)
    inf = random_infinitesimal(engine, rng, bound)
    defm = TruncatedDeformation(
        H,
        [inf.components.get(D_KEY, zero2.d_coeffs[0])],
        [inf.components.get(MU_KEY, zero2.mu_coeffs[0])],
        [inf.components.get(DELTA_KEY, zero2.delta_coeffs[0])])
    while defm.order < order:
        extended, obs = engine.extend(defm)
        if extended is None:
            return None
        defm = extended
    return defm
