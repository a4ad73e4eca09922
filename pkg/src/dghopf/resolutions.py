"""Two-sided bar and cobar differentials, internal differentials, homotopies.

The external differentials are built both from their inductive definitions
and from the closed alternating sums, and the two constructions are compared
entry by entry: agreement is a cheap correctness oracle, since most sign
errors break one form but not the other.

Index conventions (all exact, verified by ``check_resolution_identities``):

* ``bar_diff(A, m)``: A^{⊗(m+2)} -> A^{⊗(m+1)}, m >= 0, external degree -1.
* ``internal_diff(P, m)``: A^{⊗(m+2)} -> A^{⊗(m+2)}, m >= -1, degree +1.
* ``cobar_diff(C, n)``: C^{⊗(n+2)} -> C^{⊗(n+3)}, n >= -1.
* ``homotopy_s(A, m)``: A^{⊗(m+1)} -> A^{⊗(m+2)} prepends the unit; the
  homotopy identity reads  bar(m)∘s(m) + s(m-1)∘bar(m-1) = 1 on A^{⊗(m+1)}.
* ``homotopy_tau(C, n)``: C^{⊗(n+2)} -> C^{⊗(n+1)} hits the first factor
  with the counit; the verified dual identity reads
  tau(n+1)∘cobar(n) + cobar(n-1)∘tau(n) = 1 on C^{⊗(n+2)}.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .graded import GradedMap, tensor_of_maps, tensor_power_with_identity


def bar_diff(A, m: int) -> GradedMap:
    """The bar differential on external index m (sum of (-1)^i 1⊗..mu..⊗1)."""
    if m < 0:
        raise ValueError("bar index must be >= 0")
    basis, field = A.basis, A.field
    closed = GradedMap.zero((basis,) * (m + 2), (basis,) * (m + 1), 0, field)
    for i in range(m + 1):
        term = tensor_power_with_identity(A.mu, i, m - i, basis)
        closed = closed + (term if i % 2 == 0 else -term)
    inductive = _bar_inductive(A, m)
    if closed != inductive:
        raise AssertionError("bar differential: inductive and closed forms differ")
    return closed


def _bar_inductive(A, m: int) -> GradedMap:
    basis, field = A.basis, A.field
    out = A.mu
    for k in range(1, m + 1):
        out = tensor_power_with_identity(A.mu, 0, k, basis) - tensor_of_maps(
            GradedMap.identity((basis,), field), out)
    return out


def internal_diff(P, m: int) -> GradedMap:
    """The internal differential on A^{⊗(m+2)}, m >= -1."""
    if m < -1:
        raise ValueError("internal index must be >= -1")
    basis, field = P.basis, P.field
    arity = m + 2
    closed = GradedMap.zero((basis,) * arity, (basis,) * arity, 1, field)
    for i in range(arity):
        closed = closed + tensor_power_with_identity(P.d, i, arity - 1 - i, basis)
    inductive = _internal_inductive(P, m)
    if closed != inductive:
        raise AssertionError("internal differential: inductive and closed forms differ")
    return closed


def _internal_inductive(P, m: int) -> GradedMap:
    basis, field = P.basis, P.field
    out = P.d
    for k in range(0, m + 1):
        out = tensor_power_with_identity(P.d, 0, k + 1, basis) + tensor_of_maps(
            GradedMap.identity((basis,), field), out)
    return out


def cobar_diff(C, n: int) -> GradedMap:
    """The cobar differential on external index n (sum of (-1)^i 1⊗..delta..⊗1)."""
    if n < -1:
        raise ValueError("cobar index must be >= -1")
    basis, field = C.basis, C.field
    arity = n + 2
    closed = GradedMap.zero((basis,) * arity, (basis,) * (arity + 1), 0, field)
    for i in range(arity):
        term = tensor_power_with_identity(C.delta, i, arity - 1 - i, basis)
        closed = closed + (term if i % 2 == 0 else -term)
    inductive = _cobar_inductive(C, n)
    if closed != inductive:
        raise AssertionError("cobar differential: inductive and closed forms differ")
    return closed


def _cobar_inductive(C, n: int) -> GradedMap:
    basis, field = C.basis, C.field
    out = C.delta
    for k in range(0, n + 1):
        out = tensor_power_with_identity(C.delta, 0, k + 1, basis) - tensor_of_maps(
            GradedMap.identity((basis,), field), out)
    return out


def homotopy_s(A, m: int) -> GradedMap:
    """The contracting homotopy s_m = (unit ⊗ 1^{⊗(m+1)}): prepend 1."""
    if m < 0:
        raise ValueError("homotopy index must be >= 0")
    basis, field = A.basis, A.field
    return tensor_of_maps(A.eta, GradedMap.identity((basis,) * (m + 1), field))


def homotopy_tau(C, n: int) -> GradedMap:
    """The contracting homotopy tau_n = (counit ⊗ 1^{⊗(n+1)})."""
    if n < 0:
        raise ValueError("homotopy index must be >= 0")
    basis, field = C.basis, C.field
    return tensor_of_maps(C.epsilon, GradedMap.identity((basis,) * (n + 1), field))


@dataclass
class ResolutionReport:
    """Exact residuals of every resolution identity on a finite index range."""
    checks: list = dc_field(default_factory=list)  # (name, ok, first_nonzero)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def add(self, name: str, residual: GradedMap) -> None:
        first = residual.first_nonzero()
        self.checks.append((name, first is None, first))

    def lines(self) -> list[str]:
        return [f"{name}: {'ok' if ok else f'residual at {first}'}"
                for name, ok, first in self.checks]


def check_resolution_identities(pres, max_index: int,
                                coalgebra=None) -> ResolutionReport:
    """Verify the bar/cobar/internal identities up to the given external cap.

    ``pres`` supplies the algebra side; the coalgebra side is taken from
    ``coalgebra`` or from ``pres`` itself when it carries a diagonal.
    """
    report = ResolutionReport()
    A = pres
    C = coalgebra if coalgebra is not None else (
        pres if hasattr(pres, "delta") else None)

    bars = {m: bar_diff(A, m) for m in range(max_index + 1)}
    internals = {m: internal_diff(A, m) for m in range(-1, max_index + 1)}
    homos = {m: homotopy_s(A, m) for m in range(max_index + 1)}
    one = GradedMap.identity((A.basis,), A.field)

    for m in range(1, max_index + 1):
        report.add(f"bar^2 at m={m}", bars[m - 1].compose(bars[m]))
    for m in range(-1, max_index + 1):
        report.add(f"internal^2 at m={m}", internals[m].compose(internals[m]))
    for m in range(1, max_index + 1):
        resid = bars[m].compose(internals[m]) - internals[m - 1].compose(bars[m])
        report.add(f"bar/internal commute at m={m}", resid)
    for m in range(max_index + 1):
        ident = GradedMap.identity((A.basis,) * (m + 1), A.field)
        resid = bars[m].compose(homos[m]) - ident
        if m >= 1:
            resid = resid + homos[m - 1].compose(bars[m - 1])
        report.add(f"bar homotopy at m={m}", resid)

    if C is not None:
        cobars = {n: cobar_diff(C, n) for n in range(-1, max_index + 1)}
        cointernals = {n: internal_diff(C, n) for n in range(-1, max_index + 1)}
        taus = {n: homotopy_tau(C, n) for n in range(max_index + 1)}
        for n in range(-1, max_index):
            report.add(f"cobar^2 at n={n}", cobars[n + 1].compose(cobars[n]))
        for n in range(-1, max_index):
            resid = cobars[n].compose(cointernals[n]) \
                - cointernals[n + 1].compose(cobars[n])
            report.add(f"cobar/internal commute at n={n}", resid)
        for n in range(-1, max_index):
            ident = GradedMap.identity((C.basis,) * (n + 2), C.field)
            resid = taus[n + 1].compose(cobars[n]) - ident
            if n >= 0:
                resid = resid + cobars[n - 1].compose(taus[n])
            report.add(f"cobar homotopy at n={n}", resid)
    return report
