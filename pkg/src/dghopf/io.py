"""Presentation documents: a JSON-compatible exchange format.

Coefficients travel as exact strings ("2", "-3/2"); structure constants are
given only on positive-degree pairs (products) and reduced diagonals, with
the unit and counit rows synthesized from connectedness at load time, so unit
laws cannot be violated by a document.  Parsing validates eagerly: axiom
failures raise with the offending basis labels, and every later layer may
assume validity.

Schema (object keys):

    field    "rational" or {"prime": p}
    basis    [{"label": str, "degree": int}, ...]   degree-0 element first
    unit     label of the degree-0 element
    mu       [{"left": l, "right": l, "out": l, "coeff": c}, ...]
    delta    [{"in": l, "out_left": l, "out_right": l, "coeff": c}, ...]
    diff     [{"in": l, "out": l, "coeff": c}, ...]
    antipode optional [{"in": l, "out": l, "coeff": c}, ...]

``delta`` may be omitted entirely for an algebra-only presentation.  A
separate small schema carries total cochains for the reduction command:

    {"theory": t, "components": [{"p": int, "m": int, ["n": int,]
        "entries": [{"source": [l...], "target": [l...], "coeff": c}]}]}
"""

from __future__ import annotations

import json
import re

from .fields import field_from_spec, field_to_spec
from .graded import GradedBasis, GradedMap
from .structures import (
    DGAlgebraPresentation,
    DGCoalgebraPresentation,
    DGHopfPresentation,
    ValidityReport,
    validate_dga,
    validate_hopf,
)

_COEFF_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


class DocumentError(ValueError):
    """A structural problem in a presentation document."""


class AxiomError(ValueError):
    """The document parsed but its structure constants violate an axiom."""

    def __init__(self, report: ValidityReport):
        self.report = report
        bad = report.failures()[0]
        super().__init__(bad.describe())


def _parse_coeff(field, raw, where: str):
    text = str(raw).replace("−", "-").strip()
    if not _COEFF_RE.match(text):
        raise DocumentError(f"{where}: coefficient {raw!r} is not an exact "
                            f"integer or fraction")
    return field.parse(text)


def _resolve(basis: GradedBasis, label, where: str) -> int:
    try:
        return basis.index(label)
    except KeyError:
        raise DocumentError(f"{where}: unknown basis label {label!r}") from None


def parse_presentation(doc: dict, validate: bool = True):
    """Build and validate a presentation from its document form.

    Returns a ``DGHopfPresentation`` when the document carries a diagonal and
    a ``DGAlgebraPresentation`` otherwise.  With ``validate`` (the default)
    an axiom failure raises ``AxiomError`` carrying the full report.
    """
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    for key in ("field", "basis", "unit", "mu", "diff"):
        if key not in doc:
            raise DocumentError(f"missing key {key!r}")
    try:
        field = field_from_spec(doc["field"])
    except ValueError as exc:
        raise DocumentError(str(exc)) from None

    entries = doc["basis"]
    if not entries or not all(isinstance(e, dict) and {"label", "degree"} <= set(e)
                              for e in entries):
        raise DocumentError("basis must be a list of {label, degree} objects")
    labels = tuple(str(e["label"]) for e in entries)
    degrees = tuple(int(e["degree"]) for e in entries)
    try:
        basis = GradedBasis(labels, degrees)
    except ValueError as exc:
        raise DocumentError(f"basis: {exc}") from None
    if doc["unit"] != labels[0]:
        raise DocumentError(f"unit must name the degree-0 element "
                            f"{labels[0]!r}, got {doc['unit']!r}")
    h = (basis,)

    # multiplication: synthesized unit rows plus the given positive entries
    mu_cols: dict = {(0, 0): {(0,): field.one}}
    for j in range(1, len(basis)):
        mu_cols[(0, j)] = {(j,): field.one}
        mu_cols[(j, 0)] = {(j,): field.one}
    for k, row in enumerate(doc["mu"]):
        where = f"mu[{k}]"
        if not {"left", "right", "out", "coeff"} <= set(row):
            raise DocumentError(f"{where}: needs left/right/out/coeff")
        a = _resolve(basis, row["left"], where)
        b = _resolve(basis, row["right"], where)
        out = _resolve(basis, row["out"], where)
        if basis.degrees[a] == 0 or basis.degrees[b] == 0:
            raise DocumentError(f"{where}: unit products are synthesized; "
                                f"give positive-degree pairs only")
        coeff = _parse_coeff(field, row["coeff"], where)
        col = mu_cols.setdefault((a, b), {})
        col[(out,)] = col.get((out,), field.zero) + coeff
    mu_cols = {src: {t: v for t, v in col.items() if v}
               for src, col in mu_cols.items()}
    try:
        mu = GradedMap(h * 2, h, 0, field, mu_cols)
    except ValueError as exc:
        raise DocumentError(f"mu: {exc}") from None

    d_cols: dict = {}
    for k, row in enumerate(doc["diff"]):
        where = f"diff[{k}]"
        if not {"in", "out", "coeff"} <= set(row):
            raise DocumentError(f"{where}: needs in/out/coeff")
        src = _resolve(basis, row["in"], where)
        out = _resolve(basis, row["out"], where)
        coeff = _parse_coeff(field, row["coeff"], where)
        col = d_cols.setdefault((src,), {})
        col[(out,)] = col.get((out,), field.zero) + coeff
    d_cols = {src: {t: v for t, v in col.items() if v}
              for src, col in d_cols.items()}
    try:
        d = GradedMap(h, h, 1, field, d_cols)
    except ValueError as exc:
        raise DocumentError(f"diff: {exc}") from None

    algebra = DGAlgebraPresentation(basis, mu, d, field)

    if "delta" not in doc or doc["delta"] is None:
        if validate:
            report = validate_dga(algebra)
            if not report.ok:
                raise AxiomError(report)
        return algebra

    delta_cols: dict = {(0,): {(0, 0): field.one}}
    for j in range(1, len(basis)):
        delta_cols[(j,)] = {(j, 0): field.one, (0, j): field.one}
    for k, row in enumerate(doc["delta"]):
        where = f"delta[{k}]"
        if not {"in", "out_left", "out_right", "coeff"} <= set(row):
            raise DocumentError(f"{where}: needs in/out_left/out_right/coeff")
        src = _resolve(basis, row["in"], where)
        a = _resolve(basis, row["out_left"], where)
        b = _resolve(basis, row["out_right"], where)
        if basis.degrees[a] == 0 or basis.degrees[b] == 0:
            raise DocumentError(f"{where}: primitive parts are synthesized; "
                                f"give the reduced diagonal only")
        coeff = _parse_coeff(field, row["coeff"], where)
        col = delta_cols.setdefault((src,), {})
        col[(a, b)] = col.get((a, b), field.zero) + coeff
    delta_cols = {src: {t: v for t, v in col.items() if v}
                  for src, col in delta_cols.items()}
    try:
        delta = GradedMap(h, h * 2, 0, field, delta_cols)
    except ValueError as exc:
        raise DocumentError(f"delta: {exc}") from None

    coalgebra = DGCoalgebraPresentation(basis, delta, d, field)
    antipode = None
    if doc.get("antipode"):
        s_cols: dict = {}
        for k, row in enumerate(doc["antipode"]):
            where = f"antipode[{k}]"
            if not {"in", "out", "coeff"} <= set(row):
                raise DocumentError(f"{where}: needs in/out/coeff")
            src = _resolve(basis, row["in"], where)
            out = _resolve(basis, row["out"], where)
            coeff = _parse_coeff(field, row["coeff"], where)
            col = s_cols.setdefault((src,), {})
            col[(out,)] = col.get((out,), field.zero) + coeff
        try:
            antipode = GradedMap(h, h, 0, field, s_cols)
        except ValueError as exc:
            raise DocumentError(f"antipode: {exc}") from None

    if validate:
        # check the bialgebra data before the antipode cross-check so that
        # axiom failures surface with their residual location
        probe = DGHopfPresentation(algebra, coalgebra, antipode=None)
        report = validate_hopf(probe)
        if not report.ok:
            raise AxiomError(report)
    try:
        return DGHopfPresentation(algebra, coalgebra, antipode)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def validation_report(pres) -> ValidityReport:
    if isinstance(pres, DGHopfPresentation):
        return validate_hopf(pres)
    return validate_dga(pres)


def emit_presentation(pres) -> dict:
    """The canonical document of a presentation; parse∘emit is the identity."""
    basis = pres.basis
    field = pres.field
    doc = {
        "field": field_to_spec(field),
        "basis": [{"label": basis.labels[i], "degree": basis.degrees[i]}
                  for i in range(len(basis))],
        "unit": basis.labels[0],
        "mu": [],
        "diff": [],
    }
    for (a, b), col in sorted(pres.mu.cols.items()):
        if basis.degrees[a] == 0 or basis.degrees[b] == 0:
            continue
        for (out,), v in sorted(col.items()):
            doc["mu"].append({"left": basis.labels[a], "right": basis.labels[b],
                              "out": basis.labels[out], "coeff": field.format(v)})
    for (src,), col in sorted(pres.d.cols.items()):
        for (out,), v in sorted(col.items()):
            doc["diff"].append({"in": basis.labels[src],
                                "out": basis.labels[out],
                                "coeff": field.format(v)})
    if isinstance(pres, DGHopfPresentation):
        doc["delta"] = []
        for (src,), col in sorted(pres.delta.cols.items()):
            for (a, b), v in sorted(col.items()):
                if basis.degrees[a] == 0 or basis.degrees[b] == 0:
                    continue
                doc["delta"].append({
                    "in": basis.labels[src],
                    "out_left": basis.labels[a],
                    "out_right": basis.labels[b],
                    "coeff": field.format(v)})
        doc["antipode"] = []
        for (src,), col in sorted(pres.antipode.cols.items()):
            for (out,), v in sorted(col.items()):
                doc["antipode"].append({"in": basis.labels[src],
                                        "out": basis.labels[out],
                                        "coeff": field.format(v)})
    return doc


# ---------------------------------------------------------------------------
# total cochain documents
# ---------------------------------------------------------------------------

def emit_total_cochain(total, pres) -> dict:
    basis = pres.basis
    field = pres.field
    comps = []
    for key in total.keys():
        coch = total.components[key]
        entry = {"p": key[0], "m": key[1]}
        if len(key) == 3:
            entry["n"] = key[2]
        rows = []
        for tgt, src, v in coch.map.entries_sorted():
            rows.append({
                "source": [basis.labels[i] for i in src],
                "target": [basis.labels[i] for i in tgt],
                "coeff": field.format(v)})
        entry["entries"] = rows
        comps.append(entry)
    return {"theory": total.theory, "components": comps}


def parse_total_cochain(doc: dict, pres, theory: str):
    """Read a total cochain document over the given presentation."""
    from .cochains import Cochain
    from .cohomology import TotalCochain
    basis = pres.basis
    field = pres.field
    if not isinstance(doc, dict) or "components" not in doc:
        raise DocumentError("cochain document needs a components list")
    if doc.get("theory", theory) != theory:
        raise DocumentError(f"cochain document is for theory "
                            f"{doc.get('theory')!r}, expected {theory!r}")
    comps: dict = {}
    normal = {"hochschild": (True, False), "harrison": (True, False),
              "cartier": (False, True), "hopf": (True, True)}[theory]
    for k, comp in enumerate(doc["components"]):
        where = f"components[{k}]"
        if "p" not in comp or "m" not in comp:
            raise DocumentError(f"{where}: needs p and m")
        p, m = int(comp["p"]), int(comp["m"])
        if theory == "hopf":
            if "n" not in comp:
                raise DocumentError(f"{where}: hopf components need n")
            n = int(comp["n"])
            key = (p, m, n)
        else:
            n = 1 if theory in ("hochschild", "harrison") else m
            key = (p, m)
        if theory == "cartier":
            src_arity, tgt_arity = 1, m
        elif theory == "hopf":
            src_arity, tgt_arity = m, n
        else:
            src_arity, tgt_arity = m, 1
        entries = []
        for e in comp.get("entries", ()):
            src = tuple(_resolve(basis, l, where) for l in e["source"])
            tgt = tuple(_resolve(basis, l, where) for l in e["target"])
            if len(src) != src_arity or len(tgt) != tgt_arity:
                raise DocumentError(f"{where}: entry arity mismatch")
            entries.append((tgt, src, _parse_coeff(field, e["coeff"], where)))
        gmap = GradedMap.from_entries((basis,) * src_arity,
                                      (basis,) * tgt_arity, p, field, entries)
        coch = Cochain(gmap, *normal)
        if coch.map.cols != gmap.cols:
            raise DocumentError(f"{where}: entries outside the normalized "
                                f"cochain space")
        if not coch.is_zero():
            comps[key] = comps[key] + coch if key in comps else coch
    return TotalCochain(theory, comps)


def dump_json(payload: dict) -> str:
    """Canonical JSON text: sorted keys, fixed layout, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"
