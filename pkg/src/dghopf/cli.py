"""Command-line interface.

Subcommands: validate, cohomology, deform, rigidity, reduce, example.  Every
command prints a human-readable report and optionally writes a canonical JSON
document (``--json PATH``) that is byte-identical across reruns with the same
input and seed; wall-clock timing appears only in the human output.  Exit
status: 0 on success, 1 when an axiom or solve fails, 2 for usage and
document errors.

The ``FILE`` argument accepts either a path to a presentation document or the
name of a built-in example (lambda1, lambda2, lambda3, acyclic, fp-trunc).
``DGHOPF_DMAX`` supplies a default internal-degree cap for windowed commands;
without it caps must be given explicitly where needed.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from .cohomology import ComplexWindow, assemble, cohomology
from .deformation import (
    DeformationEngine,
    random_valid_deformation,
    scrambled_trivial,
)
from .examples import BUILTIN_NAMES, builtin_presentation
from .harrison import staircase_reduce
from .io import (
    AxiomError,
    DocumentError,
    dump_json,
    emit_presentation,
    emit_total_cochain,
    parse_presentation,
    parse_total_cochain,
    validation_report,
)
from .structures import DGHopfPresentation


class CommandError(Exception):
    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def _load(path_or_name: str, validate: bool = True):
    if path_or_name in BUILTIN_NAMES:
        return builtin_presentation(path_or_name), path_or_name
    try:
        with open(path_or_name, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CommandError(f"cannot read {path_or_name}: {exc}")
    except json.JSONDecodeError as exc:
        raise CommandError(f"{path_or_name}: not valid JSON ({exc})")
    try:
        return parse_presentation(doc, validate=validate), path_or_name
    except DocumentError as exc:
        raise CommandError(f"{path_or_name}: {exc}")
    except AxiomError as exc:
        raise CommandError(f"{path_or_name}: axiom failure: {exc}", code=1)


def _default_dmax(args) -> int | None:
    if getattr(args, "dmax", None) is not None:
        return args.dmax
    env = os.environ.get("DGHOPF_DMAX")
    return int(env) if env else None


def _emit(args, payload: dict, human_lines: list[str], started: float) -> None:
    for line in human_lines:
        print(line)
    print(f"elapsed: {time.time() - started:.3f}s")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(dump_json(payload))


def _check_rows(report):
    rows = []
    for c in report.checks:
        row = {"name": c.name, "ok": c.ok}
        if not c.ok:
            row["residual"] = {"target": list(c.residual[0]),
                               "source": list(c.residual[1]),
                               "value": c.residual[2]}
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_validate(args) -> int:
    started = time.time()
    pres, name = _load(args.file, validate=False)
    report = validation_report(pres)
    kind = "hopf" if isinstance(pres, DGHopfPresentation) else "algebra"
    payload = {
        "command": "validate",
        "input": name,
        "kind": kind,
        "ok": report.ok,
        "checks": _check_rows(report),
    }
    lines = [f"validate {name} ({kind})"] + ["  " + l for l in report.lines()]
    lines.append(f"result: {'all axioms hold' if report.ok else 'FAILED'}")
    _emit(args, payload, lines, started)
    return 0 if report.ok else 1


def _window_from_args(args, pres) -> ComplexWindow:
    q = None if args.q in ("inf", "oo") else int(args.q)
    try:
        return ComplexWindow(args.theory, q, args.degree,
                             m_max=args.mmax, n_max=args.nmax,
                             degree_cap=_default_dmax(args))
    except ValueError as exc:
        raise CommandError(str(exc))


def cmd_cohomology(args) -> int:
    started = time.time()
    pres, name = _load(args.file)
    if args.theory in ("hopf", "cartier") and not isinstance(pres, DGHopfPresentation):
        raise CommandError(f"theory {args.theory!r} needs a Hopf presentation; "
                           f"{name} has no diagonal")
    window = _window_from_args(args, pres)
    try:
        cplx = assemble(pres, window)
        result = cohomology(cplx, args.degree)
    except ValueError as exc:
        raise CommandError(str(exc))
    payload = {
        "command": "cohomology",
        "input": name,
        "window": {
            "theory": window.theory,
            "q": "inf" if window.q is None else window.q,
            "degree": window.degree,
            "m_max": window.m_max,
            "n_max": window.n_max,
            "restricted": window.restricted,
            "degree_cap": window.degree_cap,
        },
        "dimension": result.dimension,
        "certificate": result.certificate,
        "space_dims": {str(r): cplx.dim(r) for r in cplx.degrees},
        "clip_events": cplx.clip_events,
        "representatives": [emit_total_cochain(rep, pres)
                            for rep in result.representatives],
    }
    lines = [
        f"cohomology of {name}: theory={window.theory} q={payload['window']['q']} "
        f"degree={window.degree}"
        + (f" dmax={window.degree_cap}" if window.degree_cap is not None else ""),
        f"  space dimensions: {payload['space_dims']}",
        f"  kernel rank {result.certificate['kernel_rank']}, "
        f"image rank {result.certificate['image_rank']}",
        f"  dimension: {result.dimension}",
    ]
    if result.representatives:
        lines.append(f"  representatives: {len(result.representatives)} "
                     f"(see --json for coefficients)")
    _emit(args, payload, lines, started)
    return 0


def cmd_deform(args) -> int:
    started = time.time()
    pres, name = _load(args.file)
    if not isinstance(pres, DGHopfPresentation):
        raise CommandError(f"{name} has no diagonal; deformations need a "
                           f"Hopf presentation")
    engine = DeformationEngine(pres)
    rng = random.Random(args.seed)
    trace = []
    defm = random_valid_deformation(engine, 1, rng)
    status = "built-order-1"
    code = 0
    while defm.order < args.order:
        extended, obs = engine.extend(defm)
        trace.append({"order": obs.order, "status": obs.class_status,
                      "residual_zero": obs.residual.is_zero()})
        if extended is None:
            status = f"obstructed-at-order-{obs.order}"
            code = 1
            break
        defm = extended
    else:
        status = f"valid-to-order-{defm.order}"
    payload = {
        "command": "deform",
        "input": name,
        "order": args.order,
        "seed": args.seed,
        "status": status,
        "extension_trace": trace,
        "coefficients": [
            emit_total_cochain(defm.coefficient_total(k), pres)
            for k in range(1, defm.order + 1)
        ],
    }
    lines = [f"deform {name}: requested order {args.order}, seed {args.seed}",
             f"  status: {status}"]
    for row in trace:
        lines.append(f"  order {row['order']}: obstruction {row['status']}"
                     + (" (residual zero)" if row["residual_zero"] else ""))
    _emit(args, payload, lines, started)
    return code


def cmd_rigidity(args) -> int:
    started = time.time()
    pres, name = _load(args.file)
    if not isinstance(pres, DGHopfPresentation):
        raise CommandError(f"{name} has no diagonal; rigidity needs a "
                           f"Hopf presentation")
    engine = DeformationEngine(pres)
    h2 = cohomology(engine.cplx, 2)
    rng = random.Random(args.seed)
    defm, _ = scrambled_trivial(engine, args.order, rng)
    gauge, obstruction = engine.trivialize(defm)
    trivialized = gauge is not None
    payload = {
        "command": "rigidity",
        "input": name,
        "order": args.order,
        "seed": args.seed,
        "h2_dimension": h2.dimension,
        "rigid_certified": h2.dimension == 0,
        "trivialized": trivialized,
    }
    lines = [f"rigidity {name}: order {args.order}, seed {args.seed}",
             f"  dim H^2 (q=3, restricted) = {h2.dimension}"
             f" -> {'rigid' if h2.dimension == 0 else 'not certified rigid'}"]
    if trivialized:
        payload["gauge"] = [
            emit_total_cochain(
                _gauge_total(engine, gauge, k), pres)
            for k in range(1, gauge.order + 1)]
        lines.append("  scrambled trivial deformation: trivialized")
        for k, phi in enumerate(gauge.phis, start=1):
            entries = phi.map.entries_sorted()
            lines.append(f"    phi_{k}: {len(entries)} entries")
    else:
        payload["obstruction_order"] = obstruction.order
        lines.append(f"  trivialization blocked at order {obstruction.order}")
    _emit(args, payload, lines, started)
    return 0 if trivialized else 1


def _gauge_total(engine, gauge, k):
    from .cohomology import TotalCochain
    return TotalCochain("hopf", {(0, 1, 1): gauge.phis[k - 1]})


def cmd_reduce(args) -> int:
    started = time.time()
    pres, name = _load(args.file)
    try:
        with open(args.cocycle, "r", encoding="utf-8") as fh:
            cdoc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CommandError(f"cannot read cocycle file: {exc}")
    try:
        total = parse_total_cochain(cdoc, pres, "harrison")
    except DocumentError as exc:
        raise CommandError(str(exc))
    degrees = {p + m for (p, m) in total.components}
    if len(degrees) != 1:
        raise CommandError("cocycle components must share one total degree")
    r = degrees.pop()
    window = ComplexWindow("harrison", 3, r, degree_cap=_default_dmax(args))
    try:
        cplx = assemble(pres, window)
        result = staircase_reduce(cplx, total)
    except ValueError as exc:
        raise CommandError(f"reduction failed: {exc}", code=1)
    payload = {
        "command": "reduce",
        "input": name,
        "degree": r,
        "steps": [list(s) for s in result.steps],
        "reduced": emit_total_cochain(result.reduced, pres),
        "witness": emit_total_cochain(result.witness, pres),
    }
    lines = [f"reduce {name}: total degree {r}",
             f"  staircase steps: {payload['steps'] or 'none needed'}",
             f"  reduced to bidegree ({r - 1}, 1): "
             f"{sum(len(c['entries']) for c in payload['reduced']['components'])}"
             f" entries"]
    _emit(args, payload, lines, started)
    return 0


def cmd_example(args) -> int:
    started = time.time()
    if args.name not in BUILTIN_NAMES:
        raise CommandError(f"unknown example {args.name!r}; "
                           f"choose from {', '.join(BUILTIN_NAMES)}")
    pres = builtin_presentation(args.name, p=args.p, top=args.top)
    payload = emit_presentation(pres)
    text = dump_json(payload)
    sys.stdout.write(text)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dghopf",
        description="Exact deformation complexes for d.g. Hopf algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check every structure axiom exactly")
    p.add_argument("file")
    p.add_argument("--json")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("cohomology", help="windowed cohomology dimensions")
    p.add_argument("file")
    p.add_argument("--theory", required=True,
                   choices=("hopf", "hochschild", "cartier", "harrison"))
    p.add_argument("--q", default="3",
                   help="truncation parameter (integer >= 3, or 'inf')")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--mmax", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--dmax", type=int,
                   help="internal-degree cap (default: DGHOPF_DMAX)")
    p.add_argument("--json")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("deform", help="build a seeded deformation order by order")
    p.add_argument("file")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json")
    p.set_defaults(func=cmd_deform)

    p = sub.add_parser("rigidity",
                       help="trivialize a seeded gauge scramble of the "
                            "trivial deformation")
    p.add_argument("file")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json")
    p.set_defaults(func=cmd_rigidity)

    p = sub.add_parser("reduce", help="staircase-reduce a total cocycle")
    p.add_argument("file")
    p.add_argument("--cocycle", required=True)
    p.add_argument("--dmax", type=int)
    p.add_argument("--json")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("example", help="emit a built-in presentation document")
    p.add_argument("name")
    p.add_argument("--p", type=int, default=3,
                   help="prime for fp-trunc (default 3)")
    p.add_argument("--top", type=int, default=8,
                   help="top degree for acyclic (default 8)")
    p.add_argument("--json")
    p.set_defaults(func=cmd_example)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
