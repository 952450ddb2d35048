"""
Report assembly and deterministic JSON rendering.

A report is a plain dict: an envelope (tool, version, command, seed, field,
input) around a command-specific result. Every scalar is rendered as a "p/q"
string, keys are sorted and indentation is fixed, so the rendered text is
byte-identical for a fixed (input, seed, version).
"""

import hashlib
import json
from dataclasses import asdict

from algebra_core import MulTable
from exact_linalg import RATIONAL, format_scalar, to_rows
from identities import KINDS, is_associative, is_leibniz, residual_report

TOOL = "structconst"
VERSION = "1.0.0"


def _scalars(vector) -> list:
    return [format_scalar(v) for v in vector]


def algebra_descriptor(x: MulTable, source: str) -> dict:
    return {"name": x.name, "dim": x.dim, "source": source}


def membership_section(x: MulTable) -> dict:
    reports = {kind: residual_report(x, kind) for kind in KINDS}
    return {
        "flags": {kind: r.is_member for kind, r in reports.items()},
        "residuals": {kind: r.as_dict() for kind, r in reports.items()},
    }


def summary_section(summary) -> dict:
    return asdict(summary)


def form_section(form) -> dict:
    return {
        "kind": form.kind,
        "gram": [_scalars(row) for row in to_rows(form.gram)],
        "discriminant": format_scalar(form.discriminant),
        "nondegenerate": form.nondegenerate,
        "on_variety": form.on_variety,
    }


def basis_section(basis: list) -> dict:
    return {"dim": len(basis), "basis": [_scalars(v) for v in basis]}


def forms_section(x: MulTable) -> dict:
    """Trace and Killing data, characters and canonical subspaces of a point."""
    from forms import (
        is_semisimple_lie_point, is_separable, killing_gram, leibniz_kernel, modular_characters,
        operator_identities_check, right_annihilator, squares_in_radical, trace_gram,
    )

    chars = modular_characters(x)
    section = {
        "trace": form_section(trace_gram(x)),
        "killing": form_section(killing_gram(x)),
        "characters": {"sigma_L": _scalars(chars.sigma_L), "sigma_R": _scalars(chars.sigma_R)},
        "leibniz_kernel": basis_section(leibniz_kernel(x)),
        "right_annihilator": basis_section(right_annihilator(x)),
    }
    if is_associative(x):
        section["separable"] = is_separable(x)
    if is_leibniz(x):
        check = operator_identities_check(x)
        section["semisimple_lie"] = is_semisimple_lie_point(x)
        section["operator_identities"] = {"holds": check.holds, "violation": check.violation}
        section["squares_in_radical"] = squares_in_radical(x)
    return section


def verdict_section(verdict) -> dict:
    return asdict(verdict)


def stratum_section(invariant) -> dict:
    return asdict(invariant)


def fiber_section(fiber) -> dict:
    return {"dim": fiber.dim}


def count_section(kind: str, result) -> dict:
    section = {"kind": kind, "n": result.n, "value": result.value}
    if result.witnesses is not None:
        section["witnesses"] = [list(w) for w in result.witnesses]
    return section


def battery_section(battery) -> dict:
    return {
        "dims": list(battery.dims),
        "trials": battery.trials,
        "passed": battery.passed,
        "laws": [
            {"name": law.name, "dim": law.dim, "checked": law.checked,
             "passed": law.passed, "failures": law.failures}
            for law in battery.laws
        ],
    }


def envelope(command: str, result: dict, seed: int, field: str = RATIONAL,
             algebra: dict | None = None) -> dict:
    report = {
        "tool": {"name": TOOL, "version": VERSION},
        "command": command,
        "seed": seed,
        "field": field,
        "advisory": field != RATIONAL,
        "result": result,
    }
    if algebra is not None:
        report["input"] = algebra
    return report


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
