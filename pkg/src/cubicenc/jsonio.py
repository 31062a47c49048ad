"""JSON encodings of systems, assignments, reductions and reports.

All writers are deterministic: same object, same bytes.
"""

from __future__ import annotations

import json
from pathlib import Path

from .encoder import Constraint, ConstraintSystem, Kind, SystemParams
from .poly import Polynomial, Registry, Role, Var
from .reducer import MergedPolynomial, Reduction

SYSTEM_FORMAT = "cubicenc-system/1"
REDUCED_FORMAT = "cubicenc-reduced/1"


def dumps(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def write_json(data, path: str | Path | None) -> None:
    text = dumps(data)
    if path is None or str(path) == "-":
        print(text, end="")
    else:
        Path(path).write_text(text, encoding="utf-8")


def read_json(path: str | Path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _var_json(v: Var) -> dict:
    return {"name": v.name, "index": v.index, "role": v.role.value}


def registry_from_json(entries) -> Registry:
    reg = Registry()
    for entry in sorted(entries, key=lambda e: e["index"]):
        v = Var(int(entry["index"]), entry["name"], Role(entry.get("role", "free")))
        if len(reg) and v.index <= max(x.index for x in reg):
            raise ValueError(f"variable indices must increase: {v.name}")
        reg._add(v)
    return reg


def system_to_json(system: ConstraintSystem) -> dict:
    p = system.params
    return {
        "format": SYSTEM_FORMAT,
        "params": None if p is None else {
            "length": p.length,
            "window": p.window,
            "axioms": list(p.axioms),
            "target": p.target,
            "activation": p.activation,
        },
        "stats": system.stats(),
        "variables": [_var_json(v) for v in system.registry],
        "constraints": [
            {"id": n, "kind": c.kind.value, "indices": list(c.indices), "degree": c.degree,
             "poly": c.poly.to_text()}
            for n, c in enumerate(system.constraints)
        ],
    }


def system_from_json(data: dict) -> ConstraintSystem:
    """Load a system; without a ``variables`` table names are registered on first use."""
    entries = data.get("variables")
    reg = registry_from_json(entries) if entries else Registry()
    create = not entries
    constraints = []
    for entry in data["constraints"]:
        poly = Polynomial.parse(entry["poly"], reg, create=create)
        constraints.append(Constraint(poly, Kind(entry.get("kind", "Plain")),
                                      tuple(entry.get("indices", ()))))
    p = data.get("params")
    params = None if p is None else SystemParams(
        int(p["length"]), int(p["window"]), tuple(p["axioms"]), int(p["target"]),
        bool(p.get("activation", False)))
    return ConstraintSystem(reg, constraints, params)


def assignment_to_json(values) -> dict:
    return {"values": {name: int(x) for name, x in values.items()}}


def assignment_from_json(data: dict) -> dict[str, int]:
    out = {}
    for name, x in data["values"].items():
        if not isinstance(x, int) or isinstance(x, bool) or x < 0:
            raise ValueError(f"value of {name!r} must be a natural number, got {x!r}")
        out[name] = x
    return out


def reduction_to_json(reduction: Reduction, merged: MergedPolynomial | None,
                      source: Polynomial) -> dict:
    shields = []
    for (y, definition), con in zip(reduction.trace, reduction.constraints):
        shields.append({"var": y.name, "definition": definition.to_text(),
                        "constraint": con.poly.to_text()})
    return {
        "format": REDUCED_FORMAT,
        "merged": merged is not None,
        "source_count": merged.source_count if merged is not None else 1,
        "source_degree": source.degree,
        "stats": {
            "source_monomials": len(source),
            "shield_variables": len(reduction.trace),
            "reduced_monomials": len(reduction.reduced),
            "max_degree": reduction.max_degree(),
        },
        "variables": [_var_json(v) for v in reduction.registry],
        "reduced": reduction.reduced.to_text(),
        "shields": shields,
    }
