"""Wavefront OBJ export and JSON reports (stable key order, byte-deterministic)."""
from __future__ import annotations

import json
import math

import numpy as np

from .errors import InternalSymmetryError
from .prismatoid import Prismatoid, ValidationReport, curvature_pair, validate, vertex_deficits
from .render import fmt
from .verify import SweepResult, VerdictMatrix, cell_summary, class_label, reduce_by_symmetry


def export_obj(prism: Prismatoid) -> bytes:
    """12 ``v`` records then 8 ``f`` records (1-based, CCW seen from outside)."""
    lines = [f"v {fmt(x)} {fmt(y)} {fmt(z)}" for x, y, z in prism.vertices]
    lines += ["f " + " ".join(str(i + 1) for i in face) for face in prism.faces]
    return ("\n".join(lines) + "\n").encode("ascii")


def read_obj(data: bytes | str):
    """Parse ``v``/``f`` records; returns ``(vertices (N, 3), faces as 0-based tuples)``."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    verts, faces = [], []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if parts[0] == "v":
            verts.append([float(t) for t in parts[1:4]])
        elif parts[0] == "f":
            faces.append(tuple(int(t.split("/")[0]) - 1 for t in parts[1:]))
    return np.array(verts), faces


def dumps(obj) -> bytes:
    return (json.dumps(obj, indent=2, allow_nan=False, ensure_ascii=False) + "\n").encode("utf-8")


def _finite(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def _curvatures(prism: Prismatoid) -> dict:
    cp = curvature_pair(prism)
    return {
        "delta_rad": cp.delta,
        "epsilon_rad": cp.epsilon,
        "delta_deg": math.degrees(cp.delta),
        "epsilon_deg": math.degrees(cp.epsilon),
    }


def validation_dict(prism: Prismatoid, report: ValidationReport | None = None) -> dict:
    report = report or validate(prism)
    return report.as_dict()


def matrix_dict(matrix: VerdictMatrix, preset: str | None = None) -> dict:
    prism = matrix.prism
    classes = reduce_by_symmetry(matrix)
    cells = []
    for r in matrix.cells():
        d = cell_summary(r)
        d["class"] = class_label((r.cut, r.attach))
        cells.append(d)
    return {
        "preset": preset,
        "params": prism.params.as_dict(),
        "curvatures": _curvatures(prism),
        "validation": validation_dict(prism),
        "threshold_area": matrix.reports[0][0].threshold,
        "matrix": cells,
        "classes": [
            {
                "label": c.label,
                "cut": c.representative[0],
                "attach": c.representative[1],
                "verdict": str(c.verdict),
                "area": c.area,
                "cells": [list(x) for x in c.cells],
            }
            for c in classes
        ],
        "counterexample": matrix.counterexample,
    }


def sweep_dict(result: SweepResult) -> dict:
    return {
        "grid": {
            "s": result.s,
            "y": result.y,
            "h": list(result.h_values),
            "z": list(result.z_values),
        },
        "cells": [
            {
                "i": c.index[0],
                "j": c.index[1],
                "h": c.h,
                "z": c.z,
                "status": c.status,
                "reason": c.reason,
                "delta_rad": _finite(c.delta),
                "epsilon_rad": _finite(c.epsilon),
                "valid": c.valid,
                "odd_acute": c.odd_acute,
                "all_overlap": c.all_overlap,
                "n_overlap": c.n_overlap,
                "n_clear": c.n_clear,
                "n_marginal": c.n_marginal,
                "min_area": _finite(c.min_area),
            }
            for c in result.cells
        ],
        "region_size": int(result.region.sum()),
    }


def report_json(obj, preset: str | None = None) -> bytes:
    """Serialise a verdict matrix, a sweep, or a prismatoid's validation report."""
    if isinstance(obj, VerdictMatrix):
        return dumps(matrix_dict(obj, preset))
    if isinstance(obj, SweepResult):
        return dumps(sweep_dict(obj))
    if isinstance(obj, Prismatoid):
        return dumps({
            "preset": preset,
            "params": obj.params.as_dict(),
            "validation": validation_dict(obj),
        })
    raise TypeError(f"cannot report on {type(obj).__name__}")


def curvature_dict(prism: Prismatoid) -> dict:
    d = vertex_deficits(prism)
    out = {"params": prism.params.as_dict()}
    try:
        out["curvatures"] = _curvatures(prism)
    except InternalSymmetryError as exc:
        out["curvatures"] = {"error": str(exc)}
    out["deficits_rad"] = {**{f"a{i}": d[i] for i in range(6)}, **{f"b{i}": d[6 + i] for i in range(6)}}
    out["total_rad"] = math.fsum(d)
    out["total_over_4pi"] = math.fsum(d) / (4 * math.pi)
    return out
