"""Central tolerance record.

Every predicate in the package reads its thresholds from :func:`tolerances`.
Setting ``BANDFORGE_TOLERANCE_SCALE`` multiplies all of them uniformly.
"""
from __future__ import annotations

import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    collinear: float = 1e-12      # relative to bounding-box diagonal
    length: float = 1e-9          # relative edge-length agreement
    area: float = 1e-9            # overlap significance, relative to area(A)
    marginal_band: float = 10.0   # total in [tau/band, tau*band] is MARGINAL
    symmetry_rad: float = 1e-10   # deficit agreement across symmetric vertices
    degenerate_z: float = 1e-6    # z below this (times s) is a flat, degenerate solid

    def scaled(self, factor: float) -> "Tolerances":
        return Tolerances(
            collinear=self.collinear * factor,
            length=self.length * factor,
            area=self.area * factor,
            marginal_band=self.marginal_band,
            symmetry_rad=self.symmetry_rad * factor,
            degenerate_z=self.degenerate_z * factor,
        )


def tolerances() -> Tolerances:
    raw = os.environ.get("BANDFORGE_TOLERANCE_SCALE", "1.0")
    try:
        factor = float(raw)
    except ValueError:
        raise ValueError(f"BANDFORGE_TOLERANCE_SCALE must be a number, got {raw!r}") from None
    if not factor > 0:
        raise ValueError("BANDFORGE_TOLERANCE_SCALE must be positive")
    return Tolerances().scaled(factor)
