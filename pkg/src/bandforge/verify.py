"""Exhaustive cut x attachment enumeration, symmetry reduction, and parameter sweeps."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .config import tolerances
from .errors import BandforgeError, CellError, InvalidGeometry, SymmetryViolation
from .prismatoid import Prismatoid, PrismatoidParams, build_prismatoid, curvature_pair, validate
from .unfold import OverlapReport, Verdict, develop_band, overlap, place_top

# (cut, attach) representatives in the order they are discussed for the two
# cut types: apex cut a_3 with edges a0a1, a1a2, a2a3; side cut a_0 with
# edges a3a4, a4a5, a5a0.
REPRESENTATIVES = ((3, 0), (3, 1), (3, 2), (0, 3), (0, 4), (0, 5))


def _edge_name(j):
    return f"a{j}a{(j + 1) % 6}"


def rotate_cell(cell, steps=1):
    """Turn by ``steps`` x 120 degrees: every vertex index moves by 2."""
    k, j = cell
    return (k + 2 * steps) % 6, (j + 2 * steps) % 6


def mirror_cell(cell):
    """Reflect through the a_0-a_3 axis: vertex i -> -i, edge j -> -j-1."""
    k, j = cell
    return (-k) % 6, (-j - 1) % 6


def symmetry_orbit(cell) -> list:
    orbit = []
    for c in (cell, mirror_cell(cell)):
        for r in range(3):
            img = rotate_cell(c, r)
            if img not in orbit:
                orbit.append(img)
    return sorted(orbit)


def class_label(cell) -> str:
    for rep in REPRESENTATIVES:
        if cell in symmetry_orbit(rep):
            k, j = rep
            return f"cut a{k} / attach {_edge_name(j)}"
    raise ValueError(f"cell {cell} not in any class")


@dataclass(frozen=True, eq=False)
class VerdictMatrix:
    prism: Prismatoid
    reports: tuple  # reports[k][j] -> OverlapReport

    def verdict(self, cut, attach) -> Verdict:
        return self.reports[cut][attach].verdict

    def area(self, cut, attach) -> float:
        return self.reports[cut][attach].total_area

    @property
    def verdicts(self) -> list:
        return [[r.verdict for r in row] for row in self.reports]

    @property
    def areas(self) -> np.ndarray:
        return np.array([[r.total_area for r in row] for row in self.reports])

    def cells(self):
        for k in range(6):
            for j in range(6):
                yield self.reports[k][j]

    @property
    def counterexample(self) -> bool:
        """True when every one of the 36 placements overlaps (no CLEAR, no MARGINAL)."""
        return all(r.verdict is Verdict.OVERLAP for r in self.cells())

    def count(self, verdict: Verdict) -> int:
        return sum(r.verdict is verdict for r in self.cells())


def verdict_matrix(prism: Prismatoid) -> VerdictMatrix:
    report = validate(prism)
    if report.degenerate or not (report.hull_convex and report.top_convex):
        raise InvalidGeometry("prismatoid is degenerate or not convex: " + "; ".join(report.reasons))
    rows = []
    for k in range(6):
        try:
            dev = develop_band(prism, k)
        except BandforgeError as exc:
            raise CellError(k, None, exc) from exc
        row = []
        for j in range(6):
            try:
                row.append(overlap(place_top(dev, j), dev))
            except BandforgeError as exc:
                raise CellError(k, j, exc) from exc
        rows.append(tuple(row))
    return VerdictMatrix(prism=prism, reports=tuple(rows))


@dataclass(frozen=True)
class SymmetryClass:
    label: str
    representative: tuple
    cells: tuple
    verdict: Verdict
    area: float


def reduce_by_symmetry(matrix: VerdictMatrix) -> list:
    """Group the 36 cells into the 6 orbits of the hexagon's symmetry group.

    Raises ``SymmetryViolation`` when cells of one orbit disagree in verdict,
    or in area beyond 1e-9 relative (with an absolute floor at the
    negligible-area level, so that round-off on zero areas is ignored).
    """
    tau = matrix.reports[0][0].threshold
    floor = tau / tolerances().marginal_band
    classes = []
    seen = set()
    for rep in REPRESENTATIVES:
        orbit = symmetry_orbit(rep)
        seen.update(orbit)
        verdicts = {matrix.verdict(*c) for c in orbit}
        if len(verdicts) != 1:
            raise SymmetryViolation(f"class {class_label(rep)} mixes verdicts {sorted(map(str, verdicts))}")
        areas = [matrix.area(*c) for c in orbit]
        spread = max(areas) - min(areas)
        if spread > 1e-9 * max(areas) + floor:
            raise SymmetryViolation(f"class {class_label(rep)} areas disagree: {areas}")
        classes.append(SymmetryClass(
            label=class_label(rep),
            representative=rep,
            cells=tuple(orbit),
            verdict=verdicts.pop(),
            area=matrix.area(*rep),
        ))
    if len(seen) != 36:
        raise SymmetryViolation("symmetry classes do not cover all 36 cells")
    return classes


@dataclass(frozen=True)
class SweepCell:
    index: tuple
    h: float
    z: float
    status: str  # "OK" or "SKIPPED"
    reason: str = ""
    delta: float | None = None
    epsilon: float | None = None
    valid: bool = False
    odd_acute: bool = False
    all_overlap: bool = False
    n_overlap: int = 0
    n_clear: int = 0
    n_marginal: int = 0
    min_area: float | None = None


@dataclass(frozen=True)
class SweepResult:
    s: float
    y: float
    h_values: tuple
    z_values: tuple
    cells: tuple = field(repr=False)  # row-major over (h, z)

    def cell(self, i, j) -> SweepCell:
        return self.cells[i * len(self.z_values) + j]

    @property
    def region(self) -> np.ndarray:
        """Boolean (len(h), len(z)) mask of cells where all 36 placements overlap."""
        mask = np.array([c.all_overlap for c in self.cells], dtype=bool)
        return mask.reshape(len(self.h_values), len(self.z_values))


def evaluate_cell(index, h, z, s, y) -> SweepCell:
    """One sweep cell; never raises, failures come back as SKIPPED."""
    try:
        params = PrismatoidParams(h=h, y=y, z=z, s=s)
        prism = build_prismatoid(params)
    except BandforgeError as exc:
        return SweepCell(index=index, h=h, z=z, status="SKIPPED", reason=str(exc))
    try:
        cp = curvature_pair(prism)
        delta, eps = cp.delta, cp.epsilon
    except BandforgeError:
        delta = eps = None
    rep = validate(prism)
    if rep.degenerate or not (rep.hull_convex and rep.top_convex):
        return SweepCell(index=index, h=h, z=z, status="SKIPPED", reason="; ".join(rep.reasons),
                         delta=delta, epsilon=eps, valid=False, odd_acute=rep.odd_acute)
    try:
        m = verdict_matrix(prism)
    except BandforgeError as exc:
        return SweepCell(index=index, h=h, z=z, status="SKIPPED", reason=str(exc),
                         delta=delta, epsilon=eps, valid=rep.ok, odd_acute=rep.odd_acute)
    return SweepCell(
        index=index, h=h, z=z, status="OK",
        delta=delta, epsilon=eps, valid=rep.ok, odd_acute=rep.odd_acute,
        all_overlap=m.counterexample,
        n_overlap=m.count(Verdict.OVERLAP),
        n_clear=m.count(Verdict.CLEAR),
        n_marginal=m.count(Verdict.MARGINAL),
        min_area=float(m.areas.min()),
    )


def _evaluate_packed(args):
    return evaluate_cell(*args)


def sweep(h_values, z_values, s=1.0, y=0.5, workers=None) -> SweepResult:
    """Evaluate the verdict matrix on the grid ``h_values x z_values``.

    ``workers > 1`` spreads cells over processes; the result does not depend
    on it because cells are keyed by grid index.
    """
    hs = tuple(float(v) for v in h_values)
    zs = tuple(float(v) for v in z_values)
    jobs = [((i, j), h, z, s, y) for i, h in enumerate(hs) for j, z in enumerate(zs)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(_evaluate_packed, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        cells = [evaluate_cell(*job) for job in jobs]
    cells.sort(key=lambda c: c.index)
    return SweepResult(s=s, y=y, h_values=hs, z_values=zs, cells=tuple(cells))


def grid_axis(lo, hi, steps):
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if steps == 1:
        return (float(lo),)
    return tuple(float(v) for v in np.linspace(lo, hi, steps))


def cell_summary(report: OverlapReport) -> dict:
    return {
        "cut": report.cut,
        "attach": report.attach,
        "verdict": str(report.verdict),
        "area": report.total_area,
        "faces": [f.face for f in report.faces],
    }


def degrees(x):
    return None if x is None else math.degrees(x)
