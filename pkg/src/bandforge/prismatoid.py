"""The three-acute-angle prismatoid: construction, curvature, validation, tuning.

Frame: origin at the midpoint of the bottom side of the equilateral triangle
inscribed in the top face ``A``; ``A`` lies in the plane ``z = 0`` and the
bottom face ``B`` in ``z = -z``.  Vertex ``a_0 = (0, -h, 0)`` sits below the
origin, ``b_0 = (0, -(h + y), -z)``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .config import tolerances
from .errors import (
    DegenerateHexagonWarning,
    Infeasible,
    InternalSymmetryError,
    InvalidGeometry,
    InvalidParams,
)
from .geometry import ConvexPolygon2, angle_between, cross2

SQRT3 = math.sqrt(3.0)
TWO_PI = 2.0 * math.pi

EVEN = (0, 2, 4)
ODD = (1, 3, 5)


def regular_h(s=1.0) -> float:
    """Bulge that turns the hexagon regular (all interior angles 120 degrees)."""
    return s * SQRT3 / 6.0


@dataclass(frozen=True)
class PrismatoidParams:
    h: float
    y: float
    z: float
    s: float = 1.0

    def __post_init__(self):
        for name in ("s", "h", "y", "z"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise InvalidParams(f"{name} must be finite, got {v!r}")
        if self.s <= 0:
            raise InvalidParams(f"s must be positive, got {self.s!r}")
        if self.h < 0:
            raise InvalidParams(f"h must be non-negative, got {self.h!r}")
        if self.y < 0:
            raise InvalidParams(f"y must be non-negative, got {self.y!r}")
        if self.z < 0:
            raise InvalidParams(f"z must be non-negative, got {self.z!r}")

    def scaled(self, lam: float) -> "PrismatoidParams":
        return PrismatoidParams(h=self.h * lam, y=self.y * lam, z=self.z * lam, s=self.s * lam)

    def as_dict(self) -> dict:
        return {"s": self.s, "h": self.h, "y": self.y, "z": self.z}


def triangle_centroid(s=1.0) -> np.ndarray:
    return np.array([0.0, s * SQRT3 / 6.0])


def build_top_hexagon(s=1.0, h=0.0) -> ConvexPolygon2:
    """Hexagon ``a_0..a_5`` (CCW): triangle corners at odd indices, bulged side midpoints at even ones."""
    if not s > 0:
        raise InvalidParams(f"s must be positive, got {s!r}")
    if h < 0:
        raise InvalidParams(f"h must be non-negative, got {h!r}")
    if h == 0:
        warnings.warn("h = 0 puts a_0, a_2, a_4 on the triangle sides", DegenerateHexagonWarning, stacklevel=2)
    corners = {1: np.array([s / 2, 0.0]), 3: np.array([0.0, s * SQRT3 / 2]), 5: np.array([-s / 2, 0.0])}
    pts = np.empty((6, 2))
    for i in ODD:
        pts[i] = corners[i]
    for i in EVEN:
        p, q = corners[(i - 1) % 6], corners[i + 1]
        d = q - p
        outward = np.array([d[1], -d[0]]) / np.hypot(*d)
        pts[i] = (p + q) / 2 + h * outward
    # the two midpoints off the x-axis pick up rounding; pin the exact ones
    pts[0] = (0.0, -h)
    try:
        return ConvexPolygon2(pts)
    except InvalidGeometry:
        # too much bulge; validate() reports it
        return ConvexPolygon2(pts, validate=False)


@dataclass(frozen=True, eq=False)
class Prismatoid:
    """Top ``a[0..5]``, bottom ``b[0..5]`` and the face list over the 12 vertices.

    Vertex ``i`` of the stacked array ``vertices`` is ``a_i`` for ``i < 6`` and
    ``b_{i-6}`` otherwise.  Faces are listed counter-clockwise seen from outside.
    """

    params: PrismatoidParams
    a: np.ndarray
    b: np.ndarray
    top: ConvexPolygon2 = field(repr=False)

    @property
    def vertices(self) -> np.ndarray:
        return np.vstack([self.a, self.b])

    @property
    def faces(self) -> list[tuple[int, ...]]:
        side = [(i, 6 + i, 6 + (i + 1) % 6, (i + 1) % 6) for i in range(6)]
        return [tuple(range(6)), tuple(range(11, 5, -1))] + side

    def side_face(self, i: int) -> np.ndarray:
        """3D corners ``(a_i, b_i, b_{i+1}, a_{i+1})`` of lateral face ``i``."""
        j = (i + 1) % 6
        return np.array([self.a[i], self.b[i], self.b[j], self.a[j]])


def build_prismatoid(params: PrismatoidParams) -> Prismatoid:
    """Lift the top hexagon to ``z = 0`` and hang its outward offset ``B`` at depth ``z``.

    ``B`` is the image of ``A`` under the homothety about the triangle centroid
    that sends ``a_0`` to ``(0, -(h + y))``.  Its edges stay parallel to ``A``'s,
    so each lateral face is a planar trapezoid and the solid keeps the
    three-fold and mirror symmetry of ``A``.  ``y = 0`` gives a right prism.
    """
    if not isinstance(params, PrismatoidParams):
        raise InvalidParams("expected PrismatoidParams")
    s, h, y, z = params.s, params.h, params.y, params.z
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateHexagonWarning)
        top = build_top_hexagon(s, h)
    c = triangle_centroid(s)
    lam = (c[1] + h + y) / (c[1] + h)
    a2 = top.vertices
    b2 = c + lam * (a2 - c)
    b2[0] = (0.0, -(h + y))
    a = np.column_stack([a2, np.zeros(6)])
    b = np.column_stack([b2, np.full(6, -z)])
    a.setflags(write=False)
    b.setflags(write=False)
    return Prismatoid(params=params, a=a, b=b, top=top)


def interior_angles(poly) -> np.ndarray:
    pts = poly.vertices if isinstance(poly, ConvexPolygon2) else np.asarray(poly)
    n = len(pts)
    return np.array([angle_between(pts[i - 1] - pts[i], pts[(i + 1) % n] - pts[i]) for i in range(n)])


def face_angle_table(prism: Prismatoid) -> list[list[float]]:
    """For each of the 12 vertices, the face angles incident to it (3D edge vectors)."""
    V = prism.vertices
    table = [[] for _ in range(12)]
    for face in prism.faces:
        n = len(face)
        for k, v in enumerate(face):
            p, q = V[face[k - 1]], V[face[(k + 1) % n]]
            table[v].append(angle_between(p - V[v], q - V[v]))
    return table


def vertex_deficits(prism: Prismatoid) -> np.ndarray:
    """Angle deficit at all 12 vertices (``a_0..a_5`` then ``b_0..b_5``)."""
    return np.array([TWO_PI - math.fsum(angs) for angs in face_angle_table(prism)])


def vertex_curvature(prism: Prismatoid, i: int) -> float:
    """Angle deficit at ``a_i``: 2π minus the angle of ``A`` and of the two adjacent lateral faces."""
    if not 0 <= i < 6:
        raise IndexError(f"vertex index must be in 0..5, got {i}")
    a = prism.a
    prev, nxt = a[(i - 1) % 6] - a[i], a[(i + 1) % 6] - a[i]
    down = prism.b[i] - a[i]
    return TWO_PI - math.fsum([angle_between(prev, nxt), angle_between(nxt, down), angle_between(prev, down)])


@dataclass(frozen=True)
class CurvaturePair:
    delta: float
    epsilon: float

    @property
    def ratio(self) -> float:
        return self.delta / self.epsilon if self.epsilon else float("nan")

    def degrees(self) -> tuple[float, float]:
        return math.degrees(self.delta), math.degrees(self.epsilon)


def curvature_pair(prism: Prismatoid) -> CurvaturePair:
    ks = [vertex_curvature(prism, i) for i in range(6)]
    even = [ks[i] for i in EVEN]
    odd = [ks[i] for i in ODD]
    tol = tolerances().symmetry_rad
    if max(even) - min(even) > tol or max(odd) - min(odd) > tol:
        raise InternalSymmetryError(f"deficits break the 3-fold symmetry: {ks}")
    return CurvaturePair(delta=math.fsum(even) / 3, epsilon=math.fsum(odd) / 3)


@dataclass(frozen=True)
class ValidationReport:
    hull_convex: bool
    top_convex: bool
    side_faces_planar: bool
    rims_parallel: bool
    odd_acute: bool
    even_obtuse: bool
    degenerate: bool
    projection_contained: bool
    angles_deg: tuple[float, ...] = ()
    reasons: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        """Every gating check passes; ``projection_contained`` is informational only."""
        return (self.hull_convex and self.top_convex and self.side_faces_planar and self.rims_parallel
                and self.odd_acute and self.even_obtuse and not self.degenerate)

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "hull_convex": self.hull_convex,
            "top_convex": self.top_convex,
            "side_faces_planar": self.side_faces_planar,
            "rims_parallel": self.rims_parallel,
            "odd_acute": self.odd_acute,
            "even_obtuse": self.even_obtuse,
            "degenerate": self.degenerate,
            "projection_contained": self.projection_contained,
            "angles_deg": list(self.angles_deg),
            "reasons": list(self.reasons),
        }


def _plane_residual(pts: np.ndarray) -> float:
    centered = pts - pts.mean(axis=0)
    return float(np.linalg.svd(centered, compute_uv=False)[-1])


def validate(prism: Prismatoid) -> ValidationReport:
    p = prism.params
    s = p.s
    reasons = []
    tol = 1e-10 * s

    degenerate = p.z < tolerances().degenerate_z * s
    if degenerate:
        reasons.append(f"z = {p.z!r} is below {tolerances().degenerate_z} * s: the solid is flat")
    if p.h == 0:
        degenerate = True
        reasons.append("h = 0: a_0, a_2, a_4 are collinear with triangle sides")

    angles = interior_angles(prism.top)
    top_convex = bool(np.all(angles < math.pi) and signed_area_2d(prism.a[:, :2]) > 0)
    e_in = prism.a[:, :2] - np.roll(prism.a[:, :2], 1, axis=0)
    e_out = np.roll(prism.a[:, :2], -1, axis=0) - prism.a[:, :2]
    top_convex = top_convex and bool(np.all(cross2(e_in, e_out) > 0))
    if not top_convex:
        reasons.append("top hexagon is not strictly convex")

    planar = all(_plane_residual(prism.side_face(i)) <= tol for i in range(6))
    if not planar:
        reasons.append("a lateral face is not planar")

    rims_parallel = True
    for i in range(6):
        j = (i + 1) % 6
        ea, eb = prism.a[j] - prism.a[i], prism.b[j] - prism.b[i]
        if np.linalg.norm(np.cross(ea, eb)) > tol * np.linalg.norm(ea) * np.linalg.norm(eb) / s:
            rims_parallel = False
    if not rims_parallel:
        reasons.append("top and bottom rim edges are not parallel")

    hull_convex = not degenerate
    V = prism.vertices
    if hull_convex:
        for face in prism.faces:
            P = V[list(face)]
            n = np.cross(P[1] - P[0], P[2] - P[0])
            norm = np.linalg.norm(n)
            if norm == 0:
                hull_convex = False
                break
            n /= norm
            if np.any((V - P[0]) @ n > tol):
                hull_convex = False
                break
    if not hull_convex and not degenerate:
        reasons.append("some vertex lies outside a face plane")

    odd_acute = bool(all(angles[i] < math.pi / 2 for i in ODD))
    if not odd_acute:
        reasons.append("an odd-vertex angle of A is not acute: " +
                       ", ".join(f"{math.degrees(angles[i]):.4f} deg" for i in ODD))
    even_obtuse = bool(all(math.pi / 2 < angles[i] < math.pi for i in EVEN))
    if not even_obtuse:
        reasons.append("an even-vertex angle of A is outside (90, 180) degrees")

    bottom = ConvexPolygon2(prism.b[:, :2], validate=False)
    contained = bool(np.all(bottom.contains(prism.a[:, :2], tol=-1e-12 * s)))

    return ValidationReport(
        hull_convex=hull_convex,
        top_convex=top_convex,
        side_faces_planar=planar,
        rims_parallel=rims_parallel,
        odd_acute=odd_acute,
        even_obtuse=even_obtuse,
        degenerate=degenerate,
        projection_contained=contained,
        angles_deg=tuple(math.degrees(a) for a in angles),
        reasons=tuple(reasons),
    )


def signed_area_2d(pts) -> float:
    d = np.asarray(pts) - pts[0]
    return 0.5 * float(np.sum(cross2(d[:-1], d[1:])))


def curvatures_at(h, z, s=1.0, y=0.5) -> CurvaturePair:
    return curvature_pair(build_prismatoid(PrismatoidParams(h=h, y=y, z=z, s=s)))


def _epsilon_limit(h, s) -> float:
    # z -> infinity: lateral edges go vertical, the deficit tends to pi minus A's angle
    return math.pi - interior_angles(build_top_hexagon(s, h))[1] if h > 0 else 2 * math.pi / 3


def _z_for_epsilon(target, h, s, y, xtol):
    f = lambda z: curvatures_at(h, z, s, y).epsilon - target
    lo = 0.0
    hi = s
    while f(hi) < 0:
        hi *= 4.0
        if hi > 1e8 * s:
            raise Infeasible(target, f"epsilon = {target!r} rad unreachable at h = {h!r}")
    return brentq(f, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=200)


def solve_params(target_epsilon, ratio=0.5, s=1.0, y=0.5, tol=1e-9):
    """Find ``(h, z)`` with ``epsilon = target_epsilon`` and ``delta = ratio * epsilon``.

    Nested root-finding over a fixed bracket: the inner solve tunes ``z`` to
    the target ``epsilon`` for a given ``h``, the outer one tunes ``h`` on
    ``[0, regular_h(s)]`` until the deficit ratio matches.  At ``h = 0`` the
    even vertices are flat (ratio 0) and at the regular hexagon all six
    deficits agree (ratio 1), so every ratio in ``(0, 1]`` is bracketed.
    """
    if not 0 < ratio <= 1:
        raise Infeasible(ratio, f"ratio must lie in (0, 1], got {ratio!r}")
    if not target_epsilon > 0:
        raise Infeasible(target_epsilon, "target epsilon must be positive")
    if y <= 0:
        raise InvalidParams("solving needs y > 0")
    xtol = 1e-15 * s
    h_hi = regular_h(s)
    if target_epsilon >= _epsilon_limit(h_hi, s):
        raise Infeasible(target_epsilon, f"epsilon = {target_epsilon!r} rad exceeds the right-prism limit")

    def g(h):
        z = _z_for_epsilon(target_epsilon, h, s, y, xtol)
        return curvatures_at(h, z, s, y).delta - ratio * target_epsilon

    h_lo = 1e-12 * s
    g_lo, g_hi = g(h_lo), g(h_hi)
    if abs(g_hi) <= 1e-3 * tol:
        # ratio 1: the regular hexagon, where the bracket ends
        h = h_hi
    elif g_lo * g_hi > 0:
        raise Infeasible(target_epsilon)
    else:
        h = brentq(g, h_lo, h_hi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=200)
    z = _z_for_epsilon(target_epsilon, h, s, y, xtol)
    got = curvatures_at(h, z, s, y)
    if abs(got.epsilon - target_epsilon) > tol or abs(got.delta - ratio * target_epsilon) > tol:
        raise Infeasible(target_epsilon, f"solver stalled at residuals "
                                         f"({got.delta - ratio * target_epsilon:.3e}, {got.epsilon - target_epsilon:.3e})")
    return h, z


# Named parameter sets.  ``fig1b`` and ``fig3`` are defined by curvature
# targets (ratio delta/epsilon = 1/2); ``acute`` is a direct parameter set.
PRESET_TARGETS = {
    "fig1b": {"epsilon_deg": 1.0, "ratio": 0.5},
    "fig3": {"epsilon_deg": 2.0, "ratio": 0.5},
}
PRESET_PARAMS = {
    "acute": PrismatoidParams(h=0.05, y=0.5, z=0.095),
}
PRESET_Y = 0.5


@lru_cache(maxsize=None)
def preset_params(name: str) -> PrismatoidParams:
    if name in PRESET_PARAMS:
        return PRESET_PARAMS[name]
    if name not in PRESET_TARGETS:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(preset_names())}")
    t = PRESET_TARGETS[name]
    h, z = solve_params(math.radians(t["epsilon_deg"]), t["ratio"], s=1.0, y=PRESET_Y)
    return PrismatoidParams(h=h, y=PRESET_Y, z=z)


def preset_names():
    return list(PRESET_TARGETS) + list(PRESET_PARAMS)

