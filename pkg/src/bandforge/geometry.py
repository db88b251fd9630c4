"""Planar primitives: convex polygons, rigid motions, clipping, and a Monte-Carlo area oracle.

Points are plain ``numpy`` arrays of shape ``(2,)`` or ``(3,)``; point sets are
``(N, 2)`` arrays.  Everything here is a pure function of its inputs.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import tolerances
from .errors import InvalidGeometry, LengthMismatch


def as_points(vertices, dim=2) -> np.ndarray:
    """Coerce ``vertices`` to a finite float array of shape (N, dim)."""
    pts = np.array(vertices, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != dim:
        raise InvalidGeometry(f"expected an (N, {dim}) array of points, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise InvalidGeometry("non-finite coordinate")
    return pts


def cross2(u, v):
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def angle_between(u, v) -> float:
    """Unsigned angle between two vectors of equal dimension, stable near 0 and pi."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape[-1] == 2:
        c = abs(float(cross2(u, v)))
    else:
        c = float(np.linalg.norm(np.cross(u, v)))
    return float(np.arctan2(c, float(np.dot(u, v))))


def signed_area(polygon) -> float:
    """Shoelace area; positive for counter-clockwise vertex order."""
    pts = polygon.vertices if isinstance(polygon, ConvexPolygon2) else as_points(polygon)
    if len(pts) < 3:
        raise InvalidGeometry("a polygon needs at least 3 vertices")
    # shift to the first vertex to keep the products small
    d = pts - pts[0]
    return 0.5 * float(np.sum(cross2(d[:-1], d[1:])))


def _diag(pts: np.ndarray) -> float:
    return float(np.linalg.norm(pts.max(axis=0) - pts.min(axis=0)))


class ConvexPolygon2:
    """Convex polygon with counter-clockwise vertices.

    Collinear vertices are tolerated (the flat ``h = 0`` hexagon has three),
    reflex ones and repeated ones are not.
    """

    __slots__ = ("_v",)

    def __init__(self, vertices, *, validate=True):
        pts = as_points(vertices)
        pts.setflags(write=False)
        self._v = pts
        if validate:
            self._check()

    def _check(self):
        pts = self._v
        n = len(pts)
        if n < 3:
            raise InvalidGeometry("a polygon needs at least 3 vertices")
        eps = tolerances().collinear * _diag(pts)
        nxt = np.roll(pts, -1, axis=0)
        if np.any(np.linalg.norm(nxt - pts, axis=1) <= eps):
            raise InvalidGeometry("repeated vertex")
        if signed_area(pts) <= 0:
            raise InvalidGeometry("vertices are not counter-clockwise (signed area <= 0)")
        e_in = pts - np.roll(pts, 1, axis=0)
        e_out = nxt - pts
        turn = cross2(e_in, e_out) / (np.linalg.norm(e_in, axis=1) * np.linalg.norm(e_out, axis=1))
        if np.any(turn < -tolerances().collinear):
            raise InvalidGeometry("polygon is not convex")

    @property
    def vertices(self) -> np.ndarray:
        return self._v

    def __len__(self):
        return len(self._v)

    def __iter__(self):
        return iter(self._v)

    def __repr__(self):
        return f"ConvexPolygon2({self._v.tolist()!r})"

    @property
    def area(self) -> float:
        return signed_area(self._v)

    @property
    def diameter(self) -> float:
        d = self._v[:, None, :] - self._v[None, :, :]
        return float(np.sqrt((d ** 2).sum(-1)).max())

    def centroid(self) -> np.ndarray:
        pts = self._v
        d = pts - pts[0]
        nxt = np.roll(d, -1, axis=0)
        w = cross2(d, nxt)
        a = w.sum() / 2.0
        c = ((d + nxt) * w[:, None]).sum(axis=0) / (6.0 * a)
        return c + pts[0]

    def edges(self):
        """Yield ``(start, end)`` pairs in boundary order."""
        pts = self._v
        for i in range(len(pts)):
            yield pts[i], pts[(i + 1) % len(pts)]

    def contains(self, points, tol=0.0) -> np.ndarray:
        """Boolean mask: which points lie inside or within ``tol`` of the boundary."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        inside = np.ones(len(pts), dtype=bool)
        for a, b in self.edges():
            e = b - a
            s = cross2(e, pts - a) / np.linalg.norm(e)
            inside &= s >= -tol
        return inside

    def transformed(self, iso: "PlanarIsometry") -> "ConvexPolygon2":
        pts = iso(self._v)
        if iso.orientation < 0:
            pts = pts[::-1]
        return ConvexPolygon2(pts, validate=False)


@dataclass(frozen=True, eq=False)
class PlanarIsometry:
    """``x -> linear @ x + translation`` with an orthogonal ``linear`` part."""

    linear: np.ndarray = field(default_factory=lambda: np.eye(2))
    translation: np.ndarray = field(default_factory=lambda: np.zeros(2))

    def __post_init__(self):
        lin = np.array(self.linear, dtype=float).reshape(2, 2)
        tr = np.array(self.translation, dtype=float).reshape(2)
        if not (np.all(np.isfinite(lin)) and np.all(np.isfinite(tr))):
            raise InvalidGeometry("non-finite isometry")
        gram = lin.T @ lin
        if np.abs(gram - np.eye(2)).max() > 1e-12:
            raise InvalidGeometry("linear part is not orthogonal")
        lin.setflags(write=False)
        tr.setflags(write=False)
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "translation", tr)

    @classmethod
    def identity(cls):
        return cls()

    @classmethod
    def rotation(cls, theta, center=(0.0, 0.0)):
        c, s = np.cos(theta), np.sin(theta)
        lin = np.array([[c, -s], [s, c]])
        center = np.asarray(center, dtype=float)
        return cls(lin, center - lin @ center)

    @property
    def orientation(self) -> int:
        return 1 if np.linalg.det(self.linear) > 0 else -1

    def __call__(self, points):
        pts = np.asarray(points, dtype=float)
        return pts @ self.linear.T + self.translation

    def compose(self, other: "PlanarIsometry") -> "PlanarIsometry":
        """``self ∘ other``: apply ``other`` first."""
        return PlanarIsometry(self.linear @ other.linear, self.linear @ other.translation + self.translation)

    def inverse(self) -> "PlanarIsometry":
        lin = self.linear.T
        return PlanarIsometry(lin, -lin @ self.translation)


def rigid_map_from_edge(src, dst, side="left") -> PlanarIsometry:
    """Isometry taking segment ``src`` onto ``dst`` endpoint by endpoint.

    ``side`` says where points left of ``src`` must end up relative to ``dst``:
    ``"left"`` gives a rotation, ``"right"`` a reflection.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    p0, p1 = as_points(src)
    q0, q1 = as_points(dst)
    u, v = p1 - p0, q1 - q0
    lu, lv = float(np.hypot(*u)), float(np.hypot(*v))
    if lu == 0.0 or lv == 0.0:
        raise InvalidGeometry("zero-length segment")
    if abs(lu - lv) > tolerances().length * max(lu, lv):
        raise LengthMismatch(f"segment lengths differ: {lu!r} vs {lv!r}")
    u, v = u / lu, v / lv
    c, s = float(np.dot(u, v)), float(cross2(u, v))
    rot = np.array([[c, -s], [s, c]])
    if side == "right":
        # reflect across the src line first, then rotate
        rot = rot @ (2.0 * np.outer(u, u) - np.eye(2))
    # re-orthonormalise: c, s come from independently normalised vectors
    uu, _, vt = np.linalg.svd(rot)
    rot = uu @ vt
    return PlanarIsometry(rot, q0 - rot @ p0)


def _clip_halfplane(pts, a, b):
    """Keep the part of polygon ``pts`` left of the directed line a->b."""
    e = b - a
    d = cross2(e, pts - a)
    out = []
    n = len(pts)
    for i in range(n):
        s, t = pts[i - 1], pts[i]
        ds, dt = d[i - 1], d[i]
        if dt >= 0:
            if ds < 0:
                out.append(s + (t - s) * (ds / (ds - dt)))
            out.append(t)
        elif ds >= 0:
            out.append(s + (t - s) * (ds / (ds - dt)))
    return np.array(out) if out else np.empty((0, 2))


def _dedupe(pts, eps):
    if len(pts) == 0:
        return pts
    keep = [pts[0]]
    for p in pts[1:]:
        if np.linalg.norm(p - keep[-1]) > eps:
            keep.append(p)
    if len(keep) > 1 and np.linalg.norm(keep[0] - keep[-1]) <= eps:
        keep.pop()
    return np.array(keep)


def convex_clip(p: ConvexPolygon2, q: ConvexPolygon2):
    """Intersection of two convex polygons, or ``None`` when it has no interior.

    Results thinner than the collinearity tolerance (shared edges, touching
    corners) count as empty.
    """
    if not isinstance(p, ConvexPolygon2):
        p = ConvexPolygon2(p)
    if not isinstance(q, ConvexPolygon2):
        q = ConvexPolygon2(q)
    # cheap reject on bounding boxes
    pv, qv = p.vertices, q.vertices
    if np.any(pv.max(0) < qv.min(0)) or np.any(qv.max(0) < pv.min(0)):
        return None
    pts = pv
    for a, b in q.edges():
        pts = _clip_halfplane(pts, a, b)
        if len(pts) < 3:
            return None
    diam = max(p.diameter, q.diameter)
    eps = tolerances().collinear
    pts = _dedupe(pts, eps * diam)
    if len(pts) < 3 or signed_area(pts) < eps * diam * diam:
        return None
    return ConvexPolygon2(pts, validate=False)


def clip_area(p, q) -> float:
    r = convex_clip(p, q)
    return 0.0 if r is None else r.area


def mc_overlap_stats(p: ConvexPolygon2, q: ConvexPolygon2, n: int, seed: int, chunk=250_000):
    """Monte-Carlo estimate of ``area(p ∩ q)`` and its standard error.

    Samples are uniform in the bounding box of ``p`` drawn from numpy's
    PCG64 generator (``numpy.random.default_rng(seed)``), so a given seed
    reproduces the same number everywhere numpy does.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not isinstance(p, ConvexPolygon2):
        p = ConvexPolygon2(p)
    if not isinstance(q, ConvexPolygon2):
        q = ConvexPolygon2(q)
    rng = np.random.default_rng(seed)
    lo, hi = p.vertices.min(0), p.vertices.max(0)
    box = float(np.prod(hi - lo))
    hits = 0
    left = n
    while left > 0:
        m = min(chunk, left)
        pts = lo + (hi - lo) * rng.random((m, 2))
        hits += int(np.count_nonzero(p.contains(pts) & q.contains(pts)))
        left -= m
    frac = hits / n
    return box * frac, box * np.sqrt(frac * (1.0 - frac) / n)


def mc_overlap_area(p: ConvexPolygon2, q: ConvexPolygon2, n: int, seed: int) -> float:
    return mc_overlap_stats(p, q, n, seed)[0]
