"""Planar development of the lateral band and fold-out of the top face.

A development is built by chaining 2D hinge isometries: every lateral face
is first laid out in its own intrinsic frame (seen from outside, so vertex
order stays counter-clockwise) and then moved rigidly onto the image of the
lateral edge it shares with the previous face.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .config import tolerances
from .errors import InvalidGeometry
from .geometry import ConvexPolygon2, PlanarIsometry, angle_between, clip_area, convex_clip, rigid_map_from_edge
from .prismatoid import Prismatoid


class Verdict(str, enum.Enum):
    OVERLAP = "OVERLAP"
    CLEAR = "CLEAR"
    MARGINAL = "MARGINAL"

    def __str__(self):
        return self.value


def face_frame(points3) -> np.ndarray:
    """Intrinsic 2D coordinates of a planar 3D polygon listed CCW from outside."""
    P = np.asarray(points3, dtype=float)
    # Newell normal: robust for any planar polygon
    n = np.zeros(3)
    for i in range(len(P)):
        p, q = P[i], P[(i + 1) % len(P)]
        n += np.array([(p[1] - q[1]) * (p[2] + q[2]),
                       (p[2] - q[2]) * (p[0] + q[0]),
                       (p[0] - q[0]) * (p[1] + q[1])])
    nn = np.linalg.norm(n)
    e = P[1] - P[0]
    ne = np.linalg.norm(e)
    if nn == 0 or ne == 0:
        raise InvalidGeometry("degenerate face (zero area or zero-length edge)")
    n /= nn
    u = e / ne
    v = np.cross(n, u)
    d = P - P[0]
    return np.column_stack([d @ u, d @ v])


@dataclass(frozen=True, eq=False)
class Development:
    """Band unrolled after cutting lateral edge ``a_cut b_cut``.

    ``quads[m]`` is the image of lateral face ``(cut + m) % 6`` with corners
    ``(a_i, b_i, b_{i+1}, a_{i+1})``; ``rim[m]`` / ``bottom[m]`` are the images
    of ``a_{cut+m}`` / ``b_{cut+m}`` for ``m = 0..6``.
    """

    prism: Prismatoid
    cut: int
    quads: tuple
    rim: np.ndarray
    bottom: np.ndarray

    def face_index(self, m: int) -> int:
        return (self.cut + m) % 6

    def slot_of_face(self, i: int) -> int:
        return (i - self.cut) % 6


def develop_band(prism: Prismatoid, cut: int) -> Development:
    if not 0 <= cut < 6:
        raise IndexError(f"cut index must be in 0..5, got {cut}")
    quads = []
    prev = None
    for m in range(6):
        i = (cut + m) % 6
        local = face_frame(prism.side_face(i))
        if abs(_area(local)) <= tolerances().collinear * prism.params.s ** 2:
            raise InvalidGeometry(f"lateral face {i} has zero area")
        if prev is None:
            L = float(np.linalg.norm(local[1] - local[0]))
            dst = np.array([[0.0, 0.0], [0.0, L]])
        else:
            dst = np.array([prev[3], prev[2]])
        iso = rigid_map_from_edge(local[:2], dst, side="left")
        img = iso(local)
        if prev is not None:
            # hinge endpoints are shared exactly
            img[0], img[1] = prev[3], prev[2]
        quads.append(img)
        prev = img
    rim = np.array([q[0] for q in quads] + [quads[-1][3]])
    bottom = np.array([q[1] for q in quads] + [quads[-1][2]])
    rim.setflags(write=False)
    bottom.setflags(write=False)
    return Development(
        prism=prism,
        cut=cut,
        quads=tuple(ConvexPolygon2(q, validate=False) for q in quads),
        rim=rim,
        bottom=bottom,
    )


def _area(pts):
    d = pts - pts[0]
    return 0.5 * float(np.sum(d[:-1, 0] * d[1:, 1] - d[:-1, 1] * d[1:, 0]))


@dataclass(frozen=True, eq=False)
class TopPlacement:
    cut: int
    attach: int
    hexagon: ConvexPolygon2
    isometry: PlanarIsometry

    @property
    def attach_edge(self) -> np.ndarray:
        v = self.hexagon.vertices
        return np.array([v[self.attach], v[(self.attach + 1) % 6]])


def place_top(dev: Development, attach: int) -> TopPlacement:
    """Fold ``A`` out across rim edge ``a_j a_{j+1}``, to the side away from its lateral face."""
    if not 0 <= attach < 6:
        raise IndexError(f"attachment index must be in 0..5, got {attach}")
    A = dev.prism.top.vertices
    m = dev.slot_of_face(attach)
    src = np.array([A[attach], A[(attach + 1) % 6]])
    dst = np.array([dev.rim[m], dev.rim[m + 1]])
    # A's interior is left of a_j -> a_{j+1}; the face's is right of it
    iso = rigid_map_from_edge(src, dst, side="left")
    hexagon = iso(A)
    hexagon[attach], hexagon[(attach + 1) % 6] = dst[0], dst[1]
    return TopPlacement(cut=dev.cut, attach=attach, hexagon=ConvexPolygon2(hexagon, validate=False), isometry=iso)


def cut_gap_angle(dev: Development) -> float:
    """Angle the band opens by at the cut vertex.

    Re-glue the last face to ``A`` (attached to the first face) along their
    shared top edge; the two images of the cut edge then start at the same
    point and the angle between them is the gap.
    """
    k = dev.cut
    top = place_top(dev, k)
    A = top.hexagon.vertices
    src = np.array([dev.rim[5], dev.rim[6]])
    dst = np.array([A[(k - 1) % 6], A[k]])
    iso = rigid_map_from_edge(src, dst, side="left")
    first = dev.bottom[0] - dev.rim[0]
    last = iso(dev.bottom[6]) - iso(dev.rim[6])
    return angle_between(first, last)


@dataclass(frozen=True)
class FaceOverlap:
    face: int
    polygon: ConvexPolygon2
    area: float


@dataclass(frozen=True)
class OverlapReport:
    cut: int
    attach: int
    faces: tuple
    total_area: float
    threshold: float
    verdict: Verdict

    @property
    def overlaps(self) -> bool:
        return self.verdict is Verdict.OVERLAP


def classify(total: float, threshold: float) -> Verdict:
    band = tolerances().marginal_band
    if total > threshold * band:
        return Verdict.OVERLAP
    if total < threshold / band:
        return Verdict.CLEAR
    return Verdict.MARGINAL


def area_threshold(prism: Prismatoid) -> float:
    return tolerances().area * prism.top.area


def overlap(placement: TopPlacement, dev: Development) -> OverlapReport:
    """Clip the placed hexagon against each developed lateral face."""
    if placement.cut != dev.cut:
        raise ValueError("placement was made for a different development")
    tau = area_threshold(dev.prism)
    hits = []
    areas = []
    for m, quad in enumerate(dev.quads):
        poly = convex_clip(placement.hexagon, quad)
        a = 0.0 if poly is None else poly.area
        areas.append(a)
        if a > tau / tolerances().marginal_band:
            hits.append(FaceOverlap(face=dev.face_index(m), polygon=poly, area=a))
    total = math.fsum(areas)
    return OverlapReport(
        cut=dev.cut,
        attach=placement.attach,
        faces=tuple(hits),
        total_area=total,
        threshold=tau,
        verdict=classify(total, tau),
    )


def band_pair_overlaps(dev: Development) -> np.ndarray:
    """6x6 matrix of clip areas between developed faces (diagonal left at zero)."""
    out = np.zeros((6, 6))
    for i in range(6):
        for j in range(i + 1, 6):
            out[i, j] = out[j, i] = clip_area(dev.quads[i], dev.quads[j])
    return out
