import numpy as np
from scipy.spatial import ConvexHull

from bandforge.geometry import ConvexPolygon2
from bandforge.prismatoid import PrismatoidParams


def random_convex(rng, n=8, center=(0.0, 0.0), scale=1.0):
    pts = rng.normal(size=(n, 2)) * scale + np.asarray(center)
    hull = ConvexHull(pts)
    return ConvexPolygon2(pts[hull.vertices])


def random_valid_params(rng, count):
    """Parameter sets that pass validate(): bulge keeps odd angles acute, solid not flat."""
    out = []
    while len(out) < count:
        s = float(rng.uniform(0.5, 2.0))
        p = PrismatoidParams(
            h=float(rng.uniform(0.01, 0.12)) * s,
            y=float(rng.uniform(0.1, 1.0)) * s,
            z=float(rng.uniform(0.005, 0.6)) * s,
            s=s,
        )
        out.append(p)
    return out
