import math
import warnings

import numpy as np
import pytest

from bandforge.errors import DegenerateHexagonWarning, Infeasible, InternalSymmetryError, InvalidParams
from bandforge.prismatoid import (
    Prismatoid,
    PrismatoidParams,
    build_prismatoid,
    build_top_hexagon,
    curvature_pair,
    face_angle_table,
    interior_angles,
    preset_params,
    regular_h,
    solve_params,
    validate,
    vertex_curvature,
    vertex_deficits,
)

from helpers import random_valid_params

DEG = math.pi / 180


def arccos_angle(u, v):
    """Independent angle routine: plain arccos of the normalised dot product."""
    c = np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v))
    return math.acos(max(-1.0, min(1.0, c)))


def test_hexagon_anchor_points():
    hexa = build_top_hexagon(1.0, 0.05).vertices
    np.testing.assert_allclose(hexa[0], (0, -0.05), atol=0)
    np.testing.assert_allclose(hexa[1], (0.5, 0), atol=0)
    np.testing.assert_allclose(hexa[3], (0, math.sqrt(3) / 2), atol=0)
    np.testing.assert_allclose(hexa[5], (-0.5, 0), atol=0)


@pytest.mark.parametrize("h", [0.0, 0.01, 0.05, 0.2, 0.6])
def test_apex_independent_of_h(h):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateHexagonWarning)
        hexa = build_top_hexagon(1.0, h).vertices
    np.testing.assert_allclose(hexa[3], (0, math.sqrt(3) / 2), atol=1e-16)


@pytest.mark.parametrize("s,h", [(1, 0.05), (1, 0.13), (2.5, 0.1), (0.3, 0.001)])
def test_even_angle_formula(s, h):
    hexa = build_top_hexagon(s, h).vertices
    for i in (0, 2, 4):
        numeric = arccos_angle(hexa[i - 1] - hexa[i], hexa[(i + 1) % 6] - hexa[i])
        assert numeric == pytest.approx(math.pi - 2 * math.atan(2 * h / s), abs=1e-9)


def test_even_vertices_bulge_along_side_normal():
    s, h = 1.0, 0.07
    hexa = build_top_hexagon(s, h).vertices
    mid = (hexa[1] + hexa[3]) / 2
    assert np.linalg.norm(hexa[2] - mid) == pytest.approx(h, abs=1e-15)
    assert np.dot(hexa[2] - mid, hexa[3] - hexa[1]) == pytest.approx(0, abs=1e-15)


def test_regular_h_gives_regular_hexagon():
    angles = interior_angles(build_top_hexagon(1.0, regular_h(1.0)))
    np.testing.assert_allclose(angles, 2 * math.pi / 3, atol=1e-12)


def test_zero_bulge_warns():
    with pytest.warns(DegenerateHexagonWarning):
        build_top_hexagon(1.0, 0.0)


@pytest.mark.parametrize("kw", [dict(h=-0.1, y=1, z=1), dict(h=0.1, y=-1, z=1),
                                dict(h=0.1, y=1, z=-1), dict(h=0.1, y=1, z=1, s=0),
                                dict(h=0.1, y=math.nan, z=1)])
def test_params_reject_bad_values(kw):
    with pytest.raises(InvalidParams):
        PrismatoidParams(**kw)


def test_b0_anchor():
    p = build_prismatoid(PrismatoidParams(h=0.05, y=0.5, z=0.095))
    np.testing.assert_allclose(p.b[0], (0, -0.55, -0.095), atol=1e-16)
    np.testing.assert_allclose(p.a[0], (0, -0.05, 0), atol=0)


def test_right_prism_has_rectangular_sides():
    p = build_prismatoid(PrismatoidParams(h=0.05, y=0.0, z=0.3))
    np.testing.assert_allclose(p.b - p.a, np.tile([0, 0, -0.3], (6, 1)), atol=1e-15)
    for i in range(6):
        q = p.side_face(i)
        for k in range(4):
            u, v = q[k - 1] - q[k], q[(k + 1) % 4] - q[k]
            assert arccos_angle(u, v) == pytest.approx(math.pi / 2, abs=1e-12)


def test_side_faces_planar_trapezoids(acute):
    for i in range(6):
        q = acute.side_face(i)
        c = q - q.mean(0)
        assert np.linalg.svd(c, compute_uv=False)[-1] <= 1e-10
        top, bottom = q[3] - q[0], q[2] - q[1]
        assert np.linalg.norm(np.cross(top, bottom)) <= 1e-12


def test_faces_wind_outward(acute):
    V = acute.vertices
    centre = V.mean(0)
    for face in acute.faces:
        P = V[list(face)]
        n = np.cross(P[1] - P[0], P[2] - P[0])
        assert np.dot(n, P.mean(0) - centre) > 0


def _rot120(pts, s=1.0):
    c = np.array([0.0, s * math.sqrt(3) / 6, 0.0])
    t = 2 * math.pi / 3
    R = np.array([[math.cos(t), -math.sin(t), 0], [math.sin(t), math.cos(t), 0], [0, 0, 1]])
    return (pts - c) @ R.T + c


@pytest.mark.parametrize("name", ["fig3", "acute"])
def test_threefold_symmetry(name):
    p = build_prismatoid(preset_params(name))
    np.testing.assert_allclose(_rot120(p.a), np.roll(p.a, -2, axis=0), atol=1e-12)
    np.testing.assert_allclose(_rot120(p.b), np.roll(p.b, -2, axis=0), atol=1e-12)


def test_mirror_symmetry(acute):
    mirror = np.array([-1.0, 1.0, 1.0])
    idx = [(-i) % 6 for i in range(6)]
    np.testing.assert_allclose(acute.a * mirror, acute.a[idx], atol=1e-15)
    np.testing.assert_allclose(acute.b * mirror, acute.b[idx], atol=1e-15)


def test_flat_limit_has_zero_curvature():
    p = build_prismatoid(PrismatoidParams(h=0.05, y=0.5, z=0.0))
    for i in range(6):
        assert vertex_curvature(p, i) == pytest.approx(0, abs=1e-12)
    cp = curvature_pair(p)
    assert cp.delta == pytest.approx(0, abs=1e-12) and cp.epsilon == pytest.approx(0, abs=1e-12)


def test_right_prism_curvature_is_pi_minus_angle():
    p = build_prismatoid(PrismatoidParams(h=0.08, y=0.0, z=0.4))
    angles = interior_angles(p.top)
    for i in range(6):
        assert vertex_curvature(p, i) == pytest.approx(math.pi - angles[i], abs=1e-12)


def test_curvature_matches_face_angle_table(acute):
    table = face_angle_table(acute)
    for i in range(6):
        assert len(table[i]) == 3
        assert sum(table[i]) + vertex_curvature(acute, i) == pytest.approx(2 * math.pi, abs=1e-12)


def test_curvature_increases_with_z():
    zs = np.linspace(0.01, 0.5, 50)
    pairs = [curvature_pair(build_prismatoid(PrismatoidParams(h=0.05, y=0.5, z=z))) for z in zs]
    d = np.array([p.delta for p in pairs])
    e = np.array([p.epsilon for p in pairs])
    assert np.all(np.diff(d) > 0) and np.all(np.diff(e) > 0)


def test_curvature_pair_symmetry_check():
    p = build_prismatoid(PrismatoidParams(h=0.05, y=0.5, z=0.1))
    broken = Prismatoid(params=p.params, a=p.a, b=p.b + np.array([0.01, 0, 0]), top=p.top)
    with pytest.raises(InternalSymmetryError):
        curvature_pair(broken)


def test_gauss_bonnet_random():
    rng = np.random.default_rng(11)
    for params in random_valid_params(rng, 20):
        total = math.fsum(vertex_deficits(build_prismatoid(params)))
        assert total == pytest.approx(4 * math.pi, abs=1e-9)


def test_scale_invariance():
    base = PrismatoidParams(h=0.07, y=0.4, z=0.12)
    ref = build_prismatoid(base)
    for lam in (0.1, 3.0, 10.0):
        p = build_prismatoid(base.scaled(lam))
        np.testing.assert_allclose(vertex_deficits(p), vertex_deficits(ref), atol=1e-10)
        assert validate(p).as_dict() | {"angles_deg": None} == validate(ref).as_dict() | {"angles_deg": None}
        assert p.top.area == pytest.approx(lam ** 2 * ref.top.area, rel=1e-12)


def test_validate_acute_preset(acute):
    rep = validate(acute)
    assert rep.ok
    assert rep.hull_convex and rep.side_faces_planar and rep.rims_parallel and rep.odd_acute
    assert rep.projection_contained


def test_validate_large_bulge_fails_acute():
    rep = validate(build_prismatoid(PrismatoidParams(h=0.5, y=0.5, z=0.1)))
    assert not rep.odd_acute
    assert rep.angles_deg[1] >= 90


def test_validate_flags_flat_solid():
    rep = validate(build_prismatoid(PrismatoidParams(h=0.05, y=0.5, z=0.0)))
    assert rep.degenerate and not rep.ok


def test_fig3_targets_force_right_odd_angles(fig3):
    # delta = epsilon / 2 pins the bulge; the odd angles land just above 90 degrees
    rep = validate(fig3)
    assert rep.hull_convex and rep.side_faces_planar and rep.rims_parallel and rep.even_obtuse
    assert not rep.odd_acute
    assert rep.angles_deg[1] == pytest.approx(90.49007, abs=1e-4)


def test_solve_fig3_targets():
    h, z = solve_params(2 * DEG, 0.5, s=1.0, y=0.5)
    cp = curvature_pair(build_prismatoid(PrismatoidParams(h=h, y=0.5, z=z)))
    assert abs(cp.epsilon - 2 * DEG) < 1e-9
    assert abs(cp.delta - 1 * DEG) < 1e-9
    # regression fixture; agrees with an independent scipy.optimize.fsolve run to 1e-8
    assert h == pytest.approx(0.13626911572763847, abs=1e-9)
    assert z == pytest.approx(0.12974539651126685, abs=1e-9)


def test_solve_fig1b_ratio_zy():
    h, z = solve_params(1 * DEG, 0.5, s=1.0, y=0.5)
    assert abs(z / 0.5 - 0.19) <= 0.03
    assert h == pytest.approx(0.13513272448758634, abs=1e-9)
    assert z == pytest.approx(0.09097825625387988, abs=1e-9)


@pytest.mark.parametrize("eps_deg,ratio", [(0.5, 0.25), (3.0, 0.8), (5.0, 1.0)])
def test_solve_residual_identity(eps_deg, ratio):
    h, z = solve_params(eps_deg * DEG, ratio, s=1.0, y=0.5)
    cp = curvature_pair(build_prismatoid(PrismatoidParams(h=h, y=0.5, z=z)))
    assert abs(cp.epsilon - eps_deg * DEG) < 1e-9
    assert abs(cp.delta - ratio * eps_deg * DEG) < 1e-9


def test_solve_is_deterministic():
    assert solve_params(1.5 * DEG, 0.4) == solve_params(1.5 * DEG, 0.4)


@pytest.mark.parametrize("eps,ratio", [(2 * DEG, 0.0), (2 * DEG, 1.5), (-DEG, 0.5), (100 * DEG, 0.5)])
def test_solve_infeasible(eps, ratio):
    with pytest.raises(Infeasible):
        solve_params(eps, ratio)
