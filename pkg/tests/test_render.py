import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from bandforge.prismatoid import PrismatoidParams, build_prismatoid
from bandforge.render import FigureStyle, fmt, render_overhead_svg, render_unfolding_svg
from bandforge.report import dumps, export_obj, read_obj, report_json
from bandforge.unfold import develop_band, overlap, place_top
from bandforge.verify import sweep, verdict_matrix

NS = {"svg": "http://www.w3.org/2000/svg"}


def elements(svg: bytes, cls: str):
    root = ET.fromstring(svg)
    return [e for e in root.iter() if cls in (e.get("class") or "").split()]


def panel(prism, cut, attach):
    dev = develop_band(prism, cut)
    pl = place_top(dev, attach)
    return dev, pl, overlap(pl, dev)


def test_unfolding_svg_structure(acute):
    dev, pl, rep = panel(acute, 3, 0)
    svg = render_unfolding_svg(dev, pl, rep)
    assert len(elements(svg, "band-face")) == 6
    rims = elements(svg, "rim")
    assert len(rims) == 1 and rims[0].get("stroke") == "red"
    assert len(elements(svg, "top-face")) == 1
    edges = elements(svg, "attach-edge")
    assert len(edges) == 1 and edges[0].get("stroke") == "blue"
    assert len(elements(svg, "overlap-marker")) >= 1


def test_unfolding_svg_without_placement(acute):
    svg = render_unfolding_svg(develop_band(acute, 0))
    assert len(elements(svg, "band-face")) == 6
    assert not elements(svg, "attach-edge")
    assert not elements(svg, "overlap-marker")
    assert not elements(svg, "top-face")


def test_unfolding_svg_deterministic(acute):
    dev, pl, rep = panel(acute, 0, 4)
    assert render_unfolding_svg(dev, pl, rep) == render_unfolding_svg(*panel(acute, 0, 4))


def test_rim_coordinates_match_development(acute):
    dev = develop_band(acute, 1)
    rim = elements(render_unfolding_svg(dev), "rim")[0]
    pts = np.array([[float(v) for v in p.split(",")] for p in rim.get("points").split()])
    # 9 significant digits
    np.testing.assert_allclose(pts, dev.rim, rtol=1e-8, atol=1e-9)


def test_custom_style_colors(acute):
    dev, pl, rep = panel(acute, 3, 1)
    svg = render_unfolding_svg(dev, pl, rep, FigureStyle(rim_color="#ff0000", attach_color="navy"))
    assert elements(svg, "rim")[0].get("stroke") == "#ff0000"
    assert elements(svg, "attach-edge")[0].get("stroke") == "navy"


def test_overhead_svg(acute):
    svg = render_overhead_svg(acute)
    labels = [e.text for e in elements(svg, "vertex")]
    assert sorted(labels) == sorted([f"a{i}" for i in range(6)] + [f"b{i}" for i in range(6)])
    assert len(elements(svg, "outline")) == 2
    assert {e.text for e in elements(svg, "extent") if e.tag.endswith("text")} == {"h", "y"}
    assert svg == render_overhead_svg(acute)


def test_overhead_right_prism_outlines_coincide():
    svg = render_overhead_svg(build_prismatoid(PrismatoidParams(h=0.05, y=0.0, z=0.2)))
    top, bottom = (e for e in elements(svg, "outline") if "top" in e.get("class")), \
        (e for e in elements(svg, "outline") if "bottom" in e.get("class"))
    assert next(top).get("d") == next(bottom).get("d")


def test_fmt():
    assert fmt(-0.0) == "0"
    assert fmt(1 / 3) == "0.333333333"
    assert fmt(123456789012) == "1.23456789e+11"


def test_obj_structure_and_round_trip(acute):
    data = export_obj(acute)
    lines = data.decode().splitlines()
    assert sum(l.startswith("v ") for l in lines) == 12
    assert sum(l.startswith("f ") for l in lines) == 8
    verts, faces = read_obj(data)
    np.testing.assert_allclose(verts, acute.vertices, atol=1e-8)
    edges = {tuple(sorted((f[k], f[(k + 1) % len(f)]))) for f in faces for k in range(len(f))}
    assert len(verts) - len(edges) + len(faces) == 2
    assert export_obj(acute) == data


def test_obj_faces_outward(acute):
    verts, faces = read_obj(export_obj(acute))
    centre = verts.mean(0)
    for f in faces:
        P = verts[list(f)]
        n = np.cross(P[1] - P[0], P[2] - P[0])
        assert np.dot(n, P.mean(0) - centre) > 0


def test_report_json_schema_and_round_trip(acute):
    data = report_json(verdict_matrix(acute), preset="acute")
    doc = json.loads(data)
    assert list(doc)[:3] == ["preset", "params", "curvatures"]
    assert set(doc["curvatures"]) >= {"delta_rad", "epsilon_rad"}
    assert len(doc["matrix"]) == 36
    assert {"cut", "attach", "verdict", "area"} <= set(doc["matrix"][0])
    assert len(doc["classes"]) == 6
    assert doc["counterexample"] is True
    assert dumps(doc) == data
    assert report_json(verdict_matrix(acute), preset="acute") == data


def test_report_json_control(control_prism):
    doc = json.loads(report_json(verdict_matrix(control_prism)))
    assert doc["counterexample"] is False
    assert len(doc["matrix"]) == 36


def test_report_json_sweep_and_validation(acute):
    data = report_json(sweep([0.05, 0.1], [0.0, 0.1], y=0.5))
    doc = json.loads(data)
    assert doc["grid"]["h"] == [0.05, 0.1]
    assert len(doc["cells"]) == 4
    assert dumps(doc) == data
    v = json.loads(report_json(acute))
    assert v["validation"]["ok"] is True
    with pytest.raises(TypeError):
        report_json(42)
