import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shortc2.boettcher import SampledPath
from shortc2.core import ComplexPair
from shortc2.errors import HenonError
from shortc2.io import (load_map, load_path, map_from_json, map_to_json, path_from_json, path_to_json,
                        point_from_json, point_to_json)
from shortc2.render import Grid, RenderConfig, Slice, config_from_json, config_to_json, render_slice, write_all
from shortc2.topology import connect_points

finite = st.floats(-1e6, 1e6, allow_nan=False)


def test_default_map():
    h = load_map(None)
    assert h.d == 2 and h.a == 1 and tuple(h.p.coeffs) == (0,)


def test_map_round_trip(tmp_path):
    doc = {"d": 3, "a": [0.5, -2.0], "q": [[1.0, 0.0], [0.0, 0.25]]}
    h = map_from_json(doc)
    assert map_to_json(h) == doc
    f = tmp_path / "m.json"
    f.write_text(json.dumps(doc))
    assert load_map(f) == h


@pytest.mark.parametrize("doc", [{}, {"d": 1}, {"d": 2, "q": [[1, 0], [2, 0]]}, {"d": 2, "a": "x"}])
def test_bad_maps(doc):
    with pytest.raises(HenonError) as exc:
        map_from_json(doc)
    assert exc.value.code == "invalid-input"


def test_zero_jacobian_rejected():
    with pytest.raises(HenonError) as exc:
        map_from_json({"d": 2, "a": [0, 0]})
    assert exc.value.code == "degenerate-map"


@given(finite, finite, finite, finite)
def test_point_round_trip(a, b, c, d):
    p = ComplexPair(complex(a, b), complex(c, d))
    assert point_from_json(point_to_json(p)) == p


def test_extended_samples_survive_json(quad, tmp_path):
    path = connect_points(quad, ComplexPair(0.1, 1.5), ComplexPair(-0.2j, 2), 2.0)
    rows = path_to_json(path)
    back = path_from_json(json.loads(json.dumps(rows)))
    assert len(back) == len(path)
    for p, q in zip(path.points, back.points):
        assert abs(complex(p.x) - complex(q.x)) <= 1e-15 * (1 + abs(complex(p.x)))
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"points": rows}))
    assert len(load_path(f)) == len(path)


def test_bad_paths():
    with pytest.raises(HenonError):
        path_from_json([[0, 0, 0, 0]])
    with pytest.raises(HenonError):
        path_from_json([[0, 0, 0], [1, 1, 1]])


def test_single_cell_at_origin(quad):
    cells = render_slice(quad, RenderConfig(Grid(1, 1, (0, 0, 0, 0))))
    assert len(cells) == 1 and cells[0].estimate.value == 0 and cells[0].tag == "K_plus"


def test_center_of_3x3_around_0_4(quad):
    cfg = RenderConfig(Grid(3, 3, (3.9, 4.1, -0.1, 0.1)))
    cells = render_slice(quad, cfg)
    assert cells[4].estimate.value == pytest.approx(1.3823, abs=1e-4)
    assert (cells[4].u, cells[4].v) == (4.0, 0.0)


@pytest.mark.parametrize("args", [(0, 3, (0, 1, 0, 1)), (2, 2, (1, 0, 0, 1)), (2, 2, (0, 1, 0)),
                                  (2, 2, (0, float("nan"), 0, 1)), (2, 2, (0, 0, 0, 1))])
def test_bad_grid(args):
    with pytest.raises(HenonError) as exc:
        Grid(*args)
    assert exc.value.code == "bad-grid"


def test_outputs(quad, tmp_path):
    cfg = RenderConfig(Grid(5, 4, (-3, 3, -3, 3)), level=2.0)
    summary = write_all(quad, cfg, tmp_path)
    csv = (tmp_path / "render.csv").read_text().splitlines()
    header = [line for line in csv if line.startswith("#")]
    assert any(line.startswith("# bounds") for line in header) and any(line.startswith("# shape 5 4") for line in header)
    assert len(csv) == len(header) + 1 + 20
    pgm = (tmp_path / "render.pgm").read_bytes()
    assert pgm.startswith(b"P5\n5 4\n255\n") and len(pgm) == len(b"P5\n5 4\n255\n") + 20
    side = json.loads((tmp_path / "render.json").read_text())
    assert side["mapping"]["scale"] == 2.0 and "calibration" in side
    assert summary["cells"] == 20


def test_workers_do_not_change_output(quad, tmp_path):
    cfg1 = RenderConfig(Grid(6, 5, (-2, 2, -2, 2)), workers=1)
    cfg4 = RenderConfig(Grid(6, 5, (-2, 2, -2, 2)), workers=3)
    write_all(quad, cfg1, tmp_path / "a")
    write_all(quad, cfg4, tmp_path / "b")
    for name in ("render.csv", "render.pgm", "render.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_config_round_trip():
    cfg = RenderConfig(Grid(4, 2, (0, 1, -1, 1)), 1.5, Slice((1j, 0j), (1, 0), (0, 1j)), 1e-9, 300, 2)
    assert config_from_json(json.loads(json.dumps(config_to_json(cfg)))) == cfg
