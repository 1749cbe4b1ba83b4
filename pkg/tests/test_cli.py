import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polysurf import graphs as gr
from polysurf.cli import main
from polysurf.geometry import Polygon
from polysurf.io import SurfaceFormatError, dumps_surface, loads_surface, read_surface, to_obj, to_off
from polysurf.surface import Mode, Surface

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def run(capsys):
    def go(*argv):
        code = main([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err

    return go


def write_graph(tmp_path, name, g):
    p = tmp_path / name
    p.write_text(gr.format_graph(g))
    return p


# --- graph ---------------------------------------------------------------------


def test_graph_examples(run, tmp_path):
    code, out, _ = run("graph", "hypercube", 4)
    g = gr.parse_graph(out)
    assert code == 0 and (g.n, g.m) == (16, 32)
    code, out, _ = run("graph", "complete", 1)
    assert code == 0 and out.split() == ["1", "0"]
    k5 = write_graph(tmp_path, "k5.graph", gr.complete(5))
    code, out, _ = run("graph", "subdivide", k5, 1)
    g = gr.parse_graph(out)
    assert (g.n, g.m) == (15, 20)
    out_path = tmp_path / "tst.graph"
    assert run("graph", "triple-stacked", "-o", out_path)[0] == 0
    assert gr.parse_graph(out_path.read_text()).m == 12


def test_graph_seeded_generators_are_reproducible(run):
    a = run("graph", "three-tree", 12, "--seed", 4)[1]
    b = run("graph", "three-tree", 12, "--seed", 4)[1]
    assert a == b and gr.is_three_tree(gr.parse_graph(a)) is not None


def test_graph_usage_errors(run):
    assert run("graph", "complete")[0] == 2
    assert run("graph", "complete", "x")[0] == 2
    assert run("graph", "nonsense", 3)[0] == 2
    assert run()[0] == 2
    assert run("graph", "subdivide", "/no/such/file")[0] == 2


# --- realize -------------------------------------------------------------------


def test_realize_examples(run, tmp_path):
    out = tmp_path / "q3.json"
    code, text, _ = run("realize", "hypercube", 3, "-o", out)
    stats = json.loads(text)
    assert code == 0 and stats["polygons"] == 8 and stats["max_corners"] == 7
    assert all(len(p) == 7 for p in read_surface(out).polygons)

    p3 = write_graph(tmp_path, "path3.graph", gr.path(3))
    out = tmp_path / "p3.json"
    assert run("realize", "planar", p3, "-o", out)[0] == 0
    s = read_surface(out)
    assert len(s.polygons) == 3 and all(c.z == 0 for p in s.polygons for c in p.corners)

    k5 = write_graph(tmp_path, "k5.graph", gr.complete(5))
    code, text, _ = run("realize", "cylinder", k5)
    assert code == 0 and json.loads(text)["polygons"] == 15

    code, text, _ = run("realize", "density", 1)
    assert code == 0 and json.loads(text)["inner_degrees"] == [8]


def test_realize_precondition_failures(run, tmp_path):
    k5 = write_graph(tmp_path, "k5.graph", gr.complete(5))
    code, _, err = run("realize", "planar", k5)
    assert code == 1 and "NotPlanar" in err
    edge = write_graph(tmp_path, "edge.graph", gr.path(2))
    assert run("realize", "cylinder", edge)[0] == 1
    assert run("realize", "hypercube")[0] == 2
    assert run("realize", "teapot")[0] == 2


# --- verify / adjacency / iso ---------------------------------------------------------


def test_verify_fixtures(run):
    code, out, _ = run("verify", FIXTURES / "k44.json")
    assert code == 0 and out.startswith("valid")
    code, out, _ = run("verify", FIXTURES / "overlapping_squares.json", "--report", "json")
    report = json.loads(out)
    assert code == 1 and not report["valid"]
    assert report["violations"][0]["witness"] != "None"


def test_verify_mode_flags(run, tmp_path):
    ell = Polygon([(0, 0, 0), (2, 0, 0), (2, 1, 0), (1, 1, 0), (1, 2, 0), (0, 2, 0)], "L")
    path = tmp_path / "ell.json"
    path.write_text(dumps_surface(Surface([ell], Mode.GENERAL)))
    assert run("verify", path)[0] == 0
    assert run("verify", path, "--convex")[0] == 1
    assert run("verify", path, "--general")[0] == 0
    assert run("verify", path, "--closed")[0] == 1


def test_adjacency_and_iso(run, tmp_path):
    q4 = tmp_path / "q4.json"
    assert run("realize", "hypercube", 4, "-o", q4)[0] == 0
    graph = write_graph(tmp_path, "q4.graph", gr.hypercube(4))
    code, out, _ = run("iso", q4, graph)
    assert code == 0 and out.startswith("isomorphic")
    wrong = write_graph(tmp_path, "c16.graph", gr.cycle(16))
    assert run("iso", q4, wrong)[0] == 1
    code, out, _ = run("adjacency", q4)
    g = gr.parse_graph(out)
    assert (g.n, g.m) == (16, 32)


def test_parse_error_reports_line(run, tmp_path):
    text = (FIXTURES / "k44.json").read_text().splitlines()
    # corrupt the third polygon line
    idx = [i for i, line in enumerate(text) if line.strip().startswith("[[")][2]
    text[idx] = text[idx].replace('"', "'", 2)
    bad = tmp_path / "bad.json"
    bad.write_text("\n".join(text))
    code, _, err = run("verify", bad)
    assert code == 2 and f"line {idx + 1}" in err


def test_surface_format_errors():
    good = dumps_surface(Surface([Polygon([(0, 0, 0), (1, 0, 0), (0, 1, 0)], "t")]))
    with pytest.raises(SurfaceFormatError):
        loads_surface(good.replace("polysurf-surface/1", "other/9"))
    with pytest.raises(SurfaceFormatError):
        loads_surface(good.replace('"convex"', '"wobbly"'))
    with pytest.raises(SurfaceFormatError) as err:
        loads_surface(good.replace('["0", "1", "0"]', '["0", "1", "1/0"]'))
    assert err.value.line == 6
    with pytest.raises(SurfaceFormatError):
        loads_surface(good.replace('["0", "1", "0"]', '["1", "0", "0"]'))


def test_files_without_ids_load():
    text = '{"version": "polysurf-surface/1", "mode": "convex", "polygons": [[["0","0","0"],["1","0","0"],["0","1","0"]]]}'
    assert loads_surface(text).ids == [0]


# --- round trip ---------------------------------------------------------------------

coords = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**9)


@settings(max_examples=50)
@given(coords, coords, coords, coords, st.sampled_from([Mode.CONVEX, Mode.GENERAL]))
def test_surface_round_trip_is_exact(x, y, z, w, mode):
    tri = Polygon([(x, y, z), (x + 1, y, z), (x, y + w * w + 1, z)], ("t", w))
    s = Surface([tri, Polygon([(0, 0, 1), (1, 0, 1), (0, 1, 1)], "u")], mode)
    text = dumps_surface(s)
    back = loads_surface(text)
    assert back.polygons == s.polygons and back.mode is mode
    assert dumps_surface(back) == text


# --- export ---------------------------------------------------------------------


def parse_off(text):
    """Structural OFF reader: header, counts, vertex rows, face rows."""
    lines = [line for line in text.splitlines() if line.strip() and not line.startswith("#")]
    assert lines[0] == "OFF"
    nv, nf, ne = map(int, lines[1].split())
    verts = [tuple(map(float, line.split())) for line in lines[2:2 + nv]]
    assert all(len(v) == 3 for v in verts)
    faces = []
    for line in lines[2 + nv:2 + nv + nf]:
        parts = list(map(int, line.split()))
        assert parts[0] == len(parts) - 1 and all(0 <= i < nv for i in parts[1:])
        faces.append(parts[1:])
    assert len(lines) == 2 + nv + nf
    edges = {frozenset((f[i], f[(i + 1) % len(f)])) for f in faces for i in range(len(f))}
    assert ne == len(edges)
    return verts, faces


def test_export_off_k44(run):
    code, out, _ = run("export", FIXTURES / "k44.json", "--format", "off")
    verts, faces = parse_off(out)
    s = read_surface(FIXTURES / "k44.json")
    assert code == 0 and len(faces) == 8
    assert len(verts) == len({c for p in s.polygons for c in p.corners})
    assert [len(f) for f in faces] == [len(p) for p in s.polygons]


def test_export_rounding_and_obj():
    s = Surface([Polygon([(0, 0, 0), ("1/3", 0, 0), (0, "2/3", 0)], "t")])
    off = to_off(s, digits=3)
    assert "0.333 0 0" in off and "0 0.667 0" in off
    obj = to_obj(s, digits=2)
    assert obj.splitlines()[0].startswith("#")
    assert [line for line in obj.splitlines() if line.startswith("f")] == ["f 1 2 3"]


def test_console_script_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "polysurf.cli", "verify", str(FIXTURES / "overlapping_squares.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and "invalid" in proc.stdout
