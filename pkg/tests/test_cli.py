import json

import pytest

from laysep.cli import main


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    write.dir = tmp_path
    return write


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


STAR = "4 3\n0 1\n0 2\n0 3\n"


def test_layout_then_verify(files, capsys):
    g = files("star.txt", STAR)
    out_path = files.dir / "star.json"
    code, _, err = run(["layout", g, "-o", out_path], capsys)
    assert code == 0 and "channels=1" in err
    data = json.loads(out_path.read_text())
    assert data["order"] == [0, 3, 2, 1]
    assert data["assignment"][0] == {"u": 0, "v": 1, "depth": 0, "cls": "EVEN_INTER", "slot": 1, "flat": 1}
    code, out, _ = run(["verify", g, out_path, "--ell", 1], capsys)
    assert (code, out.strip()) == (0, "OK")


def test_verify_reports_missing_edge_and_crossing(files, capsys):
    g = files("k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    rows = [{"u": u, "v": v, "flat": 0} for u, v in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]]
    lay = files("k4.json", json.dumps({"kind": "stack", "order": [0, 1, 2, 3], "assignment": rows}))
    code, out, _ = run(["verify", g, lay], capsys)
    report = json.loads(out)
    assert code == 2
    assert {r["kind"] for r in report} == {"coverage", "crossing"}
    crossing = next(r for r in report if r["kind"] == "crossing")
    assert sorted(map(tuple, crossing["witness"])) == [(0, 2), (1, 3)]


def test_invalid_layering_is_an_input_error(files, capsys):
    g = files("tri.txt", "3 3\n0 1\n1 2\n0 2\n")
    lay = files("tri.layer", "0\n1\n2\n")
    code, _, err = run(["layout", g, "--layering", lay], capsys)
    assert code == 1
    assert "edge (0, 2) spans layers 0 and 2" in err


def test_malformed_graph(files, capsys):
    code, _, err = run(["layout", files("bad.txt", "3 2\n0 1\n")], capsys)
    assert code == 1 and err.startswith("error:")


def test_size_guard_exit_code(files, capsys):
    n = 25
    g = files("path.txt", f"{n} {n - 1}\n" + "".join(f"{i} {i + 1}\n" for i in range(n - 1)))
    code, _, err = run(["layout", g], capsys)
    assert code == 3 and "too large" in err
    code, _, _ = run(["layout", g, "--exact-limit", 30], capsys)
    assert code == 0


def test_planar_layout_with_generated_embedding(files, capsys):
    d = files.dir
    code, _, _ = run(["gen", "grid", 5, "-o", d / "g.txt", "--rotation", d / "g.rot"], capsys)
    assert code == 0
    for kind in ("stack", "queue"):
        code, out, err = run(
            ["layout", d / "g.txt", "--kind", kind, "--separator", "planar", "--embedding", d / "g.rot"], capsys
        )
        assert code == 0 and "ell=2" in err
        assert json.loads(out)["kind"] == kind


def test_render_is_deterministic(files, capsys):
    g = files("star.txt", STAR)
    lay = files.dir / "star.json"
    run(["layout", g, "-o", lay], capsys)
    svgs = []
    for name in ("a.svg", "b.svg"):
        assert run(["render", g, lay, files.dir / name], capsys)[0] == 0
        svgs.append((files.dir / name).read_bytes())
    assert svgs[0] == svgs[1]
    assert b"<svg" in svgs[0] and b'data-edge="0-1"' in svgs[0]


def test_oracle_and_separator(files, capsys):
    c4 = files("c4.txt", "4 4\n0 1\n1 2\n2 3\n0 3\n")
    code, out, _ = run(["oracle", c4, "--kind", "queue", "--order", "0,1,2,3"], capsys)
    assert code == 0 and json.loads(out)["number"] == 2
    code, out, _ = run(["oracle", c4], capsys)
    assert json.loads(out)["number"] == 1
    code, out, _ = run(["separator", c4], capsys)
    cert = json.loads(out)
    assert code == 0 and cert["S"] == [0, 1] and cert["component_sizes"] == [2]
    k4 = files("k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    code, _, err = run(["separator", k4, "--ell", 0], capsys)
    assert code == 2 and "no layered 0-separator" in err


def test_bench_csv(capsys):
    code, out, _ = run(["bench", "grid", "--sizes", "2..4"], capsys)
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "family,size,n,m,ell,channels_used,bound,oracle_opt,valid"
    assert len(lines) == 4
    assert lines[1].startswith("grid,2,4,4,2,")
