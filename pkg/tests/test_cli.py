import json

import pytest

from backforth import cli, formats
from backforth.construction import GraphParams, quotient_dv, subdivide_parallel, truncation
from backforth.graphcore import EdgeRef, Midpoint, S, T, Vertex


def _strip(text):
    doc = json.loads(text)
    doc.pop("timestamp", None)
    return doc


@pytest.mark.parametrize("name", ["s", "t", "s_0", "t_3.1", "s_11.0.5", "v_2"])
def test_vertex_names_round_trip(name):
    assert formats.render_vertex(formats.parse_vertex(name, 6)) == name


def test_vertex_name_errors():
    with pytest.raises(formats.FormatError):
        formats.parse_vertex("s_4", 2)
    with pytest.raises(formats.FormatError):
        formats.parse_vertex("x_1")
    assert formats.parse_vertex("s_4") == S(4)


def test_midpoint_name_round_trip():
    m = Midpoint(EdgeRef((1, 2), 3, 1, "in"))
    assert formats.parse_vertex(formats.render_vertex(m)) == m


@pytest.mark.parametrize("g", [
    truncation(GraphParams(2), 2),
    truncation(GraphParams(3), 1),
    quotient_dv(GraphParams(2)),
    subdivide_parallel(quotient_dv(GraphParams(2))),
])
def test_graph_round_trip(tmp_path, g):
    path = tmp_path / "g.json"
    formats.write_graph(str(path), g)
    back = formats.read_graph(str(path))
    assert back == g
    assert formats.dumps(formats.graph_to_dict(back)) == path.read_text()


def test_read_graph_rejects_garbage(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "report"}))
    with pytest.raises(formats.FormatError):
        formats.read_graph(str(bad))


def test_dot_marks_bundles(dv2):
    dot = formats.to_dot(dv2)
    assert dot.startswith("digraph")
    assert 'label="x2"' in dot


def test_build_and_lambda(tmp_path, capsys):
    out = tmp_path / "d1.json"
    dot = tmp_path / "d1.dot"
    assert cli.main(["build", "--k", "2", "--depth", "1", "--out", str(out), "--dot", str(dot)]) == 0
    assert "10 vertices, 21 edges" in capsys.readouterr().out
    assert dot.read_text().startswith("digraph")
    assert cli.main(["lambda", "--graph", str(out), "--from", "s", "--to", "t", "--both"]) == 0
    text = capsys.readouterr().out
    assert "lambda(s -> t) = 1" in text
    assert "lambda(t -> s) = 0" in text
    assert "lambda{s, t} = 0" in text


def test_transform_simple(tmp_path, capsys):
    src = tmp_path / "dv.json"
    formats.write_graph(str(src), quotient_dv(GraphParams(2)))
    dst = tmp_path / "simple.json"
    assert cli.main(["transform", "simple", "--in", str(src), "--out", str(dst)]) == 0
    h = formats.read_graph(str(dst))
    assert (len(h), len(h.edges)) == (22, 53)


def test_witness_command(capsys):
    assert cli.main(["witness", "--k", "2", "--target", "s_1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["required_depth"] == 3 and doc["status"] == "pass"
    assert doc["ambiguous_steps"] == []


def test_certify_command(tmp_path, capsys):
    delete = tmp_path / "c.json"
    delete.write_text(json.dumps([formats.edge_to_dict(EdgeRef((), 8, 0))]))
    assert cli.main(["certify", "--k", "2", "--delete", str(delete), "--from", "s", "--to", "t", "--max-depth", "4"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["rows"][0]["details"]["depth"] == 3
    assert cli.main(["certify", "--k", "2", "--delete", str(delete), "--from", "s", "--to", "t", "--max-depth", "2"]) == 3


def test_exit_codes(tmp_path, capsys):
    assert cli.main(["build", "--k", "3", "--depth", "8", "--out", str(tmp_path / "x.json")]) == 3
    assert cli.main(["build", "--k", "1", "--depth", "1", "--out", str(tmp_path / "x.json")]) == 2
    assert cli.main(["lambda", "--graph", str(tmp_path / "missing.json"), "--from", "s", "--to", "t"]) == 2
    assert cli.main(["witness", "--k", "2", "--target", "s_9"]) == 2
    assert cli.main(["verify", "no-pair", "--k", "2", "--depth", "3", "--budget", "5"]) == 3
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "nonsense", "--k", "2"])
    assert exc.value.code == 2


@pytest.mark.parametrize("what", sorted(cli.VERIFIERS))
def test_verify_reports_are_deterministic(tmp_path, what):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["verify", what, "--k", "2", "--out", str(a)]) == 0
    assert cli.main(["verify", what, "--k", "2", "--out", str(b)]) == 0
    doc = _strip(a.read_text())
    assert doc == _strip(b.read_text())
    assert doc["status"] == "pass" and doc["summary"]["fail"] == 0
    assert all(r["anchor"] == cli.ANCHORS[what] for r in doc["rows"])
