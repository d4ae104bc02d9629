import io
import json

import pytest

from gclassgraph import theorems
from gclassgraph.cli import main, resolve_group, SpecError
from gclassgraph.io import GroupFileError, export_group, load_group_file, parse_group_file
from gclassgraph.perm import class_size_multiset, g_classes_in
from gclassgraph.theorems import VerificationOutcome

S3_DOC = {
    "name": "S3",
    "degree": 3,
    "generators": [[1, 0, 2], [1, 2, 0]],
    "normal_subgroups": {"A3": [[1, 2, 0]]},
}


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_minimal_document_is_trivial_group():
    doc = parse_group_file('{"name": "one", "degree": 1, "generators": []}')
    assert doc.group().order == 1


def test_s3_document_loads():
    doc = parse_group_file(json.dumps(S3_DOC))
    assert doc.group().order == 6 and doc.subgroup("A3").order == 3


def test_non_normal_subgroup_rejected():
    bad = dict(S3_DOC, normal_subgroups={"T": [[1, 0, 2]]})
    with pytest.raises(GroupFileError, match=r"subgroup 'T' is not normal: \(0 1\) conjugated by"):
        parse_group_file(json.dumps(bad))


def test_subgroup_outside_group_rejected():
    bad = dict(S3_DOC, generators=[[1, 2, 0]], normal_subgroups={"T": [[1, 0, 2]]})
    with pytest.raises(GroupFileError, match="not in the group"):
        parse_group_file(json.dumps(bad))


def test_malformed_json_names_location():
    with pytest.raises(GroupFileError, match="line 1 column"):
        parse_group_file('{"name": "x", "degree": 3,,}')


def test_bad_image_array_names_generator():
    bad = dict(S3_DOC, generators=[[1, 0, 2], [1, 1, 0]])
    with pytest.raises(GroupFileError, match="group generator 1"):
        parse_group_file(json.dumps(bad))
    bad = dict(S3_DOC, generators=[[1, 0]])
    with pytest.raises(GroupFileError, match="length 2"):
        parse_group_file(json.dumps(bad))


def test_one_based_documents():
    doc = dict(S3_DOC, one_based=True, generators=[[2, 1, 3], [2, 3, 1]], normal_subgroups={"A3": [[2, 3, 1]]})
    parsed = parse_group_file(json.dumps(doc))
    assert parsed.generators == S3_DOC["generators"]
    assert parsed.subgroup("A3").order == 3


def test_round_trip_builtins(corpus):
    for label, G in corpus:
        doc = export_group(label, G)
        back = parse_group_file(doc.to_json())
        H = back.group()
        assert H.order == G.order, label
        if G.order <= 2000:
            assert class_size_multiset(g_classes_in(H, H)) == class_size_multiset(g_classes_in(G, G)), label
        assert back.to_json() == doc.to_json()


def test_load_missing_file(tmp_path):
    with pytest.raises(GroupFileError, match="cannot read"):
        load_group_file(tmp_path / "nope.json")


def test_resolve_specs():
    assert resolve_group("sym:4").G.order == 24
    assert resolve_group("dih:10").G.order == 10
    assert resolve_group("ea:3,2").G.order == 9
    assert resolve_group("q8").G.order == 8
    assert resolve_group("agl1:8").normal("A")[1].order == 8
    with pytest.raises(SpecError):
        resolve_group("sym")
    with pytest.raises(SpecError):
        resolve_group("sym:x")
    with pytest.raises(SpecError):
        resolve_group("sym:4").normal("Q")


def test_analyze_example1():
    code, out = run("analyze", "--group", "ex1")
    assert code == 0
    assert "order 2420" in out and "order 605" in out
    assert "class sizes: {1, 20, 242}" in out
    assert "diameter 1" in out and "isolated pairs: none" in out
    assert "size graph: 2 vertices {20, 242}, 1 edges" in out
    assert "frobenius: kernel order 121 (abelian), complement order 5 (abelian)" in out


def test_analyze_example2_json():
    code, out = run("analyze", "--group", "ex2", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["class_sizes"] == [1, 2, 3, 7, 14, 21]
    assert doc["graph"]["diameter"] == 3
    assert doc["structure"]["p"] == 3


def test_analyze_defaults_to_whole_group():
    code, out = run("analyze", "--group", "sym:3")
    assert code == 0 and "normal subgroup: G (order 6)" in out
    assert "diameter disconnected" in out


def test_analyze_file_spec(tmp_path):
    path = tmp_path / "s3.json"
    path.write_text(json.dumps(S3_DOC))
    code, out = run("analyze", "--group", f"file:{path}#A3")
    assert code == 0 and "normal subgroup: A3 (order 3)" in out


def test_usage_errors():
    assert run("analyze", "--group", "bogus")[0] == 2
    assert run("analyze")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("import", "--file", "/nonexistent.json")[0] == 2
    assert run("verify", "--suite", "theoremZ")[0] == 2


def test_graph_command(tmp_path):
    code, out = run("graph", "--group", "sym:3", "--format", "dot")
    assert code == 0 and out.startswith("graph classes {")
    target = tmp_path / "g.json"
    assert run("graph", "--group", "ex2", "--format", "json", "-o", str(target))[0] == 0
    assert json.loads(target.read_text())["summary"]["diameter"] == 3


def test_import_and_export(tmp_path):
    path = tmp_path / "s4.json"
    assert run("export", "--group", "sym:4", "-o", str(path))[0] == 0
    code, out = run("import", "--file", str(path), "--check")
    assert code == 0 and out.startswith("sym:4: degree 4, order 24")
    code, out = run("import", "--file", str(path))
    assert out.endswith(path.read_text())


def test_verify_bounds_suite():
    code, out = run("verify", "--suite", "diameter_bound,complete_components", "--max-order", "2000")
    assert code == 0
    assert "counterexample=0" in out


def test_verify_corpus_dir_and_report(tmp_path):
    (tmp_path / "s3.json").write_text(json.dumps(S3_DOC))
    report = tmp_path / "r.json"
    code, out = run("verify", "--corpus", str(tmp_path), "--json", str(report))
    assert code == 0
    doc = json.loads(report.read_text())
    assert doc["schema_version"] == 1 and [it["label"] for it in doc["items"]] == ["S3 | A3 order 3"]


def test_verify_exit_code_on_counterexample(monkeypatch, tmp_path):
    def broken(G, N, ctx=None):
        return VerificationOutcome("diameter_bound", "applies", "counterexample", [], {"failed": ["planted"]})

    monkeypatch.setattr(theorems, "check_diameter_bound", broken)
    (tmp_path / "s3.json").write_text(json.dumps(S3_DOC))
    code, out = run("verify", "--suite", "diameter_bound", "--corpus", str(tmp_path))
    assert code == 1 and "COUNTEREXAMPLE diameter_bound" in out


def test_cli_output_is_deterministic():
    assert run("analyze", "--group", "ex2", "--json") == run("analyze", "--group", "ex2", "--json")
    assert run("graph", "--group", "agl1:8", "--normal", "A", "--format", "dot") == run(
        "graph", "--group", "agl1:8", "--normal", "A", "--format", "dot"
    )
