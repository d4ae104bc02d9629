import json

import pytest

from gclassgraph.classgraph import (
    UNREACHABLE,
    build_graph,
    components_complete,
    export_graph,
    far_pairs,
    isolated_pairs,
    size_graph,
    summarize,
)
from gclassgraph.constructions import cyclic, symmetric
from gclassgraph.structure import normal_subgroups


def test_abelian_graph_is_empty():
    g = build_graph(cyclic(6), cyclic(6))
    s = summarize(g)
    assert len(g.vertices) == 0 and s.diameter == "empty" and not s.connected
    doc = json.loads(export_graph(g, "json"))
    assert doc["vertices"] == [] and doc["edges"] == []


def test_s3_graph():
    S3 = symmetric(3)
    g = build_graph(S3, S3)
    assert [v.size for v in g.vertices] == [2, 3]
    assert g.edges == []
    s = summarize(g)
    assert s.diameter == "disconnected"
    assert s.components == ((0,), (1,))
    assert g.distance(0, 1) == float("inf") and g.distances[0, 1] == UNREACHABLE
    assert isolated_pairs(g) == [(0, 1)]
    assert components_complete(g, s) == []


def test_example1_graph(ex1):
    g = build_graph(ex1.G, ex1.N)
    sizes = [v.size for v in g.vertices]
    # 605 = 1 + 20a + 242b forces a = 6, b = 2
    assert sizes == [20] * 6 + [242] * 2
    assert len(g.edges) == 28
    s = summarize(g)
    assert s.connected and s.diameter == 1
    assert isolated_pairs(g) == []
    assert size_graph(g) == ([20, 242], [(20, 242)])


def test_example2_graph(ex2):
    g = build_graph(ex2.G, ex2.N)
    s = summarize(g)
    assert s.connected and s.diameter == 3
    iso = isolated_pairs(g)
    assert iso
    assert any(sorted((g.vertices[i].size, g.vertices[j].size)) == [2, 3] for i, j in iso)
    for i, j in iso:
        assert g.distances[i, j] == 3


def test_vertex_order_and_sizes(corpus):
    for label, G in corpus[:20]:
        g = build_graph(G, G)
        keys = [(v.size, v.least_index) for v in g.vertices]
        assert keys == sorted(keys), label
        assert all(v.size > 1 and G.order % v.size == 0 for v in g.vertices)


def test_isolated_equals_far_on_corpus(corpus):
    for label, G in corpus:
        if G.order > 2000:
            continue
        for N in normal_subgroups(G):
            g = build_graph(G, N)
            assert isolated_pairs(g) == far_pairs(g), label
            s = summarize(g)
            if s.diameter not in ("empty", "disconnected"):
                assert s.diameter <= 3, label
            if s.diameter == "disconnected":
                assert components_complete(g, s) == [], label


def test_dot_export(ex1):
    text = export_graph(build_graph(ex1.G, ex1.N), "dot")
    assert text.startswith("graph classes {")
    assert text.count("--") == 28
    assert 'label="size=242 rep=' in text


def test_unknown_export_format():
    S3 = symmetric(3)
    with pytest.raises(ValueError):
        export_graph(build_graph(S3, S3), "png")
