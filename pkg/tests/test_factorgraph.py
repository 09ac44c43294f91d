import json

import pytest

from whlab.core import parse_word, transposition
from whlab.factorgraph import (
    FactorGraph,
    FactorVertex,
    antipodal,
    distance,
    enumerate_factors,
    enumerate_primitives,
    link,
    link_distance_report,
    shortest_path,
)
from whlab.subgroups import fold


def V(*words, r=3):
    return FactorVertex.from_basis([parse_word(w) for w in words], r)


@pytest.fixture(scope="module")
def g322():
    return enumerate_factors(3, 2, 2)


def test_primitives_small():
    assert [v.label for v in enumerate_primitives(2, 1)] == ["<a>", "<b>"]
    labels = {v.label for v in enumerate_primitives(2, 2)}
    assert {"<ab>", "<aB>"} <= labels
    assert "<aa>" not in labels
    assert len(labels) == 6


def test_primitive_count_rank3_len3():
    # oracle: half the orbit words of length <= 3 (u and u^-1 collapse)
    assert len(enumerate_primitives(3, 3)) == 87


def test_rank1_truncation_is_edgeless():
    g = enumerate_factors(2, 1, 3)
    assert g.edges() == []
    assert all(v.rank == 1 for v in g.vertices)


def test_hexagon_present(g322):
    ranks = {v.label: v.rank for v in g322.vertices}
    for lab in ("<a>", "<b>", "<c>", "<a,b>", "<a,c>", "<b,c>"):
        assert lab in ranks
    a, ab = g322.index(V("a")), g322.index(V("a", "b"))
    assert ab in g322.adjacency[a]
    assert g322.index(V("b", "c")) not in g322.adjacency[a]


def test_truncation_closed_under_permutation(g322):
    keys = {v.key for v in g322.vertices}
    t = transposition(1, 3, 3)
    for v in g322.vertices:
        assert fold([t(w) for w in v.witness_basis], 3).key in keys


def test_distances(g322):
    assert distance(g322, V("a"), V("a", "b")) == 1
    assert distance(g322, V("a"), V("b")) == 2
    assert distance(g322, V("a"), V("b", "c")) == 3
    path = shortest_path(g322, V("a"), V("b", "c"))
    assert len(path) == 4
    for x, y in zip(path, path[1:]):
        assert g322.index(y) in g322.adjacency[g322.index(x)]


def test_absent_vertex(g322):
    with pytest.raises(KeyError):
        distance(g322, V("abcabc"), V("a"))


def test_antipodal():
    assert antipodal(V("a"), V("b", "c"), 3)
    assert not antipodal(V("a"), V("a", "b"), 3)
    assert antipodal(V("ab"), V("bc"), 3)


def test_links(g322):
    lk = link(g322, V("a", "b"))
    assert {v.label for v in lk.vertices} == {"<a>", "<b>", "<ab>", "<aB>", "<Ab>", "<AB>"}
    lk1 = link(g322, V("a"))
    assert all(v.rank == 2 for v in lk1.vertices)
    twos = g322.by_rank(2)
    sets = [frozenset(w.key for w in link(g322, v).vertices) for v in twos]
    assert len(set(sets)) == len(twos)


def test_json_roundtrip(g322):
    text = g322.dumps()
    again = FactorGraph.from_json(json.loads(text))
    assert again.dumps() == text
    assert set(json.loads(text)) == {"params", "vertices", "edges"}


def test_dot_output(g322):
    dot = g322.to_dot()
    assert dot.startswith("graph F {") and dot.count("--") == len(g322.edges())


def test_cyclic_intersections_small(g322):
    from itertools import combinations
    from whlab.subgroups import intersect, rank
    for a, b in combinations(g322.by_rank(2), 2):
        assert rank(intersect(a.graph, b.graph)) <= 1


def test_link_distances_witnessed(g322):
    # length 3 is too short to see the paths; length 4 sees all of them
    short = link_distance_report(g322, enumerate_factors(3, 2, 3))
    assert short["insufficient_truncation"]
    report = link_distance_report(g322, enumerate_factors(3, 2, 4))
    assert report["checked"] == 162
    assert report["insufficient_truncation"] == []


def test_vertex_cap():
    from whlab.core import BudgetExceeded
    with pytest.raises(BudgetExceeded):
        enumerate_factors(3, 2, 2, vertex_cap=5)


def test_bad_parameters():
    with pytest.raises(ValueError):
        enumerate_factors(3, 3, 2)
