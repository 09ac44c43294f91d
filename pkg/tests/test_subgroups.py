import json

import pytest

from whlab.core import parse_word
from whlab.subgroups import (
    CoreGraph,
    conjugate,
    contains,
    equals,
    fold,
    free_basis,
    intersect,
    is_free_factor,
    member,
    rank,
)


def F(*words, r=3):
    return fold([parse_word(w) for w in words], r)


def test_fold_single_loop():
    g = F("a")
    assert g.n_vertices == 1 and g.edges == ((0, 0, 1),)


def test_fold_nielsen_equivalent():
    assert F("a", "ab").key == F("a", "b").key
    assert F("b", "a").key == F("a", "b").key
    assert F("a", "b", "ab").key == F("a", "b").key


def test_fold_key_independent_of_ambient_rank():
    assert fold([(1,)], 1).key == fold([(1,)], 3).key


def test_fold_example_rank_two_core():
    g = F("aa", "baB")
    assert rank(g) == 2
    assert not member(g, parse_word("a"))
    assert member(g, parse_word("baaB"))


def test_membership():
    assert member(F("a"), parse_word("aaa"))
    assert not member(F("a"), parse_word("b"))
    assert not member(F("aa", "b"), parse_word("a"))
    assert member(F("aa", "b"), parse_word("baab"))
    assert member(F("a"), ())


def test_containment():
    assert contains(F("a", "b"), F("a"))
    assert not contains(F("a"), F("a", "b"))
    assert not contains(F("a"), F("b")) and not contains(F("b"), F("a"))
    assert contains(F("ab", "c"), F("ab"))
    assert equals(F("a", "b"), F("ab", "b"))


def test_intersections():
    assert intersect(F("a", "b"), F("b", "c")).key == F("b").key
    g = F("ab", "ca")
    assert intersect(g, g).key == g.key
    assert rank(intersect(F("a"), F("b"))) == 0
    assert rank(intersect(F("aa"), F("aaa"))) == 1
    assert intersect(F("aa"), F("aaa")).key == F("aaaaaa").key


def test_rank():
    assert rank(F("a")) == 1
    assert rank(F("a", "b")) == 2
    assert rank(fold([], 2)) == 0


def test_free_factor():
    assert is_free_factor(F("ab"))
    assert not is_free_factor(F("aa"))
    assert is_free_factor(F("abA", "c"), 3)
    assert not is_free_factor(F("aa", "b"), 3)
    with pytest.raises(ValueError):
        is_free_factor(fold([], 2))


def test_free_basis_generates():
    g = F("abA", "cab", "bb")
    assert fold(free_basis(g), 3).key == g.key


def test_conjugate():
    g = conjugate(F("a"), parse_word("b"))
    assert member(g, parse_word("baB"))
    assert not member(g, parse_word("a"))


def test_json_roundtrip():
    g = F("abA", "cc", "bcB")
    data = json.loads(json.dumps(g.to_json()))
    assert CoreGraph.from_json(data, 3) == g
    assert set(data) == {"basepoint", "vertices", "edges"}


def test_folded_invariant_enforced():
    with pytest.raises(ValueError):
        CoreGraph(2, 2, ((0, 1, 1), (0, 0, 1)))
