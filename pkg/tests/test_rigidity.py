import random

import pytest

from whlab.core import FreeAut, compose, generator_set, parse_word
from whlab.factorgraph import FactorVertex, antipodal
from whlab.rigidity import (
    HypothesisError,
    apartment_complex,
    characterize_standard,
    check_putative,
    crawl,
    standard_apartment,
    validate_chain,
)
from whlab.subgroups import contains
from whlab.verify import hexagon

P = parse_word


def basis(text):
    return [P(w) for w in text.split(",")]


def test_standard_hexagon():
    ap = standard_apartment(basis("a,b,c"), 3)
    assert [v.label for v in ap.vertices] == ["<a>", "<b>", "<c>", "<a,b>", "<a,c>", "<b,c>"]
    assert len(ap.edges) == 6


def test_k2_apartment_has_no_edges():
    ap = standard_apartment(basis("a,b"), 2)
    assert len(ap.vertices) == 2 and not ap.edges


def test_opposite_vertices_antipodal():
    ap = standard_apartment(basis("ab,c,d"), 4)
    assert len(ap.vertices) == 6
    for s in ap.subsets:
        rest = tuple(i for i in range(3) if i not in s)
        assert antipodal(ap.vertex(s), ap.vertex(rest), 4)


def test_standard_apartment_rejects_non_basis():
    with pytest.raises(ValueError):
        standard_apartment(basis("a,aa"), 2)
    with pytest.raises(ValueError):
        standard_apartment(basis("a"), 2)


def test_putative_shapes():
    ap = standard_apartment(basis("a,b,c"), 3)
    ranks = [v.rank for v in ap.vertices]
    assert check_putative(ranks, ap.edges)
    swapped = ranks[:]
    swapped[0], swapped[3] = 2, 1
    assert not check_putative(swapped, ap.edges)
    assert not check_putative(ranks, set(list(ap.edges)[1:]))
    ap4 = standard_apartment(basis("a,b,c,d"), 4)
    assert check_putative([v.rank for v in ap4.vertices], ap4.edges)


def test_characterize_standard():
    vs, es = apartment_complex(standard_apartment(basis("a,b,c"), 3))
    assert characterize_standard(vs, es, 3)
    vs, es = apartment_complex(standard_apartment(basis("a,b,c,d"), 4))
    assert characterize_standard(vs, es, 4)


def test_characterize_rejects_corrupted_hexagon():
    vs, es = hexagon(basis("a,b,acbc"), 3)
    assert check_putative([v.rank for v in vs], es)
    assert characterize_standard(vs, es, 3) is False


def test_characterize_hypotheses():
    vs, es = apartment_complex(standard_apartment(basis("a,b"), 3))
    with pytest.raises(HypothesisError):
        characterize_standard(vs, es, 3)
    vs, es = apartment_complex(standard_apartment(basis("a,b,c"), 3))
    with pytest.raises(HypothesisError):
        characterize_standard(vs, set(list(es)[1:]), 3)
    # right shape, but <ab> does not lie in <a,c>
    bad = list(vs)
    bad[4] = FactorVertex.from_basis(basis("ab,c"), 3)
    with pytest.raises(HypothesisError):
        characterize_standard(bad, es, 3)


def test_crawl_trivial():
    d = standard_apartment(basis("a,b,c"), 3)
    chain = crawl(d, d)
    assert len(chain) == 0
    assert validate_chain(chain, d, d) == []


def test_crawl_single_nielsen_step():
    d = standard_apartment(basis("a,b,c"), 3)
    lam = standard_apartment(basis("ab,b,c"), 3)
    chain = crawl(d, lam)
    assert len(chain) == 1
    b, u = chain.shared_pairs[0]
    assert b.label == "<a,b>" and u.label == "<c>"
    assert validate_chain(chain, d, lam) == []


def test_crawl_rejects_different_factors():
    with pytest.raises(ValueError):
        crawl(standard_apartment(basis("a,b,c"), 4), standard_apartment(basis("a,b,d"), 4))
    with pytest.raises(ValueError):
        crawl(standard_apartment(basis("a,b"), 3), standard_apartment(basis("a,b"), 3))


def test_crawl_random_pairs_in_f4():
    rng = random.Random(7)
    inside = [FreeAut(4, g.images + ((4,),), g.inverse_images + ((4,),)) for _, g in generator_set(3)]
    outside = [g for _, g in generator_set(4)]
    for _ in range(10):
        phi = FreeAut.identity(4)
        for _ in range(3):
            phi = compose(rng.choice(outside), phi)
        psi = FreeAut.identity(4)
        for _ in range(5):
            psi = compose(rng.choice(inside), psi)
        d = standard_apartment([phi((i,)) for i in (1, 2, 3)], 4)
        lam = standard_apartment([phi(psi((i,))) for i in (1, 2, 3)], 4)
        chain = crawl(d, lam)
        assert validate_chain(chain, d, lam) == []


def test_validate_chain_catches_tampering():
    d = standard_apartment(basis("a,b,c"), 3)
    lam = standard_apartment(basis("ab,b,c"), 3)
    chain = crawl(d, lam)
    chain.shared_pairs[0] = (FactorVertex.from_basis(basis("a,c"), 3), chain.shared_pairs[0][1])
    assert validate_chain(chain, d, lam)


def test_crawl_apartments_lie_in_link():
    # every vertex of every apartment is a proper subfactor of A = <a,b,c> in F_4
    a = FactorVertex.from_basis(basis("a,b,c"), 4)
    d = standard_apartment(basis("a,b,c"), 4)
    lam = standard_apartment(basis("acb,cb,b"), 4)
    chain = crawl(d, lam, a)
    assert len(chain) > 1
    for ap in chain.apartments:
        for v in ap.vertices:
            assert contains(a.graph, v.graph) and v.rank < a.rank
