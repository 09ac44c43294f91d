import pytest

from whlab.core import FreeAut, aut_commutator, compose, inner, parse_word, right_nielsen
from whlab.products import (
    centralizer_search,
    left_mult,
    report_ok,
    right_mult,
    standard_product,
    tau,
    tau_power,
    torelli_factor_check,
    twisted_product,
    verify_direct_product,
)
from whlab.core import is_torelli

P = parse_word


def test_factor_count():
    p = standard_product(3)
    assert [f.name for f in p.factors] == ["L1", "R1", "I"]
    assert sum(len(f.generators) for f in p.factors) == 6
    assert len(standard_product(4).factors) == 5


def test_left_right_commute():
    for w in ((1,), (2,)):
        for v in ((1,), (2,)):
            assert aut_commutator(left_mult(3, w, 3), right_mult(3, v, 3)).is_identity()


def test_left_and_inner_commute():
    l, i = left_mult(3, (1,), 3), inner((2,), 3)
    assert compose(l, i) == compose(i, l)


def test_verify_passes():
    assert report_ok(verify_direct_product(standard_product(3), 4))
    assert report_ok(verify_direct_product(standard_product(4), 3))


def test_nonstandard_basis():
    p = standard_product(3, [P("ab"), P("b"), P("c")])
    assert report_ok(verify_direct_product(p, 3))
    with pytest.raises(ValueError):
        standard_product(3, [P("a"), P("b"), P("cc")])
    with pytest.raises(ValueError):
        standard_product(2)


def test_corrupted_generator_fails():
    p = standard_product(3).with_generator(0, 0, right_nielsen(3, 2, 3))
    report = verify_direct_product(p, 2)
    bad = [c for c in report["checks"] if c["status"] == "fail"]
    assert bad and bad[0]["name"].startswith("commute L1[0]")
    assert "witness" in bad[0]


def test_untwisted_centralizer_trivial():
    found = centralizer_search(standard_product(3).all_generators(), 2)
    assert found == [FreeAut.identity(3)]


def test_inner_squares_centralizer_trivial():
    found = centralizer_search([inner((i, i), 3) for i in (1, 2, 3)], 2)
    assert found == [FreeAut.identity(3)]


def test_twisted_centralizer_in_tau_powers():
    p = twisted_product(3)
    assert "b, abA" in p.note
    assert report_ok(verify_direct_product(p, 3))
    found = centralizer_search(p.all_generators(), 2)
    powers = sorted(tau_power(phi, 2) for phi in found)
    assert powers == [-2, -1, 0, 1, 2]
    assert all(compose(tau(3), g) == compose(g, tau(3)) for g in p.all_generators())


def test_centralizer_closed_under_products():
    found = centralizer_search(twisted_product(3).all_generators(), 2)
    keys = {phi.images for phi in found}
    for a in found:
        assert a.inverse().images in keys
        for b in found:
            c = compose(a, b)
            if max(len(w) for w in c.images) <= 3:
                assert c.images in keys


def test_torelli_examples():
    assert is_torelli(left_mult(3, P("abAB"), 3))
    assert not is_torelli(left_mult(3, P("a"), 3))
    assert is_torelli(inner(P("abc"), 3))
    assert report_ok(torelli_factor_check(3, 4))
