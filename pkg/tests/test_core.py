import pytest

from whlab.core import (
    FreeAut,
    RankError,
    abelianize,
    aut_commutator,
    compose,
    compose_all,
    cyclic_reduce,
    format_word,
    generator_set,
    homology_matrix,
    inner,
    inversion,
    is_torelli,
    left_nielsen,
    matmul,
    mul,
    parse_word,
    reduce,
    right_nielsen,
    shortlex_key,
    signed_permutation,
    transposition,
    words_up_to,
)

P = parse_word


def test_reduce_examples():
    assert reduce([1, -1]) == ()
    assert reduce([1, 2, -2, 3]) == (1, 3)
    assert reduce([1, 2, 3, 2]) == (1, 2, 3, 2)


def test_reduce_rank_check():
    with pytest.raises(RankError):
        reduce([1, 4], rank=3)
    with pytest.raises(RankError):
        reduce([0])


def test_cyclic_reduce_examples():
    assert cyclic_reduce(P("abA")) == ((1,), (2,))
    assert cyclic_reduce(P("abcb")) == ((), P("abcb"))
    assert cyclic_reduce(P("Bab")) == ((-2,), (1,))


def test_parse_and_format():
    assert P("aBc") == (1, -2, 3)
    assert P("x1X2x3") == (1, -2, 3)
    assert P("1") == ()
    assert format_word(()) == "1"
    assert format_word((1, -27)) == "x1X27"
    for w in words_up_to(3, 3):
        assert P(format_word(w)) == w


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        P("a-b")
    with pytest.raises(RankError):
        P("d", rank=3)


def test_nielsen_images():
    assert right_nielsen(1, 2, 2)((1,)) == (1, 2)
    assert left_nielsen(2, 1, 2)((2,)) == (1, 2)
    w = P("abAc")
    assert FreeAut.identity(3)(w) == w


def test_compose_order():
    rho = right_nielsen(1, 2, 2)
    assert compose(rho, rho)((1,)) == (1, 2, 2)
    lam = left_nielsen(2, 1, 2)
    # lam first, then rho: x2 -> x1 x2 -> x1 x2 x2
    assert compose(rho, lam)((2,)) == (1, 2, 2)
    assert compose(lam, rho)((2,)) == (1, 2)


def test_compose_with_inverse_is_identity():
    for _, g in generator_set(3):
        assert compose(g, g.inverse()).is_identity()
        assert compose(g.inverse(), g).is_identity()


def test_inverse_found_by_minimization():
    phi = FreeAut(3, (P("ab"), P("bc"), P("c")))
    assert compose(phi, phi.inverse()).is_identity()
    with pytest.raises(ValueError):
        FreeAut(2, (P("a"), P("aa")))


def test_inner():
    assert inner((), 3).is_identity()
    assert inner((1,), 3)((2,)) == P("abA")
    assert inner((1,), 3)((1,)) == (1,)


def test_homology():
    assert homology_matrix(FreeAut.identity(2)) == ((1, 0), (0, 1))
    assert homology_matrix(right_nielsen(1, 2, 2)) == ((1, 0), (1, 1))
    assert is_torelli(inner((1,), 3))
    assert is_torelli(inner(P("ab"), 3))
    assert not is_torelli(right_nielsen(1, 2, 3))
    c = aut_commutator(right_nielsen(1, 2, 3), left_nielsen(2, 1, 3))
    a = homology_matrix(right_nielsen(1, 2, 3))
    b = homology_matrix(left_nielsen(2, 1, 3))
    ai = homology_matrix(right_nielsen(1, 2, 3).inverse())
    bi = homology_matrix(left_nielsen(2, 1, 3).inverse())
    assert homology_matrix(c) == matmul(matmul(a, b), matmul(ai, bi))
    assert not is_torelli(c)


def test_signed_permutation_and_swap():
    s = signed_permutation([-2, 1, 3])
    assert s((1,)) == (-2,) and s((2,)) == (1,)
    assert compose(s, s.inverse()).is_identity()
    t = transposition(1, 3, 3)
    assert t(P("abc")) == P("cba")
    assert inversion(2, 2)(P("ab")) == P("aB")


def test_abelianize_and_shortlex():
    assert abelianize(P("abAB"), 2) == (0, 0)
    assert abelianize(P("aab"), 3) == (2, 1, 0)
    assert sorted([P("A"), P("b"), P("a")], key=shortlex_key) == [P("a"), P("A"), P("b")]


def test_mul_and_compose_all():
    assert mul(P("ab"), P("Bc")) == P("ac")
    assert compose_all(2).is_identity()


def test_words_up_to_counts():
    # 1 + 2N * sum (2N-1)^(n-1)
    assert len(words_up_to(2, 3)) == 1 + 4 + 12 + 36
    assert len(words_up_to(3, 2)) == 1 + 6 + 30
