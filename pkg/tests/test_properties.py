import networkx as nx
from hypothesis import given, settings, strategies as st

from whlab.core import (
    FreeAut,
    compose,
    generator_set,
    homology_matrix,
    inner,
    inverse,
    is_torelli,
    matmul,
    mul,
    reduce,
)
from whlab.subgroups import fold, intersect, member
from whlab.whitehead import (
    O,
    best_move,
    component_moves,
    edges_between,
    is_partial_basis,
    is_primitive,
    reducing_letters,
    whitehead_graph,
    whitehead_move_aut,
)

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

RANK = 3
GENS = [g for _, g in generator_set(RANK)]


def raw(rank=RANK, max_size=14):
    letters = st.integers(-rank, rank).filter(bool)
    return st.lists(letters, max_size=max_size)


def words(rank=RANK, min_size=0, max_size=14):
    return raw(rank, max_size).map(reduce).filter(lambda w: len(w) >= min_size)


def compose_many(gs):
    phi = FreeAut.identity(RANK)
    for g in gs:
        phi = compose(g, phi)
    return phi


autos = st.lists(st.sampled_from(GENS), max_size=6).map(compose_many)


@given(raw())
def test_reduce_idempotent(s):
    assert reduce(reduce(s)) == reduce(s)


@given(autos, words(), words())
def test_apply_is_homomorphism(phi, u, v):
    assert phi(mul(u, v)) == mul(phi(u), phi(v))


@given(autos, raw())
def test_apply_ignores_prereduction(phi, s):
    assert phi(s) == phi(reduce(s))


@given(autos)
def test_inverse_roundtrip(phi):
    assert compose(phi, phi.inverse()).is_identity()
    assert compose(phi.inverse(), phi).is_identity()


@given(autos, autos)
def test_homology_multiplicative(phi, psi):
    assert homology_matrix(compose(phi, psi)) == matmul(homology_matrix(phi), homology_matrix(psi))


@given(words())
def test_inner_is_torelli(w):
    assert is_torelli(inner(w, RANK))


@given(words(rank=4, min_size=1, max_size=20))
def test_valence_symmetry(u):
    g = whitehead_graph(u, 4)
    assert all(g.valence(i) == g.valence(-i) for i in range(1, 5))
    assert g.valence(O) == 2


@given(words(min_size=1))
def test_cut_vertices_match_networkx(u):
    g = whitehead_graph(u, RANK)
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from((x, y) for x, y in g.edge_list() if x != y)
    assert set(g.cut_vertices()) == set(nx.articulation_points(h))


@given(words(min_size=1))
def test_length_drop_counts_edges(u):
    g = whitehead_graph(u, RANK)
    for m in component_moves(u, RANK):
        comp = set(m.side) - {m.acting}
        assert len(u) - len(whitehead_move_aut(m)(u)) == edges_between(g, m.acting, comp)


@given(words(min_size=1))
def test_reducing_letter_gives_shorter_word(u):
    if reducing_letters(u, RANK):
        gain, move = best_move([u], RANK)
        assert gain > 0 and len(whitehead_move_aut(move)(u)) == len(u) - gain


@given(words(min_size=1, max_size=8), autos)
def test_primitivity_is_aut_invariant(u, phi):
    assert is_primitive(u, RANK) == is_primitive(phi(u), RANK)


@given(st.lists(words(min_size=1, max_size=5), min_size=1, max_size=3), autos, st.randoms())
def test_partial_basis_invariance(ws, phi, rnd):
    verdict = is_partial_basis(ws, RANK)
    shuffled = [inverse(w) if rnd.random() < 0.5 else w for w in ws]
    rnd.shuffle(shuffled)
    assert is_partial_basis(shuffled, RANK) == verdict
    assert is_partial_basis([phi(w) for w in ws], RANK) == verdict


@given(st.lists(words(min_size=1, max_size=6), min_size=1, max_size=4), st.randoms())
def test_fold_confluent(gens, rnd):
    key = fold(gens, RANK).key
    other = [inverse(g) if rnd.random() < 0.5 else g for g in gens]
    rnd.shuffle(other)
    assert fold(other, RANK).key == key


@given(st.lists(words(min_size=1, max_size=5), min_size=1, max_size=3),
       st.lists(st.tuples(st.integers(0, 2), st.booleans()), max_size=6))
def test_products_of_generators_are_members(gens, picks):
    g = fold(gens, RANK)
    w = ()
    for n, inv in picks:
        x = gens[n % len(gens)]
        w = mul(w, inverse(x) if inv else x)
    assert member(g, w)


@given(st.lists(words(min_size=1, max_size=4), min_size=1, max_size=2),
       st.lists(words(min_size=1, max_size=4), min_size=1, max_size=2))
def test_intersection_commutative_idempotent(a, b):
    ga, gb = fold(a, RANK), fold(b, RANK)
    assert intersect(ga, gb).key == intersect(gb, ga).key
    assert intersect(ga, ga).key == ga.key
