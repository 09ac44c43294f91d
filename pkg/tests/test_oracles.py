from collections import Counter

from whlab.core import parse_word, words_up_to
from whlab.oracles import ball, bfs_is_primitive, orbit_min_length, partial_basis_images, primitive_orbit
from whlab.whitehead import is_primitive

# primitive words by length, counted by the orbit oracle alone
RANK2_COUNTS = {1: 4, 2: 8, 3: 32, 4: 48, 5: 152, 6: 160}
RANK3_COUNTS = {1: 6, 2: 24, 3: 144, 4: 576}


def test_frozen_rank2_counts():
    orbit = primitive_orbit(2, 8)
    assert dict(Counter(len(w) for w in orbit if len(w) <= 6)) == RANK2_COUNTS


def test_frozen_rank3_counts():
    orbit = primitive_orbit(3, 6)
    assert dict(Counter(len(w) for w in orbit if len(w) <= 4)) == RANK3_COUNTS


def test_whitehead_matches_frozen_counts():
    got = Counter(len(w) for w in words_up_to(2, 6)[1:] if is_primitive(w, 2))
    assert dict(got) == RANK2_COUNTS


def test_orbit_helpers():
    assert bfs_is_primitive(parse_word("ba"), 2, 4)
    assert not bfs_is_primitive(parse_word("abAB"), 2, 6)
    assert orbit_min_length(parse_word("abAB"), 2, 6) == 4


def test_ball_and_partial_bases():
    assert len(ball(2, 0)) == 1
    b1 = ball(2, 1)
    assert all(phi.rank == 2 for phi in b1) and len(b1) > 1
    images = partial_basis_images(2, 1, 2)
    # entries are stored as the tuple-smaller of w and w^-1
    assert ((-1,),) in images and ((-2, -1),) in images
    assert ((-1, -1),) not in images
