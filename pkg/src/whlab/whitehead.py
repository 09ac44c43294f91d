"""Whitehead graphs, Whitehead automorphisms and everything built on them.

Vertices of a Whitehead graph are letters (nonzero ints) plus the basepoint
``o``, encoded as ``0``.  For a set ``S`` holding the acting letter ``a`` but
not its inverse, the Whitehead automorphism phi(S; a) changes the total length
of the words that produced the graph by ``cut(S) - valence(a)``.  Move search
therefore reduces to enumerating vertex subsets of a graph with at most
``2N + 1`` vertices.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

from .core import (
    BudgetExceeded,
    FreeAut,
    RankError,
    abelianize,
    Word,
    compose,
    cyclic_reduce,
    format_word,
    inner,
    inverse,
    letter_name,
    mul,
    reduce,
    signed_permutation,
    support,
)

O = 0  # the basepoint vertex
DEFAULT_PLATEAU_BUDGET = 100_000


def _pos(v: int) -> int:
    return 0 if v == 0 else (2 * v - 1 if v > 0 else -2 * v)


def _vertex(p: int) -> int:
    return 0 if p == 0 else ((p + 1) // 2 if p % 2 else -(p // 2))


def _vertex_order(rank: int) -> list[int]:
    return [O] + [l for i in range(1, rank + 1) for l in (i, -i)]


def vertex_name(v: int) -> str:
    return "o" if v == O else letter_name(v)


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class WhiteheadGraph:
    """Multigraph on ``{o} ∪ letters ∪ inverse letters`` of a fixed rank."""

    rank: int
    edges: Counter = field(compare=False)
    cyclic: bool = False

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WhiteheadGraph):
            return NotImplemented
        return (self.rank, self.cyclic, self.edges) == (other.rank, other.cyclic, other.edges)

    def __hash__(self) -> int:
        return hash((self.rank, self.cyclic, tuple(sorted(self.edges.items()))))

    @property
    def vertices(self) -> list[int]:
        order = _vertex_order(self.rank)
        return order[1:] if self.cyclic else order

    def weight(self, x: int, y: int) -> int:
        return self.edges.get(_edge(x, y), 0)

    def valence(self, v: int) -> int:
        return sum(n for e, n in self.edges.items() if v in e)

    def neighbours(self, v: int) -> set[int]:
        out = set()
        for x, y in self.edges:
            if x == v:
                out.add(y)
            elif y == v:
                out.add(x)
        return out

    def edge_list(self) -> list[tuple[int, int]]:
        """Edges with multiplicity, in a fixed order."""
        order = {v: n for n, v in enumerate(_vertex_order(self.rank))}
        out = []
        for e in sorted(self.edges, key=lambda e: (order[e[0]], order[e[1]])):
            out += [e] * self.edges[e]
        return out

    def components(self, removed: Iterable[int] = ()) -> list[list[int]]:
        """Connected components after deleting ``removed``, in DFS discovery order."""
        gone = set(removed)
        adj: dict[int, list[int]] = {v: [] for v in self.vertices if v not in gone}
        order = {v: n for n, v in enumerate(_vertex_order(self.rank))}
        for x, y in self.edges:
            if x in adj and y in adj:
                adj[x].append(y)
                adj[y].append(x)
        for v in adj:
            adj[v].sort(key=order.__getitem__)
        seen: set[int] = set()
        comps = []
        for v in adj:
            if v in seen:
                continue
            comp, stack = [], [v]
            seen.add(v)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in reversed(adj[x]):
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(comp)
        return comps

    def component_of(self, v: int) -> list[int]:
        return next(c for c in self.components() if v in c)

    def is_cut_vertex(self, v: int) -> bool:
        """Whether deleting ``v`` disconnects its own component.  Isolated vertices never are."""
        comp = self.component_of(v)
        if len(comp) == 1:
            return False
        rest = set(comp) - {v}
        pieces = [c for c in self.components(removed=[v]) if c[0] in rest]
        return len(pieces) > 1

    def cut_vertices(self) -> list[int]:
        return [v for v in self.vertices if self.is_cut_vertex(v)]

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def to_dot(self, name: str = "W") -> str:
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            shape = ' shape=box' if v == O else ""
            lines.append(f'  "{vertex_name(v)}" [label="{vertex_name(v)}"{shape}];')
        for x, y in self.edge_list():
            lines.append(f'  "{vertex_name(x)}" -- "{vertex_name(y)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "cyclic": self.cyclic,
            "vertices": [vertex_name(v) for v in self.vertices],
            "edges": [[vertex_name(x), vertex_name(y)] for x, y in self.edge_list()],
        }


def _edge(x: int, y: int) -> tuple[int, int]:
    return (x, y) if _pos(x) <= _pos(y) else (y, x)


def _word_rank(words: Iterable[Sequence[int]], rank: int | None) -> int:
    top = max((abs(l) for w in words for l in w), default=1)
    if rank is None:
        return max(top, 1)
    if top > rank:
        raise RankError(f"letter index {top} exceeds rank {rank}")
    return rank


def whitehead_graph(u: Sequence[int], rank: int | None = None) -> WhiteheadGraph:
    """Based Whitehead graph: one edge x--ȳ per consecutive pair xy, plus o--s̄ and o--t."""
    u = reduce(u)
    if not u:
        raise ValueError("the Whitehead graph of the empty word is undefined")
    rank = _word_rank([u], rank)
    edges: Counter = Counter()
    for x, y in zip(u, u[1:]):
        edges[_edge(x, -y)] += 1
    edges[_edge(O, -u[0])] += 1
    edges[_edge(O, u[-1])] += 1
    return WhiteheadGraph(rank, edges)


def cyclic_whitehead_graph(u: Sequence[int], rank: int | None = None) -> WhiteheadGraph:
    """Whitehead graph of the cyclic word: the basepoint is smoothed away."""
    _, core = cyclic_reduce(u)
    if not core:
        raise ValueError("the cyclic Whitehead graph of a trivial class is undefined")
    rank = _word_rank([core], rank)
    edges: Counter = Counter()
    for x, y in zip(core, core[1:] + core[:1]):
        edges[_edge(x, -y)] += 1
    return WhiteheadGraph(rank, edges, cyclic=True)


def _matrix(words: Iterable[Sequence[int]], rank: int, cyclic: bool = False) -> list[list[int]]:
    size = 2 * rank + 1
    m = [[0] * size for _ in range(size)]

    def add(x: int, y: int) -> None:
        px, py = _pos(x), _pos(y)
        m[px][py] += 1
        m[py][px] += 1

    for w in words:
        if not w:
            continue
        if cyclic:
            for x, y in zip(w, w[1:] + w[:1]):
                add(x, -y)
        else:
            for x, y in zip(w, w[1:]):
                add(x, -y)
            add(O, -w[0])
            add(O, w[-1])
    return m


# ---------------------------------------------------------------------------
# moves


@dataclass(frozen=True)
class WhiteheadMove:
    """phi(C; a): ``side`` is C (it may contain the basepoint 0), ``acting`` is a."""

    rank: int
    side: frozenset
    acting: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "side", frozenset(self.side))
        valid = set(_vertex_order(self.rank))
        if not self.side <= valid or self.acting not in valid or self.acting == O:
            raise ValueError("move labels outside the vertex set")
        if self.acting not in self.side or -self.acting in self.side:
            raise ValueError("the acting letter must lie in C and its inverse outside C")

    @property
    def basepoint_side(self) -> bool:
        return O in self.side

    def inverse_move(self) -> WhiteheadMove:
        return WhiteheadMove(self.rank, (self.side - {self.acting}) | {-self.acting}, -self.acting)

    def complement_move(self) -> WhiteheadMove:
        """phi(C'; ā), which is the same automorphism with the basepoint on the other side."""
        return WhiteheadMove(self.rank, frozenset(_vertex_order(self.rank)) - self.side, -self.acting)

    def preserves_standard_factor(self, k: int) -> bool:
        """Whether the move maps <x_1..x_k> onto itself."""
        if abs(self.acting) <= k:
            return True
        o_side = self.basepoint_side
        return all(((l in self.side) == o_side) and ((-l in self.side) == o_side)
                   for l in range(1, k + 1))

    def __str__(self) -> str:
        order = {v: n for n, v in enumerate(_vertex_order(self.rank))}
        names = ",".join(vertex_name(v) for v in sorted(self.side, key=order.__getitem__))
        return f"phi({{{names}}}; {letter_name(self.acting)})"


def _move_images(rank: int, side: frozenset, a: int) -> tuple[Word, ...]:
    based = O in side
    images = []
    for j in range(1, rank + 1):
        if j == abs(a):
            images.append((j,))
            continue
        x_in, xbar_in = j in side, -j in side
        if not based:
            if x_in and xbar_in:
                img = (-a, j, a)
            elif x_in:
                img = (j, a)
            elif xbar_in:
                img = (-a, j)
            else:
                img = (j,)
        else:
            if not x_in and not xbar_in:
                img = (a, j, -a)
            elif x_in and not xbar_in:
                img = (a, j)
            elif xbar_in and not x_in:
                img = (j, -a)
            else:
                img = (j,)
        images.append(reduce(img))
    return tuple(images)


def whitehead_move_aut(m: WhiteheadMove) -> FreeAut:
    inv = m.inverse_move()
    return FreeAut(m.rank, _move_images(m.rank, m.side, m.acting), _move_images(m.rank, inv.side, inv.acting))


def _scan(
    mat: list[list[int]],
    rank: int,
    cyclic: bool = False,
    k: int | None = None,
) -> Iterator[tuple[int, int, int, int]]:
    """Yield ``(index, mask, cut, valence)`` for every side S ∋ x_i, ∌ x̄_i.

    ``mask`` is a bitmask over matrix positions.  With ``k`` set, only sides of
    moves preserving <x_1..x_k> are produced.
    """
    size = 2 * rank + 1
    degs = [sum(row) for row in mat]
    for i in range(1, rank + 1):
        a, ab = _pos(i), _pos(-i)
        free = [p for p in range(size) if p not in (a, ab) and not (cyclic and p == 0)]
        if k is not None and i > k:
            glued = [p for p in free if p == 0 or _vertex(p) != 0 and abs(_vertex(p)) <= k]
            units = [glued] + [[p] for p in free if p not in glued]
        else:
            units = [[p] for p in free]
        s_w = mat[a][:]
        in_s = [False] * size
        in_s[a] = True
        cut = degs[a]
        mask = 1 << a
        yield i, mask, cut, degs[a]
        for g in range(1, 1 << len(units)):
            bit = (g & -g).bit_length() - 1
            block = units[bit]
            adding = not in_s[block[0]]
            for v in block:
                row = mat[v]
                if adding:
                    cut += degs[v] - 2 * s_w[v]
                    in_s[v] = True
                    mask |= 1 << v
                    for u in range(size):
                        s_w[u] += row[u]
                else:
                    in_s[v] = False
                    mask &= ~(1 << v)
                    for u in range(size):
                        s_w[u] -= row[u]
                    cut -= degs[v] - 2 * s_w[v]
            yield i, mask, cut, degs[a]


def _mask_move(rank: int, i: int, mask: int) -> WhiteheadMove:
    side = frozenset(_vertex(p) for p in range(2 * rank + 1) if mask >> p & 1)
    move = WhiteheadMove(rank, side, i)
    return move.complement_move() if O in side else move


def best_move(
    words: Sequence[Sequence[int]], rank: int, cyclic: bool = False, k: int | None = None
) -> tuple[int, WhiteheadMove | None]:
    """The move with the largest length drop (first in scan order on ties)."""
    mat = _matrix(words, rank, cyclic)
    best_gain, best = 0, None
    for i, mask, cut, deg in _scan(mat, rank, cyclic, k):
        if deg - cut > best_gain:
            best_gain, best = deg - cut, (i, mask)
    if best is None:
        return 0, None
    return best_gain, _mask_move(rank, *best)


def level_moves(
    words: Sequence[Sequence[int]], rank: int, k: int | None = None
) -> list[WhiteheadMove]:
    """Nontrivial moves that leave the total length unchanged."""
    mat = _matrix(words, rank)
    out = []
    seen = set()
    for i, mask, cut, deg in _scan(mat, rank, k=k):
        if cut != deg:
            continue
        move = _mask_move(rank, i, mask)
        images = _move_images(rank, move.side, move.acting)
        if images in seen or all(w == (j,) for j, w in enumerate(images, start=1)):
            continue
        seen.add(images)
        out.append(move)
    return out


def all_moves(rank: int) -> list[WhiteheadMove]:
    """Every Whitehead move of the given rank, both case tables included."""
    order = _vertex_order(rank)
    out = []
    for a in order[1:]:
        rest = [v for v in order if v not in (a, -a)]
        for bits in range(1 << len(rest)):
            side = {a} | {v for n, v in enumerate(rest) if bits >> n & 1}
            out.append(WhiteheadMove(rank, frozenset(side), a))
    return out


# ---------------------------------------------------------------------------
# single words


def reducing_letters(u: Sequence[int], rank: int | None = None) -> set[int]:
    g = whitehead_graph(u, rank)
    present = support(u)
    out = set()
    for a in g.vertices:
        if a == O:
            continue
        if g.is_cut_vertex(a):
            out.add(a)
        elif abs(a) in present and -a not in g.component_of(a):
            out.add(a)
    return out


def component_moves(u: Sequence[int], rank: int | None = None) -> list[WhiteheadMove]:
    """Moves phi(C ∪ {a}, a) for components C of W(u) minus a that avoid ā.

    Acting letters run in index order, positive first; components come in DFS
    discovery order.
    """
    g = whitehead_graph(u, rank)
    out = []
    for a in g.vertices:
        if a == O:
            continue
        for comp in g.components(removed=[a]):
            if -a not in comp:
                out.append(WhiteheadMove(g.rank, frozenset(comp) | {a}, a))
    return out


def edges_between(g: WhiteheadGraph, a: int, comp: Iterable[int]) -> int:
    return sum(g.weight(a, c) for c in comp)


def length_drop(u: Sequence[int], m: WhiteheadMove) -> int:
    """``|u| - |phi(u)|`` for a move built from a component of W(u) minus the acting letter."""
    u = reduce(u)
    g = whitehead_graph(u, m.rank)
    a = m.acting
    comp = set(m.side) - {a}
    if -a in comp or comp not in [set(c) for c in g.components(removed=[a])]:
        raise ValueError(f"{m} is not built from a component of W(u) minus {letter_name(a)}")
    return len(u) - len(whitehead_move_aut(m)(u))


def minimize(u: Sequence[int], rank: int | None = None) -> tuple[Word, FreeAut]:
    u = reduce(u)
    rank = _word_rank([u], rank)
    words, phi = _descend([u], rank)
    return words[0], phi


def _descend(
    words: Sequence[Word], rank: int, k: int | None = None
) -> tuple[list[Word], FreeAut]:
    words = list(words)
    phi = FreeAut.identity(rank)
    while True:
        gain, move = best_move(words, rank, k=k)
        if move is None:
            return words, phi
        aut = whitehead_move_aut(move)
        words = [aut(w) for w in words]
        phi = compose(aut, phi)


def is_primitive(u: Sequence[int], rank: int | None = None) -> bool:
    u_min, _ = minimize(u, rank)
    return len(u_min) == 1


def minimize_tuple(words: Sequence[Sequence[int]], rank: int | None = None) -> tuple[list[Word], FreeAut]:
    """Greedy Whitehead descent of the total length of a tuple."""
    words = [reduce(w) for w in words]
    rank = _word_rank(words, rank)
    return _descend(words, rank)


# ---------------------------------------------------------------------------
# partial bases


def _letters_distinct(words: Sequence[Word]) -> bool:
    return all(len(w) == 1 for w in words) and len({abs(w[0]) for w in words}) == len(words)


def _canonical(words: Sequence[Word]) -> tuple[Word, ...]:
    return tuple(sorted((min(w, inverse(w), key=lambda x: (len(x), x)) for w in words),
                        key=lambda x: (len(x), x)))


def reduce_to_letters(
    words: Sequence[Sequence[int]], rank: int, budget: int = DEFAULT_PLATEAU_BUDGET
) -> FreeAut | None:
    """An automorphism sending every word to a distinct basis letter (up to sign), or None.

    After greedy descent, the level set of length-preserving moves is searched
    breadth-first for a state that admits a further strict descent.
    """
    words = [reduce(w, rank) for w in words]
    if len(words) > rank or any(not w for w in words):
        return None
    if not _homology_summand([abelianize(w, rank) for w in words]):
        return None
    if not _folds_freely(words, rank):
        return None
    current, phi = _descend(words, rank)
    while not _letters_distinct(current):
        escape = _plateau_escape(current, rank, budget)
        if escape is None:
            return None
        current = [escape(w) for w in current]
        phi = compose(escape, phi)
        current, more = _descend(current, rank)
        phi = compose(more, phi)
    return phi


def _det(m: list[list[int]]) -> int:
    # Bareiss elimination, exact over the integers
    m = [row[:] for row in m]
    n, sign, prev = len(m), 1, 1
    for c in range(n):
        pivot = next((r for r in range(c, n) if m[r][c]), None)
        if pivot is None:
            return 0
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        for r in range(c + 1, n):
            for j in range(c + 1, n):
                m[r][j] = (m[r][j] * m[c][c] - m[r][c] * m[c][j]) // prev
        prev = m[c][c]
    return sign * m[n - 1][n - 1]


def _homology_summand(vectors: list[tuple[int, ...]]) -> bool:
    """Whether the vectors are a basis of a direct summand of Z^N (gcd of maximal minors is 1)."""
    g = 0
    for cols in itertools.combinations(range(len(vectors[0])), len(vectors)):
        g = math.gcd(g, _det([[v[c] for c in cols] for v in vectors]))
        if g == 1:
            return True
    return False


def _folds_freely(words: list[Word], rank: int) -> bool:
    """Stallings check: the words must be free generators, and N of them must generate F_N."""
    from .subgroups import fold, rank as core_rank

    g = fold(words, rank)
    if core_rank(g) != len(words):
        return False
    # an N-element generating set of F_N is a basis, so nothing else needs checking
    return len(words) < rank or g.n_vertices == 1


def _plateau_escape(words: list[Word], rank: int, budget: int) -> FreeAut | None:
    seen = {_canonical(words)}
    queue = deque([(tuple(words), FreeAut.identity(rank))])
    while queue:
        state, phi = queue.popleft()
        for move in level_moves(state, rank):
            aut = whitehead_move_aut(move)
            nxt = tuple(aut(w) for w in state)
            key = _canonical(nxt)
            if key in seen:
                continue
            seen.add(key)
            if len(seen) > budget:
                raise BudgetExceeded(f"plateau search exceeded {budget} states")
            psi = compose(aut, phi)
            if best_move(nxt, rank)[1] is not None or _letters_distinct(list(nxt)):
                return psi
            queue.append((nxt, psi))
    return None


def is_partial_basis(
    words: Sequence[Sequence[int]], rank: int | None = None, budget: int = DEFAULT_PLATEAU_BUDGET
) -> bool:
    words = [reduce(w) for w in words]
    rank = _word_rank(words, rank)
    return reduce_to_letters(words, rank, budget) is not None


def invert_basis(images: Sequence[Word], rank: int) -> tuple[Word, ...]:
    """Images of the inverse of x_i -> images[i]; raises if the images are not a basis."""
    if len(images) != rank:
        raise RankError("need one image per basis letter")
    psi = reduce_to_letters(images, rank)
    if psi is None:
        raise ValueError("images do not form a basis")
    letters = [psi(w)[0] for w in images]
    # sign-permute so that images land exactly on x_1..x_N
    targets = [0] * rank
    for i, l in enumerate(letters, start=1):
        targets[abs(l) - 1] = i if l > 0 else -i
    return compose(signed_permutation(targets), psi).images


# ---------------------------------------------------------------------------
# cyclic words and free factor support


def minimize_cyclic(u: Sequence[int], rank: int | None = None) -> tuple[Word, FreeAut]:
    _, core = cyclic_reduce(u)
    rank = _word_rank([core], rank)
    phi = FreeAut.identity(rank)
    while core:
        gain, move = best_move([core], rank, cyclic=True)
        if move is None:
            break
        aut = whitehead_move_aut(move)
        _, core = cyclic_reduce(aut(core))
        phi = compose(aut, phi)
    return core, phi


def has_full_support(u: Sequence[int], rank: int | None = None) -> bool:
    """True iff u lies in no proper free factor (Whitehead-minimal cyclic graph test)."""
    core, _ = minimize_cyclic(u, rank)
    if not core:
        return False
    rank = _word_rank([core], rank)
    g = cyclic_whitehead_graph(core, rank)
    return g.is_connected() and not g.cut_vertices()


def relabel_support(u: Sequence[int]) -> tuple[Word, int]:
    """Rename the indices used by ``u`` to 1..r, preserving order."""
    idx = sorted(support(u))
    ren = {j: n for n, j in enumerate(idx, start=1)}
    return tuple(ren[abs(l)] if l > 0 else -ren[abs(l)] for l in u), len(idx)


# ---------------------------------------------------------------------------
# graded antipode verdicts


@dataclass(frozen=True)
class InA:
    pass


@dataclass(frozen=True)
class Carrier:
    phi: FreeAut


@dataclass(frozen=True)
class Witness:
    p: Word
    w: Word
    normalizer: FreeAut  # A-preserving, sends u to normalized_u
    normalized_u: Word
    normalized_p: Word
    full_support: bool

    @property
    def support_rank(self) -> int:
        return len(support(self.w))


GalVerdict = Union[InA, Carrier, Witness]


def antipode_word(k: int) -> Word:
    """x1 x2^2 ... xk^2 x1 x2^2 ... xk^2 x2."""
    if k < 2:
        raise ValueError("k must be at least 2")
    half = (1,) + tuple(l for j in range(2, k + 1) for l in (j, j))
    return half + half + (2,)


def graded_antipode(k: int, u: Sequence[int], rank: int, check_primitive: bool = True) -> GalVerdict:
    if not 2 <= k < rank:
        raise ValueError(f"need 2 <= k < rank, got k={k}, rank={rank}")
    u = reduce(u, rank)
    if check_primitive and not is_primitive(u, rank):
        raise ValueError(f"{format_word(u)} is not primitive")
    if support(u) <= set(range(1, k + 1)):
        return InA()
    factor = [(i,) for i in range(1, k + 1)]
    psi = reduce_to_letters(factor + [u], rank)
    if psi is not None:
        return Carrier(_carrier(psi, u, k, rank))
    return _witness(u, k, rank)


def _carrier(psi: FreeAut, u: Word, k: int, rank: int) -> FreeAut:
    letters = [psi((i,))[0] for i in range(1, k + 1)] + [psi(u)[0]]
    # pi sends letters[i] to x_{i+1}; unused indices fill the remaining slots in order
    images: dict[int, int] = {}
    for n, l in enumerate(letters, start=1):
        images[abs(l)] = n if l > 0 else -n
    spare = iter(j for j in range(1, rank + 1) if j not in images.values())
    targets = [images[j] if j in images else next(spare) for j in range(1, rank + 1)]
    phi = compose(signed_permutation(targets), psi)
    assert phi(u) == (k + 1,) and all(phi((i,)) == (i,) for i in range(1, k + 1))
    return phi


def _witness(u: Word, k: int, rank: int) -> Witness:
    a_letters = set(range(1, k + 1))
    phi = FreeAut.identity(rank)
    cur = u
    while True:
        [cur], step = _descend([cur], rank, k=k)
        phi = compose(step, phi)
        # conjugate by the maximal prefix lying in A so the word starts outside A
        n = 0
        while n < len(cur) and abs(cur[n]) in a_letters:
            n += 1
        if n == 0:
            break
        g = cur[:n]
        conj = inner(inverse(g), rank)
        nxt = conj(cur)
        phi = compose(conj, phi)
        if len(nxt) == len(cur):
            cur = nxt
            break
        cur = nxt
    t = cur[-1]
    present = sorted(support(cur) & a_letters)
    if not present:
        raise AssertionError("normalized word has no letters from A")
    i1 = present[0]
    i2 = next(j for j in sorted(a_letters) if j != i1)
    order = [i1, i2] + [j for j in sorted(a_letters) if j not in (i1, i2)]
    targets = list(range(1, rank + 1))
    for n, j in enumerate(order, start=1):
        targets[j - 1] = n
    sigma = signed_permutation(targets)
    t_new = sigma((t,))[0]
    if t_new == -1:
        targets[i1 - 1] = -1
    if t_new == 2:
        targets[i2 - 1] = -2
    sigma = signed_permutation(targets)
    normalizer = compose(sigma, phi)
    u_norm = normalizer(u)
    p = antipode_word(k)
    w_norm = mul(p, u_norm, inverse(p), u_norm, p)
    relabeled, r = relabel_support(w_norm)
    full = has_full_support(relabeled, r)
    back = normalizer.inverse()
    p0 = back(p)
    w0 = mul(p0, u, inverse(p0), u, p0)
    return Witness(p0, w0, normalizer, u_norm, p, full)

