"""Truncated graded free factor graphs.

A truncation ``(N, k, L)`` holds every free factor of F_N of rank at most
``k`` that has some basis of total length at most ``L``; two factors are
adjacent when one properly contains the other.  Distances measured inside a
truncation are upper bounds for distances in the full graph.
"""
from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .core import BudgetExceeded, Word, format_word, inverse, parse_word, shortlex_key, words_up_to
from .subgroups import CoreGraph, FactorKey, contains, fold, rank as core_rank
from .whitehead import is_partial_basis, is_primitive

DEFAULT_VERTEX_CAP = 200_000


def _basis_order(basis: Sequence[Word]) -> tuple:
    return (sum(len(w) for w in basis), [shortlex_key(w) for w in basis])


def _rep(w: Word) -> Word:
    """Representative of {w, w^-1} used for bases: the one printed first."""
    return min(w, inverse(w), key=shortlex_key)


@dataclass(frozen=True)
class FactorVertex:
    key: FactorKey
    rank: int
    witness_basis: tuple[Word, ...]
    graph: CoreGraph = field(compare=False, repr=False)

    @classmethod
    def from_basis(cls, basis: Sequence[Sequence[int]], ambient_rank: int | None = None) -> FactorVertex:
        basis = tuple(tuple(w) for w in basis)
        g = fold(basis, ambient_rank)
        return cls(g.key, core_rank(g), basis, g)

    @property
    def label(self) -> str:
        return "<" + ",".join(format_word(w) for w in self.witness_basis) + ">"

    def to_json(self) -> dict:
        return {"key": self.key.digest, "rank": self.rank,
                "basis": [format_word(w) for w in self.witness_basis]}


@dataclass
class FactorGraph:
    ambient_rank: int
    rank_bound: int
    length_bound: int
    vertices: list[FactorVertex]
    adjacency: dict[int, set[int]]
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self._index = {v.key: n for n, v in enumerate(self.vertices)}

    def index(self, v: FactorVertex | FactorKey) -> int:
        key = v.key if isinstance(v, FactorVertex) else v
        try:
            return self._index[key]
        except KeyError:
            raise KeyError("vertex not present in this truncation") from None

    def __contains__(self, v: FactorVertex | FactorKey) -> bool:
        key = v.key if isinstance(v, FactorVertex) else v
        return key in self._index

    def edges(self) -> list[tuple[int, int]]:
        return sorted((i, j) for i, nbrs in self.adjacency.items() for j in nbrs if i < j)

    def by_rank(self, r: int) -> list[FactorVertex]:
        return [v for v in self.vertices if v.rank == r]

    def to_json(self) -> dict:
        return {
            "params": {"rank": self.ambient_rank, "k": self.rank_bound, "len": self.length_bound},
            "vertices": [v.to_json() for v in self.vertices],
            "edges": [list(e) for e in self.edges()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_json(cls, data: dict) -> FactorGraph:
        p = data["params"]
        verts = [FactorVertex.from_basis([parse_word(w) for w in v["basis"]], p["rank"])
                 for v in data["vertices"]]
        adj: dict[int, set[int]] = {n: set() for n in range(len(verts))}
        for i, j in data["edges"]:
            adj[i].add(j)
            adj[j].add(i)
        return cls(p["rank"], p["k"], p["len"], verts, adj)

    def to_dot(self) -> str:
        colors = ["black", "red", "blue", "darkgreen", "orange", "purple"]
        lines = ["graph F {"]
        for n, v in enumerate(self.vertices):
            lines.append(f'  {n} [label="{v.label}" color={colors[v.rank % len(colors)]}];')
        for i, j in self.edges():
            lines.append(f"  {i} -- {j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def enumerate_primitives(rank: int, length: int) -> list[FactorVertex]:
    """One rank-1 vertex per cyclic subgroup generated by a primitive of length <= ``length``."""
    if rank < 2 or length < 1:
        raise ValueError("need rank >= 2 and length >= 1")
    best: dict[FactorKey, FactorVertex] = {}
    for w in words_up_to(rank, length)[1:]:
        if w != _rep(w) or not is_primitive(w, rank):
            continue
        v = FactorVertex.from_basis([w], rank)
        old = best.get(v.key)
        if old is None or _basis_order(v.witness_basis) < _basis_order(old.witness_basis):
            best[v.key] = v
    return sorted(best.values(), key=lambda v: _basis_order(v.witness_basis))


def enumerate_factors(rank: int, k: int, length: int, vertex_cap: int = DEFAULT_VERTEX_CAP) -> FactorGraph:
    if not 1 <= k <= rank - 1:
        raise ValueError(f"need 1 <= k <= {rank - 1}")
    prims = enumerate_primitives(rank, length)
    # every element of a basis of a free factor is primitive
    words = sorted({v.witness_basis[0] for v in prims} | {_rep(w) for w in _primitive_words(rank, length)},
                   key=shortlex_key)
    found: dict[FactorKey, FactorVertex] = {v.key: v for v in prims}
    for r in range(2, k + 1):
        for combo in _bounded_combinations(words, r, length):
            if not is_partial_basis(combo, rank):
                continue
            v = FactorVertex.from_basis(combo, rank)
            old = found.get(v.key)
            if old is None:
                found[v.key] = v
                if len(found) > vertex_cap:
                    raise BudgetExceeded(f"more than {vertex_cap} vertices")
            elif _basis_order(v.witness_basis) < _basis_order(old.witness_basis):
                found[v.key] = v
    verts = sorted(found.values(), key=lambda v: (v.rank, _basis_order(v.witness_basis)))
    return FactorGraph(rank, k, length, verts, _containment(verts))


def _primitive_words(rank: int, length: int) -> list[Word]:
    return [w for w in words_up_to(rank, length)[1:] if is_primitive(w, rank)]


def _bounded_combinations(words: list[Word], r: int, length: int):
    """r-subsets (in list order) with total length <= ``length``; ``words`` sorted by length."""
    def rec(start: int, chosen: list[Word], budget: int):
        if len(chosen) == r:
            yield tuple(chosen)
            return
        need = r - len(chosen) - 1
        for n in range(start, len(words)):
            w = words[n]
            if len(w) + need > budget:
                break
            chosen.append(w)
            yield from rec(n + 1, chosen, budget - len(w))
            chosen.pop()
    yield from rec(0, [], length)


def _containment(verts: list[FactorVertex]) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {n: set() for n in range(len(verts))}
    for i, j in itertools.combinations(range(len(verts)), 2):
        a, b = verts[i], verts[j]
        if a.rank == b.rank:
            continue
        lo, hi = (a, b) if a.rank < b.rank else (b, a)
        if contains(hi.graph, lo.graph):
            adj[i].add(j)
            adj[j].add(i)
    return adj


def distance(g: FactorGraph, a: FactorVertex, b: FactorVertex) -> int | None:
    """Shortest path length inside the truncation (None if unreachable)."""
    src, dst = g.index(a), g.index(b)
    dist = {src: 0}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            return dist[v]
        for nb in sorted(g.adjacency[v]):
            if nb not in dist:
                dist[nb] = dist[v] + 1
                queue.append(nb)
    return None


def shortest_path(g: FactorGraph, a: FactorVertex, b: FactorVertex) -> list[FactorVertex] | None:
    src, dst = g.index(a), g.index(b)
    prev: dict[int, int | None] = {src: None}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            path = []
            cur: int | None = v
            while cur is not None:
                path.append(g.vertices[cur])
                cur = prev[cur]
            return path[::-1]
        for nb in sorted(g.adjacency[v]):
            if nb not in prev:
                prev[nb] = v
                queue.append(nb)
    return None


def antipodal(a: FactorVertex, b: FactorVertex, ambient_rank: int) -> bool:
    """<A, B> is a free factor isomorphic to A * B."""
    return is_partial_basis(list(a.witness_basis) + list(b.witness_basis), ambient_rank)


def link(g: FactorGraph, v: FactorVertex) -> FactorGraph:
    centre = g.index(v)
    keep = sorted(g.adjacency[centre])
    ren = {old: new for new, old in enumerate(keep)}
    adj = {ren[i]: {ren[j] for j in g.adjacency[i] if j in ren} for i in keep}
    return FactorGraph(g.ambient_rank, g.rank_bound, g.length_bound, [g.vertices[i] for i in keep], adj)


def link_distance_report(small: FactorGraph, large: FactorGraph) -> dict:
    """For rank-2 A antipodal to rank-1 C in ``small``, check d(B, C) <= 2 in ``large`` for B in link(A).

    Distances in a truncation only bound the true ones from above, so misses are
    listed as insufficient truncation rather than counterexamples.
    """
    checked = 0
    insufficient = []
    for a in small.by_rank(2):
        for c in small.by_rank(1):
            if not antipodal(a, c, small.ambient_rank):
                continue
            for nb in sorted(small.adjacency[small.index(a)]):
                b = small.vertices[nb]
                checked += 1
                if b not in large or c not in large:
                    insufficient.append((a.label, b.label, c.label))
                    continue
                d = distance(large, b, c)
                if d is None or d > 2:
                    insufficient.append((a.label, b.label, c.label))
    return {"checked": checked, "insufficient_truncation": insufficient}
