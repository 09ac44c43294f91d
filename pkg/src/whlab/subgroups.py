"""Finitely generated subgroups of F_N as folded, cored Stallings graphs."""
from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import Word, format_word, inverse, letter_name, mul, parse_word, reduce
from .whitehead import is_partial_basis

Edge = tuple[int, int, int]  # (source, target, positive label)


@dataclass(frozen=True)
class FactorKey:
    digest: str
    edges: tuple[Edge, ...]

    def to_json(self) -> dict:
        return {"digest": self.digest, "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class CoreGraph:
    """Folded core automaton based at vertex 0, vertices numbered canonically."""

    rank: int = field(compare=False)
    n_vertices: int = 1
    edges: tuple[Edge, ...] = ()
    _out: dict = field(default=None, init=False, repr=False, compare=False, hash=False)
    _in: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        out: dict[int, dict[int, int]] = {v: {} for v in range(self.n_vertices)}
        inc: dict[int, dict[int, int]] = {v: {} for v in range(self.n_vertices)}
        for s, t, l in self.edges:
            if l in out[s] or l in inc[t]:
                raise ValueError("graph is not folded")
            out[s][l] = t
            inc[t][l] = s
        object.__setattr__(self, "_out", out)
        object.__setattr__(self, "_in", inc)

    basepoint = 0

    def step(self, v: int, letter: int) -> int | None:
        if letter > 0:
            return self._out[v].get(letter)
        return self._in[v].get(-letter)

    @property
    def key(self) -> FactorKey:
        digest = hashlib.sha256(repr((self.n_vertices, self.edges)).encode()).hexdigest()
        return FactorKey(digest, self.edges)

    def basis(self) -> list[Word]:
        return free_basis(self)

    def to_json(self) -> dict:
        return {
            "basepoint": 0,
            "vertices": list(range(self.n_vertices)),
            "edges": [{"from": s, "to": t, "label": letter_name(l)} for s, t, l in self.edges],
        }

    @classmethod
    def from_json(cls, data: dict, rank: int) -> CoreGraph:
        edges = tuple((e["from"], e["to"], parse_word(e["label"])[0]) for e in data["edges"])
        return _canonical(rank, len(data["vertices"]), edges)

    def __str__(self) -> str:
        return "<" + ", ".join(format_word(w) for w in self.basis()) + ">"


class _Folder:
    """Mutable scratch graph with union-find folding."""

    def __init__(self) -> None:
        self.parent: list[int] = [0]
        self.out: list[dict[int, int]] = [{}]
        self.inc: list[dict[int, int]] = [{}]
        self.pending: list[tuple[int, int]] = []

    def new(self) -> int:
        self.parent.append(len(self.parent))
        self.out.append({})
        self.inc.append({})
        return len(self.parent) - 1

    def find(self, v: int) -> int:
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    def add_edge(self, s: int, t: int, label: int) -> None:
        if label < 0:
            s, t, label = t, s, -label
        s, t = self.find(s), self.find(t)
        if label in self.out[s]:
            self.pending.append((self.find(self.out[s][label]), t))
        else:
            self.out[s][label] = t
        if label in self.inc[t]:
            self.pending.append((self.find(self.inc[t][label]), s))
        else:
            self.inc[t][label] = s
        self._fold()

    def _fold(self) -> None:
        while self.pending:
            a, b = self.pending.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if a == 0 or (b != 0 and a < b):
                keep, drop = a, b
            else:
                keep, drop = b, a
            self.parent[drop] = keep
            for label, t in self.out[drop].items():
                t = self.find(t)
                if label in self.out[keep]:
                    self.pending.append((self.find(self.out[keep][label]), t))
                else:
                    self.out[keep][label] = t
            for label, s in self.inc[drop].items():
                s = self.find(s)
                if label in self.inc[keep]:
                    self.pending.append((self.find(self.inc[keep][label]), s))
                else:
                    self.inc[keep][label] = s
            self.out[drop], self.inc[drop] = {}, {}

    def add_loop(self, word: Sequence[int]) -> None:
        if not word:
            return
        v = 0
        for n, l in enumerate(word):
            t = 0 if n == len(word) - 1 else self.new()
            self.add_edge(v, t, l)
            v = t

    def edges(self) -> set[Edge]:
        out = set()
        for v in range(len(self.parent)):
            if self.find(v) != v:
                continue
            for label, t in self.out[v].items():
                out.add((v, self.find(t), label))
        return out


def _core_edges(edges: set[Edge]) -> set[Edge]:
    """Strip hanging trees away from the basepoint."""
    edges = set(edges)
    while True:
        deg: dict[int, int] = {}
        for s, t, _ in edges:
            deg[s] = deg.get(s, 0) + 1
            deg[t] = deg.get(t, 0) + 1
        leaves = {v for v, d in deg.items() if d == 1 and v != 0}
        if not leaves:
            return edges
        edges = {e for e in edges if e[0] not in leaves and e[1] not in leaves}


def _canonical(rank: int, n_vertices: int, edges: Iterable[Edge]) -> CoreGraph:
    """Relabel vertices breadth-first from the basepoint, labels ascending, out before in."""
    edges = list(edges)
    top = max((l for _, _, l in edges), default=0)
    out: dict[int, dict[int, int]] = {}
    inc: dict[int, dict[int, int]] = {}
    for s, t, l in edges:
        out.setdefault(s, {})[l] = t
        inc.setdefault(t, {})[l] = s
    names = {0: 0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for l in range(1, top + 1):
            for nb in (out.get(v, {}).get(l), inc.get(v, {}).get(l)):
                if nb is not None and nb not in names:
                    names[nb] = len(names)
                    queue.append(nb)
    relabeled = sorted((names[s], names[t], l) for s, t, l in edges if s in names and t in names)
    return CoreGraph(max(rank, top), len(names), tuple(relabeled))


def fold(generators: Iterable[Sequence[int]], rank: int | None = None) -> CoreGraph:
    gens = [reduce(g) for g in generators]
    if rank is None:
        rank = max((abs(l) for g in gens for l in g), default=1)
    f = _Folder()
    for g in gens:
        f.add_loop(g)
    return _canonical(rank, 0, _core_edges(f.edges()))


def member(g: CoreGraph, w: Sequence[int]) -> bool:
    v: int | None = 0
    for l in reduce(w):
        v = g.step(v, l)
        if v is None:
            return False
    return v == 0


def free_basis(g: CoreGraph) -> list[Word]:
    """Basis read off a breadth-first spanning tree: one element per non-tree edge."""
    path: dict[int, Word] = {0: ()}
    tree: set[Edge] = set()
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for l in range(1, g.rank + 1):
            t = g.step(v, l)
            if t is not None and t not in path:
                path[t] = path[v] + (l,)
                tree.add((v, t, l))
                queue.append(t)
            s = g.step(v, -l)
            if s is not None and s not in path:
                path[s] = path[v] + (-l,)
                tree.add((s, v, l))
                queue.append(s)
    return [mul(path[s], (l,), inverse(path[t])) for s, t, l in g.edges if (s, t, l) not in tree]


def contains(g: CoreGraph, h: CoreGraph) -> bool:
    """Whether the subgroup of ``h`` lies inside the subgroup of ``g``."""
    return all(member(g, w) for w in free_basis(h))


def equals(g: CoreGraph, h: CoreGraph) -> bool:
    return g.key == h.key


def rank(g: CoreGraph) -> int:
    return len(g.edges) - g.n_vertices + 1 if g.n_vertices else 0


def intersect(g: CoreGraph, h: CoreGraph) -> CoreGraph:
    """Fiber product restricted to the basepoint component, then cored."""
    r = max(g.rank, h.rank)
    start = (0, 0)
    names = {start: 0}
    queue = deque([start])
    edges = set()
    while queue:
        a, b = queue.popleft()
        for l in range(1, r + 1):
            ta, tb = (g.step(a, l) if a < g.n_vertices else None), (h.step(b, l) if b < h.n_vertices else None)
            if ta is None or tb is None:
                continue
            if (ta, tb) not in names:
                names[(ta, tb)] = len(names)
                queue.append((ta, tb))
            edges.add((names[(a, b)], names[(ta, tb)], l))
        for l in range(1, r + 1):
            sa, sb = (g.step(a, -l) if a < g.n_vertices else None), (h.step(b, -l) if b < h.n_vertices else None)
            if sa is None or sb is None:
                continue
            if (sa, sb) not in names:
                names[(sa, sb)] = len(names)
                queue.append((sa, sb))
    return _canonical(r, 0, _core_edges(edges))


def is_free_factor(g: CoreGraph, ambient_rank: int | None = None) -> bool:
    basis = free_basis(g)
    if not basis:
        raise ValueError("the trivial subgroup is not a free factor vertex")
    return is_partial_basis(basis, ambient_rank or g.rank)


def conjugate(g: CoreGraph, w: Sequence[int]) -> CoreGraph:
    """The subgroup w H w^-1."""
    wi = inverse(w)
    return fold([mul(w, b, wi) for b in free_basis(g)], g.rank)
