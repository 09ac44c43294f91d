"""Brute-force references that never touch Whitehead graphs.

Each oracle explores Aut(F_N)-orbits by applying Nielsen moves, inversions
and transpositions, so it shares nothing with the cut-based search beyond word
arithmetic.  All of them are exhaustive inside explicit length or depth caps.
"""
from __future__ import annotations

from collections import deque
from typing import Sequence

from .core import BudgetExceeded, FreeAut, Word, compose, generator_set, inverse, reduce


def _gens(rank: int) -> list[FreeAut]:
    return [g for _, g in generator_set(rank)]


def primitive_orbit(rank: int, cap: int, budget: int = 5_000_000) -> set[Word]:
    """All primitive words reachable from the basis letters through words of length <= cap."""
    gens = _gens(rank)
    start = [(i,) for i in range(1, rank + 1)] + [(-i,) for i in range(1, rank + 1)]
    seen = set(start)
    queue = deque(start)
    while queue:
        u = queue.popleft()
        for g in gens:
            v = g(u)
            if len(v) <= cap and v not in seen:
                seen.add(v)
                if len(seen) > budget:
                    raise BudgetExceeded("primitive orbit exceeded its budget")
                queue.append(v)
    return seen


def orbit_min_length(u: Sequence[int], rank: int, cap: int, budget: int = 2_000_000) -> int:
    """Shortest word in the orbit of ``u`` among those reachable below ``cap``."""
    u = reduce(u)
    gens = _gens(rank)
    seen = {u}
    queue = deque([u])
    best = len(u)
    while queue:
        w = queue.popleft()
        best = min(best, len(w))
        for g in gens:
            v = g(w)
            if len(v) <= cap and v not in seen:
                seen.add(v)
                if len(seen) > budget:
                    raise BudgetExceeded("orbit search exceeded its budget")
                queue.append(v)
    return best


def bfs_is_primitive(u: Sequence[int], rank: int, cap: int) -> bool:
    return orbit_min_length(u, rank, cap) == 1


def _canon(words: Sequence[Word]) -> tuple[Word, ...]:
    return tuple(sorted(min(w, inverse(w)) for w in words))


def partial_basis_images(rank: int, k: int, depth: int) -> set[tuple[Word, ...]]:
    """Images of (x_1..x_k) under every product of at most ``depth`` generators.

    Tuples are canonicalized up to order and inversion of entries.
    """
    gens = _gens(rank)
    start = tuple((i,) for i in range(1, k + 1))
    frontier = {start}
    seen = {_canon(start)}
    for _ in range(depth):
        nxt = set()
        for t in frontier:
            for g in gens:
                img = tuple(g(w) for w in t)
                key = _canon(img)
                if key not in seen:
                    seen.add(key)
                    nxt.add(img)
        frontier = nxt
    return seen


def ball(rank: int, depth: int, budget: int = 1_000_000) -> list[FreeAut]:
    """Automorphisms expressible as at most ``depth`` generator applications."""
    gens = _gens(rank)
    ident = FreeAut.identity(rank)
    seen = {ident.images: ident}
    frontier = [ident]
    for _ in range(depth):
        nxt = []
        for phi in frontier:
            for g in gens:
                psi = compose(g, phi)
                if psi.images not in seen:
                    seen[psi.images] = psi
                    if len(seen) > budget:
                        raise BudgetExceeded("automorphism ball exceeded its budget")
                    nxt.append(psi)
        frontier = nxt
    return list(seen.values())
