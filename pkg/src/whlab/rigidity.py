"""Standard apartments, their recognition by antipodes, and crawling chains."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .core import (
    BudgetExceeded,
    FreeAut,
    Word,
    compose,
    compose_all,
    format_word,
    inversion,
    inverse,
    mul,
    reduce,
    right_nielsen,
    signed_permutation,
    support,
)
from .factorgraph import FactorVertex, antipodal
from .subgroups import contains, fold
from .whitehead import is_partial_basis, reduce_to_letters


class HypothesisError(ValueError):
    """Input does not satisfy the hypotheses needed to run the check."""


class ReconstructionError(AssertionError):
    """The antipode test passed but the complex is not the expected standard apartment."""


# ---------------------------------------------------------------------------
# apartments


def _subsets(k: int) -> list[tuple[int, ...]]:
    return [c for r in range(1, k) for c in itertools.combinations(range(k), r)]


@dataclass(frozen=True)
class Apartment:
    """The standard apartment of a basis of a rank-k free factor."""

    basis: tuple[Word, ...]
    ambient_rank: int
    _vertices: tuple = field(default=None, init=False, repr=False, compare=False, hash=False)

    @property
    def k(self) -> int:
        return len(self.basis)

    @property
    def subsets(self) -> list[tuple[int, ...]]:
        return _subsets(self.k)

    @property
    def vertices(self) -> tuple[FactorVertex, ...]:
        if self._vertices is None:
            verts = tuple(FactorVertex.from_basis([self.basis[i] for i in s], self.ambient_rank)
                          for s in self.subsets)
            object.__setattr__(self, "_vertices", verts)
        return self._vertices

    @property
    def edges(self) -> set[tuple[int, int]]:
        subs = [set(s) for s in self.subsets]
        return {(i, j) for i, j in itertools.combinations(range(len(subs)), 2)
                if subs[i] < subs[j] or subs[j] < subs[i]}

    def keys(self) -> frozenset:
        return frozenset(v.key for v in self.vertices)

    def vertex(self, subset: Sequence[int]) -> FactorVertex:
        return self.vertices[self.subsets.index(tuple(sorted(subset)))]

    def to_json(self) -> dict:
        return {
            "basis": [format_word(w) for w in self.basis],
            "vertices": [v.to_json() for v in self.vertices],
            "edges": sorted(list(e) for e in self.edges),
        }

    def to_dot(self) -> str:
        lines = ["graph apartment {"]
        for n, v in enumerate(self.vertices):
            lines.append(f'  {n} [label="{v.label}"];')
        for i, j in sorted(self.edges):
            lines.append(f"  {i} -- {j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def standard_apartment(basis: Sequence[Sequence[int]], ambient_rank: int) -> Apartment:
    basis = tuple(reduce(w, ambient_rank) for w in basis)
    if len(basis) < 2:
        raise ValueError("an apartment needs a basis of at least two elements")
    if not is_partial_basis(basis, ambient_rank):
        raise ValueError("not a basis of a free factor: " + ", ".join(format_word(w) for w in basis))
    return Apartment(basis, ambient_rank)


def _shape(ranks: Sequence[int], edges: set[tuple[int, int]]) -> dict[int, frozenset] | None:
    """Rank-preserving identification with the proper subsets of the rank-1 vertices, if any."""
    n = len(ranks)
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    for i, j in edges:
        if i == j or not (0 <= i < n and 0 <= j < n):
            return None
        adj[i].add(j)
        adj[j].add(i)
    points = [v for v in range(n) if ranks[v] == 1]
    l = len(points)
    if l < 2 or n != 2 ** l - 2:
        return None
    sets: dict[int, frozenset] = {}
    for v in range(n):
        if ranks[v] == 1:
            sets[v] = frozenset([v])
        else:
            sets[v] = frozenset(p for p in points if p in adj[v])
        if len(sets[v]) != ranks[v] or not 1 <= ranks[v] < l:
            return None
    if len(set(sets.values())) != n:
        return None
    for i, j in itertools.combinations(range(n), 2):
        nested = sets[i] < sets[j] or sets[j] < sets[i]
        if nested != (j in adj[i]):
            return None
    return sets


def check_putative(ranks: Sequence[int], edges: set[tuple[int, int]]) -> bool:
    """Whether the graph is rank-isomorphic to some standard apartment (shape only)."""
    return _shape(ranks, set(edges)) is not None


def characterize_standard(
    vertices: Sequence[FactorVertex], edges: set[tuple[int, int]], ambient_rank: int
) -> bool:
    """Recognize a standard apartment among putative ones by its antipodes.

    Returns False when some rank-1 vertex <u> and some vertex A of rank >= 2
    are neither adjacent nor generate a free factor of rank rank(A) + 1.
    """
    edges = set(edges)
    sets = _shape([v.rank for v in vertices], edges)
    if sets is None:
        raise HypothesisError("not a putative apartment")
    points = [n for n, v in enumerate(vertices) if v.rank == 1]
    if len(points) < 3:
        raise HypothesisError("recognition needs l >= 3")
    for i, j in itertools.combinations(range(len(vertices)), 2):
        a, b = vertices[i], vertices[j]
        if a.rank == b.rank:
            continue
        lo, hi = (a, b) if a.rank < b.rank else (b, a)
        adjacent = (i, j) in edges or (j, i) in edges
        if adjacent != contains(hi.graph, lo.graph):
            raise HypothesisError("adjacency does not match containment of factors")
    for p in points:
        u = vertices[p].witness_basis[0]
        for n, a in enumerate(vertices):
            if a.rank < 2:
                continue
            if (p, n) in edges or (n, p) in edges:
                continue
            if not is_partial_basis(list(a.witness_basis) + [u], ambient_rank):
                return False
    basis = [vertices[p].witness_basis[0] for p in points]
    if not is_partial_basis(basis, ambient_rank):
        raise ReconstructionError("rank-1 vertices do not form a basis")
    if Apartment(tuple(basis), ambient_rank).keys() != frozenset(v.key for v in vertices):
        raise ReconstructionError("complex differs from the apartment of its rank-1 vertices")
    return True


def apartment_complex(ap: Apartment) -> tuple[list[FactorVertex], set[tuple[int, int]]]:
    return list(ap.vertices), ap.edges


# ---------------------------------------------------------------------------
# crawling


@dataclass(frozen=True)
class CrawlStep:
    name: str
    aut: FreeAut

    @property
    def moves_apartment(self) -> bool:
        return self.name.startswith("rho")


@dataclass
class CrawlChain:
    apartments: list[Apartment]
    shared_pairs: list[tuple[FactorVertex, FactorVertex]]
    factors: list[CrawlStep]  # product equals the change of basis, in standard coordinates
    change_of_basis: FreeAut  # alpha with alpha(x_i) = l'_i
    frame: FreeAut  # theta with theta(x_i) = d_i for i <= k

    def __len__(self) -> int:
        return len(self.apartments) - 1

    def to_json(self) -> dict:
        return {
            "apartments": [[format_word(w) for w in a.basis] for a in self.apartments],
            "shared_pairs": [{"B": b.label, "u": u.label} for b, u in self.shared_pairs],
            "factors": [s.name for s in self.factors],
        }


def _rho(i: int, j: int, rank: int) -> CrawlStep:
    return CrawlStep(f"rho{i},{j}", right_nielsen(i, j, rank))


def _iota(i: int, rank: int) -> CrawlStep:
    return CrawlStep(f"inv{i}", inversion(i, rank))


def _nielsen_factors(kind: str, i: int, j: int, rank: int) -> list[CrawlStep]:
    """Express a Nielsen move through inversions and right Nielsen moves."""
    if kind == "rho":
        return [_rho(i, j, rank)]
    if kind == "rho^-1":
        return [_iota(j, rank), _rho(i, j, rank), _iota(j, rank)]
    if kind == "lam":
        return [_iota(i, rank), _iota(j, rank), _rho(i, j, rank), _iota(j, rank), _iota(i, rank)]
    if kind == "lam^-1":
        return [_iota(i, rank), _rho(i, j, rank), _iota(i, rank)]
    raise ValueError(kind)


_INVERSE_KIND = {"rho": "rho^-1", "rho^-1": "rho", "lam": "lam^-1", "lam^-1": "lam"}


def _swap_factors(i: int, j: int, rank: int) -> list[CrawlStep]:
    # (a, b) -> (ab, b) -> (ab, a^-1) -> (b, a^-1) -> (b, a)
    return (_nielsen_factors("rho", i, j, rank) + _nielsen_factors("rho^-1", j, i, rank)
            + _nielsen_factors("lam", i, j, rank) + [_iota(j, rank)])


def _signed_perm_factors(letters: Sequence[Word], rank: int) -> list[CrawlStep]:
    """Factors of the automorphism x_i -> letters[i-1] (a signed permutation of x_1..x_k)."""
    cur = [w[0] for w in letters]
    groups: list[list[CrawlStep]] = []
    # precompose swaps until the tuple is sorted, then fix signs
    for pos in range(len(cur)):
        want = pos + 1
        at = next(n for n in range(pos, len(cur)) if abs(cur[n]) == want)
        if at != pos:
            groups.append(_swap_factors(pos + 1, at + 1, rank))
            cur[pos], cur[at] = cur[at], cur[pos]
    for n, l in enumerate(cur, start=1):
        if l < 0:
            groups.append([_iota(n, rank)])
    # alpha o g_1 o ... o g_m = id and every group is an involution
    return [s for g in reversed(groups) for s in g]


def _nielsen_candidates(k: int):
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            if i != j:
                for kind in ("rho", "rho^-1", "lam", "lam^-1"):
                    yield kind, i, j


def _nielsen_apply(t: tuple[Word, ...], kind: str, i: int, j: int) -> tuple[Word, ...]:
    a, b = t[i - 1], t[j - 1]
    new = {"rho": mul(a, b), "rho^-1": mul(a, inverse(b)),
           "lam": mul(b, a), "lam^-1": mul(inverse(b), a)}[kind]
    return t[:i - 1] + (new,) + t[i:]


def _total(t: Sequence[Word]) -> int:
    return sum(len(w) for w in t)


def _nielsen_reduce(t: tuple[Word, ...], k: int, budget: int) -> list[tuple[str, int, int]]:
    """Nielsen moves (as precompositions) taking ``t`` to a signed permutation of the letters."""
    path: list[tuple[str, int, int]] = []
    while _total(t) > k:
        best = None
        for kind, i, j in _nielsen_candidates(k):
            nt = _nielsen_apply(t, kind, i, j)
            if _total(nt) < _total(t) and (best is None or _total(nt) < best[0]):
                best = (_total(nt), (kind, i, j), nt)
        if best is not None:
            path.append(best[1])
            t = best[2]
            continue
        # level-set search for a state that admits a strict reduction
        seen = {t}
        queue = deque([(t, [])])
        found = None
        while queue and found is None:
            s, moves = queue.popleft()
            for kind, i, j in _nielsen_candidates(k):
                ns = _nielsen_apply(s, kind, i, j)
                if _total(ns) > _total(t) or ns in seen:
                    continue
                seen.add(ns)
                if len(seen) > budget:
                    raise BudgetExceeded("Nielsen level-set search exceeded its budget")
                if _total(ns) < _total(t):
                    found = (ns, moves + [(kind, i, j)])
                    break
                queue.append((ns, moves + [(kind, i, j)]))
        if found is None:
            raise ValueError("tuple is not a basis of the standard factor")
        t, extra = found
        path += extra
    return path


def _frame(basis: Sequence[Word], rank: int) -> FreeAut:
    """An automorphism theta with theta(x_i) = basis[i-1] for i <= len(basis)."""
    psi = reduce_to_letters(basis, rank)
    if psi is None:
        raise ValueError("not a basis of a free factor")
    letters = [psi(w)[0] for w in basis]
    targets: dict[int, int] = {}
    for n, l in enumerate(letters, start=1):
        targets[abs(l)] = n if l > 0 else -n
    spare = iter(j for j in range(1, rank + 1) if j not in {abs(t) for t in targets.values()})
    perm = [targets[j] if j in targets else next(spare) for j in range(1, rank + 1)]
    to_std = compose(signed_permutation(perm), psi)
    return to_std.inverse()


def crawl(delta: Apartment, lam: Apartment, factor: FactorVertex | None = None,
          budget: int = 100_000) -> CrawlChain:
    rank = delta.ambient_rank
    k = delta.k
    if lam.k != k or lam.ambient_rank != rank:
        raise ValueError("apartments have different shapes")
    if k < 3:
        raise ValueError("crawling needs k >= 3")
    a_key = fold(delta.basis, rank).key
    if fold(lam.basis, rank).key != a_key or (factor is not None and factor.key != a_key):
        raise ValueError("the bases generate different factors")
    theta = _frame(delta.basis, rank)
    back = theta.inverse()
    target = tuple(back(w) for w in lam.basis)
    if not all(support(w) <= set(range(1, k + 1)) for w in target):
        raise ValueError("the bases generate different factors")
    path = _nielsen_reduce(target, k, budget)
    # alpha o s_1 o ... o s_m = pi, hence alpha = pi o s_m^-1 o ... o s_1^-1
    t = target
    for kind, i, j in path:
        t = _nielsen_apply(t, kind, i, j)
    factors = _signed_perm_factors(t, rank)
    for kind, i, j in reversed(path):
        factors += _nielsen_factors(_INVERSE_KIND[kind], i, j, rank)
    alpha = FreeAut(rank, tuple(target) + tuple((j,) for j in range(k + 1, rank + 1)),
                    None)
    apartments = [delta]
    pairs: list[tuple[FactorVertex, FactorVertex]] = []
    h = FreeAut.identity(rank)
    for step in factors:
        frame = compose(theta, h)
        h = compose(h, step.aut)
        if not step.moves_apartment:
            continue
        i, j = (int(x) for x in step.name[3:].split(","))
        l = min(m for m in range(1, k + 1) if m not in (i, j))
        b_basis = [frame((m,)) for m in range(1, k + 1) if m != l]
        pairs.append((FactorVertex.from_basis(b_basis, rank), FactorVertex.from_basis([frame((l,))], rank)))
        basis = tuple(compose(theta, h)((m,)) for m in range(1, k + 1))
        apartments.append(Apartment(basis, rank))
    if apartments[-1].keys() != lam.keys():
        raise AssertionError("crawl did not arrive at the target apartment")
    apartments[-1] = lam
    return CrawlChain(apartments, pairs, factors, alpha, theta)


def validate_chain(chain: CrawlChain, delta: Apartment, lam: Apartment) -> list[str]:
    """Independent post-hoc check; returns a list of violations (empty when valid)."""
    problems = []
    rank = delta.ambient_rank
    a_key = fold(delta.basis, rank).key
    if chain.apartments[0].keys() != delta.keys():
        problems.append("chain does not start at delta")
    if chain.apartments[-1].keys() != lam.keys():
        problems.append("chain does not end at lambda")
    if len(chain.shared_pairs) != len(chain.apartments) - 1:
        problems.append("one shared pair per consecutive pair expected")
    for n, (b, u) in enumerate(chain.shared_pairs):
        first, second = chain.apartments[n].keys(), chain.apartments[n + 1].keys()
        if b.rank != delta.k - 1 or u.rank != 1:
            problems.append(f"step {n}: wrong ranks")
        if not ({b.key, u.key} <= first and {b.key, u.key} <= second):
            problems.append(f"step {n}: shared pair missing from an apartment")
        if not antipodal(b, u, rank):
            problems.append(f"step {n}: pair is not antipodal")
        if fold(list(b.witness_basis) + list(u.witness_basis), rank).key != a_key:
            problems.append(f"step {n}: pair does not generate A")
    product = compose_all(rank, *(s.aut for s in chain.factors))
    if product != chain.change_of_basis:
        problems.append("factors do not recompose to the change of basis")
    conj = compose_all(rank, chain.frame, product, chain.frame.inverse())
    if [conj(w) for w in delta.basis] != list(lam.basis):
        problems.append("change of basis does not carry delta's basis to lambda's")
    return problems
