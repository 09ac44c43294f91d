"""Direct products of free groups inside Aut(F_N) and bounded centralizer searches.

In standard coordinates a1 = x1, a2 = x2 and the remaining letters
x3..xN play the role of the free letters.  The product has one left and one
right factor per free letter plus the inner factor, 2N - 3 in all; each
factor is generated by its instances for w = a1 and w = a2.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .core import (
    BudgetExceeded,
    FreeAut,
    Word,
    abelianize,
    aut_commutator,
    aut_power,
    compose,
    compose_all,
    format_word,
    generator_set,
    inner,
    inverse,
    is_torelli,
    mul,
    reduce,
    shortlex_key,
    words_up_to,
)
from .whitehead import is_partial_basis

A1, A2 = (1,), (2,)


def left_mult(i: int, w: Sequence[int], rank: int) -> FreeAut:
    """x_i -> w x_i, identity elsewhere; w must avoid x_i."""
    w = reduce(w, rank)
    if i in {abs(l) for l in w}:
        raise ValueError("w must not involve the multiplied letter")
    images = tuple(mul(w, (i,)) if j == i else (j,) for j in range(1, rank + 1))
    inv = tuple(mul(inverse(w), (i,)) if j == i else (j,) for j in range(1, rank + 1))
    return FreeAut(rank, images, inv)


def right_mult(i: int, w: Sequence[int], rank: int) -> FreeAut:
    """x_i -> x_i w, identity elsewhere; w must avoid x_i."""
    w = reduce(w, rank)
    if i in {abs(l) for l in w}:
        raise ValueError("w must not involve the multiplied letter")
    images = tuple(mul((i,), w) if j == i else (j,) for j in range(1, rank + 1))
    inv = tuple(mul((i,), inverse(w)) if j == i else (j,) for j in range(1, rank + 1))
    return FreeAut(rank, images, inv)


@dataclass(frozen=True)
class Factor:
    name: str
    generators: tuple[FreeAut, ...]


@dataclass(frozen=True)
class StandardProduct:
    N: int
    basis: tuple[Word, ...]
    factors: tuple[Factor, ...]
    note: str = ""

    @property
    def factor_generators(self) -> list[tuple[FreeAut, ...]]:
        return [f.generators for f in self.factors]

    def all_generators(self) -> list[FreeAut]:
        return [g for f in self.factors for g in f.generators]

    def with_generator(self, factor: int, index: int, aut: FreeAut) -> StandardProduct:
        """Copy with one generator replaced (for negative controls)."""
        f = self.factors[factor]
        gens = list(f.generators)
        gens[index] = aut
        factors = list(self.factors)
        factors[factor] = replace(f, generators=tuple(gens))
        return replace(self, factors=tuple(factors))


def _factors(N: int, ws: Sequence[Word]) -> list[Factor]:
    out = []
    for i in range(3, N + 1):
        out.append(Factor(f"L{i - 2}", tuple(left_mult(i, w, N) for w in ws)))
        out.append(Factor(f"R{i - 2}", tuple(right_mult(i, w, N) for w in ws)))
    out.append(Factor("I", tuple(inner(w, N) for w in ws)))
    return out


def _transport(factors: list[Factor], theta: FreeAut) -> list[Factor]:
    if theta.is_identity():
        return factors
    back = theta.inverse()
    return [Factor(f.name, tuple(compose_all(theta.rank, theta, g, back) for g in f.generators))
            for f in factors]


def standard_product(N: int, basis: Sequence[Sequence[int]] | None = None) -> StandardProduct:
    if N < 3:
        raise ValueError("need N >= 3")
    basis = tuple(reduce(w, N) for w in (basis or [(i,) for i in range(1, N + 1)]))
    if len(basis) != N or not is_partial_basis(basis, N):
        raise ValueError("not a basis of F_N")
    theta = FreeAut(N, basis)
    return StandardProduct(N, basis, tuple(_transport(_factors(N, [A1, A2]), theta)))


def tau(N: int) -> FreeAut:
    """a1 -> a1 a2."""
    images = ((1, 2),) + tuple((i,) for i in range(2, N + 1))
    inv = ((1, -2),) + tuple((i,) for i in range(2, N + 1))
    return FreeAut(N, images, inv)


TWIST_CANDIDATES: tuple[Word, ...] = ((2,), (1, 2, -1), (-1, 2, 1), (1, 2), (2, 1), (1, 1, 2, -1, -1))


def twisted_product(N: int) -> StandardProduct:
    """Product whose factors use only the candidate w that commute with tau."""
    t = tau(N)
    survivors = []
    for w in TWIST_CANDIDATES:
        probe = left_mult(N, w, N)
        if compose(t, probe) == compose(probe, t) and compose(t, inner(w, N)) == compose(inner(w, N), t):
            survivors.append(w)
    if len(survivors) < 2:
        raise ValueError("fewer than two commuting candidates survived")
    # the first two survivors, b and aba^-1, are independent
    ws = survivors[:2]
    note = "fixed-subgroup generators taken from exact-commutation survivors: " + ", ".join(
        format_word(w) for w in ws)
    return StandardProduct(N, tuple((i,) for i in range(1, N + 1)), tuple(_factors(N, ws)), note)


# ---------------------------------------------------------------------------
# verification


def _free_words(length: int) -> list[Word]:
    # reduced words in two generators, written with letters +-1, +-2
    return words_up_to(2, length)[1:]


def _evaluate(word: Word, gens: Sequence[FreeAut]) -> FreeAut:
    rank = gens[0].rank
    inv = [g.inverse() for g in gens]
    return compose_all(rank, *((gens[l - 1] if l > 0 else inv[-l - 1]) for l in word))


def verify_direct_product(p: StandardProduct, relation_length_bound: int = 4) -> dict:
    checks = []
    for a in range(len(p.factors)):
        for b in range(a + 1, len(p.factors)):
            fa, fb = p.factors[a], p.factors[b]
            for i, g in enumerate(fa.generators):
                for j, h in enumerate(fb.generators):
                    name = f"commute {fa.name}[{i}] {fb.name}[{j}]"
                    c = aut_commutator(g, h)
                    entry = {"name": name, "status": "pass" if c.is_identity() else "fail"}
                    if not c.is_identity():
                        entry["witness"] = str(c)
                    checks.append(entry)
    words = _free_words(relation_length_bound)
    for f in p.factors:
        bad = next((w for w in words if _evaluate(w, f.generators).is_identity()), None)
        entry = {"name": f"free {f.name} up to length {relation_length_bound}",
                 "status": "pass" if bad is None else "fail"}
        if bad is not None:
            entry["witness"] = format_word(bad)
        checks.append(entry)
    report = {"checks": checks}
    if p.note:
        report["note"] = p.note
    return report


def report_ok(report: dict) -> bool:
    return all(c["status"] == "pass" for c in report["checks"])


def _key(phi: FreeAut, cap: int) -> tuple:
    if any(len(w) > cap for w in phi.images):
        raise BudgetExceeded(f"image longer than the dedup cap {cap}")
    return tuple(shortlex_key(w) for w in phi.images)


def centralizer_search(gens: Sequence[FreeAut], depth: int, budget: int = 1_000_000,
                       length_cap: int = 64) -> list[FreeAut]:
    """Elements of the depth-ball over Nielsen moves, inversions and swaps that commute with ``gens``."""
    if not gens:
        raise ValueError("need at least one generator")
    rank = gens[0].rank
    steps = [g for _, g in generator_set(rank)]
    ident = FreeAut.identity(rank)
    seen = {_key(ident, length_cap): ident}
    frontier = [ident]
    for _ in range(depth):
        nxt = []
        for phi in frontier:
            for g in steps:
                psi = compose(g, phi)
                k = _key(psi, length_cap)
                if k not in seen:
                    seen[k] = psi
                    if len(seen) > budget:
                        raise BudgetExceeded("centralizer search exceeded its budget")
                    nxt.append(psi)
        frontier = nxt
    hits = [phi for phi in seen.values()
            if all(compose(phi, g) == compose(g, phi) for g in gens)]
    return sorted(hits, key=lambda phi: _key(phi, length_cap))


def tau_power(phi: FreeAut, bound: int) -> int | None:
    """n with phi = tau^n and |n| <= bound, if any."""
    t = tau(phi.rank)
    for n in range(-bound, bound + 1):
        if aut_power(t, n) == phi:
            return n
    return None


def torelli_factor_check(N: int, sample_bound: int = 6) -> dict:
    if N < 3:
        raise ValueError("need N >= 3")
    checks = []
    bad_left = []
    bad_inner = []
    words = words_up_to(2, sample_bound)[1:]
    for w in words:
        expect = abelianize(w, 2) == (0, 0)
        if is_torelli(left_mult(3, w, N)) != expect:
            bad_left.append(format_word(w))
        if not is_torelli(inner(w, N)):
            bad_inner.append(format_word(w))
    for name, bad in (("L1 torelli iff w abelianizes to zero", bad_left),
                      ("inner automorphisms are torelli", bad_inner)):
        entry = {"name": f"{name} ({len(words)} words)", "status": "pass" if not bad else "fail"}
        if bad:
            entry["witness"] = bad[0]
        checks.append(entry)
    return {"checks": checks}
