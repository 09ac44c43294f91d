"""Reduced words and automorphisms of the free group F_N.

Letters are nonzero integers: ``i`` stands for the basis letter x_i and ``-i``
for its inverse.  A word is a tuple of letters; every public function returns
freely reduced words.  The empty tuple is the identity.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Letter = int
Word = tuple[int, ...]

IDENTITY: Word = ()


class RankError(ValueError):
    """A letter index or an automorphism rank does not fit the rank context."""


class BudgetExceeded(RuntimeError):
    """A bounded search ran out of its state budget."""


# ---------------------------------------------------------------------------
# words


def reduce(letters: Iterable[int], rank: int | None = None) -> Word:
    out: list[int] = []
    for l in letters:
        if l == 0 or (rank is not None and abs(l) > rank):
            raise RankError(f"letter {l} out of range for rank {rank}")
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


def inverse(u: Sequence[int]) -> Word:
    return tuple(-l for l in reversed(u))


def mul(*words: Sequence[int]) -> Word:
    out: list[int] = []
    for w in words:
        for l in w:
            if out and out[-1] == -l:
                out.pop()
            else:
                out.append(l)
    return tuple(out)


def power(u: Sequence[int], n: int) -> Word:
    if n < 0:
        return power(inverse(u), -n)
    return mul(*([tuple(u)] * n)) if n else IDENTITY


def commutator(u: Sequence[int], v: Sequence[int]) -> Word:
    """``u v u^-1 v^-1``."""
    return mul(u, v, inverse(u), inverse(v))


def shortlex_key(u: Sequence[int]) -> tuple:
    """Order words by length, then letters x1 < X1 < x2 < X2 < ..."""
    return (len(u), tuple(2 * abs(l) + (l < 0) for l in u))


def is_reduced(u: Sequence[int]) -> bool:
    return all(u[i] != -u[i + 1] for i in range(len(u) - 1))


def is_cyclically_reduced(u: Sequence[int]) -> bool:
    return is_reduced(u) and (len(u) < 2 or u[0] != -u[-1])


def cyclic_reduce(u: Sequence[int]) -> tuple[Word, Word]:
    """Split ``u`` as ``c * core * c^-1`` with ``core`` cyclically reduced."""
    u = reduce(u)
    i, j = 0, len(u) - 1
    while i < j and u[i] == -u[j]:
        i += 1
        j -= 1
    return u[:i], u[i:j + 1]


def support(u: Iterable[int]) -> frozenset[int]:
    """Indices of the basis letters occurring in ``u``."""
    return frozenset(abs(l) for l in u)


def abelianize(u: Iterable[int], rank: int) -> tuple[int, ...]:
    v = [0] * rank
    for l in u:
        v[abs(l) - 1] += 1 if l > 0 else -1
    return tuple(v)


def all_reduced_words(rank: int, length: int) -> list[Word]:
    """Every reduced word of exactly ``length`` letters, in shortlex order."""
    alphabet = [l for i in range(1, rank + 1) for l in (i, -i)]
    words: list[Word] = [()]
    for _ in range(length):
        words = [w + (l,) for w in words for l in alphabet if not w or w[-1] != -l]
    return words


def words_up_to(rank: int, length: int) -> list[Word]:
    return [w for n in range(length + 1) for w in all_reduced_words(rank, n)]


# ---------------------------------------------------------------------------
# text syntax

_TOKEN = re.compile(r"([xX])(\d+)|([a-zA-Z])|(\s+|\.)")


def parse_word(text: str, rank: int | None = None) -> Word:
    """Parse ``abAB`` style words; ``x27X3`` for large ranks; ``1`` is the identity."""
    text = text.strip()
    if text in ("1", ""):
        return IDENTITY
    letters: list[int] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ValueError(f"cannot parse word {text!r} at position {pos}")
        pos = m.end()
        if m.group(1):
            i = int(m.group(2))
            if i < 1:
                raise ValueError(f"bad letter index in {text!r}")
            letters.append(i if m.group(1) == "x" else -i)
        elif m.group(3):
            c = m.group(3)
            i = ord(c.lower()) - ord("a") + 1
            letters.append(i if c.islower() else -i)
    return reduce(letters, rank)


def format_word(u: Sequence[int]) -> str:
    if not u:
        return "1"
    if max(abs(l) for l in u) <= 26:
        return "".join(chr(ord("a") + l - 1) if l > 0 else chr(ord("A") - l - 1) for l in u)
    return "".join(f"x{l}" if l > 0 else f"X{-l}" for l in u)


def letter_name(l: int) -> str:
    return format_word((l,))


# ---------------------------------------------------------------------------
# automorphisms


def _substitute(table: dict[int, Word], u: Iterable[int]) -> Word:
    out: list[int] = []
    for l in u:
        for m in table[l]:
            if out and out[-1] == -m:
                out.pop()
            else:
                out.append(m)
    return tuple(out)


@dataclass(frozen=True)
class FreeAut:
    """An automorphism of F_N given by the images of x_1..x_N.

    ``inverse_images`` are the images of the inverse automorphism.  When they
    are omitted, they are found by Whitehead minimization of the image tuple,
    which also certifies that the images form a basis.
    """

    rank: int
    images: tuple[Word, ...]
    inverse_images: tuple[Word, ...] = None  # type: ignore[assignment]
    _table: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise RankError("rank must be positive")
        images = tuple(reduce(w, self.rank) for w in self.images)
        if len(images) != self.rank:
            raise RankError(f"expected {self.rank} images, got {len(images)}")
        object.__setattr__(self, "images", images)
        if self.inverse_images is None:
            from .whitehead import invert_basis

            object.__setattr__(self, "inverse_images", invert_basis(images, self.rank))
        else:
            inv = tuple(reduce(w, self.rank) for w in self.inverse_images)
            if len(inv) != self.rank:
                raise RankError("inverse image count does not match rank")
            object.__setattr__(self, "inverse_images", inv)
        table: dict[int, Word] = {}
        for i, w in enumerate(images, start=1):
            table[i] = w
            table[-i] = inverse(w)
        object.__setattr__(self, "_table", table)

    @classmethod
    def identity(cls, rank: int) -> FreeAut:
        basis = tuple((i,) for i in range(1, rank + 1))
        return cls(rank, basis, basis)

    def __call__(self, u: Iterable[int]) -> Word:
        try:
            return _substitute(self._table, u)
        except KeyError as exc:
            raise RankError(f"letter {exc.args[0]} outside rank {self.rank}") from None

    def inverse(self) -> FreeAut:
        return FreeAut(self.rank, self.inverse_images, self.images)

    def is_identity(self) -> bool:
        return all(w == (i,) for i, w in enumerate(self.images, start=1))

    def __str__(self) -> str:
        parts = [f"{letter_name(i)}->{format_word(w)}" for i, w in enumerate(self.images, start=1)]
        return "{" + ", ".join(parts) + "}"


def apply(phi: FreeAut, u: Iterable[int]) -> Word:
    return phi(u)


def compose(phi: FreeAut, psi: FreeAut) -> FreeAut:
    """``phi o psi``: apply ``psi`` first, then ``phi``."""
    if phi.rank != psi.rank:
        raise RankError(f"rank mismatch: {phi.rank} vs {psi.rank}")
    images = tuple(phi(w) for w in psi.images)
    inv = tuple(psi.inverse()(w) for w in phi.inverse_images)
    return FreeAut(phi.rank, images, inv)


def compose_all(rank: int, *auts: FreeAut) -> FreeAut:
    result = FreeAut.identity(rank)
    for a in auts:
        result = compose(result, a)
    return result


def aut_power(phi: FreeAut, n: int) -> FreeAut:
    if n < 0:
        return aut_power(phi.inverse(), -n)
    result = FreeAut.identity(phi.rank)
    for _ in range(n):
        result = compose(phi, result)
    return result


def aut_commutator(phi: FreeAut, psi: FreeAut) -> FreeAut:
    return compose_all(phi.rank, phi, psi, phi.inverse(), psi.inverse())


def _with_images(rank: int, changes: dict[int, Word], inv_changes: dict[int, Word]) -> FreeAut:
    images = tuple(changes.get(i, (i,)) for i in range(1, rank + 1))
    inv = tuple(inv_changes.get(i, (i,)) for i in range(1, rank + 1))
    return FreeAut(rank, images, inv)


def right_nielsen(i: int, j: int, rank: int) -> FreeAut:
    """rho_ij: x_i -> x_i x_j."""
    _check_pair(i, j, rank)
    return _with_images(rank, {i: (i, j)}, {i: (i, -j)})


def left_nielsen(i: int, j: int, rank: int) -> FreeAut:
    """lambda_ij: x_i -> x_j x_i."""
    _check_pair(i, j, rank)
    return _with_images(rank, {i: (j, i)}, {i: (-j, i)})


def inversion(i: int, rank: int) -> FreeAut:
    if not 1 <= i <= rank:
        raise RankError(f"index {i} outside rank {rank}")
    return _with_images(rank, {i: (-i,)}, {i: (-i,)})


def transposition(i: int, j: int, rank: int) -> FreeAut:
    _check_pair(i, j, rank)
    return _with_images(rank, {i: (j,), j: (i,)}, {i: (j,), j: (i,)})


def signed_permutation(targets: Sequence[int]) -> FreeAut:
    """The automorphism sending x_i to the single letter ``targets[i-1]``."""
    rank = len(targets)
    if sorted(abs(t) for t in targets) != list(range(1, rank + 1)):
        raise RankError(f"{targets} is not a signed permutation")
    inv = [0] * rank
    for i, t in enumerate(targets, start=1):
        inv[abs(t) - 1] = i if t > 0 else -i
    return FreeAut(rank, tuple((t,) for t in targets), tuple((t,) for t in inv))


def inner(w: Sequence[int], rank: int) -> FreeAut:
    """ad_w: x -> w x w^-1."""
    w = reduce(w, rank)
    wi = inverse(w)
    return FreeAut(
        rank,
        tuple(mul(w, (i,), wi) for i in range(1, rank + 1)),
        tuple(mul(wi, (i,), w) for i in range(1, rank + 1)),
    )


def _check_pair(i: int, j: int, rank: int) -> None:
    if i == j or not (1 <= i <= rank and 1 <= j <= rank):
        raise RankError(f"bad index pair ({i}, {j}) for rank {rank}")


def homology_matrix(phi: FreeAut) -> tuple[tuple[int, ...], ...]:
    """Integer matrix acting on column vectors; column j is the abelianized phi(x_j)."""
    cols = [abelianize(w, phi.rank) for w in phi.images]
    return tuple(tuple(cols[j][i] for j in range(phi.rank)) for i in range(phi.rank))


def is_torelli(phi: FreeAut) -> bool:
    m = homology_matrix(phi)
    n = phi.rank
    return all(m[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    n, m, p = len(a), len(b), len(b[0])
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p)) for i in range(n))


def generator_set(rank: int) -> list[tuple[str, FreeAut]]:
    """Nielsen moves (both sides, both signs), inversions and transpositions."""
    gens: list[tuple[str, FreeAut]] = []
    for i in range(1, rank + 1):
        for j in range(1, rank + 1):
            if i == j:
                continue
            r = right_nielsen(i, j, rank)
            l = left_nielsen(i, j, rank)
            gens += [(f"rho{i}{j}", r), (f"rho{i}{j}^-1", r.inverse()),
                     (f"lam{i}{j}", l), (f"lam{i}{j}^-1", l.inverse())]
    for i in range(1, rank + 1):
        gens.append((f"inv{i}", inversion(i, rank)))
    for i in range(1, rank + 1):
        for j in range(i + 1, rank + 1):
            gens.append((f"swap{i}{j}", transposition(i, j, rank)))
    return gens
