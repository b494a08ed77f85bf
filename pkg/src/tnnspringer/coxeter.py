"""Finite simply-laced Weyl groups: elements, length, Bruhat order, 0-Hecke actions.

Every group is enumerated once, in its integer reflection representation on
the simple-root lattice, and elements are then handles into the resulting
tables.  Generators are numbered ``1..rank`` (Bourbaki labelling) and words
are tuples of those numbers.

>>> W = build_weyl("A", 2)
>>> x = W.word([2, 1, 2])
>>> x.word, len(x)
((1, 2, 1), 3)
>>> bruhat_leq(W.word([1]), x)
True
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import ValidationError

__all__ = [
    "WeylGroup", "WeylElement", "IndexSet",
    "build_weyl", "word_to_element", "bruhat_leq", "bruhat_leq_subword",
    "descents", "left_descents", "right_descents", "support",
    "longest_element", "hecke_star", "hecke_circ", "hecke_star_word",
    "hecke_circ_word", "coset_factorize", "w0_dual", "index_set",
]

IndexSet = frozenset  # subsets of the generator labels {1, ..., rank}

# (type, rank) pairs we enumerate; |W|^2 scans must stay small.
SUPPORTED = {("A", n) for n in range(1, 6)} | {("D", 4)}


def index_set(items: Iterable[int] = ()) -> frozenset[int]:
    return frozenset(int(i) for i in items)


def _cartan(diagram_type: str, rank: int) -> np.ndarray:
    C = 2 * np.eye(rank, dtype=np.int64)
    if diagram_type == "A":
        edges = [(i, i + 1) for i in range(rank - 1)]
    elif diagram_type == "D":
        # chain 1-2-...-(n-2), with n-1 and n both attached to n-2
        edges = [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    else:
        raise ValidationError(f"unsupported diagram type {diagram_type!r}")
    for a, b in edges:
        C[a, b] = C[b, a] = -1
    return C


def _expected_order(diagram_type: str, rank: int) -> int:
    if diagram_type == "A":
        return math.factorial(rank + 1)
    return 2 ** (rank - 1) * math.factorial(rank)


class WeylGroup:
    """A fully enumerated Weyl group together with its multiplication tables.

    Attributes mirror the data a caller needs: ``cartan`` (symmetric, simply
    laced), ``positive_roots`` in simple-root coordinates, and ``order``.
    Elements are indexed ``0..order-1`` sorted by (length, canonical word), so
    index 0 is the identity and the last index is the longest element.
    """

    def __init__(self, diagram_type: str, rank: int):
        self.diagram_type = diagram_type
        self.rank = rank
        self.cartan = _cartan(diagram_type, rank)
        self.gens = tuple(range(1, rank + 1))

        n = rank
        # s_i(alpha_j) = alpha_j - C[i, j] alpha_i; columns are images
        self._smat = []
        for i in range(n):
            S = np.eye(n, dtype=np.int64)
            S[i, :] -= self.cartan[i, :]
            self._smat.append(S)

        self.positive_roots = self._positive_roots()
        self._roots_arr = np.array(self.positive_roots, dtype=np.int64).T  # n x N

        mats = self._enumerate()
        self.order = len(mats)
        if self.order != _expected_order(diagram_type, rank):
            raise AssertionError("enumeration disagrees with the order formula")

        lengths = [self._inversions(M) for M in mats]
        # canonical words: strip the smallest left descent, shortest first
        key_of = {M.tobytes(): k for k, M in enumerate(mats)}
        words: list[tuple[int, ...] | None] = [None] * len(mats)
        for k in sorted(range(len(mats)), key=lambda k: lengths[k]):
            if lengths[k] == 0:
                words[k] = ()
                continue
            for i in range(n):
                j = key_of[(self._smat[i] @ mats[k]).tobytes()]
                if lengths[j] < lengths[k]:
                    words[k] = (i + 1,) + words[j]
                    break
        perm = sorted(range(len(mats)), key=lambda k: (lengths[k], words[k]))
        self._mats = [mats[k] for k in perm]
        self._len = [lengths[k] for k in perm]
        self._words = [words[k] for k in perm]
        self._index = {M.tobytes(): idx for idx, M in enumerate(self._mats)}
        self._by_word = {w: idx for idx, w in enumerate(self._words)}

        self._left = [[self._index[(S @ M).tobytes()] for M in self._mats] for S in self._smat]
        self._right = [[self._index[(M @ S).tobytes()] for M in self._mats] for S in self._smat]
        self._down: dict[int, int] = {0: 1}
        self._elements = tuple(WeylElement(self, k) for k in range(self.order))

    # -- construction helpers -------------------------------------------

    def _positive_roots(self) -> tuple[tuple[int, ...], ...]:
        simple = [tuple(int(v) for v in row) for row in np.eye(self.rank, dtype=np.int64)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            new = []
            for r in frontier:
                vec = np.array(r, dtype=np.int64)
                for S in self._smat:
                    img = tuple(int(v) for v in S @ vec)
                    if all(v >= 0 for v in img) and img not in seen:
                        seen.add(img)
                        new.append(img)
            frontier = new
        return tuple(sorted(seen, key=lambda r: (sum(r), tuple(-v for v in r))))

    def _enumerate(self) -> list[np.ndarray]:
        ident = np.eye(self.rank, dtype=np.int64)
        out = [ident]
        seen = {ident.tobytes()}
        frontier = [ident]
        while frontier:
            new = []
            for M in frontier:
                for S in self._smat:
                    P = S @ M
                    key = P.tobytes()
                    if key not in seen:
                        seen.add(key)
                        new.append(P)
            out.extend(new)
            frontier = new
        return out

    def _inversions(self, M: np.ndarray) -> int:
        img = M @ self._roots_arr
        return int(np.sum(np.all(img <= 0, axis=0)))

    # -- public accessors ------------------------------------------------

    def __repr__(self) -> str:
        return f"WeylGroup({self.diagram_type}{self.rank})"

    def __len__(self) -> int:
        return self.order

    def __iter__(self) -> Iterator[WeylElement]:
        return iter(self._elements)

    @property
    def elements(self) -> tuple[WeylElement, ...]:
        return self._elements

    @property
    def identity(self) -> WeylElement:
        return self._elements[0]

    @property
    def w0(self) -> WeylElement:
        return self._elements[-1]

    @property
    def longest_length(self) -> int:
        return len(self.positive_roots)

    @property
    def I(self) -> frozenset[int]:
        return frozenset(self.gens)

    def s(self, i: int) -> WeylElement:
        self._check_letter(i)
        return self._elements[self._left[i - 1][0]]

    def word(self, word: Iterable[int]) -> WeylElement:
        return word_to_element(self, word)

    def from_matrix(self, M) -> WeylElement:
        key = np.asarray(M, dtype=np.int64).tobytes()
        try:
            return self._elements[self._index[key]]
        except KeyError:
            raise ValidationError("matrix is not an element of this group") from None

    def _check_letter(self, i) -> None:
        if not isinstance(i, (int, np.integer)) or isinstance(i, bool) or not 1 <= i <= self.rank:
            raise ValidationError(f"generator index {i!r} outside 1..{self.rank}")

    def check_subset(self, H: Iterable[int]) -> frozenset[int]:
        H = frozenset(H)
        for i in H:
            self._check_letter(i)
        return H

    def subsets(self) -> list[frozenset[int]]:
        return [frozenset(c) for r in range(self.rank + 1)
                for c in itertools.combinations(self.gens, r)]

    def is_adjacent(self, i: int, j: int) -> bool:
        return self.cartan[i - 1, j - 1] == -1

    def down_set(self, w: WeylElement) -> int:
        """Bitmask of ``{x : x <= w}``, built by the left-descent recursion.

        With ``s`` a left descent of ``w``: ``x <= w`` iff ``min(x, s x) <= s w``,
        so the ideal below ``w`` is the ideal below ``s w`` together with its
        left translate by ``s``.
        """
        k = w.index
        got = self._down.get(k)
        if got is not None:
            return got
        chain = []
        while k not in self._down:
            i = self._words[k][0] - 1
            chain.append((k, i))
            k = self._left[i][k]
        for k, i in reversed(chain):
            base = self._down[self._left[i][k]]
            left = self._left[i]
            mask = base
            bits = base
            while bits:
                low = bits & -bits
                mask |= 1 << left[low.bit_length() - 1]
                bits ^= low
            self._down[k] = mask
        return self._down[w.index]


@dataclass(frozen=True, eq=False)
class WeylElement:
    """Handle to one element of a :class:`WeylGroup`."""

    group: WeylGroup
    index: int

    def __eq__(self, other) -> bool:
        return (isinstance(other, WeylElement) and self.group is other.group
                and self.index == other.index)

    def __hash__(self) -> int:
        return hash((id(self.group), self.index))

    def __lt__(self, other: WeylElement) -> bool:
        # total order used for deterministic output, not Bruhat
        return self.index < other.index

    def __len__(self) -> int:
        return self.group._len[self.index]

    def __repr__(self) -> str:
        return "".join(map(str, self.word)) or "e"

    @property
    def length(self) -> int:
        return self.group._len[self.index]

    @property
    def word(self) -> tuple[int, ...]:
        """Lexicographically least reduced word."""
        return self.group._words[self.index]

    canonical_word = word

    @property
    def matrix(self) -> np.ndarray:
        """Matrix in the reflection representation (simple-root basis)."""
        return self.group._mats[self.index].copy()

    root_action = matrix

    def is_identity(self) -> bool:
        return self.index == 0

    def lmul(self, i: int) -> WeylElement:
        """``s_i * self``."""
        self.group._check_letter(i)
        return self.group._elements[self.group._left[i - 1][self.index]]

    def rmul(self, i: int) -> WeylElement:
        """``self * s_i``."""
        self.group._check_letter(i)
        return self.group._elements[self.group._right[i - 1][self.index]]

    def __mul__(self, other: WeylElement) -> WeylElement:
        if not isinstance(other, WeylElement):
            return NotImplemented
        if other.group is not self.group:
            raise ValidationError("elements of different groups")
        k = self.index
        right = self.group._right
        for i in other.word:
            k = right[i - 1][k]
        return self.group._elements[k]

    def inverse(self) -> WeylElement:
        return self.group.word(reversed(self.word))

    def reduced_words(self) -> list[tuple[int, ...]]:
        """All reduced words, in lexicographic order."""
        if self.is_identity():
            return [()]
        out = []
        for i in sorted(left_descents(self)):
            out.extend((i,) + rest for rest in self.lmul(i).reduced_words())
        return out


@lru_cache(maxsize=None)
def build_weyl(diagram_type: str, rank: int) -> WeylGroup:
    """Return the (shared, cached) Weyl group of the given simply-laced type."""
    diagram_type = str(diagram_type).upper()
    if (diagram_type, rank) not in SUPPORTED:
        raise ValidationError(
            f"unsupported Weyl group {diagram_type}{rank}; "
            "supported: A1..A5, D4")
    return WeylGroup(diagram_type, rank)


def word_to_element(ctx: WeylGroup, word: Iterable[int]) -> WeylElement:
    """Multiply out a (not necessarily reduced) word."""
    k = 0
    right = ctx._right
    for i in word:
        ctx._check_letter(i)
        k = right[i - 1][k]
    return ctx._elements[k]


def _same_group(x: WeylElement, y: WeylElement) -> None:
    if x.group is not y.group:
        raise ValidationError("elements of different groups")


def bruhat_leq(x: WeylElement, y: WeylElement) -> bool:
    _same_group(x, y)
    return bool((x.group.down_set(y) >> x.index) & 1)


def bruhat_leq_subword(x: WeylElement, y: WeylElement) -> bool:
    """Subword-property oracle: is ``x`` the product of a subword of ``y``'s word?"""
    _same_group(x, y)
    if len(x) > len(y):
        return False
    W = y.group
    word = y.word
    # breadth-first over prefixes keeps this at most |W| states per step
    reach = {0}
    for i in word:
        reach |= {W._right[i - 1][k] for k in reach}
    return x.index in reach


def left_descents(x: WeylElement) -> frozenset[int]:
    return frozenset(i for i in x.group.gens if len(x.lmul(i)) < len(x))


def right_descents(x: WeylElement) -> frozenset[int]:
    return frozenset(i for i in x.group.gens if len(x.rmul(i)) < len(x))


def descents(x: WeylElement) -> tuple[frozenset[int], frozenset[int]]:
    """``(left, right)`` descent sets."""
    return left_descents(x), right_descents(x)


def support(x: WeylElement) -> frozenset[int]:
    return frozenset(x.word)


def longest_element(ctx: WeylGroup, H: Iterable[int] = None) -> WeylElement:
    """Longest element ``w_H`` of the parabolic subgroup ``W_H``."""
    H = ctx.I if H is None else ctx.check_subset(H)
    w = ctx.identity
    grew = True
    while grew:
        grew = False
        for i in sorted(H):
            if len(w.lmul(i)) > len(w):
                w = w.lmul(i)
                grew = True
    return w


def hecke_star(i: int, w: WeylElement) -> WeylElement:
    """``s_i * w``: the larger of ``w`` and ``s_i w``."""
    sw = w.lmul(i)
    return sw if len(sw) > len(w) else w


def hecke_circ(i: int, v: WeylElement) -> WeylElement:
    """``s_i o v``: the smaller of ``v`` and ``s_i v``."""
    sv = v.lmul(i)
    return sv if len(sv) < len(v) else v


def hecke_star_word(word: Sequence[int], w: WeylElement) -> WeylElement:
    """Apply ``s_{i_1} * (s_{i_2} * (... (s_{i_m} * w)))``."""
    for i in reversed(tuple(word)):
        w = hecke_star(i, w)
    return w


def hecke_circ_word(word: Sequence[int], v: WeylElement) -> WeylElement:
    """Apply ``s_{i_1} o (s_{i_2} o (... (s_{i_m} o v)))``."""
    for i in reversed(tuple(word)):
        v = hecke_circ(i, v)
    return v


def coset_factorize(w: WeylElement, H: Iterable[int]) -> tuple[WeylElement, WeylElement]:
    """Split ``w = m * h`` with ``m`` minimal in ``w W_H`` and ``h`` in ``W_H``."""
    H = w.group.check_subset(H)
    m = w
    tail = []
    stripped = True
    while stripped:
        stripped = False
        for i in sorted(H):
            mi = m.rmul(i)
            if len(mi) < len(m):
                m = mi
                tail.append(i)
                stripped = True
                break
    h = w.group.word(reversed(tail))
    return m, h


def w0_dual(v: WeylElement, w: WeylElement) -> tuple[WeylElement, WeylElement]:
    """``(v, w) -> (w w_I, v w_I)``; an order-reversing involution on labels."""
    if not bruhat_leq(v, w):
        raise ValidationError(f"w0_dual needs v <= w, got ({v!r}, {w!r})")
    w0 = v.group.w0
    return w * w0, v * w0
