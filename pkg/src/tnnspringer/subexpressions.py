"""Positive (Marsh-Rietsch) subexpressions of a reduced word.

For ``v <= w`` and a reduced word ``i_1 ... i_m`` of ``w`` there is exactly
one choice ``t_k in {s_{i_k}, 1}`` whose product is ``v`` and whose prefix
products ``p_k`` satisfy ``p_{k-1} <= p_{k-1} s_{i_k}`` for every ``k``.
Masks use 1 for a taken letter (``t_k = s_{i_k}``) and 0 for a skipped one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .coxeter import WeylElement, bruhat_leq
from .errors import ValidationError, VerificationError

__all__ = [
    "PositiveSubexpression", "positive_subexpression", "brute_force_subexpression",
    "satisfies_conditions", "t1_criterion",
]


@dataclass(frozen=True)
class PositiveSubexpression:
    v: WeylElement
    w: WeylElement
    word: tuple[int, ...]
    mask: tuple[int, ...]

    @property
    def t_sequence(self) -> tuple[WeylElement, ...]:
        W = self.w.group
        return tuple(W.s(i) if m else W.identity for i, m in zip(self.word, self.mask))

    @property
    def skipped(self) -> tuple[int, ...]:
        """Positions (0-based) carrying a free positive parameter."""
        return tuple(k for k, m in enumerate(self.mask) if not m)

    def to_json(self) -> list[int]:
        return list(self.mask)


def _check_inputs(v: WeylElement, w: WeylElement, word: Sequence[int]) -> tuple[int, ...]:
    word = tuple(int(i) for i in word)
    if w.group.word(word) != w or len(word) != len(w):
        raise ValidationError(f"{word} is not a reduced word for {w!r}")
    if not bruhat_leq(v, w):
        raise ValidationError(f"{v!r} is not below {w!r} in Bruhat order")
    return word


def satisfies_conditions(v: WeylElement, word: Sequence[int], mask: Sequence[int]) -> bool:
    """Check a mask against the defining conditions directly."""
    p = v.group.identity
    for i, m in zip(word, mask):
        # p <= p s_i is a length comparison for these adjacent elements
        if len(p.rmul(i)) < len(p):
            return False
        if m:
            p = p.rmul(i)
    return p == v


def positive_subexpression(v: WeylElement, w: WeylElement, word: Sequence[int]) -> PositiveSubexpression:
    """Greedy right-to-left construction, re-verified before returning."""
    word = _check_inputs(v, w, word)
    target = v
    mask = [0] * len(word)
    for k in range(len(word) - 1, -1, -1):
        shorter = target.rmul(word[k])
        if len(shorter) < len(target):
            mask[k] = 1
            target = shorter
    mask = tuple(mask)
    if not target.is_identity() or not satisfies_conditions(v, word, mask):
        raise VerificationError(f"greedy mask {mask} fails for v={v!r}, word={word}")
    return PositiveSubexpression(v, w, word, mask)


def brute_force_subexpression(v: WeylElement, w: WeylElement, word: Sequence[int]) -> set[tuple[int, ...]]:
    """Every mask in ``{0,1}^m`` meeting the conditions (should be exactly one)."""
    word = _check_inputs(v, w, word)
    return {mask for mask in itertools.product((0, 1), repeat=len(word))
            if satisfies_conditions(v, word, mask)}


def t1_criterion(v: WeylElement, w: WeylElement, word: Sequence[int]) -> bool:
    """Whether the first letter is skipped; equals ``v <= s_{i_1} w``."""
    word = tuple(word)
    if not word or len(w.lmul(word[0])) > len(w):
        raise ValidationError("first letter must be a left descent of w")
    skipped = positive_subexpression(v, w, word).mask[0] == 0
    predicate = bruhat_leq(v, w.lmul(word[0]))
    if skipped != predicate:
        raise VerificationError(f"t1 criterion disagrees for v={v!r}, w={w!r}, word={word}")
    return skipped
