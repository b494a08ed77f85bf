"""Cells of totally nonnegative partial flag manifolds and their Springer analogues.

A cell of the parabolic flag manifold of type ``H`` is labelled three ways:

* ``(a, b, c)`` with ``a in w_I W^H``, ``b in W^H``, ``c in W_H``, ``a <= b c``;
* ``(r, t) = (a, b c)``;
* ``(r', t') = (a c^-1, b)``.

``convert_label`` accepts any one form and fills in the other two.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from . import coxeter as cx
from .coxeter import WeylElement, WeylGroup, bruhat_leq, hecke_circ_word, hecke_star_word
from .errors import ValidationError
from .springer_cells import PieceLabel, XiData, _check_disjoint

__all__ = [
    "FlagCellLabel", "FlagAtlas", "minimal_reps", "in_min_reps", "in_max_reps",
    "in_parabolic", "convert_label", "enumerate_ZH", "flag_zero_dim_characterization",
    "zero_dim_witness", "flag_atlas", "flag_xi", "act_flag_cell", "all_flag_labels",
]


def in_min_reps(x: WeylElement, H: Iterable[int]) -> bool:
    """``x in W^H``: no right descent in ``H``."""
    return not (cx.right_descents(x) & frozenset(H))


def in_max_reps(x: WeylElement, H: Iterable[int]) -> bool:
    """``x in w_I W^H``: ``x`` is the longest element of ``x W_H``."""
    return frozenset(H) <= cx.right_descents(x)


def in_parabolic(x: WeylElement, H: Iterable[int]) -> bool:
    return cx.support(x) <= frozenset(H)


def minimal_reps(ctx: WeylGroup, H: Iterable[int]) -> list[WeylElement]:
    H = ctx.check_subset(H)
    return [x for x in ctx if in_min_reps(x, H)]


@dataclass(frozen=True)
class FlagCellLabel:
    H: frozenset[int]
    a: WeylElement
    b: WeylElement
    c: WeylElement

    @property
    def r(self) -> WeylElement:
        return self.a

    @property
    def t(self) -> WeylElement:
        return self.b * self.c

    @property
    def r_prime(self) -> WeylElement:
        return self.a * self.c.inverse()

    @property
    def t_prime(self) -> WeylElement:
        return self.b

    @property
    def rt(self) -> tuple[WeylElement, WeylElement]:
        return self.r, self.t

    @property
    def rpt(self) -> tuple[WeylElement, WeylElement]:
        return self.r_prime, self.t_prime

    @property
    def triple(self) -> tuple[WeylElement, WeylElement, WeylElement]:
        return self.a, self.b, self.c

    @property
    def dim(self) -> int:
        return len(self.t) - len(self.r)

    def sort_key(self):
        return (self.dim, self.r.word, self.t.word)

    def to_json(self) -> dict:
        def words(*els):
            return [list(x.word) for x in els]
        return {"rt": words(*self.rt), "rpt": words(*self.rpt),
                "abc": words(*self.triple), "dim": self.dim}

    def __repr__(self) -> str:
        return f"Flag(H={sorted(self.H)}, rt=({self.r!r},{self.t!r}), rpt=({self.r_prime!r},{self.t_prime!r}))"


def _from_triple(H, a, b, c) -> FlagCellLabel:
    if not in_max_reps(a, H):
        raise ValidationError(f"a={a!r} is not in w_I W^H")
    if not in_min_reps(b, H):
        raise ValidationError(f"b={b!r} is not in W^H")
    if not in_parabolic(c, H):
        raise ValidationError(f"c={c!r} is not in W_H")
    le = bruhat_leq(a, b * c)
    if le != bruhat_leq(a * c.inverse(), b):
        raise AssertionError("a <= bc and a c^-1 <= b disagree")
    if not le:
        raise ValidationError(f"order condition a <= bc fails for ({a!r},{b!r},{c!r})")
    return FlagCellLabel(H, a, b, c)


def convert_label(ctx: WeylGroup, H: Iterable[int], *, rt=None, rpt=None, abc=None) -> FlagCellLabel:
    """Build a label from exactly one of ``rt``, ``rpt`` or ``abc``."""
    H = ctx.check_subset(H)
    given = [x is not None for x in (rt, rpt, abc)]
    if sum(given) != 1:
        raise ValidationError("give exactly one of rt, rpt, abc")
    if abc is not None:
        return _from_triple(H, *abc)
    if rt is not None:
        r, t = rt
        if not in_max_reps(r, H):
            raise ValidationError(f"r={r!r} is not in w_I W^H")
        if not bruhat_leq(r, t):
            raise ValidationError(f"r={r!r} is not below t={t!r}")
        b, c = cx.coset_factorize(t, H)
        return _from_triple(H, r, b, c)
    rp, tp = rpt
    if not in_min_reps(tp, H):
        raise ValidationError(f"t'={tp!r} is not in W^H")
    if not bruhat_leq(rp, tp):
        raise ValidationError(f"r'={rp!r} is not below t'={tp!r}")
    _, tail = cx.coset_factorize(ctx.w0 * rp, H)
    c = tail.inverse()
    return _from_triple(H, rp * c, tp, c)


def all_flag_labels(ctx: WeylGroup, H: Iterable[int]) -> list[FlagCellLabel]:
    """Every label, enumerated through the ``(r, t)`` coordinates."""
    H = ctx.check_subset(H)
    rs = [x for x in ctx if in_max_reps(x, H)]
    return [convert_label(ctx, H, rt=(r, t)) for r in rs for t in ctx if bruhat_leq(r, t)]


def _y_fixed(i, label: FlagCellLabel) -> bool:
    t = label.t
    sit = t.lmul(i)
    return len(sit) < len(t) and not bruhat_leq(label.r, sit)


def _x_fixed(j, label: FlagCellLabel) -> bool:
    rp = label.r_prime
    sjr = rp.lmul(j)
    return len(sjr) > len(rp) and not bruhat_leq(sjr, label.t_prime)


def enumerate_ZH(ctx: WeylGroup, H, J, J_prime) -> list[FlagCellLabel]:
    J, J_prime = _check_disjoint(ctx, J, J_prime)
    out = [L for L in all_flag_labels(ctx, H)
           if all(_y_fixed(i, L) for i in J) and all(_x_fixed(j, L) for j in J_prime)]
    return sorted(out, key=FlagCellLabel.sort_key)


def flag_zero_dim_characterization(ctx: WeylGroup, H, J, J_prime) -> set[tuple[WeylElement, WeylElement]]:
    """``{(r, r') : r' in W^H, r = r' w_H, s_i r <= r (i in J), r' <= s_j r' (j in J')}``."""
    H = ctx.check_subset(H)
    J, J_prime = _check_disjoint(ctx, J, J_prime)
    wH = cx.longest_element(ctx, H)
    out = set()
    for rp in minimal_reps(ctx, H):
        r = rp * wH
        if J <= cx.left_descents(r) and not (J_prime & cx.left_descents(rp)):
            out.add((r, rp))
    return out


def zero_dim_witness(ctx: WeylGroup, H, J) -> tuple[WeylElement, WeylElement]:
    """``(r, r')`` with ``r' = w_J w_{J cap H}`` and ``r = r' w_H``."""
    H, J = ctx.check_subset(H), ctx.check_subset(J)
    rp = cx.longest_element(ctx, J) * cx.longest_element(ctx, J & H)
    return rp * cx.longest_element(ctx, H), rp


@dataclass(frozen=True)
class FlagAtlas:
    group: WeylGroup
    H: frozenset[int]
    piece: PieceLabel
    cells: tuple[FlagCellLabel, ...]

    @property
    def dim_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(c.dim for c in self.cells).items()))

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, label) -> bool:
        return label in self.cells

    def to_json(self) -> dict:
        W = self.group
        return {
            "type": W.diagram_type,
            "rank": W.rank,
            "H": sorted(self.H),
            "z": list(self.piece.z.word),
            "zprime": list(self.piece.z_prime.word),
            "cells": [c.to_json() for c in self.cells],
            "dim_histogram": {str(k): v for k, v in self.dim_histogram.items()},
        }


def flag_atlas(H: Iterable[int], piece: PieceLabel) -> FlagAtlas:
    W = piece.group
    H = W.check_subset(H)
    cells = enumerate_ZH(W, H, piece.J, piece.J_prime)
    zero = {(L.r, L.r_prime) for L in cells if L.dim == 0}
    if zero != flag_zero_dim_characterization(W, H, piece.J, piece.J_prime):
        raise AssertionError("zero-dimensional flag cells disagree with their characterization")
    if zero_dim_witness(W, H, piece.J) not in zero:
        raise AssertionError("zero-dimensional witness missing from flag atlas")
    return FlagAtlas(W, H, piece, tuple(cells))


def flag_xi(H: Iterable[int], label: FlagCellLabel) -> XiData:
    """The two index sets cutting out ``Xi_H`` for a flag label.

    Returned as an :class:`XiData` keyed by ``(r, t)``.
    """
    W = label.a.group
    Hy = frozenset(i for i in W.gens if _y_fixed(i, label))
    Hx = frozenset(j for j in W.gens if _x_fixed(j, label))
    return XiData(label.r, label.t, Hy, Hx)


def act_flag_cell(r: WeylElement, s: WeylElement, label: FlagCellLabel) -> FlagCellLabel:
    """Act by ``s`` (star on ``t``), then by ``r`` (circ on ``r'``)."""
    W = label.a.group
    H = label.H
    if not s.is_identity():
        label = convert_label(W, H, rt=(label.r, hecke_star_word(s.word, label.t)))
    if not r.is_identity():
        label = convert_label(W, H, rpt=(hecke_circ_word(r.word, label.r_prime), label.t_prime))
    return label
