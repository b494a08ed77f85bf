"""Cell atlases of totally nonnegative Springer fibres of unipotent elements.

A unipotent piece is labelled by ``(z, z')`` with disjoint supports; ``z`` is
its y-part (lower unipotent) and ``z'`` its x-part.  Its Springer fibre is the
union of the cells ``(v, w)`` in ``Z_{J,J'}`` with ``J = supp z``,
``J' = supp z'``.

Action convention: in ``act_cell(r, s, cell)`` the x-side element ``r`` acts
by the ``o`` (circ) action on ``v`` and the y-side element ``s`` acts by the
``*`` (star) action on ``w``.  The piece ``(z, z')`` therefore acts as
``(r, s) = (z', z)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import coxeter as cx
from .coxeter import WeylElement, WeylGroup, bruhat_leq, hecke_circ_word, hecke_star_word
from .errors import ResourceLimitError, ValidationError

__all__ = [
    "PieceLabel", "CellLabel", "CellAtlas", "XiData",
    "piece_of", "in_Z", "enumerate_Z", "springer_atlas", "zero_dim_characterization",
    "xi_sets", "xi_members", "act_cell", "stabilizer_pairs", "enumerate_tilde_cells",
    "classify_cell_action", "all_pieces", "bruhat_pairs",
    "MOVED", "FIXED_NO_FIXED_POINTS", "FIXED_WITH_FIXED_POINTS", "FIXED_UNDETERMINED",
]

MOVED = "moved"
FIXED_NO_FIXED_POINTS = "fixed_no_fixed_points"
FIXED_WITH_FIXED_POINTS = "fixed_with_fixed_points"
FIXED_UNDETERMINED = "fixed_undetermined"

# brute-force budget for stabilizer_pairs: |W|^2 * |cells| act_cell calls
STABILIZER_BUDGET = 20_000_000


@dataclass(frozen=True)
class PieceLabel:
    z: WeylElement
    z_prime: WeylElement

    def __post_init__(self):
        if self.z.group is not self.z_prime.group:
            raise ValidationError("piece parts belong to different groups")
        if cx.support(self.z) & cx.support(self.z_prime):
            raise ValidationError(
                f"supports of z={self.z!r} and z'={self.z_prime!r} intersect")

    @property
    def group(self) -> WeylGroup:
        return self.z.group

    @property
    def J(self) -> frozenset[int]:
        return cx.support(self.z)

    @property
    def J_prime(self) -> frozenset[int]:
        return cx.support(self.z_prime)

    @property
    def dim(self) -> int:
        return len(self.z) + len(self.z_prime)


@dataclass(frozen=True, order=False)
class CellLabel:
    v: WeylElement
    w: WeylElement

    def __post_init__(self):
        if not bruhat_leq(self.v, self.w):
            raise ValidationError(f"cell label needs v <= w, got ({self.v!r}, {self.w!r})")

    @property
    def dim(self) -> int:
        return len(self.w) - len(self.v)

    def sort_key(self):
        return (self.dim, self.v.word, self.w.word)

    def to_json(self) -> dict:
        return {"v": list(self.v.word), "w": list(self.w.word), "dim": self.dim}

    def __repr__(self) -> str:
        return f"({self.v!r},{self.w!r})"


@dataclass(frozen=True)
class CellAtlas:
    group: WeylGroup
    piece: PieceLabel
    cells: frozenset[CellLabel]
    dim_histogram: dict[int, int] = field(hash=False, compare=False)
    zero_dim: tuple[CellLabel, ...] = field(default=(), hash=False, compare=False)

    def sorted_cells(self) -> list[CellLabel]:
        return sorted(self.cells, key=CellLabel.sort_key)

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, cell) -> bool:
        return cell in self.cells

    @property
    def max_dim(self) -> int:
        return max(self.dim_histogram)

    def to_json(self) -> dict:
        W = self.group
        return {
            "type": W.diagram_type,
            "rank": W.rank,
            "z": list(self.piece.z.word),
            "zprime": list(self.piece.z_prime.word),
            "cells": [c.to_json() for c in self.sorted_cells()],
            "dim_histogram": {str(k): self.dim_histogram[k] for k in sorted(self.dim_histogram)},
        }


@dataclass(frozen=True)
class XiData:
    v: WeylElement
    w: WeylElement
    H: frozenset[int]
    H_prime: frozenset[int]

    @property
    def dim(self) -> int:
        W = self.v.group
        return len(cx.longest_element(W, self.H)) + len(cx.longest_element(W, self.H_prime))

    def contains(self, z: WeylElement, z_prime: WeylElement) -> bool:
        return cx.support(z) <= self.H and cx.support(z_prime) <= self.H_prime


def piece_of(ctx: WeylGroup, z_word: Sequence[int], zprime_word: Sequence[int]) -> PieceLabel:
    z, zp = ctx.word(z_word), ctx.word(zprime_word)
    for word, el in ((z_word, z), (zprime_word, zp)):
        if len(tuple(word)) != len(el):
            raise ValidationError(f"word {tuple(word)} is not reduced")
    return PieceLabel(z, zp)


def all_pieces(ctx: WeylGroup) -> list[PieceLabel]:
    """Every disjoint-support pair ``(z, z')``."""
    out = []
    for z in ctx:
        J = cx.support(z)
        for zp in ctx:
            if not J & cx.support(zp):
                out.append(PieceLabel(z, zp))
    return out


def bruhat_pairs(ctx: WeylGroup) -> list[tuple[WeylElement, WeylElement]]:
    return [(v, w) for w in ctx for v in ctx if bruhat_leq(v, w)]


def _y_fixed(i: int, v: WeylElement, w: WeylElement) -> bool:
    siw = w.lmul(i)
    return len(siw) < len(w) and not bruhat_leq(v, siw)


def _x_fixed(j: int, v: WeylElement, w: WeylElement) -> bool:
    sjv = v.lmul(j)
    return len(sjv) > len(v) and not bruhat_leq(sjv, w)


def in_Z(v: WeylElement, w: WeylElement, J: Iterable[int], J_prime: Iterable[int]) -> bool:
    return (bruhat_leq(v, w)
            and all(_y_fixed(i, v, w) for i in J)
            and all(_x_fixed(j, v, w) for j in J_prime))


def _check_disjoint(ctx: WeylGroup, J, J_prime) -> tuple[frozenset[int], frozenset[int]]:
    J, J_prime = ctx.check_subset(J), ctx.check_subset(J_prime)
    if J & J_prime:
        raise ValidationError(f"index sets {sorted(J)} and {sorted(J_prime)} overlap")
    return J, J_prime


def enumerate_Z(ctx: WeylGroup, J: Iterable[int], J_prime: Iterable[int]) -> set[CellLabel]:
    """All labels ``(v, w)`` in ``Z_{J,J'}`` by a full scan of Bruhat pairs."""
    J, J_prime = _check_disjoint(ctx, J, J_prime)
    return {CellLabel(v, w) for v, w in bruhat_pairs(ctx) if in_Z(v, w, J, J_prime)}


def zero_dim_characterization(ctx: WeylGroup, J, J_prime) -> set[CellLabel]:
    """``{(w, w) : J <= left descents of w <= I - J'}``."""
    J, J_prime = _check_disjoint(ctx, J, J_prime)
    allowed = ctx.I - J_prime
    return {CellLabel(w, w) for w in ctx if J <= cx.left_descents(w) <= allowed}


def springer_atlas(piece: PieceLabel) -> CellAtlas:
    W = piece.group
    cells = enumerate_Z(W, piece.J, piece.J_prime)
    zero = sorted((c for c in cells if c.dim == 0), key=CellLabel.sort_key)
    expected = zero_dim_characterization(W, piece.J, piece.J_prime)
    if set(zero) != expected:
        raise AssertionError("zero-dimensional cells disagree with the descent characterization")
    wJ = cx.longest_element(W, piece.J)
    if CellLabel(wJ, wJ) not in cells:
        raise AssertionError("(w_J, w_J) missing from atlas")
    hist = dict(sorted(Counter(c.dim for c in cells).items()))
    return CellAtlas(W, piece, frozenset(cells), hist, tuple(zero))


def xi_sets(v: WeylElement, w: WeylElement) -> XiData:
    if not bruhat_leq(v, w):
        raise ValidationError(f"xi_sets needs v <= w, got ({v!r}, {w!r})")
    W = v.group
    H = frozenset(i for i in W.gens if _y_fixed(i, v, w))
    Hp = frozenset(j for j in W.gens if _x_fixed(j, v, w))
    if H & Hp:
        raise AssertionError(f"H and H' intersect for ({v!r}, {w!r})")
    return XiData(v, w, H, Hp)


def xi_members(xi: XiData) -> list[PieceLabel]:
    """All ``(z, z')`` with ``supp z <= H`` and ``supp z' <= H'``."""
    W = xi.v.group
    zs = [z for z in W if cx.support(z) <= xi.H]
    zps = [z for z in W if cx.support(z) <= xi.H_prime]
    return [PieceLabel(z, zp) for z in zs for zp in zps]


def act_cell(r: WeylElement | Sequence[int], s: WeylElement | Sequence[int],
             cell: CellLabel) -> CellLabel:
    """``(v, w) -> (r o v, s * w)``.

    ``r`` and ``s`` may be elements (their canonical words are used) or
    explicit reduced words, which lets callers check word independence.
    """
    rw = r.word if isinstance(r, WeylElement) else tuple(r)
    sw = s.word if isinstance(s, WeylElement) else tuple(s)
    return CellLabel(hecke_circ_word(rw, cell.v), hecke_star_word(sw, cell.w))


def stabilizer_pairs(piece: PieceLabel, budget: int = STABILIZER_BUDGET) -> set[tuple[WeylElement, WeylElement]]:
    """All ``(r, s)`` in ``W x W`` whose action maps the atlas into itself."""
    W = piece.group
    atlas = springer_atlas(piece)
    cost = W.order ** 2 * len(atlas)
    if cost > budget:
        raise ResourceLimitError(f"stabilizer scan needs {cost} steps (budget {budget})")
    cells = atlas.cells
    # the action factors: r only touches v, s only touches w
    out = set()
    for r in W:
        moved_v = [(hecke_circ_word(r.word, c.v), c.w) for c in cells]
        for s in W:
            if all(CellLabel(v2, hecke_star_word(s.word, w)) in cells for v2, w in moved_v):
                out.add((r, s))
    return out


def enumerate_tilde_cells(ctx: WeylGroup) -> list[tuple[WeylElement, WeylElement, WeylElement, WeylElement, int]]:
    """Cells ``(z, z', v, w, dim)`` of the totally nonnegative Springer resolution."""
    out = []
    for piece in all_pieces(ctx):
        for c in springer_atlas(piece).sorted_cells():
            out.append((piece.z, piece.z_prime, c.v, c.w, piece.dim + c.dim))
    return out


def classify_cell_action(r: WeylElement, s: WeylElement, cell: CellLabel,
                         piece: PieceLabel | None = None) -> str:
    """Which of the three possibilities (moved / fixed without / with fixed points) holds.

    Without a unipotent piece a fixed cell stays undetermined.
    """
    if act_cell(r, s, cell) != cell:
        return MOVED
    if piece is None:
        return FIXED_UNDETERMINED
    if in_Z(cell.v, cell.w, piece.J, piece.J_prime):
        return FIXED_WITH_FIXED_POINTS
    return FIXED_NO_FIXED_POINTS
