"""Exact model of the adjoint representation of SL_3 in its canonical basis.

Basis order (fixed everywhere, including serialization)::

    X-12, X-1, X-2, t1, t2, X1, X2, X12

``X12`` spans the B+-stable line, so the Borel ``g B+ g^-1`` corresponds to
the line through ``g . X12``.  All arithmetic is in :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Sequence

import sympy

from .checks import CheckResult, run_check
from .coxeter import WeylElement, bruhat_leq, build_weyl
from .errors import ValidationError, VerificationError
from .springer_cells import CellLabel, PieceLabel, bruhat_pairs
from .subexpressions import positive_subexpression

__all__ = [
    "BASIS", "ConeVector", "RepMatrix", "SupportTable",
    "generator_matrix", "dot_s", "phi_permutation", "identity8", "matmul", "matvec",
    "check_cx_relations", "relation_residuals", "cell_family_sample", "mr_line",
    "support_table", "compute_supports", "beta_partitions", "PAPER_SUPPORTS",
    "PAPER_BETA_MINUS", "PAPER_BETA_PLUS", "piece_matrix", "fixed_families",
    "fixed_cell_atlas", "kernel_basis", "format_vector", "a2_labels", "run_checks",
]

BASIS = ("X-12", "X-1", "X-2", "t1", "t2", "X1", "X2", "X12")
_IDX = {name: k for k, name in enumerate(BASIS)}

Matrix = tuple[tuple[Fraction, ...], ...]


def _pos(name: str) -> int:
    return _IDX[name]


@dataclass(frozen=True)
class ConeVector:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != 8:
            raise ValidationError("cone vectors have 8 coordinates")
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    @classmethod
    def from_dict(cls, values: dict[str, object]) -> ConeVector:
        coords = [Fraction(0)] * 8
        for name, val in values.items():
            if name not in _IDX:
                raise ValidationError(f"unknown basis vector {name!r}")
            coords[_IDX[name]] = Fraction(val)
        return cls(tuple(coords))

    def __getitem__(self, name: str) -> Fraction:
        return self.coords[_IDX[name]]

    @property
    def support(self) -> frozenset[str]:
        return frozenset(BASIS[k] for k, c in enumerate(self.coords) if c != 0)

    def normalized(self) -> ConeVector:
        """Coprime integer coordinates, first nonzero entry positive."""
        nz = [c for c in self.coords if c != 0]
        if not nz:
            return self
        lcm = reduce(math.lcm, (c.denominator for c in nz), 1)
        ints = [int(c * lcm) for c in self.coords]
        g = reduce(math.gcd, (abs(x) for x in ints if x), 0)
        sign = 1 if next(x for x in ints if x) > 0 else -1
        return ConeVector(tuple(Fraction(sign * x // g) for x in ints))

    def to_json(self) -> list[str]:
        return format_vector(self.coords)


def format_vector(coords: Iterable[Fraction]) -> list[str]:
    return [f"{Fraction(c).numerator}/{Fraction(c).denominator}" for c in coords]


@dataclass(frozen=True)
class RepMatrix:
    rows: Matrix
    kind: str = ""
    index: int = 0
    param: Fraction = Fraction(0)

    def __matmul__(self, other):
        if isinstance(other, RepMatrix):
            return RepMatrix(matmul(self.rows, other.rows))
        if isinstance(other, ConeVector):
            return ConeVector(matvec(self.rows, other.coords))
        return NotImplemented

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for row in self.rows for x in row)


def identity8() -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(8)) for i in range(8))


def matmul(A: Matrix, B: Matrix) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols) for row in A)


def matvec(A: Matrix, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in A)


def _from_images(images: dict[str, dict[str, Fraction]]) -> Matrix:
    cols = []
    for name in BASIS:
        col = [Fraction(0)] * 8
        for target, coef in images.get(name, {name: Fraction(1)}).items():
            col[_pos(target)] += coef
        cols.append(col)
    return tuple(tuple(cols[j][i] for j in range(8)) for i in range(8))


def generator_matrix(kind: str, i: int, a) -> RepMatrix:
    """Matrix of ``x_i(a)`` (kind ``"x"``) or ``y_i(a)`` (kind ``"y"``)."""
    if kind not in ("x", "y") or i not in (1, 2):
        raise ValidationError(f"no generator {kind}_{i}")
    a = Fraction(a)
    j = 3 - i  # the other index
    Xi, Xj, Xmi, Xmj = f"X{i}", f"X{j}", f"X-{i}", f"X-{j}"
    ti, tj = f"t{i}", f"t{j}"
    if kind == "x":
        images = {
            Xj: {Xj: 1, "X12": a},
            Xmi: {Xmi: 1, ti: a, Xi: a * a},
            "X-12": {"X-12": 1, Xmj: a},
            tj: {tj: 1, Xi: a},
            ti: {ti: 1, Xi: 2 * a},
        }
    else:
        images = {
            "X12": {"X12": 1, Xj: a},
            Xi: {Xi: 1, ti: a, Xmi: a * a},
            Xmj: {Xmj: 1, "X-12": a},
            tj: {tj: 1, Xmi: a},
            ti: {ti: 1, Xmi: 2 * a},
        }
    images = {k: {t: Fraction(c) for t, c in v.items()} for k, v in images.items()}
    return RepMatrix(_from_images(images), kind, i, a)


@lru_cache(maxsize=None)
def dot_s(i: int) -> RepMatrix:
    """``y_i(1) x_i(-1) y_i(1)``, a lift of the simple reflection."""
    y = generator_matrix("y", i, 1)
    return y @ generator_matrix("x", i, -1) @ y


def phi_permutation() -> Matrix:
    """Basis swap ``X12 <-> X-12``, ``Xj <-> X-j``, ``tj`` fixed."""
    swap = {"X-12": "X12", "X12": "X-12", "X-1": "X1", "X1": "X-1",
            "X-2": "X2", "X2": "X-2", "t1": "t1", "t2": "t2"}
    return _from_images({k: {v: Fraction(1)} for k, v in swap.items()})


def relation_residuals(vec: ConeVector) -> list[Fraction]:
    """Left minus right side of the nine quadratic relations."""
    am12, am1, am2 = vec["X-12"], vec["X-1"], vec["X-2"]
    c1, c2 = vec["t1"], vec["t2"]
    a1, a2, a12 = vec["X1"], vec["X2"], vec["X12"]
    return [
        a2 * am12 - c2 * am1,
        a1 * am12 - c1 * am2,
        am1 * a12 - c1 * a2,
        am2 * a12 - c2 * a1,
        a12 * (c1 + c2) - a1 * a2,
        am12 * (c1 + c2) - am1 * am2,
        c1 * c2 - a12 * am12,
        c1 * (c1 + c2) - a1 * am1,
        c2 * (c1 + c2) - a2 * am2,
    ]


def check_cx_relations(vec: ConeVector) -> bool:
    if all(c == 0 for c in vec.coords):
        raise ValidationError("zero vector does not span a line")
    if any(c < 0 for c in vec.coords):
        raise ValidationError("cone vectors must have nonnegative coordinates")
    return all(r == 0 for r in relation_residuals(vec))


# [[v, w]] as printed, keyed by (v word, w word)
PAPER_SUPPORTS: dict[tuple[tuple[int, ...], tuple[int, ...]], frozenset[str]] = {
    k: frozenset(v) for k, v in {
        ((1, 2, 1), (1, 2, 1)): {"X-12"},
        ((1, 2), (1, 2)): {"X-1"},
        ((2, 1), (2, 1)): {"X-2"},
        ((2,), (2,)): {"X1"},
        ((1,), (1,)): {"X2"},
        ((), ()): {"X12"},
        ((2, 1), (1, 2, 1)): {"X-12", "X-2"},
        ((1, 2), (1, 2, 1)): {"X-12", "X-1"},
        ((1,), (1, 2)): {"X-1", "X2"},
        ((2,), (2, 1)): {"X-2", "X1"},
        ((), (2,)): {"X1", "X12"},
        ((), (1,)): {"X2", "X12"},
        ((2,), (1, 2)): {"X-1", "t1", "X1"},
        ((1,), (2, 1)): {"X-2", "t2", "X2"},
        ((2,), (1, 2, 1)): {"X-12", "X-1", "X-2", "t1", "X1"},
        ((1,), (1, 2, 1)): {"X-12", "X-1", "X-2", "t2", "X2"},
        ((), (1, 2)): {"X-1", "t1", "X1", "X2", "X12"},
        ((), (2, 1)): {"X-2", "t2", "X2", "X1", "X12"},
        ((), (1, 2, 1)): set(BASIS),
    }.items()
}

PAPER_BETA_MINUS = {
    (): frozenset({"X12"}), (1,): frozenset({"X2"}), (2,): frozenset({"X1"}),
    (1, 2): frozenset({"X-1", "t1"}), (2, 1): frozenset({"X-2", "t2"}),
    (1, 2, 1): frozenset({"X-12"}),
}
PAPER_BETA_PLUS = {
    (): frozenset({"X12"}), (1,): frozenset({"t2", "X2"}), (2,): frozenset({"t1", "X1"}),
    (2, 1): frozenset({"X-2"}), (1, 2): frozenset({"X-1"}), (1, 2, 1): frozenset({"X-12"}),
}


def a2_labels() -> list[CellLabel]:
    """The 19 cell labels of SL_3, sorted by (dim, v, w)."""
    W = build_weyl("A", 2)
    return sorted((CellLabel(v, w) for v, w in bruhat_pairs(W)), key=CellLabel.sort_key)


def _label(v, w) -> CellLabel:
    W = build_weyl("A", 2)
    if not isinstance(v, WeylElement):
        v, w = W.word(v), W.word(w)
    if v.group is not W:
        raise ValidationError("the SL_3 model only knows A_2 labels")
    return CellLabel(v, w)


def mr_line(v, w, word: Sequence[int] | None = None, params: Sequence | None = None) -> ConeVector:
    """``g . X12`` for ``g`` in the Marsh-Rietsch chart of the cell ``(v, w)``.

    Taken letters contribute the lift of ``s_i``, skipped letters ``y_i(a_k)``
    with the next positive parameter.  The result is normalized and checked
    against the relations.
    """
    cell = _label(v, w)
    word = tuple(cell.w.word if word is None else word)
    sub = positive_subexpression(cell.v, cell.w, word)
    free = sub.skipped
    params = [Fraction(1)] * len(free) if params is None else [Fraction(p) for p in params]
    if len(params) != len(free) or any(p <= 0 for p in params):
        raise ValidationError(f"need {len(free)} positive parameters, got {params}")
    factors = []
    it = iter(params)
    for i, taken in zip(word, sub.mask):
        factors.append(dot_s(i) if taken else generator_matrix("y", i, next(it)))
    # only g . X12 is needed, so apply the factors to the vector from the right
    coords = ConeVector.from_dict({"X12": 1}).coords
    for factor in reversed(factors):
        coords = matvec(factor.rows, coords)
    vec = ConeVector(coords).normalized()
    if any(c < 0 for c in vec.coords):
        raise VerificationError(f"MR line for {cell} left the positive cone: {vec.coords}")
    if not check_cx_relations(vec):
        raise VerificationError(f"MR line for {cell} violates the relations")
    return vec


def cell_family_sample(v, w, params: Sequence | None = None) -> ConeVector:
    """A point of the family ``[v, w]``.

    ``params`` are the coordinates on ``[[v, w]]`` in basis order; they are
    validated against the relations.  Without ``params`` the Marsh-Rietsch
    product with unit parameters is used.
    """
    cell = _label(v, w)
    support = PAPER_SUPPORTS[(cell.v.word, cell.w.word)]
    if params is None:
        return mr_line(cell.v, cell.w)
    names = [b for b in BASIS if b in support]
    if len(params) != len(names):
        raise ValidationError(f"family {cell} takes {len(names)} coordinates ({names})")
    if any(Fraction(p) <= 0 for p in params):
        raise ValidationError("family coordinates must be positive")
    vec = ConeVector.from_dict(dict(zip(names, params)))
    if not check_cx_relations(vec):
        raise ValidationError(f"coordinates {list(params)} violate the relations of {cell}")
    return vec


def compute_supports(params_for=None) -> dict[CellLabel, frozenset[str]]:
    """Supports of Marsh-Rietsch lines, one per label.

    ``params_for(cell)`` may supply the chart parameters; default is all ones.
    """
    return {c: mr_line(c.v, c.w, params=None if params_for is None else params_for(c)).support
            for c in a2_labels()}


@dataclass(frozen=True)
class SupportTable:
    supports: dict[CellLabel, frozenset[str]]
    beta_minus: dict[WeylElement, frozenset[str]]
    beta_plus: dict[WeylElement, frozenset[str]]

    def __getitem__(self, cell: CellLabel) -> frozenset[str]:
        return self.supports[cell]

    def intersection_law_holds(self) -> dict[CellLabel, bool]:
        W = build_weyl("A", 2)
        e, w0 = W.identity, W.w0
        return {c: s == self.supports[CellLabel(c.v, w0)] & self.supports[CellLabel(e, c.w)]
                for c, s in self.supports.items()}


def beta_partitions(supports: dict[CellLabel, frozenset[str]]):
    """Blocks ``beta^-_z``, ``beta^+_z`` peeled off the one-sided supports.

    Raises :class:`VerificationError` if the supports are not disjoint unions
    of the blocks over Bruhat intervals.
    """
    W = build_weyl("A", 2)
    e, w0 = W.identity, W.w0
    minus, plus = {}, {}
    for z in W:
        below = set().union(*(supports[CellLabel(e, y)] for y in W if bruhat_leq(y, z) and y != z))
        minus[z] = supports[CellLabel(e, z)] - below
        above = set().union(*(supports[CellLabel(y, w0)] for y in W if bruhat_leq(z, y) and y != z))
        plus[z] = supports[CellLabel(z, w0)] - above
    for block in (minus, plus):
        if sum(len(b) for b in block.values()) != len(BASIS) or set().union(*block.values()) != set(BASIS):
            raise VerificationError("beta blocks do not partition the basis")
    for w in W:
        if supports[CellLabel(e, w)] != set().union(*(minus[z] for z in W if bruhat_leq(z, w))):
            raise VerificationError(f"[[e,{w!r}]] is not the union of beta^- blocks")
        if supports[CellLabel(w, w0)] != set().union(*(plus[z] for z in W if bruhat_leq(w, z))):
            raise VerificationError(f"[[{w!r},w0]] is not the union of beta^+ blocks")
    return minus, plus


def support_table(stored: dict | None = None) -> SupportTable:
    """The stored table of the 19 supports, with derived beta partitions."""
    stored = PAPER_SUPPORTS if stored is None else stored
    supports = {_label(*k): frozenset(v) for k, v in stored.items()}
    if len(supports) != 19:
        raise VerificationError("support table must have 19 entries")
    minus, plus = beta_partitions(supports)
    return SupportTable(supports, minus, plus)


# -- fixed vectors of unipotent elements ------------------------------------

def piece_matrix(piece: PieceLabel, y_params: Sequence | None = None,
                 x_params: Sequence | None = None) -> Matrix:
    """``rho(u)`` for ``u = y_{i_1}(a_1)...y_{i_m}(a_m) x_{j_1}(b_1)...``."""
    if piece.group is not build_weyl("A", 2):
        raise ValidationError("the SL_3 model only handles A_2 pieces")
    zw, zpw = piece.z.word, piece.z_prime.word
    y_params = [1] * len(zw) if y_params is None else list(y_params)
    x_params = [1] * len(zpw) if x_params is None else list(x_params)
    M = identity8()
    for i, a in zip(zw, y_params):
        M = matmul(M, generator_matrix("y", i, a).rows)
    for j, b in zip(zpw, x_params):
        M = matmul(M, generator_matrix("x", j, b).rows)
    return M


def kernel_basis(M: Matrix) -> list[tuple[Fraction, ...]]:
    """Exact basis of ``ker M``."""
    sm = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in M])
    out = []
    for vec in sm.nullspace():
        out.append(tuple(Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in vec))
    return out


def _meets_kernel(D: Matrix, support: frozenset[str]) -> bool:
    """Does ``ker D`` contain a vector strictly positive on ``support`` and zero off it?

    ``D = rho(u) - 1`` is entrywise nonnegative for ``u`` in the nonnegative
    unipotent monoid, so a strictly positive combination of columns vanishes
    only if each of those columns vanishes.  The kernel of the restricted
    matrix is computed exactly and must then be the whole coordinate space.
    """
    if any(x < 0 for row in D for x in row):
        raise VerificationError("rho(u) - 1 has a negative entry")
    cols = [_IDX[b] for b in BASIS if b in support]
    sub = tuple(tuple(row[k] for k in cols) for row in D)
    return len(kernel_basis(sub)) == len(cols)


def fixed_families(M: Matrix, sample: bool = True, table: SupportTable | None = None) -> set[CellLabel]:
    """Labels whose family contains a vector fixed by ``M``."""
    D = tuple(tuple(M[i][j] - (1 if i == j else 0) for j in range(8)) for i in range(8))
    table = support_table() if table is None else table
    out = set()
    for cell in a2_labels():
        meets = _meets_kernel(D, table[cell])
        if sample:
            # a concrete family point must agree with the support decision
            p = mr_line(cell.v, cell.w)
            if (all(x == 0 for x in matvec(D, p.coords))) != meets:
                raise VerificationError(f"kernel decision and sample disagree on {cell}")
        if meets:
            out.add(cell)
    return out


def fixed_cell_atlas(piece: PieceLabel, y_params=None, x_params=None,
                     table: SupportTable | None = None) -> set[CellLabel]:
    """Cells of the Springer fibre of ``u`` decided in the cone model."""
    return fixed_families(piece_matrix(piece, y_params, x_params), table=table)


# -- invariant suite ----------------------------------------------------------

def _rand_param(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 40), rng.randint(1, 12))


def run_checks(stored: dict | None = None, seed: int = 0, samples: int = 5) -> list[CheckResult]:
    """Every invariant of the model, each reported separately.

    ``stored`` replaces the support table (keys ``(v word, w word)``), which
    lets a corrupted table be fed in as a negative control.
    """
    from .springer_cells import all_pieces, enumerate_Z

    rng = random.Random(seed)
    stored = PAPER_SUPPORTS if stored is None else stored
    results: list[CheckResult] = []

    def record(name, fn):
        results.append(run_check(name, fn))

    def generators():
        for kind in ("x", "y"):
            for i in (1, 2):
                for a in (0, 1, 2, Fraction(1, 3)):
                    if not generator_matrix(kind, i, a).is_nonnegative():
                        raise VerificationError(f"{kind}{i}({a}) has a negative entry")
                a, b = _rand_param(rng), _rand_param(rng)
                lhs = matmul(generator_matrix(kind, i, a).rows, generator_matrix(kind, i, b).rows)
                if lhs != generator_matrix(kind, i, a + b).rows:
                    raise VerificationError(f"{kind}{i} is not additive")
        return "x_i, y_i nonnegative and additive"

    def phi():
        P = phi_permutation()
        for i in (1, 2):
            a = _rand_param(rng)
            if matmul(matmul(P, generator_matrix("y", i, a).rows), P) != generator_matrix("x", i, a).rows:
                raise VerificationError(f"phi does not swap y{i} and x{i}")
        return "phi y_i phi = x_i"

    def braid():
        s1, s2 = dot_s(1), dot_s(2)
        if (s1 @ s2 @ s1).rows != (s2 @ s1 @ s2).rows:
            raise VerificationError("lifted reflections violate the braid relation")
        return "s1 s2 s1 = s2 s1 s2"

    def monoid():
        for _ in range(50):
            g = identity8()
            for _ in range(12):
                g = matmul(g, generator_matrix(rng.choice("xy"), rng.choice((1, 2)), _rand_param(rng)).rows)
            if any(x < 0 for row in g for x in row):
                raise VerificationError("a product of generators has a negative entry")
        return "50 random products nonnegative"

    def lines():
        for cell in a2_labels():
            key = (cell.v.word, cell.w.word)
            free = len(positive_subexpression(cell.v, cell.w, cell.w.word).skipped)
            for _ in range(samples):
                vec = mr_line(cell.v, cell.w, params=[_rand_param(rng) for _ in range(free)])
                if vec.support != frozenset(stored[key]):
                    raise VerificationError(f"{cell}: support {sorted(vec.support)} != table {sorted(stored[key])}")
        return f"{samples} random lines per family"

    def supports():
        computed = compute_supports()
        bad = [c for c in a2_labels() if computed[c] != frozenset(stored[(c.v.word, c.w.word)])]
        if bad:
            raise VerificationError(f"table disagrees with computed supports at {bad}")
        return "19 supports reproduced"

    def intersection():
        table = support_table(stored)
        bad = [c for c, ok in table.intersection_law_holds().items() if not ok]
        if bad:
            raise VerificationError(f"intersection law fails at {bad}")
        return "[[v,w]] = [[v,w0]] & [[e,w]]"

    def betas():
        table = support_table(stored)
        W = build_weyl("A", 2)
        for name, got, ref in (("minus", table.beta_minus, PAPER_BETA_MINUS),
                               ("plus", table.beta_plus, PAPER_BETA_PLUS)):
            want = {W.word(k): frozenset(v) for k, v in ref.items()}
            if got != want:
                raise VerificationError(f"beta {name} blocks differ from the reference")
        return "beta blocks match"

    def cross_oracle():
        table = support_table(stored)
        W = build_weyl("A", 2)
        pieces = all_pieces(W)
        for piece in pieces:
            if fixed_cell_atlas(piece, table=table) != enumerate_Z(W, piece.J, piece.J_prime):
                raise VerificationError(f"cone model and combinatorics disagree for piece {piece}")
        return f"19 families x {len(pieces)} pieces agree"

    record("generators", generators)
    record("phi-symmetry", phi)
    record("braid", braid)
    record("monoid-positivity", monoid)
    record("mr-lines", lines)
    record("supports", supports)
    record("intersection-law", intersection)
    record("beta-partitions", betas)
    record("cross-oracle-19-families", cross_oracle)
    return results
