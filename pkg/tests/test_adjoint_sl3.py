import random
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, strategies as st

from helpers import w
from tnnspringer import adjoint_sl3 as ad
from tnnspringer.adjoint_sl3 import BASIS, ConeVector, generator_matrix, matmul, matvec
from tnnspringer.coxeter import build_weyl
from tnnspringer.errors import ValidationError
from tnnspringer.springer_cells import CellLabel, PieceLabel, all_pieces, enumerate_Z
from tnnspringer.subexpressions import positive_subexpression

A2 = build_weyl("A", 2)
params = st.fractions(min_value=F(1, 12), max_value=20, max_denominator=12)


def apply(M, **coords):
    return ConeVector(matvec(M.rows if hasattr(M, "rows") else M, ConeVector.from_dict(coords).coords))


def labels(*pairs):
    return {CellLabel(w(A2, v), w(A2, x)) for v, x in pairs}


# -- generators ---------------------------------------------------------------

def test_zero_parameter_is_identity():
    assert generator_matrix("y", 1, 0).rows == ad.identity8()


def test_generator_table_entries():
    a = F(3)
    assert apply(generator_matrix("x", 1, a), **{"X-1": 1}) == ConeVector.from_dict({"X-1": 1, "t1": a, "X1": a * a})
    assert apply(generator_matrix("y", 2, a), t1=1) == ConeVector.from_dict({"t1": 1, "X-2": a})
    assert apply(generator_matrix("x", 2, a), X1=1) == ConeVector.from_dict({"X1": 1, "X12": a})


def test_bad_generator():
    with pytest.raises(ValidationError):
        generator_matrix("z", 1, 1)
    with pytest.raises(ValidationError):
        generator_matrix("x", 3, 1)


@given(st.sampled_from("xy"), st.sampled_from([1, 2]), params)
def test_generators_unipotent_and_nonnegative(kind, i, a):
    M = generator_matrix(kind, i, a)
    assert M.is_nonnegative()
    N = sympy.Matrix(M.rows) - sympy.eye(8)
    assert N ** 5 == sympy.zeros(8, 8)


@given(st.sampled_from([1, 2]), params)
def test_phi_swaps_x_and_y(i, a):
    P = ad.phi_permutation()
    assert matmul(matmul(P, generator_matrix("y", i, a).rows), P) == generator_matrix("x", i, a).rows


def test_monoid_positivity():
    rng = random.Random(5)
    for _ in range(500):
        g = ad.identity8()
        for _ in range(rng.randint(1, 8)):
            g = matmul(g, generator_matrix(rng.choice("xy"), rng.choice((1, 2)), F(rng.randint(0, 9), rng.randint(1, 5))).rows)
        assert all(x >= 0 for row in g for x in row)


def test_lifted_reflections():
    s1, s2 = ad.dot_s(1), ad.dot_s(2)
    assert (s1 @ s2 @ s1).rows == (s2 @ s1 @ s2).rows
    # X12 spans the B+-stable line, so it is fixed by every x_i
    for i in (1, 2):
        assert apply(generator_matrix("x", i, 5), X12=1) == ConeVector.from_dict({"X12": 1})


# -- relations ----------------------------------------------------------------

def test_relation_examples():
    assert ad.check_cx_relations(ConeVector.from_dict({"X12": 1}))
    assert ad.check_cx_relations(ConeVector.from_dict({"X-1": 1, "X2": 1}))
    assert not ad.check_cx_relations(ConeVector.from_dict({"X-1": 1, "X1": 1, "t1": 2}))
    with pytest.raises(ValidationError):
        ad.check_cx_relations(ConeVector.from_dict({}))
    with pytest.raises(ValidationError):
        ad.check_cx_relations(ConeVector.from_dict({"X1": -1}))


def test_cone_vector_normalization():
    v = ConeVector.from_dict({"X-1": F(1, 2), "t1": F(3, 4)}).normalized()
    assert v.to_json() == ["0/1", "2/1", "0/1", "3/1", "0/1", "0/1", "0/1", "0/1"]
    assert v["t1"] == 3
    with pytest.raises(ValidationError):
        ConeVector.from_dict({"X3": 1})


# -- families -----------------------------------------------------------------

def test_family_samples():
    e, w0 = A2.identity, A2.w0
    assert ad.cell_family_sample(e, e, [1]) == ConeVector.from_dict({"X12": 1})
    vec = ad.cell_family_sample(w(A2, 2), w(A2, 1, 2), [4, 2, 1])
    assert vec.support == {"X-1", "t1", "X1"}
    top = ad.cell_family_sample(e, w0)
    assert all(c > 0 for c in top.coords) and ad.check_cx_relations(top)
    with pytest.raises(ValidationError):
        ad.cell_family_sample(w(A2, 2), w(A2, 1, 2), [1, 2, 1])  # 1 * 1 != 2^2
    with pytest.raises(ValidationError):
        ad.cell_family_sample(w(A2, 1), w(A2, 2))


def test_mr_line_examples():
    assert ad.mr_line(A2.identity, A2.identity) == ConeVector.from_dict({"X12": 1})
    assert ad.mr_line(w(A2, 1), w(A2, 1), (1,)).support == {"X2"}
    assert ad.mr_line(w(A2, 2), w(A2, 1, 2), (1, 2), [1]).support == {"X-1", "t1", "X1"}
    with pytest.raises(ValidationError):
        ad.mr_line(w(A2, 2), w(A2, 1, 2), (1, 2), [0])


def test_mr_lines_hit_table_with_random_parameters():
    rng = random.Random(2)
    for cell in ad.a2_labels():
        for word in cell.w.reduced_words():
            free = len(positive_subexpression(cell.v, cell.w, word).skipped)
            for _ in range(10):
                vec = ad.mr_line(cell.v, cell.w, word, [F(rng.randint(1, 30), rng.randint(1, 7)) for _ in range(free)])
                assert vec.support == ad.PAPER_SUPPORTS[(cell.v.word, cell.w.word)]


def test_support_table():
    table = ad.support_table()
    e, w0 = A2.identity, A2.w0
    assert table[CellLabel(e, e)] == {"X12"}
    assert table[CellLabel(e, w0)] == set(BASIS)
    assert table.beta_minus[w(A2, 1, 2)] == {"X-1", "t1"}
    assert table.beta_plus[w(A2, 1)] == {"t2", "X2"}
    assert all(table.intersection_law_holds().values())
    assert ad.compute_supports() == table.supports
    assert len(ad.a2_labels()) == 19


# -- fixed cells --------------------------------------------------------------

def test_fixed_cell_examples():
    e = A2.identity
    assert ad.fixed_cell_atlas(PieceLabel(e, e)) == set(ad.a2_labels())
    assert ad.fixed_cell_atlas(PieceLabel(w(A2, 1), e)) == labels(
        ("121", "121"), ("12", "12"), ("1", "1"), ("12", "121"), ("1", "12"))
    assert ad.fixed_cell_atlas(PieceLabel(w(A2, 1, 2), e)) == labels(("121", "121"))


def test_cone_oracle_matches_combinatorics():
    for piece in all_pieces(A2):
        assert ad.fixed_cell_atlas(piece) == enumerate_Z(A2, piece.J, piece.J_prime)


@pytest.mark.parametrize("kind", "xy")
@pytest.mark.parametrize("i", [1, 2])
def test_parameter_collapse(kind, i):
    spans = []
    for a in (1, 2, F(1, 3)):
        M = sympy.Matrix(generator_matrix(kind, i, a).rows) - sympy.eye(8)
        K = M.nullspace()
        spans.append(sympy.Matrix.hstack(*K))
        assert ad.fixed_families(generator_matrix(kind, i, a).rows) == ad.fixed_families(generator_matrix(kind, i, 1).rows)
    ref = spans[0]
    for S in spans[1:]:
        assert S.rank() == ref.rank() == sympy.Matrix.hstack(ref, S).rank()


def test_intersection_law_on_pieces():
    def fixed(kind, i):
        return ad.fixed_families(generator_matrix(kind, i, 1).rows)
    for piece in all_pieces(A2):
        expected = set(ad.a2_labels())
        for i in piece.z.word:
            expected &= fixed("y", i)
        for j in piece.z_prime.word:
            expected &= fixed("x", j)
        assert ad.fixed_cell_atlas(piece) == expected


def test_piece_matrix_rejects_other_groups():
    A3 = build_weyl("A", 3)
    with pytest.raises(ValidationError):
        ad.piece_matrix(PieceLabel(A3.s(3), A3.identity))


# -- the whole suite ----------------------------------------------------------

def test_run_checks_pass():
    results = ad.run_checks()
    assert all(r.ok for r in results), [r.line() for r in results if not r.ok]
    assert any(r.name == "cross-oracle-19-families" for r in results)


def test_run_checks_catch_corruption():
    bad = dict(ad.PAPER_SUPPORTS)
    bad[((1,), (1,))] = frozenset({"X2", "t2"})
    results = {r.name: r.ok for r in ad.run_checks(stored=bad)}
    assert not results["supports"] and not results["mr-lines"]
