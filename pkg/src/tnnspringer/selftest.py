"""Property suites, runnable from the command line.

``quick`` covers A1 and A2 exhaustively; ``full`` adds A3 and D4 property
suites plus the numerical sampling harness.
"""

from __future__ import annotations

import random
from typing import Callable

import numpy as np

from . import coxeter as cx
from . import flag_cells as fc
from . import springer_cells as sc
from . import tnn_parabolic as tp
from .adjoint_sl3 import run_checks as adjoint_checks
from .checks import CheckResult, run_check
from .coxeter import WeylGroup, bruhat_leq, build_weyl
from .errors import ValidationError, VerificationError
from .subexpressions import brute_force_subexpression, positive_subexpression

__all__ = ["LEVELS", "run_selftest", "bruhat_suite", "subexpression_suite", "hecke_suite",
           "duality_suite", "atlas_suite", "flag_suite", "parabolic_suite"]

LEVELS = ("quick", "full")


def _fail(msg: str):
    raise VerificationError(msg)


def bruhat_suite(W: WeylGroup, samples: int | None = None, seed: int = 0) -> str:
    """Descent-recursion order against the subword oracle."""
    if samples is None:
        pairs = [(x, y) for x in W for y in W]
    else:
        rng = random.Random(seed)
        els = W.elements
        pairs = [(rng.choice(els), rng.choice(els)) for _ in range(samples)]
        # bias towards comparable pairs so both answers get exercised
        pairs += [(W.word(rng.sample(y.word, k=len(y.word))[: len(y) // 2]), y)
                  for y in (rng.choice(els) for _ in range(samples // 4))]
    for x, y in pairs:
        if bruhat_leq(x, y) != cx.bruhat_leq_subword(x, y):
            _fail(f"Bruhat order disagrees with the subword oracle at ({x!r}, {y!r})")
    return f"{len(pairs)} pairs"


def _random_reduced_word(rng: random.Random, w) -> tuple[int, ...]:
    word, x = [], w
    while not x.is_identity():
        i = rng.choice(sorted(cx.left_descents(x)))
        word.append(i)
        x = x.lmul(i)
    return tuple(word)


def subexpression_suite(W: WeylGroup, samples: int | None = None, seed: int = 0) -> str:
    """Unique positive subexpression, equal to the greedy one."""
    if samples is None:
        triples = [(v, w, word) for v, w in sc.bruhat_pairs(W) for word in w.reduced_words()]
    else:
        rng = random.Random(seed)
        pairs = sc.bruhat_pairs(W)
        triples = []
        for _ in range(samples):
            v, w = rng.choice(pairs)
            triples.append((v, w, _random_reduced_word(rng, w)))
    for v, w, word in triples:
        masks = brute_force_subexpression(v, w, word)
        if masks != {positive_subexpression(v, w, word).mask}:
            _fail(f"subexpression of {v!r} in {word} is not unique or not greedy: {masks}")
    return f"{len(triples)} triples"


def hecke_suite(W: WeylGroup, samples: int = 200, seed: int = 0) -> str:
    """Idempotence, braid and commutation for both actions; word independence of act_cell."""
    rng = random.Random(seed)
    els = W.elements
    pairs = sc.bruhat_pairs(W)
    gens = sorted(W.gens)
    for _ in range(samples):
        w = rng.choice(els)
        i, j = rng.choice(gens), rng.choice(gens)
        for act in (cx.hecke_star, cx.hecke_circ):
            if act(i, act(i, w)) != act(i, w):
                _fail(f"{act.__name__} is not idempotent at ({i}, {w!r})")
            if i == j:
                continue
            if W.is_adjacent(i, j):
                lhs = act(i, act(j, act(i, w)))
                rhs = act(j, act(i, act(j, w)))
            else:
                lhs, rhs = act(i, act(j, w)), act(j, act(i, w))
            if lhs != rhs:
                _fail(f"{act.__name__} breaks a braid or commutation relation at ({i},{j},{w!r})")
        r, s = rng.choice(els), rng.choice(els)
        cell = sc.CellLabel(*rng.choice(pairs))
        ref = sc.act_cell(r, s, cell)
        got = sc.act_cell(_random_reduced_word(rng, r), _random_reduced_word(rng, s), cell)
        if got != ref:
            _fail(f"act_cell depends on the reduced word for ({r!r}, {s!r})")
    return f"{samples} instances"


def _disjoint_pairs(W: WeylGroup):
    subsets = W.subsets()
    return [(J, Jp) for J in subsets for Jp in subsets if not J & Jp]


def duality_suite(W: WeylGroup) -> str:
    """``(v, w)`` in ``Z_{J,J'}`` iff ``(w w0, v w0)`` in ``Z_{J',J}``."""
    pairs = sc.bruhat_pairs(W)
    count = 0
    for J, Jp in _disjoint_pairs(W):
        for v, w in pairs:
            dv, dw = cx.w0_dual(v, w)
            if sc.in_Z(v, w, J, Jp) != sc.in_Z(dv, dw, Jp, J):
                _fail(f"duality fails for ({v!r}, {w!r}) with J={sorted(J)}, J'={sorted(Jp)}")
            count += 1
    return f"{count} instances"


def atlas_suite(W: WeylGroup) -> str:
    """Every piece: zero-dimensional cells, ``(w_J, w_J)`` and the tilde-cell count."""
    pieces = sc.all_pieces(W)
    total = 0
    for piece in pieces:
        total += len(sc.springer_atlas(piece))
    if len(sc.enumerate_tilde_cells(W)) != total:
        _fail("tilde cells do not match the atlases")
    return f"{len(pieces)} pieces, {total} cells"


def flag_suite(W: WeylGroup) -> str:
    """Round-trips of label coordinates, H = {} degeneration and zero-dimensional witnesses."""
    labels = 0
    for H in W.subsets():
        for L in fc.all_flag_labels(W, H):
            for kw in ({"rt": L.rt}, {"rpt": L.rpt}, {"abc": L.triple}):
                if fc.convert_label(W, H, **kw) != L:
                    _fail(f"round trip through {next(iter(kw))} changes {L!r}")
            labels += 1
        for J, Jp in _disjoint_pairs(W):
            piece = sc.PieceLabel(cx.longest_element(W, J), cx.longest_element(W, Jp))
            atlas = fc.flag_atlas(H, piece)  # checks its witness
            if not H:
                springer = {(c.v, c.w) for c in sc.springer_atlas(piece).cells}
                if {L.rt for L in atlas.cells} != springer:
                    _fail(f"H = {{}} flag atlas differs from the Springer atlas for {piece}")
    return f"{labels} labels over {len(W.subsets())} parabolics"


def parabolic_suite(ns=(2, 3), samples: int = 100, seed: int = 0) -> str:
    """Totally positive samples give a Borel with a positive flag; fixed sanity cases."""
    rng = np.random.default_rng(seed)
    for n in ns:
        for _ in range(samples):
            g = tp.assemble_tnn(n, tp.random_tp_word(rng, n))
            tp.borel_chart_check(g)
        unip = tp.assemble_tnn(n, [("x", i, 1) for i in range(1, n)] + [("x", 1, 2)])
        if not tp.parabolic_of(unip).is_full_group:
            _fail(f"unipotent element of SL_{n} does not give the full group")
    d = tp.parabolic_of(tp.assemble_tnn(3, "t:4,1,0.25"))
    if not d.is_borel:
        _fail("diag(4, 1, 1/4) does not give a Borel subgroup")
    eps, _ = tp.sl2_section_solve(1, 1, 1)
    if abs(eps - (2 ** 0.5 - 1)) > 1e-10:
        _fail(f"sl2 section gives {eps}")
    return f"{samples} samples for n in {list(ns)}"


def _suites(level: str) -> list[tuple[str, Callable[[], str]]]:
    A1, A2 = build_weyl("A", 1), build_weyl("A", 2)
    out: list[tuple[str, Callable[[], str]]] = []
    for W in (A1, A2):
        tag = f"{W.diagram_type}{W.rank}"
        out += [
            (f"bruhat {tag}", lambda W=W: bruhat_suite(W)),
            (f"subexpressions {tag}", lambda W=W: subexpression_suite(W)),
            (f"hecke {tag}", lambda W=W: hecke_suite(W)),
            (f"duality {tag}", lambda W=W: duality_suite(W)),
            (f"atlases {tag}", lambda W=W: atlas_suite(W)),
            (f"flags {tag}", lambda W=W: flag_suite(W)),
        ]
    out.append(("parabolic SL2 smoke", lambda: parabolic_suite(ns=(2,), samples=5)))
    if level == "full":
        A3, D4 = build_weyl("A", 3), build_weyl("D", 4)
        out += [
            ("bruhat A3 exhaustive", lambda: bruhat_suite(A3)),
            ("bruhat D4 sampled", lambda: bruhat_suite(D4, samples=500)),
            ("subexpressions A3 sampled", lambda: subexpression_suite(A3, samples=300)),
            ("subexpressions D4 sampled", lambda: subexpression_suite(D4, samples=300)),
            ("hecke A3", lambda: hecke_suite(A3)),
            ("hecke D4", lambda: hecke_suite(D4)),
            ("duality A3", lambda: duality_suite(A3)),
            ("atlases A3", lambda: atlas_suite(A3)),
            ("flags A3", lambda: flag_suite(A3)),
            ("parabolic sampling", lambda: parabolic_suite(ns=(2, 3, 4), samples=30)),
        ]
    return out


def run_selftest(level: str, seed: int = 0) -> list[CheckResult]:
    if level not in LEVELS:
        raise ValidationError(f"unknown self-test level {level!r}; choose from {', '.join(LEVELS)}")
    results = [run_check(name, fn) for name, fn in _suites(level)]
    results += [CheckResult(f"adjoint {r.name}", r.ok, r.detail)
                for r in adjoint_checks(seed=seed, samples=2 if level == "quick" else 5)]
    return results
