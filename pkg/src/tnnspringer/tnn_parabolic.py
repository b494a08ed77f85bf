"""The parabolic subgroup ``P_g`` attached to a totally nonnegative ``g`` in SL_n.

``Lie(P_g)`` is the sum of the generalized eigenspaces of ``Ad(g)`` with
eigenvalue at least 1.  Equivalently ``P_g`` stabilizes the flag whose k-th
member is the sum of the generalized eigenspaces of ``g`` for its k largest
eigenvalues; :func:`parabolic_of` builds both and checks that they agree.

Matrices assembled from generators are exact (``Fraction``); for those the
eigenvalue multiplicities come from a square-free factorization of the
characteristic polynomial, so repeated eigenvalues (Jordan blocks) need no
clustering tolerance.  Float input falls back to clustering.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
import scipy.linalg
import sympy

from .errors import DomainError, ValidationError, VerificationError

__all__ = [
    "TNNMatrix", "EigenSplit", "ParabolicData", "parse_generators", "assemble_tnn",
    "minor_positivity", "all_minors", "eigen_split", "ad_matrix", "parabolic_of",
    "borel_chart_check", "sl2_section_solve", "flag_stabilizer_basis",
    "subspace_distance", "semisimple_part", "random_generator_word", "random_tp_word", "parabolic_report",
    "TOTALLY_POSITIVE", "TOTALLY_NONNEGATIVE", "NEITHER",
]

TOTALLY_POSITIVE = "totally_positive"
TOTALLY_NONNEGATIVE = "totally_nonnegative"
NEITHER = "neither"

REL_TOL = 1e-8
GAP_FACTOR = 1e3
MAX_N = 4


@dataclass(frozen=True)
class TNNMatrix:
    n: int
    exact: tuple[tuple[Fraction, ...], ...] | None
    values: np.ndarray = field(compare=False)
    word: tuple = ()

    @classmethod
    def from_array(cls, a) -> TNNMatrix:
        arr = np.asarray(a)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValidationError("need a square matrix")
        if arr.dtype == object or all(isinstance(x, (int, Fraction)) for x in arr.flat):
            exact = tuple(tuple(Fraction(x) for x in row) for row in arr)
            return cls(arr.shape[0], exact, np.array(arr, dtype=float))
        return cls(arr.shape[0], None, np.array(arr, dtype=float))

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)


def _generator(n: int, kind: str, i: int, a: Fraction) -> list[list[Fraction]]:
    M = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    if kind == "x":
        M[i - 1][i] = a
    else:
        M[i][i - 1] = a
    return M


def _mul(A, B):
    cols = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols] for row in A]


_TOKEN = re.compile(r"^([xyt])(\d*)$")


def parse_generators(text: str) -> list[tuple]:
    """Parse ``"y1:1,t:2,0.5,x1:1"`` into ``[("y",1,1), ("t",(2,1/2)), ("x",1,1)]``.

    Torus factors list every diagonal entry; the entries after the first run
    on as bare comma-separated numbers.
    """
    out: list[tuple] = []
    text = text.strip()
    if not text:
        return out
    for raw in text.split(","):
        tok = raw.strip()
        if ":" in tok:
            head, val = (s.strip() for s in tok.split(":", 1))
            m = _TOKEN.match(head)
            if not m:
                raise ValidationError(f"bad generator {head!r}")
            kind, idx = m.groups()
            try:
                num = Fraction(val)
            except (ValueError, ZeroDivisionError):
                raise ValidationError(f"bad number {val!r}") from None
            if kind == "t":
                if idx:
                    raise ValidationError("torus factor takes no index")
                out.append(("t", [num]))
            else:
                if not idx:
                    raise ValidationError(f"generator {head!r} needs an index")
                out.append((kind, int(idx), num))
        else:
            if not out or out[-1][0] != "t":
                raise ValidationError(f"stray number {tok!r}")
            try:
                out[-1][1].append(Fraction(tok))
            except (ValueError, ZeroDivisionError):
                raise ValidationError(f"bad number {tok!r}") from None
    return [(g[0], tuple(g[1])) if g[0] == "t" else g for g in out]


def assemble_tnn(n: int, generator_word: Sequence[tuple] | str) -> TNNMatrix:
    """Exact product of ``x_i(a)``, ``y_i(a)`` (``a >= 0``) and positive unimodular tori."""
    if not 2 <= n <= MAX_N:
        raise ValidationError(f"n={n} outside 2..{MAX_N}")
    word = parse_generators(generator_word) if isinstance(generator_word, str) else list(generator_word)
    M = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    for g in word:
        if g[0] == "t":
            entries = tuple(Fraction(x) for x in g[1])
            if len(entries) != n:
                raise ValidationError(f"torus factor needs {n} entries, got {len(entries)}")
            if any(x <= 0 for x in entries) or math.prod(entries) != 1:
                raise ValidationError("torus entries must be positive with product 1")
            factor = [[entries[r] if r == c else Fraction(0) for c in range(n)] for r in range(n)]
        elif g[0] in ("x", "y"):
            _, i, a = g
            a = Fraction(a)
            if not 1 <= i < n:
                raise ValidationError(f"generator index {i} outside 1..{n - 1}")
            if a < 0:
                raise ValidationError(f"negative parameter {a} for {g[0]}{i}")
            factor = _generator(n, g[0], i, a)
        else:
            raise ValidationError(f"unknown generator {g!r}")
        M = _mul(M, factor)
    exact = tuple(tuple(row) for row in M)
    return TNNMatrix(n, exact, np.array([[float(x) for x in row] for row in M]), tuple(word))


def random_generator_word(rng: np.random.Generator, n: int, length: int,
                          low: float = 0.0, high: float = 2.0, torus: bool = True,
                          denominator: int = 64) -> list[tuple]:
    """Random rational generator word (parameters on a ``1/denominator`` grid)."""
    word = []
    for _ in range(length):
        kind = rng.choice(["x", "y"])
        i = int(rng.integers(1, n))
        a = Fraction(int(rng.integers(int(low * denominator), int(high * denominator) + 1)), denominator)
        word.append((str(kind), i, a))
    if torus:
        ent = [Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 9))) for _ in range(n - 1)]
        ent.append(1 / math.prod(ent))
        word.insert(int(rng.integers(0, len(word) + 1)), ("t", tuple(ent)))
    return word


def _det(rows: list[list[Fraction]]) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    A = [list(r) for r in rows]
    n = len(A)
    det = Fraction(1)
    for k in range(n):
        piv = next((r for r in range(k, n) if A[r][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            det = -det
        det *= A[k][k]
        for r in range(k + 1, n):
            f = A[r][k] / A[k][k]
            if f:
                A[r] = [a - f * b for a, b in zip(A[r], A[k])]
    return det


def random_tp_word(rng: np.random.Generator, n: int, high: float = 2.0,
                   denominator: int = 64) -> list[tuple]:
    """``y``-factors along a reduced word of the longest element, a torus, then ``x``-factors.

    With every parameter positive the product is totally positive.
    """
    w0_word = [i for k in range(1, n) for i in range(k, 0, -1)]

    def param():
        return Fraction(int(rng.integers(1, int(high * denominator) + 1)), denominator)

    ent = [Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 9))) for _ in range(n - 1)]
    ent.append(1 / math.prod(ent))
    return ([("y", i, param()) for i in w0_word] + [("t", tuple(ent))]
            + [("x", i, param()) for i in w0_word])


def all_minors(M) -> list:
    """Every square minor, exact when ``M`` is exact."""
    exact = M.exact if isinstance(M, TNNMatrix) else None
    n = M.n if isinstance(M, TNNMatrix) else np.asarray(M).shape[0]
    out = []
    for k in range(1, n + 1):
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(n), k):
                if exact is not None:
                    out.append(_det([[exact[r][c] for c in cols] for r in rows]))
                else:
                    arr = np.asarray(M, dtype=float)
                    out.append(float(np.linalg.det(arr[np.ix_(rows, cols)])))
    return out


def minor_positivity(M, tol: float = 1e-12) -> str:
    if not isinstance(M, TNNMatrix):
        M = TNNMatrix.from_array(M)
    if M.n > MAX_N:
        raise ValidationError(f"minor enumeration limited to n <= {MAX_N}")
    minors = all_minors(M)
    if M.exact is None:
        scale = max(1.0, max(abs(m) for m in minors))
        minors = [0.0 if abs(m) <= tol * scale else m for m in minors]
    if all(m > 0 for m in minors):
        return TOTALLY_POSITIVE
    if all(m >= 0 for m in minors):
        return TOTALLY_NONNEGATIVE
    return NEITHER


@dataclass
class EigenSplit:
    groups: list[tuple[float, np.ndarray]]
    tolerance: float
    multiplicities: list[int]

    @property
    def eigenvalues(self) -> list[float]:
        return [lam for lam, _ in self.groups]


def _exact_spectrum(exact) -> list[tuple[complex, int]]:
    """Distinct roots (numeric) with exact multiplicities, via square-free factorization."""
    lam = sympy.Symbol("lam")
    poly = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in exact]) \
        .charpoly(lam).as_expr()
    _, factors = sympy.sqf_list(poly, lam)
    out = []
    for fac, mult in factors:
        p = sympy.Poly(fac, lam)
        if p.degree() == 0:
            continue
        for root in p.nroots(n=30, maxsteps=200):
            out.append((complex(root), mult))
    return out


def _cluster(eigs: np.ndarray, tol: float) -> list[tuple[complex, int]]:
    eigs = sorted(eigs, key=lambda z: -z.real)
    groups: list[list[complex]] = []
    for z in eigs:
        if groups and abs(z - np.mean(groups[-1])) <= tol * max(1.0, abs(z)):
            groups[-1].append(z)
        else:
            groups.append([z])
    centers = [complex(np.mean(g)) for g in groups]
    for a, b in zip(centers, centers[1:]):
        if abs(a - b) <= GAP_FACTOR * tol * max(1.0, abs(a)):
            raise DomainError("eigenvalue clusters too close to separate safely")
    return [(c, len(g)) for c, g in zip(centers, groups)]


def _null_space(A: np.ndarray, dim: int, what: str) -> np.ndarray:
    """The ``dim`` right singular vectors of ``A`` with smallest singular values."""
    _, s, vh = np.linalg.svd(A)
    scale = max(1.0, s[0])
    n = A.shape[1]
    if dim and s[n - dim] > 1e-6 * scale:
        raise VerificationError(f"{what}: expected a {dim}-dimensional kernel, singular values {s}")
    # the multiplicity is exact, so only demand a clear gap above the kernel
    if dim and dim < n and s[n - dim - 1] < 1e3 * max(s[n - dim], 1e-300):
        raise VerificationError(f"{what}: no singular value gap above a {dim}-dimensional kernel")
    return vh[n - dim:].conj().T


def _split(values: np.ndarray, spectrum: list[tuple[complex, int]], tol: float) -> EigenSplit:
    n = values.shape[0]
    for z, _ in spectrum:
        if abs(z.imag) > 1e-7 * max(1.0, abs(z)) or z.real <= 0:
            raise DomainError(f"spectrum not real positive: {z}")
    spectrum = sorted(((z.real, m) for z, m in spectrum), key=lambda t: -t[0])
    if sum(m for _, m in spectrum) != n:
        raise VerificationError("multiplicities do not sum to n")
    groups = []
    for lam, m in spectrum:
        A = np.linalg.matrix_power(values - lam * np.eye(n), m)
        groups.append((lam, _null_space(A, m, f"eigenvalue {lam}").real))
    return EigenSplit(groups, tol, [m for _, m in spectrum])


def eigen_split(g, tol: float = REL_TOL) -> EigenSplit:
    """Eigenvalues (descending) and generalized eigenspaces of ``g``."""
    if not isinstance(g, TNNMatrix):
        g = TNNMatrix.from_array(g)
    if g.n > MAX_N:
        raise ValidationError(f"eigen_split limited to n <= {MAX_N}")
    if g.exact is not None:
        if _det(g.exact) == 0:
            raise DomainError("matrix is singular")
        spectrum = _exact_spectrum(g.exact)
    else:
        if abs(np.linalg.det(g.values)) < 1e-14:
            raise DomainError("matrix is singular")
        spectrum = _cluster(np.linalg.eigvals(g.values), tol)
    return _split(g.values, spectrum, tol)


def _sl_basis(n: int) -> np.ndarray:
    """Basis of trace-zero matrices, as an (n*n) x (n*n - 1) array of flattened matrices."""
    basis = []
    for i in range(n):
        for j in range(n):
            if i != j:
                E = np.zeros((n, n))
                E[i, j] = 1
                basis.append(E.ravel())
    for i in range(n - 1):
        E = np.zeros((n, n))
        E[i, i], E[i + 1, i + 1] = 1, -1
        basis.append(E.ravel())
    return np.array(basis).T


def ad_matrix(g) -> np.ndarray:
    """``Ad(g)`` on trace-zero matrices in the basis of :func:`_sl_basis`."""
    vals = np.asarray(g.values if isinstance(g, TNNMatrix) else g, dtype=float)
    n = vals.shape[0]
    B = _sl_basis(n)
    ginv = np.linalg.inv(vals)
    imgs = np.array([(vals @ B[:, k].reshape(n, n) @ ginv).ravel() for k in range(B.shape[1])]).T
    return np.linalg.lstsq(B, imgs, rcond=None)[0]


def _ad_exact(exact) -> list[list[Fraction]]:
    n = len(exact)
    g = sympy.Matrix(exact)
    ginv = g.inv()
    B = _sl_basis(n)
    cols = []
    for k in range(B.shape[1]):
        E = sympy.Matrix(n, n, [int(x) for x in B[:, k]])
        img = g * E * ginv
        # coordinates: off-diagonal entries directly, diagonal via partial sums
        coords = [img[i, j] for i in range(n) for j in range(n) if i != j]
        run = 0
        for i in range(n - 1):
            run += img[i, i]
            coords.append(run)
        cols.append(coords)
    return [[Fraction(str(cols[c][r])) for c in range(len(cols))] for r in range(len(cols))]


def subspace_distance(A: np.ndarray, B: np.ndarray) -> float:
    """Sine of the largest principal angle between column spans (1 if dimensions differ)."""
    if A.shape[1] != B.shape[1]:
        return 1.0
    if A.shape[1] == 0:
        return 0.0
    return float(np.sin(np.max(scipy.linalg.subspace_angles(A, B))))


def flag_stabilizer_basis(flag: list[np.ndarray], n: int) -> np.ndarray:
    """Trace-zero matrices preserving every subspace of ``flag``, flattened as columns."""
    dims = [0] + [F.shape[1] for F in flag] + [n]
    # orthonormal basis adapted to the whole chain
    cols = np.zeros((n, 0))
    for F in flag:
        P = F - cols @ (cols.T @ F)
        q = np.linalg.svd(P, full_matrices=False)[0][:, : F.shape[1] - cols.shape[1]]
        cols = np.hstack([cols, q])
    if cols.shape[1] < n:
        P = np.eye(n) - cols @ cols.T
        q = np.linalg.svd(P)[0][:, : n - cols.shape[1]]
        cols = np.hstack([cols, q])
    Q = cols
    block = np.zeros(n, dtype=int)
    for k in range(len(dims) - 1):
        block[dims[k]:dims[k + 1]] = k
    out = []
    Qi = Q.T
    for i in range(n):
        for j in range(n):
            if block[i] <= block[j] and i != j:
                E = np.zeros((n, n))
                E[i, j] = 1
                out.append((Q @ E @ Qi).ravel())
    for i in range(n - 1):
        E = np.zeros((n, n))
        E[i, i], E[i + 1, i + 1] = 1, -1
        out.append((Q @ E @ Qi).ravel())
    return np.array(out).T


@dataclass
class ParabolicData:
    split: EigenSplit
    flag: list[np.ndarray]
    levi_block_sizes: tuple[int, ...]
    is_full_group: bool
    is_borel: bool
    p_lie_basis: np.ndarray
    levi_lie_basis: np.ndarray
    agreement: float


def _ad_generalized(g: TNNMatrix, keep, tol: float) -> np.ndarray:
    """Sum of generalized eigenspaces of ``Ad(g)`` for eigenvalues passing ``keep``.

    An ordered real Schur form gives the invariant subspace stably; each
    computed eigenvalue is matched to its nearest root of the (exact when
    available) spectrum, so perturbed Jordan clusters stay together.
    """
    A = ad_matrix(g)
    if g.exact is not None:
        spectrum = _exact_spectrum(_ad_exact(g.exact))
    else:
        spectrum = _cluster(np.linalg.eigvals(A), tol)
    roots = np.array([z for z, _ in spectrum])
    for z in roots:
        if abs(z.imag) > 1e-7 * max(1.0, abs(z)) or z.real <= 0:
            raise DomainError(f"Ad spectrum not real positive: {z}")

    def select(re, im=0.0):
        z = complex(re, im)
        return bool(keep(roots[np.argmin(abs(roots - z))].real))

    T, Z, sdim = scipy.linalg.schur(A, output="real", sort=select)
    expected = sum(m for z, m in spectrum if keep(z.real))
    if sdim != expected:
        raise VerificationError(f"Schur selection found {sdim} eigenvalues, expected {expected}")
    return _sl_basis(g.n) @ Z[:, :sdim]


def semisimple_part(split: EigenSplit) -> np.ndarray:
    V = np.hstack([basis for _, basis in split.groups])
    D = np.diag(np.concatenate([[lam] * basis.shape[1] for lam, basis in split.groups]))
    return V @ D @ np.linalg.inv(V)


def parabolic_of(g, tol: float = REL_TOL, agree_tol: float = 1e-6) -> ParabolicData:
    if not isinstance(g, TNNMatrix):
        g = TNNMatrix.from_array(g)
    split = eigen_split(g, tol)
    n = g.n
    flag = []
    acc = np.zeros((n, 0))
    for _, basis in split.groups[:-1]:
        acc = np.hstack([acc, basis])
        flag.append(np.linalg.qr(acc)[0][:, : acc.shape[1]])
    stab = flag_stabilizer_basis(flag, n)
    p_lie = _ad_generalized(g, lambda lam: lam >= 1 - tol, tol)
    dist = subspace_distance(stab, p_lie)
    if dist > agree_tol:
        raise VerificationError(f"flag stabilizer and Ad(g) eigenspaces disagree (distance {dist})")
    levi = _ad_generalized(g, lambda lam: abs(lam - 1) <= tol, tol)
    sizes = tuple(split.multiplicities)
    return ParabolicData(split, flag, sizes, len(sizes) == 1, len(sizes) == n, p_lie, levi, dist)


def _pluecker(F: np.ndarray) -> np.ndarray:
    """Pluecker coordinates of ``span(F)``, scaled to max 1 with a positive first nonzero entry."""
    n, k = F.shape
    p = np.array([np.linalg.det(F[list(rows), :]) for rows in itertools.combinations(range(n), k)])
    p = p / np.max(np.abs(p))
    lead = next(x for x in p if abs(x) > REL_TOL)
    return p * np.sign(lead)


def borel_chart_check(g, tol: float = REL_TOL) -> dict:
    """For totally positive ``g``: ``P_g`` is a Borel with a totally positive flag."""
    if not isinstance(g, TNNMatrix):
        g = TNNMatrix.from_array(g)
    if minor_positivity(g) != TOTALLY_POSITIVE:
        raise ValidationError("borel_chart_check needs a totally positive matrix")
    data = parabolic_of(g, tol)
    if not data.is_borel:
        raise VerificationError("P_g is not a Borel subgroup for a totally positive g")
    signs = []
    for F in data.flag:
        p = _pluecker(F)
        if np.all(p > tol):
            signs.append(1)
        elif np.all(p < -tol):
            signs.append(-1)
        else:
            raise VerificationError(f"Pluecker coordinates of a flag member are not strictly one-signed: {p}")
    return {"is_borel": True, "flag_pluecker_signs": signs, "data": data}


def sl2_section_solve(z, b, c) -> tuple[float, tuple[float, float, float, float]]:
    """Point of ``B cap G_{>0}`` in SL_2 with parameters ``(b, c)`` on the Borel fixed by ``z``."""
    z, b, c = float(z), float(b), float(c)
    if min(z, b, c) <= 0:
        raise ValidationError("z, b, c must be positive")
    p = b * z + c / z
    eps = 2.0 / (p + math.sqrt(p * p + 4.0))  # positive root of eps^2 + p eps - 1
    a = eps + c / z
    d = (b * c + 1) / a
    scale = max(1.0, a * d, b * c)
    if abs(a * d - b * c - 1) > 1e-12 * scale:
        raise VerificationError("determinant is not 1")
    if min(a, b, c, d) <= 0:
        raise VerificationError("entries are not positive")
    if abs((c + d * z) - z * (a + b * z)) > 1e-10 * max(1.0, c + d * z):
        raise VerificationError("fixed-line condition fails")
    return eps, (a, b, c, d)


def _fmt(x: float) -> float:
    return float(f"{x:.12g}")


def parabolic_report(g: TNNMatrix) -> dict:
    """JSON-ready summary used by the CLI."""
    data = parabolic_of(g)
    signs = []
    for F in data.flag:
        p = _pluecker(F)
        signs.append([0 if abs(x) <= REL_TOL else (1 if x > 0 else -1) for x in p])
    return {
        "n": g.n,
        "minor_positivity": minor_positivity(g),
        "eigenvalues": [_fmt(lam) for lam in data.split.eigenvalues],
        "blocks": list(data.levi_block_sizes),
        "is_full_group": data.is_full_group,
        "is_borel": data.is_borel,
        "flag_pluecker_signs": signs,
    }
