"""Real-represented matroids.

A representation is an exact rational k x n matrix of full row rank; the
k-subsets of columns with nonzero minor are the bases of its matroid.
This module provides exact minor enumeration, determinantal measures,
orthogonal-projection representations, the operator-scaling recognizer
for strict uniform density, and membership tests for the variety of
scaled representations (equal sums of squared minors per element).

The scaling iteration itself runs in floating point; every verdict it
produces is backed by exact rational arithmetic: extracted violators are
re-verified via exact column ranks, and converged weights are promoted
to an exact integer presentation whenever the marginal equations check
out exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from . import exactla
from .matroid import (
    Matroid,
    MatroidError,
    Verdict,
    is_strictly_uniformly_dense,
)
from .measure import BasisMeasure, TooManyBases

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 10_000
DEFAULT_FALLBACK_CAP = 24
DEFAULT_MINOR_CAP = 100_000
WEIGHT_RANGE_LIMIT = 1e12

CONVERGED = "converged"
DIVERGED = "diverged"
BOUNDARY = "boundary"


class RankDeficient(MatroidError):
    """Matrix rows are linearly dependent; not a representation."""


class NotAProjection(MatroidError):
    """Matrix fails T^2 = T (or symmetry) within tolerance."""


class NotConstantDiagonal(MatroidError):
    """Projection diagonal is not constant."""


class DimensionMismatch(MatroidError):
    """Coordinate vector length does not match C(n, k)."""


class Inconclusive(MatroidError):
    """Scaling did not converge and no exact verdict was reachable."""


@dataclass(frozen=True)
class Representation:
    """Exact rational k x n matrix with full row rank."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        if not rows or not rows[0]:
            raise ValueError("representation must be a nonempty matrix")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged representation matrix")
        object.__setattr__(self, "entries", rows)
        if exactla.mat_rank(rows) != len(rows):
            raise RankDeficient(f"matrix has {len(rows)} rows but lower rank")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def column_submatrix(self, cols: Sequence[int]) -> list[list[Fraction]]:
        return [[row[c] for c in cols] for row in self.entries]

    def minor(self, cols: Sequence[int]) -> Fraction:
        if len(cols) != self.rows:
            raise ValueError("minor needs exactly k columns")
        return exactla.mat_det(self.column_submatrix(cols))

    def as_array(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries])


@dataclass(frozen=True)
class ProjectionMatrix:
    """Symmetric idempotent matrix marking matroid bases by nonsingular
    principal k x k submatrices.

    Exact entries when constructed from a rational representation;
    floating entries (with a tolerance profile) when produced by the
    scaling pipeline, whose fixed points are generally irrational.
    """

    entries: tuple[tuple, ...]
    tol: float = 0.0

    def __post_init__(self):
        n = len(self.entries)
        if any(len(r) != n for r in self.entries):
            raise ValueError("projection matrix must be square")
        exact = all(
            isinstance(x, (Fraction, int)) for row in self.entries for x in row
        )
        if exact:
            rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
            object.__setattr__(self, "entries", rows)
            if any(rows[i][j] != rows[j][i] for i in range(n) for j in range(n)):
                raise NotAProjection("matrix is not symmetric")
            if exactla.mat_mul(rows, rows) != [list(r) for r in rows]:
                raise NotAProjection("matrix is not idempotent")
        else:
            rows = tuple(tuple(float(x) for x in row) for row in self.entries)
            object.__setattr__(self, "entries", rows)
            a = self.as_array()
            tol = self.tol or 1e-10
            if np.abs(a - a.T).max() > tol:
                raise NotAProjection("matrix is not symmetric within tolerance")
            if np.abs(a @ a - a).max() > tol:
                raise NotAProjection("matrix is not idempotent within tolerance")
        object.__setattr__(self, "is_exact", exact)

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def rank(self) -> int:
        tr = self.trace()
        if isinstance(tr, Fraction):
            assert tr.denominator == 1
            return int(tr)
        k = round(tr)
        assert abs(tr - k) <= max(self.tol, 1e-8) * self.size
        return k

    def trace(self):
        return sum(self.entries[i][i] for i in range(self.size))

    def diagonal(self) -> tuple:
        return tuple(self.entries[i][i] for i in range(self.size))

    def principal_det(self, subset: Sequence[int]):
        sub = [[self.entries[i][j] for j in subset] for i in subset]
        if self.is_exact:
            return exactla.mat_det(sub)
        return float(np.linalg.det(np.array(sub, dtype=float)))

    def as_array(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries])


def matroid_from_matrix(x: Representation, *, cap: int = DEFAULT_MINOR_CAP) -> Matroid:
    """Bases are the k-column subsets with nonzero exact minor."""
    k, n = x.rows, x.cols
    if math.comb(n, k) > cap:
        raise TooManyBases(f"C({n},{k}) minors exceed the cap {cap}")
    bases = [s for s in itertools.combinations(range(n), k) if x.minor(s) != 0]
    assert bases, "full row rank guarantees at least one basis"
    return Matroid(n, tuple(bases))


def determinantal_measure(x: Representation, *, cap: int = DEFAULT_MINOR_CAP) -> BasisMeasure:
    """Squared-minor weights det(X_B)^2 on the bases of M(X), exact."""
    m = matroid_from_matrix(x, cap=cap)
    weights = tuple(x.minor(b) ** 2 for b in m.bases)
    return BasisMeasure(m, weights)


def projection(x: Representation) -> ProjectionMatrix:
    """Exact orthogonal projector onto the row space: X^T (X X^T)^-1 X."""
    xt = exactla.transpose(list(map(list, x.entries)))
    gram = exactla.mat_mul(list(map(list, x.entries)), xt)
    t = exactla.mat_mul(exactla.mat_mul(xt, exactla.mat_inverse(gram)), list(map(list, x.entries)))
    return ProjectionMatrix(tuple(tuple(row) for row in t))


def matroid_from_projection(
    t: ProjectionMatrix, *, det_tol: float = 1e-8, cap: int = DEFAULT_MINOR_CAP
) -> Matroid:
    """Bases are the k-subsets with nonsingular principal submatrix."""
    n, k = t.size, t.rank
    if math.comb(n, k) > cap:
        raise TooManyBases(f"C({n},{k}) minors exceed the cap {cap}")
    bases = []
    for s in itertools.combinations(range(n), k):
        d = t.principal_det(s)
        nonzero = d != 0 if t.is_exact else abs(d) > det_tol
        if nonzero:
            bases.append(s)
    return Matroid(n, tuple(bases))


@dataclass(frozen=True)
class ScalingResult:
    """Outcome of the operator-scaling iteration.

    converged: weights drive the projector diagonal to 1/rho within tol;
    weights_exact is the primitive integer presentation when the scaled
    determinantal measure verifies exactly.  diverged: violator is a
    subset whose density exceeds rho(E), re-verified by exact column
    ranks (violator_density None means a rank-zero subset).  boundary:
    uniformly dense but not strictly; equality_subset witnesses a
    non-component subset with density equal to rho(E).
    """

    status: str
    iterations: int
    deviation_history: tuple[float, ...]
    weights: Optional[tuple[float, ...]] = None
    weights_exact: Optional[tuple[Fraction, ...]] = None
    final_deviation: Optional[float] = None
    violator: Optional[tuple[int, ...]] = None
    violator_density: Optional[Fraction] = None
    equality_subset: Optional[tuple[int, ...]] = None


def _column_rank(x: Representation, cols: Sequence[int]) -> int:
    return exactla.mat_rank(x.column_submatrix(cols))


def _verify_exact_weights(
    x: Representation, w: Sequence[Fraction], bases: Sequence[tuple[int, ...]],
    minors_sq: Sequence[Fraction],
) -> bool:
    marg: dict[int, Fraction] = {e: Fraction(0) for e in range(x.cols)}
    for b, msq in zip(bases, minors_sq):
        weight = msq
        for e in b:
            weight *= w[e]
        for e in b:
            marg[e] += weight
    first = marg[0]
    return all(v == first for v in marg.values())


def _primitive_integer_weights(
    x: Representation, w_float: np.ndarray, bases, minors_sq
) -> Optional[tuple[Fraction, ...]]:
    """Promote float weights to the smallest integer vector that makes the
    scaled determinantal measure exactly E-uniform, if one exists."""
    scaled = w_float / w_float.min()
    for denom in (6, 12, 60, 840, 10**4, 10**6):
        cand = [Fraction(float(v)).limit_denominator(denom) for v in scaled]
        if any(c <= 0 for c in cand):
            continue
        if _verify_exact_weights(x, cand, bases, minors_sq):
            lcm = 1
            for c in cand:
                lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
            ints = [int(c * lcm) for c in cand]
            g = 0
            for v in ints:
                g = math.gcd(g, v)
            return tuple(Fraction(v // g) for v in ints)
    return None


def operator_scale(
    x: Representation,
    *,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    fallback_cap: int = DEFAULT_FALLBACK_CAP,
    minor_cap: int = DEFAULT_MINOR_CAP,
) -> ScalingResult:
    """Drive the projector diagonal of a column-scaled representation to
    the constant 1/rho, or certify that no scaling exists.

    Iteration: with current weights w, the projector of X diag(sqrt(w))
    has diagonal T_ee; update w_e <- w_e * (1/rho) / T_ee.  Convergence
    within tol certifies strict uniform density.  On stagnation or
    weight blow-up, candidate violators are read off the sorted weight
    vector (largest first) and each prefix is density-tested exactly; if
    none verifies, an exhaustive exact scan settles violator vs boundary.
    """
    k, n = x.rows, x.cols
    rho_inv = Fraction(k, n)
    rho_inv_f = k / n

    zero_cols = tuple(
        e for e in range(n) if all(row[e] == 0 for row in x.entries)
    )
    if zero_cols:
        return ScalingResult(
            DIVERGED, 0, (), violator=(zero_cols[0],), violator_density=None
        )

    xf = x.as_array()
    w = np.ones(n)
    history: list[float] = []
    iterations = 0
    blown = False
    for iterations in range(1, max_iter + 1):
        gram = (xf * w) @ xf.T
        try:
            solved = np.linalg.solve(gram, xf)
        except np.linalg.LinAlgError:
            blown = True
            break
        lev = w * np.einsum("ij,ij->j", xf, solved)
        if not np.all(np.isfinite(lev)) or lev.min() <= 0:
            blown = True
            break
        dev = float(np.abs(lev - rho_inv_f).max())
        history.append(dev)
        if dev <= tol:
            return _converged_result(x, w, iterations, history, minor_cap)
        w = w * (rho_inv_f / lev)
        w = w / w.max()
        if w.max() / w.min() > WEIGHT_RANGE_LIMIT:
            blown = True
            break

    # No convergence: extract a violator from the weight ordering.
    order = np.argsort(-w, kind="stable")
    for size in range(1, n):
        prefix = tuple(sorted(int(e) for e in order[:size]))
        r = _column_rank(x, prefix)
        if size * k > n * r:
            vdens = Fraction(size, r) if r else None
            return ScalingResult(
                DIVERGED,
                iterations,
                tuple(history),
                violator=prefix,
                violator_density=vdens,
            )

    if n <= fallback_cap:
        cert = is_strictly_uniformly_dense(
            matroid_from_matrix(x, cap=minor_cap), cap=fallback_cap
        )
        if cert.verdict is Verdict.NOT_UNIFORMLY_DENSE:
            return ScalingResult(
                DIVERGED,
                iterations,
                tuple(history),
                violator=cert.violator,
                violator_density=cert.violator_density,
            )
        if cert.verdict is Verdict.UNIFORMLY_DENSE_NOT_STRICT:
            return ScalingResult(
                BOUNDARY,
                iterations,
                tuple(history),
                weights=tuple(float(v) for v in w),
                final_deviation=history[-1] if history else None,
                equality_subset=cert.violator,
            )
        raise Inconclusive(
            "exact scan says strictly uniformly dense but the iteration "
            f"did not reach tol={tol} within {iterations} iterations"
            + (" (weight range blew up)" if blown else "")
        )
    raise Inconclusive(
        "no verified violator and the ground set exceeds the exact-fallback cap"
    )


def _converged_result(
    x: Representation, w: np.ndarray, iterations: int, history: list[float],
    minor_cap: int,
) -> ScalingResult:
    exact = None
    try:
        m = matroid_from_matrix(x, cap=minor_cap)
        minors_sq = [x.minor(b) ** 2 for b in m.bases]
        exact = _primitive_integer_weights(x, w, m.bases, minors_sq)
    except TooManyBases:
        pass
    return ScalingResult(
        CONVERGED,
        iterations,
        tuple(history),
        weights=tuple(float(v) for v in w),
        weights_exact=exact,
        final_deviation=history[-1],
    )


def scaled_representation(x: Representation, weights: Sequence[float]) -> np.ndarray:
    """Float matrix X diag(sqrt(w)); its fixed point is generally irrational."""
    return x.as_array() * np.sqrt(np.asarray(weights, dtype=float))


@dataclass(frozen=True)
class NotStrictlyUD:
    """constant_diag_projection outcome when no scaling exists."""

    scaling: ScalingResult


def constant_diag_projection(
    x: Representation,
    *,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> Union[ProjectionMatrix, NotStrictlyUD]:
    """Projection representation with constant diagonal 1/rho.

    Composes operator scaling with the projector construction; only
    strictly uniformly dense inputs admit one.
    """
    result = operator_scale(x, tol=tol, max_iter=max_iter)
    if result.status != CONVERGED:
        return NotStrictlyUD(result)
    xs = scaled_representation(x, result.weights)
    t = xs.T @ np.linalg.solve(xs @ xs.T, xs)
    t = (t + t.T) / 2
    rho_inv = x.rows / x.cols
    assert np.abs(np.diag(t) - rho_inv).max() <= max(10 * tol, 1e-9)
    assert np.abs(t @ t - t).max() <= 1e-9
    return ProjectionMatrix(tuple(tuple(float(v) for v in row) for row in t), tol=1e-9)


def plucker(x: Union[Representation, np.ndarray]) -> tuple:
    """Maximal minors in lexicographic column order.

    Exact Fractions for a Representation input; floats for a float array
    (as produced by scaled_representation).
    """
    if isinstance(x, Representation):
        return tuple(x.minor(s) for s in itertools.combinations(range(x.cols), x.rows))
    a = np.asarray(x, dtype=float)
    k, n = a.shape
    return tuple(
        float(np.linalg.det(a[:, s])) for s in itertools.combinations(range(n), k)
    )


def variety_membership_coords(
    coords: Sequence, n: int, k: int, *, tol: float = 1e-8
) -> bool:
    """Equal-squared-minor-sum conditions on a Plucker vector.

    Checks sum_{B ni e} p_B^2 = sum_{B ni e+1} p_B^2 for consecutive
    elements; exact when every coordinate is rational.  The conditions
    are homogeneous, so the projective scale of the vector is irrelevant.
    """
    subsets = list(itertools.combinations(range(n), k))
    if len(coords) != len(subsets):
        raise DimensionMismatch(
            f"expected {len(subsets)} coordinates for C({n},{k}), got {len(coords)}"
        )
    exact = all(isinstance(c, (Fraction, int)) for c in coords)
    if exact:
        sums = [Fraction(0)] * n
        for s, c in zip(subsets, coords):
            c2 = Fraction(c) ** 2
            for e in s:
                sums[e] += c2
        return all(sums[e] == sums[0] for e in range(1, n))
    sums = [0.0] * n
    for s, c in zip(subsets, coords):
        c2 = float(c) ** 2
        for e in s:
            sums[e] += c2
    scale = max(1.0, max(sums))
    return all(abs(sums[e] - sums[0]) <= tol * scale for e in range(1, n))


def variety_membership_matrix(entries, *, tol: float = 1e-8) -> bool:
    """Is a symmetric constant-diagonal matrix an orthogonal projector?

    Such matrices are exactly the projection representations of strictly
    uniformly dense matroids of size n and rank n * diagonal.
    """
    rows = list(entries)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("matrix form must be square")
    exact = all(isinstance(v, (Fraction, int)) for r in rows for v in r)
    if exact:
        m = [[Fraction(v) for v in r] for r in rows]
        d = m[0][0]
        if any(m[i][i] != d for i in range(n)):
            return False
        if (d * n).denominator != 1:
            return False
        if any(m[i][j] != m[j][i] for i in range(n) for j in range(n)):
            return False
        return exactla.mat_mul(m, m) == m
    a = np.array([[float(v) for v in r] for r in rows])
    diag = np.diag(a)
    if np.abs(diag - diag[0]).max() > tol:
        return False
    if abs(diag[0] * n - round(diag[0] * n)) > tol * n:
        return False
    if np.abs(a - a.T).max() > tol:
        return False
    return bool(np.abs(a @ a - a).max() <= tol)


@dataclass(frozen=True)
class PrincipalRankReport:
    holds: bool
    counterexample: Optional[tuple[int, ...]] = None
    rank_found: Optional[int] = None
    rank_required: Optional[Fraction] = None


def principal_rank_bounds(
    t: ProjectionMatrix, *, cap: int = 20, rank_tol: float = 1e-8
) -> PrincipalRankReport:
    """Every proper principal m x m submatrix has rank >= m k / n.

    Requires a constant-diagonal projector (the bound is the rank form
    of uniform density of the represented matroid).
    """
    n, k = t.size, t.rank
    diag = t.diagonal()
    if t.is_exact:
        if any(d != diag[0] for d in diag):
            raise NotConstantDiagonal("projector diagonal is not constant")
    elif max(abs(float(d) - float(diag[0])) for d in diag) > max(t.tol, 1e-8):
        raise NotConstantDiagonal("projector diagonal is not constant within tolerance")
    if n > cap:
        raise TooManyBases(f"{n} columns exceed the principal-submatrix cap {cap}")
    for size in range(1, n):
        for s in itertools.combinations(range(n), size):
            sub = [[t.entries[i][j] for j in s] for i in s]
            if t.is_exact:
                r = exactla.mat_rank(sub)
            else:
                sv = np.linalg.svd(np.array(sub, dtype=float), compute_uv=False)
                r = int((sv > rank_tol).sum())
            if r * n < size * k:
                return PrincipalRankReport(False, s, r, Fraction(size * k, n))
    return PrincipalRankReport(True)
