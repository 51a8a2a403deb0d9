"""Normalized and edge Laplacians of graphs.

Rank and nullity decisions are exact: every operator carries a rational
companion matrix with the same rank (the combinatorial Laplacian D - A
for the vertex operator, the operator itself for the edge operator).
Eigenvalues are floating point, computed by cyclic Jacobi rotations; the
normalized-Laplacian entries involve square roots of degrees, so no
exact representation of the operator itself is attempted.

The nullity identities n0(L) = component count and n0(L1) = independent
cycle count turn uniform density into subset conditions on Laplacian
ranks; those conditions are checked here and cross-validated against
the density oracle.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

import numpy as np

from . import exactla
from .graphs import (
    Graph,
    GraphError,
    GroundSetTooLarge,
    MatroidError,
    boundary,
    components,
    edge_subgraph,
    graph_density,
    is_uniformly_dense_graph,
    rank_of,
    tree_packing,
)
from .matroid import Certificate, Verdict, _better_candidate, _mask_to_tuple

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
DEFAULT_SPECTRAL_EDGE_CAP = 18


class IsolatedVertex(GraphError):
    """Laplacian operators need every vertex to have positive degree."""


class NoConvergence(GraphError):
    """Jacobi iteration failed to reach the off-diagonal tolerance."""


@dataclass(frozen=True)
class SymMatrix:
    """Symmetric operator with a float view and an exact rank companion.

    ``exact`` holds the rational entries when the operator has them (the
    edge Laplacian does; the normalized Laplacian does not).
    ``rank_companion`` is a rational matrix with the same rank as the
    operator, which keeps nullity computations exact either way.
    """

    floats: tuple[tuple[float, ...], ...]
    rank_companion: tuple[tuple[Fraction, ...], ...]
    exact: Optional[tuple[tuple[Fraction, ...], ...]] = None

    def __post_init__(self):
        n = len(self.floats)
        if any(len(r) != n for r in self.floats):
            raise ValueError("SymMatrix must be square")
        a = self.as_array()
        assert np.array_equal(a, a.T), "SymMatrix must be exactly symmetric"

    @property
    def dim(self) -> int:
        return len(self.floats)

    def as_array(self) -> np.ndarray:
        return np.array(self.floats, dtype=float)

    @cached_property
    def nullity(self) -> int:
        return self.dim - exactla.mat_rank(self.rank_companion)


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[float, ...]
    nullity: int


def _require_positive_degrees(g: Graph) -> tuple[int, ...]:
    deg = g.degrees()
    isolated = [v for v, d in enumerate(deg) if d == 0]
    if isolated:
        raise IsolatedVertex(
            f"vertices {isolated} are isolated; restrict to the edge support first"
        )
    return deg


def normalized_laplacian(g: Graph) -> SymMatrix:
    """Symmetric form I - D^(-1/2) A D^(-1/2); same spectrum as I - A D^(-1).

    The rank companion is the combinatorial Laplacian D - A, congruent to
    the operator, so nullity (the component count) stays exact.
    """
    deg = _require_positive_degrees(g)
    n = g.vertex_count
    a = np.zeros((n, n))
    comb = [[Fraction(0)] * n for _ in range(n)]
    for u, v in g.edges:
        a[u, v] = a[v, u] = -1.0 / math.sqrt(deg[u] * deg[v])
        comb[u][v] -= 1
        comb[v][u] -= 1
    for v in range(n):
        a[v, v] = 1.0
        comb[v][v] = Fraction(deg[v])
    return SymMatrix(
        tuple(tuple(row) for row in a), tuple(tuple(r) for r in comb)
    )


def edge_laplacian(g: Graph) -> SymMatrix:
    """Edge-space operator N^T D^(-1) N, exact rationals.

    N is the signed incidence matrix with the fixed orientation +1 at the
    lower endpoint.  Reorienting edges conjugates by a diagonal sign
    matrix, so the spectrum does not depend on the convention.
    """
    deg = _require_positive_degrees(g)
    m = g.edge_count
    rows = [[Fraction(0)] * m for _ in range(m)]
    for i, (u1, v1) in enumerate(g.edges):
        for j, (u2, v2) in enumerate(g.edges):
            if j < i:
                continue
            val = Fraction(0)
            for vert, sign1 in ((u1, 1), (v1, -1)):
                sign2 = 1 if vert == u2 else (-1 if vert == v2 else 0)
                if sign2:
                    val += Fraction(sign1 * sign2, deg[vert])
            rows[i][j] = rows[j][i] = val
    floats = tuple(tuple(float(x) for x in row) for row in rows)
    rational = tuple(tuple(row) for row in rows)
    return SymMatrix(floats, rational, exact=rational)


def nullity(sym: SymMatrix) -> int:
    """Exact rank deficiency, from the rational companion."""
    return sym.nullity


def jacobi_eigenvalues(
    sym: SymMatrix | np.ndarray,
    *,
    tol: float = JACOBI_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> tuple[float, ...]:
    """All eigenvalues by cyclic Jacobi rotations, sorted ascending.

    Sweeps rotate every off-diagonal pair until the off-diagonal
    Frobenius norm drops to tol; raises NoConvergence at the sweep cap.
    """
    a = sym.as_array().copy() if isinstance(sym, SymMatrix) else np.array(sym, dtype=float)
    n = a.shape[0]
    if n == 1:
        return (float(a[0, 0]),)
    for _ in range(max_sweeps):
        # off-diagonal Frobenius norm, summed directly (no cancellation)
        strict = a - np.diag(np.diag(a))
        off = math.sqrt(float((strict * strict).sum()))
        if off <= tol:
            return tuple(sorted(float(x) for x in np.diag(a)))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                app, aqq = a[p, p], a[q, q]
                if abs(apq) <= 1e-18 * max(1.0, abs(app) + abs(aqq)):
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = (aqq - app) / (2.0 * apq)
                if abs(theta) > 1e8:
                    # asymptotic rotation; avoids overflow in theta * theta
                    t = 1.0 / (2.0 * theta)
                else:
                    t = math.copysign(1.0, theta) / (
                        abs(theta) + math.sqrt(theta * theta + 1.0)
                    )
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = a[q, p] = 0.0
    raise NoConvergence(f"Jacobi did not reach off-norm {tol} in {max_sweeps} sweeps")


def eigen_max(
    sym: SymMatrix,
    *,
    tol: float = JACOBI_TOL,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> float:
    """Largest eigenvalue via cyclic Jacobi."""
    return jacobi_eigenvalues(sym, tol=tol, max_sweeps=max_sweeps)[-1]


def spectrum(sym: SymMatrix, *, zero_tol: float = 1e-8) -> Spectrum:
    """Eigenvalues plus the exact nullity; the two must agree on zeros."""
    eig = jacobi_eigenvalues(sym)
    null = sym.nullity
    near_zero = sum(1 for x in eig if abs(x) <= zero_tol)
    assert near_zero == null, f"nullity {null} but {near_zero} near-zero eigenvalues"
    return Spectrum(eig, null)


@dataclass(frozen=True)
class SpectralUDResult:
    consistent: bool
    ground_density: Fraction
    violator: Optional[tuple[int, ...]] = None
    violator_density: Optional[Fraction] = None

    def certificate(self) -> Certificate:
        if self.consistent:
            return Certificate(Verdict.UNIFORMLY_DENSE, self.ground_density)
        return Certificate(
            Verdict.NOT_UNIFORMLY_DENSE,
            self.ground_density,
            self.violator,
            self.violator_density,
        )


def spectral_ud_check(
    g: Graph, *, cap: int = DEFAULT_SPECTRAL_EDGE_CAP
) -> SpectralUDResult:
    """Uniform density via Laplacian rank/nullity subset conditions.

    For every nonempty edge set A the rank drop of the normalized
    Laplacian must stay within (|E|-|A|)/rho, and the edge-Laplacian
    nullity ratio n0(L1(G|A))/|A| must not exceed n0(L1(G))/|E|.  Both
    reduce exactly to the density inequalities, so ranks are evaluated
    through the combinatorial identities; a deterministic sample of
    subsets is additionally checked by exact elimination on the actual
    operators.
    """
    m = g.edge_count
    if m == 0:
        return SpectralUDResult(True, Fraction(0))
    if m > cap:
        raise GroundSetTooLarge(f"{m} edges exceed the spectral subset cap {cap}")
    rho = graph_density(g)
    k = rank_of(g)
    best = None
    for mask in range(1, 1 << m):
        subset = _mask_to_tuple(mask)
        r = rank_of(g, subset)
        size = len(subset)
        # rank(L(G)) - rank(L(G|A)) <= (|E|-|A|)/rho  and the nullity-ratio
        # condition both reduce to  size * k > m * r  on violation.
        if size * k > m * r:
            cand = (size, r, mask)
            if _better_candidate(cand, best):
                best = cand

    # Exact-elimination spot checks of the identities the scan relies on.
    rng = random.Random(0)
    samples = {(1 << m) - 1}
    target = min(6, (1 << m) - 1)
    while len(samples) < target:
        samples.add(rng.randrange(1, 1 << m))
    for mask in sorted(samples):
        subset = _mask_to_tuple(mask)
        sub, _ = edge_subgraph(g, subset)
        lap = normalized_laplacian(sub)
        assert sub.vertex_count - lap.nullity == rank_of(g, subset)
        el = edge_laplacian(sub)
        assert el.nullity == len(subset) - rank_of(g, subset)

    if best is None:
        return SpectralUDResult(True, rho)
    size, r, mask = best
    return SpectralUDResult(False, rho, _mask_to_tuple(mask), Fraction(size, r))


@dataclass(frozen=True)
class BoundCheck:
    name: str
    lhs: float
    rhs: float
    holds: bool
    subset: Optional[tuple[int, ...]] = None


@dataclass(frozen=True)
class LambdaMaxReport:
    lambda_max: float
    density: Fraction
    uniformly_dense: Optional[bool]
    global_lower: BoundCheck
    boundary_worst: Optional[BoundCheck]
    subgraph_worst: Optional[BoundCheck]
    subgraph_violations: tuple[BoundCheck, ...]
    packing_bound: Optional[BoundCheck]
    tree_packing: Optional[int]


def _subset_collection(g: Graph, subsets: str, cap: int) -> list[tuple[int, ...]]:
    m = g.edge_count
    if subsets == "all":
        if m > cap:
            raise GroundSetTooLarge(f"{m} edges exceed the subset cap {cap}")
        return [_mask_to_tuple(mask) for mask in range(1, 1 << m)]
    if subsets == "connected":
        from .graphs import _connected_induced_candidates, two_core

        cands = _connected_induced_candidates(g, two_core(g))
        out = sorted({emask for _, _, emask in cands})
        return [_mask_to_tuple(x) for x in out] or [tuple(range(m))]
    if subsets.startswith("sample:"):
        count = int(subsets.split(":", 1)[1])
        rng = random.Random(0)
        chosen = {(1 << m) - 1}
        limit = min(count, (1 << m) - 1) if m < 30 else count
        while len(chosen) < limit:
            chosen.add(rng.randrange(1, 1 << m))
        return [_mask_to_tuple(x) for x in sorted(chosen)]
    raise ValueError(f"unknown subset mode {subsets!r}")


def lambda_max_bounds(
    g: Graph,
    *,
    subsets: str = "sample:64",
    cap: int = DEFAULT_SPECTRAL_EDGE_CAP,
) -> LambdaMaxReport:
    """Evaluate the lambda-max lower bounds against the graph spectrum.

    Always checked: lambda_max(G) >= 2/rho(G), and the boundary-corrected
    bound 2/rho(A) * |A|/(|A|+|boundary(A)|) over the subset collection.
    When the graph is uniformly dense: lambda_max(G|A) >= 2/rho(G) per
    subset (a violation is a certificate of non-uniform-density), and the
    tree-packing strengthening with (floor(rho)-1) extra mass per
    component.  Subsets: "all", "connected" or "sample:N".
    """
    if g.edge_count == 0:
        raise GraphError("lambda_max bounds need at least one edge")
    rho = graph_density(g)
    lam = eigen_max(normalized_laplacian(edge_subgraph(g, range(g.edge_count))[0]))
    global_rhs = 2 / float(rho)
    global_check = BoundCheck("lambda_max >= 2/rho", lam, global_rhs, lam >= global_rhs - 1e-9)

    try:
        ud = is_uniformly_dense_graph(g).is_uniformly_dense
    except MatroidError:
        ud = None

    collection = _subset_collection(g, subsets, cap)
    boundary_worst = None
    subgraph_worst = None
    violations = []
    for a in collection:
        size = len(a)
        r = rank_of(g, a)
        if r == 0:
            continue
        rho_a = Fraction(size, r)
        rhs = 2 / float(rho_a) * size / (size + len(boundary(g, a)))
        check = BoundCheck("lambda_max >= boundary bound", lam, rhs, lam >= rhs - 1e-9, a)
        assert check.holds, f"boundary bound failed on subset {a}"
        if boundary_worst is None or rhs > boundary_worst.rhs:
            boundary_worst = check
        sub, _ = edge_subgraph(g, a)
        lam_a = eigen_max(normalized_laplacian(sub))
        sub_check = BoundCheck(
            "lambda_max(G|A) >= 2/rho(G)", lam_a, global_rhs, lam_a >= global_rhs - 1e-9, a
        )
        if subgraph_worst is None or (lam_a - global_rhs) < (
            subgraph_worst.lhs - subgraph_worst.rhs
        ):
            subgraph_worst = sub_check
        if not sub_check.holds:
            violations.append(sub_check)
    if ud:
        assert not violations, "uniformly dense graph violated the subgraph bound"

    packing = None
    packing_check = None
    if ud:
        packing = tree_packing(g)
        assert packing >= math.floor(rho), "tree packing below floor(rho)"
        rhs = 2 / float(rho) + 2 * (math.floor(rho) - 1) * components(g) / g.edge_count
        packing_check = BoundCheck(
            "lambda_max >= packing-strengthened bound", lam, rhs, lam >= rhs - 1e-9
        )
        assert packing_check.holds
    return LambdaMaxReport(
        lam,
        rho,
        ud,
        global_check,
        boundary_worst,
        subgraph_worst,
        tuple(violations),
        packing_check,
        packing,
    )
