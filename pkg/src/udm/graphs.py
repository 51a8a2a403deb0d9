"""Graphs as matroid sources.

Simple undirected graphs (no loops, no parallel edges) with 0-based
vertex and edge indices.  The cycle matroid has the spanning forests as
bases; a graph is uniformly dense when that matroid is.

The exhaustive density check does not walk all 2^m edge subsets: every
density-maximal edge set is a connected induced subgraph with minimum
internal degree two, so it suffices to enumerate connected induced
subgraphs of the 2-core.  That keeps the 29-edge clique-plus-cycle
example in easy reach while agreeing subset-for-subset with the matroid
kernel on small inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional

from .exactla import mat_det
from .matroid import (
    Certificate,
    GroundSetTooLarge,
    Matroid,
    MatroidError,
    Verdict,
    _better_candidate,
    _mask_of,
    _mask_to_tuple,
)

DEFAULT_EDGE_CAP = 24
DEFAULT_FOREST_CAP = 100_000
DEFAULT_VERTEX_CAP = 20


class GraphError(MatroidError):
    """Base class for graph-layer errors."""


class EmptyEdgeSet(GraphError):
    """Operation needs at least one edge."""


class VertexCapExceeded(GraphError):
    """Exhaustive vertex-subset search refused beyond the cap."""


class TooManyForests(GraphError):
    """Spanning-forest count exceeds the basis cap."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: vertex count plus an ordered edge list."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        norm = []
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop edge ({u},{v}) not allowed")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u},{v}) outside vertex range")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency_masks(self) -> tuple[int, ...]:
        masks = [0] * self.vertex_count
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)


class _DSU:
    __slots__ = ("parent", "groups")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.groups = n

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def merge(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[ry] = rx
        self.groups -= 1
        return True


def _edge_subset(g: Graph, subset: Optional[Iterable[int]]) -> list[int]:
    if subset is None:
        return list(range(g.edge_count))
    idx = sorted(set(subset))
    if idx and (idx[0] < 0 or idx[-1] >= g.edge_count):
        raise ValueError("edge index outside range")
    return idx


def components(g: Graph, subset: Optional[Iterable[int]] = None) -> int:
    """Number of connected components of (V, A), isolated vertices included."""
    dsu = _DSU(g.vertex_count)
    for i in _edge_subset(g, subset):
        u, v = g.edges[i]
        dsu.merge(u, v)
    return dsu.groups


def rank_of(g: Graph, subset: Optional[Iterable[int]] = None) -> int:
    """Cycle-matroid rank of an edge subset: |V| - c(A)."""
    return g.vertex_count - components(g, subset)


def betti(g: Graph, subset: Optional[Iterable[int]] = None) -> int:
    """Number of independent cycles in an edge subset: |A| - rank(A)."""
    idx = _edge_subset(g, subset)
    return len(idx) - rank_of(g, idx)


def graph_density(g: Graph) -> Fraction:
    """|E| / rank(G), exact."""
    if g.edge_count == 0:
        raise EmptyEdgeSet("graph density needs at least one edge")
    return Fraction(g.edge_count, rank_of(g))


def edge_subgraph(g: Graph, subset: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Graph induced by an edge subset with isolated vertices removed.

    Returns the relabelled graph and the kept original vertex indices in
    increasing order (position = new index).
    """
    idx = _edge_subset(g, subset)
    verts = sorted({v for i in idx for v in g.edges[i]})
    remap = {v: i for i, v in enumerate(verts)}
    edges = tuple((remap[g.edges[i][0]], remap[g.edges[i][1]]) for i in idx)
    return Graph(len(verts), edges), tuple(verts)


def boundary(g: Graph, subset: Iterable[int]) -> tuple[int, ...]:
    """Edges outside A with at least one endpoint among A's vertices."""
    idx = set(_edge_subset(g, subset))
    verts = {v for i in idx for v in g.edges[i]}
    return tuple(
        i for i, (u, v) in enumerate(g.edges) if i not in idx and (u in verts or v in verts)
    )


# ---------------------------------------------------------------------------
# Spanning forests and the cycle matroid
# ---------------------------------------------------------------------------


def matrix_tree_count(g: Graph) -> int:
    """Number of spanning forests via the Matrix-Tree theorem.

    Product over connected components of a cofactor of the component's
    combinatorial Laplacian, computed exactly.
    """
    dsu = _DSU(g.vertex_count)
    for u, v in g.edges:
        dsu.merge(u, v)
    comps: dict[int, list[int]] = {}
    for v in range(g.vertex_count):
        comps.setdefault(dsu.find(v), []).append(v)
    total = 1
    for verts in comps.values():
        if len(verts) == 1:
            continue
        pos = {v: i for i, v in enumerate(verts)}
        d = len(verts)
        lap = [[Fraction(0)] * d for _ in range(d)]
        for u, v in g.edges:
            if u in pos and v in pos:
                iu, iv = pos[u], pos[v]
                lap[iu][iu] += 1
                lap[iv][iv] += 1
                lap[iu][iv] -= 1
                lap[iv][iu] -= 1
        minor = [row[1:] for row in lap[1:]]
        det = mat_det(minor)
        assert det.denominator == 1
        total *= int(det)
    return total


def spanning_forests(g: Graph, *, cap: int = DEFAULT_FOREST_CAP) -> list[int]:
    """All spanning forests as edge bitmasks, by contraction/deletion.

    Each edge in index order is either contracted into the forest or
    deleted; deletion is only allowed when the remaining edges still have
    full rank, so every leaf of the recursion is a distinct forest.
    """
    m = g.edge_count
    full_rank = rank_of(g)
    out: list[int] = []

    def remaining_rank(start: int, dsu: _DSU) -> int:
        probe = _DSU(g.vertex_count)
        probe.parent = list(dsu.parent)
        probe.groups = dsu.groups
        r = 0
        for i in range(start, m):
            u, v = g.edges[i]
            if probe.merge(u, v):
                r += 1
        return r

    def recurse(i: int, chosen: int, count: int, dsu: _DSU) -> None:
        if count == full_rank:
            out.append(chosen)
            if len(out) > cap:
                raise TooManyForests(f"spanning-forest count exceeds cap {cap}")
            return
        if i == m:
            return
        u, v = g.edges[i]
        joins = dsu.find(u) != dsu.find(v)
        if count + remaining_rank(i + 1, dsu) >= full_rank:
            recurse(i + 1, chosen, count, dsu)
        if joins:
            child = _DSU(g.vertex_count)
            child.parent = list(dsu.parent)
            child.groups = dsu.groups
            child.merge(u, v)
            recurse(i + 1, chosen | (1 << i), count + 1, child)

    if full_rank == 0:
        return [0]
    recurse(0, 0, 0, _DSU(g.vertex_count))
    return out


def cycle_matroid(g: Graph, *, cap: int = DEFAULT_FOREST_CAP) -> Matroid:
    """Matroid whose bases are the spanning forests of the graph.

    The enumeration count is cross-checked against the Matrix-Tree
    determinant on every call.
    """
    if g.edge_count == 0:
        raise EmptyEdgeSet("cycle matroid of an edgeless graph is empty")
    forests = spanning_forests(g, cap=cap)
    assert len(forests) == matrix_tree_count(g), "forest count disagrees with Matrix-Tree"
    return Matroid(g.edge_count, tuple(_mask_to_tuple(f) for f in forests))


# ---------------------------------------------------------------------------
# Uniform density
# ---------------------------------------------------------------------------


def two_core(g: Graph) -> tuple[int, ...]:
    """Vertices remaining after iteratively peeling degree <= 1 vertices."""
    deg = list(g.degrees())
    alive = [True] * g.vertex_count
    queue = [v for v in range(g.vertex_count) if deg[v] <= 1]
    while queue:
        v = queue.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for u, w in g.edges:
            if v in (u, w):
                other = w if v == u else u
                if alive[other]:
                    deg[other] -= 1
                    if deg[other] <= 1:
                        queue.append(other)
    return tuple(v for v in range(g.vertex_count) if alive[v])


def _connected_induced_candidates(g: Graph, verts: Iterable[int]):
    """All connected induced subgraphs of g[verts] that contain an edge,
    as (edge_count, vertex_count, edge_mask) triples.

    Exclusive-neighbourhood extension rooted at the smallest vertex, so
    each subgraph is produced exactly once.
    """
    vert_mask = _mask_of(verts, g.vertex_count)
    adj = [g.adjacency_masks[v] & vert_mask if vert_mask >> v & 1 else 0
           for v in range(g.vertex_count)]

    def edge_bits(w: int, members: int) -> tuple[int, int]:
        mask = 0
        count = 0
        nbrs = adj[w] & members
        while nbrs:
            u = (nbrs & -nbrs).bit_length() - 1
            nbrs &= nbrs - 1
            mask |= 1 << g.edge_index[(u, w) if u < w else (w, u)]
            count += 1
        return mask, count

    results: list[tuple[int, int, int]] = []

    def extend(members: int, nverts: int, emask: int, ecount: int,
               ext: int, nbhd: int, floor_mask: int) -> None:
        if ecount:
            results.append((ecount, nverts, emask))
        while ext:
            w = (ext & -ext).bit_length() - 1
            ext &= ext - 1
            add_mask, add_count = edge_bits(w, members)
            exclusive = adj[w] & ~members & ~nbhd & ~floor_mask
            extend(members | (1 << w), nverts + 1, emask | add_mask,
                   ecount + add_count, ext | exclusive, nbhd | adj[w], floor_mask)

    vm = vert_mask
    while vm:
        v = (vm & -vm).bit_length() - 1
        vm &= vm - 1
        floor = (1 << (v + 1)) - 1
        extend(1 << v, 1, 0, 0, adj[v] & ~floor, adj[v], floor)
    return results


def is_uniformly_dense_graph(
    g: Graph,
    *,
    mode: str = "auto",
    cap: int = DEFAULT_EDGE_CAP,
    tol: float = 1e-10,
    max_iter: int = 10_000,
) -> Certificate:
    """Uniform-density certificate for a graph.

    mode "exhaustive" scans connected induced subgraphs of the 2-core
    (every density-maximal edge set is of that form); mode "scaling"
    runs operator scaling on the reduced incidence matrix and verifies
    any extracted violator exactly; "auto" picks exhaustive when the
    edge count is within the cap.
    """
    if mode not in ("auto", "exhaustive", "scaling"):
        raise ValueError(f"unknown mode {mode!r}")
    if g.edge_count == 0:
        return Certificate(Verdict.UNIFORMLY_DENSE, None)
    if mode == "auto":
        mode = "exhaustive" if g.edge_count <= cap else "scaling"

    rho = graph_density(g)
    if betti(g) == 0:
        # Forest: every nonempty subset has density exactly 1.
        return Certificate(Verdict.UNIFORMLY_DENSE, rho)

    if mode == "scaling":
        return _scaling_verdict(g, rho, tol, max_iter)

    if g.edge_count > cap:
        raise GroundSetTooLarge(
            f"{g.edge_count} edges exceed the exhaustive cap {cap}"
        )
    core = two_core(g)
    k = rank_of(g)
    m = g.edge_count
    best = None
    for ecount, nverts, emask in _connected_induced_candidates(g, core):
        cand = (ecount, nverts - 1, emask)
        if ecount * k > m * (nverts - 1) and _better_candidate(cand, best):
            best = cand
    if best is None:
        return Certificate(Verdict.UNIFORMLY_DENSE, rho)
    size, r, mask = best
    return Certificate(
        Verdict.NOT_UNIFORMLY_DENSE, rho, _mask_to_tuple(mask), Fraction(size, r)
    )


def _scaling_verdict(g: Graph, rho: Fraction, tol: float, max_iter: int) -> Certificate:
    from .representable import BOUNDARY, CONVERGED, DIVERGED, operator_scale

    result = operator_scale(reduced_incidence_matrix(g), tol=tol, max_iter=max_iter)
    if result.status == DIVERGED:
        return Certificate(
            Verdict.NOT_UNIFORMLY_DENSE, rho, result.violator, result.violator_density
        )
    assert result.status in (CONVERGED, BOUNDARY)
    return Certificate(Verdict.UNIFORMLY_DENSE, rho)


def check_ud_by_component_counts(
    g: Graph, *, cap: int = DEFAULT_EDGE_CAP
) -> Certificate:
    """Uniform density via counting new components under edge removal.

    Checks c(E\\A) - c(E) <= |A| / rho(G) for every proper edge subset A
    by direct enumeration; a failing A is reported through its dense
    complement so certificates line up with the density route.
    """
    if g.edge_count > cap:
        raise GroundSetTooLarge(f"{g.edge_count} edges exceed the cap {cap}")
    if g.edge_count == 0:
        return Certificate(Verdict.UNIFORMLY_DENSE, None)
    rho = graph_density(g)
    m = g.edge_count
    k = rank_of(g)
    c_full = components(g)
    best = None
    for removed in range(1, 1 << m):
        kept = ((1 << m) - 1) & ~removed
        dsu = _DSU(g.vertex_count)
        for i in range(m):
            if kept >> i & 1:
                dsu.merge(*g.edges[i])
        new_comps = dsu.groups - c_full
        rsize = removed.bit_count()
        # c(E\A) - c(E) > |A| / rho  <=>  new_comps * m > rsize * k
        if new_comps * m > rsize * k:
            size = m - rsize
            cand = (size, k - new_comps, kept)
            if _better_candidate(cand, best):
                best = cand
    if best is None:
        return Certificate(Verdict.UNIFORMLY_DENSE, rho)
    size, r, mask = best
    return Certificate(
        Verdict.NOT_UNIFORMLY_DENSE, rho, _mask_to_tuple(mask), Fraction(size, r)
    )


# ---------------------------------------------------------------------------
# Structural screens and the two-cycle classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScreenReport:
    """Cheap necessary conditions for uniform density."""

    density: Fraction
    min_degree: int
    min_degree_ok: bool
    clique_number: int
    clique_ok: bool
    girth: Optional[int]
    girth_ok: bool

    @property
    def passes(self) -> bool:
        return self.min_degree_ok and self.clique_ok and self.girth_ok


def clique_number(g: Graph) -> int:
    """Largest clique size, by Bron-Kerbosch with pivoting."""
    if g.vertex_count == 0:
        return 0
    best = 1
    adj = g.adjacency_masks

    def bk(r_size: int, p: int, x: int) -> None:
        nonlocal best
        if p == 0 and x == 0:
            best = max(best, r_size)
            return
        if r_size + p.bit_count() <= best:
            return
        pivot_candidates = p | x
        pivot = (pivot_candidates & -pivot_candidates).bit_length() - 1
        cand = p & ~adj[pivot]
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            bk(r_size + 1, p & adj[v], x & adj[v])
            p &= ~(1 << v)
            x |= 1 << v
    bk(0, (1 << g.vertex_count) - 1, 0)
    return best


def girth(g: Graph) -> Optional[int]:
    """Length of a shortest cycle, or None for forests (BFS per vertex)."""
    best: Optional[int] = None
    for s in range(g.vertex_count):
        dist = {s: 0}
        parent = {s: -1}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                nbrs = g.adjacency_masks[u]
                while nbrs:
                    v = (nbrs & -nbrs).bit_length() - 1
                    nbrs &= nbrs - 1
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        parent[v] = u
                        nxt.append(v)
                    elif v != parent[u]:
                        cyc = dist[u] + dist[v] + 1
                        if best is None or cyc < best:
                            best = cyc
            frontier = nxt
    return best


def structural_screen(g: Graph) -> ScreenReport:
    """Evaluate the min-degree, clique and girth necessary conditions.

    Any failure certifies the graph is not uniformly dense.  The minimum
    degree is taken over non-isolated vertices (isolated vertices do not
    affect the cycle matroid); the girth screen is vacuous for forests.
    """
    rho = graph_density(g)
    deg = [d for d in g.degrees() if d > 0]
    delta = min(deg)
    cl = clique_number(g)
    gir = girth(g)
    min_degree_ok = delta >= rho
    clique_ok = Fraction(cl) <= 2 * rho
    if gir is None or rho == 1:
        girth_ok = True
    else:
        girth_ok = Fraction(gir) >= rho / (rho - 1)
    return ScreenReport(rho, delta, min_degree_ok, cl, clique_ok, gir, girth_ok)


@dataclass(frozen=True)
class BicyclicResult:
    """Outcome of the two-cycle classification.

    kind is "ud" or "not_ud" when the graph decomposes into three paths
    identified at their ends (lengths sorted ascending; a zero length
    means two cycles sharing a single vertex), and "not_bicyclic"
    otherwise.  A connected beta=2 graph with a bridge cannot be
    decomposed; the bridge is reported and such graphs are never
    uniformly dense (a bridge is a coloop).
    """

    kind: str
    lengths: Optional[tuple[int, int, int]] = None
    cut_edge: Optional[tuple[int, int]] = None
    reason: str = ""


def bridges(g: Graph) -> list[int]:
    """Edge indices whose removal increases the component count."""
    base = components(g)
    out = []
    for i in range(g.edge_count):
        if components(g, [j for j in range(g.edge_count) if j != i]) > base:
            out.append(i)
    return out


def classify_bicyclic(g: Graph) -> BicyclicResult:
    """Classify connected graphs with exactly two independent cycles.

    Such a graph is uniformly dense iff it is three paths identified at
    their ends with sorted lengths satisfying L3 - L2 <= L1.
    """
    if g.edge_count == 0 or components(g) != 1:
        return BicyclicResult("not_bicyclic", reason="graph is not connected")
    if betti(g) != 2:
        return BicyclicResult("not_bicyclic", reason=f"beta = {betti(g)}, not 2")
    cut = bridges(g)
    if cut:
        return BicyclicResult(
            "not_bicyclic",
            cut_edge=g.edges[cut[0]],
            reason="has a cut edge, so it is not three paths joined at their ends",
        )
    deg = g.degrees()
    junctions = [v for v in range(g.vertex_count) if deg[v] >= 3]

    def walk(start: int, first: int) -> tuple[int, list[int]]:
        # Follow degree-2 vertices from `start` along edge index `first`.
        path = [first]
        a, b = g.edges[first]
        prev, cur = start, (b if a == start else a)
        while cur not in junctions:
            nbrs = g.adjacency_masks[cur]
            nxt = None
            while nbrs:
                w = (nbrs & -nbrs).bit_length() - 1
                nbrs &= nbrs - 1
                if w != prev:
                    nxt = w
                    break
            assert nxt is not None
            path.append(g.edge_index[(cur, nxt) if cur < nxt else (nxt, cur)])
            prev, cur = cur, nxt
        return cur, path

    if len(junctions) == 2:
        u = junctions[0]
        chains = []
        used: set[int] = set()
        nbrs = g.adjacency_masks[u]
        while nbrs:
            w = (nbrs & -nbrs).bit_length() - 1
            nbrs &= nbrs - 1
            e = g.edge_index[(u, w) if u < w else (w, u)]
            if e in used:
                continue
            end, path = walk(u, e)
            assert end == junctions[1]
            used.update(path)
            chains.append(path)
        assert len(chains) == 3 and sum(map(len, chains)) == g.edge_count
        lengths = tuple(sorted(map(len, chains)))
    else:
        assert len(junctions) == 1 and deg[junctions[0]] == 4
        u = junctions[0]
        cycles: list[frozenset[int]] = []
        nbrs = g.adjacency_masks[u]
        while nbrs:
            w = (nbrs & -nbrs).bit_length() - 1
            nbrs &= nbrs - 1
            e = g.edge_index[(u, w) if u < w else (w, u)]
            end, path = walk(u, e)
            assert end == u
            key = frozenset(path)
            if key not in cycles:
                cycles.append(key)
        assert len(cycles) == 2 and sum(map(len, cycles)) == g.edge_count
        lengths = tuple(sorted([0] + [len(c) for c in cycles]))

    l1, l2, l3 = lengths
    kind = "ud" if l3 - l2 <= l1 else "not_ud"
    return BicyclicResult(kind, lengths=(l1, l2, l3))


# ---------------------------------------------------------------------------
# Toughness, matchings, tree packing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ToughnessResult:
    holds: bool
    t: Fraction
    counterexample: Optional[tuple[int, ...]] = None
    components_after: Optional[int] = None


def toughness_verify(
    g: Graph, t: Fraction, *, cap: int = DEFAULT_VERTEX_CAP
) -> ToughnessResult:
    """Exhaustively check t-toughness.

    Whenever removing a vertex set U disconnects the remainder (at least
    two components), the count must satisfy c(G - U) <= |U| / t.
    Complete graphs pass vacuously since no removal disconnects them.
    The counterexample, if any, is the smallest such U (then lexicographic).
    """
    t = Fraction(t)
    if t <= 0:
        raise ValueError("toughness threshold must be positive")
    if g.vertex_count > cap:
        raise VertexCapExceeded(f"{g.vertex_count} vertices exceed the cap {cap}")
    for size in range(0, g.vertex_count + 1):
        for u_set in itertools.combinations(range(g.vertex_count), size):
            removed = set(u_set)
            dsu = _DSU(g.vertex_count)
            for x, y in g.edges:
                if x not in removed and y not in removed:
                    dsu.merge(x, y)
            comps = dsu.groups - len(removed)
            if comps >= 2 and comps * t > size:
                return ToughnessResult(False, t, u_set, comps)
    return ToughnessResult(True, t)


@dataclass(frozen=True)
class MatchingResult:
    """kind is "perfect", "near_perfect" or "neither"."""

    kind: str
    matching: Optional[tuple[tuple[int, int], ...]] = None
    per_vertex: Optional[dict[int, tuple[tuple[int, int], ...]]] = None


def _perfect_matching(adj: tuple[int, ...], active_mask: int):
    """Perfect matching on the active vertex set, or None (memoised search)."""
    memo: dict[int, Optional[tuple]] = {}

    def solve(mask: int):
        if mask == 0:
            return ()
        got = memo.get(mask)
        if mask in memo:
            return got
        v = (mask & -mask).bit_length() - 1
        nbrs = adj[v] & mask
        while nbrs:
            u = (nbrs & -nbrs).bit_length() - 1
            nbrs &= nbrs - 1
            rest = solve(mask & ~(1 << v) & ~(1 << u))
            if rest is not None:
                memo[mask] = ((v, u),) + rest
                return memo[mask]
        memo[mask] = None
        return None

    return solve(active_mask)


def near_perfect_matching(
    g: Graph, *, cap: int = DEFAULT_VERTEX_CAP
) -> MatchingResult:
    """Perfect matching, or (odd order) a perfect matching of G - v for
    every vertex v, or neither."""
    n = g.vertex_count
    if n > cap:
        raise VertexCapExceeded(f"{n} vertices exceed the cap {cap}")
    full = (1 << n) - 1
    adj = g.adjacency_masks
    if n % 2 == 0:
        pm = _perfect_matching(adj, full)
        if pm is not None:
            return MatchingResult("perfect", matching=tuple(sorted(pm)))
        return MatchingResult("neither")
    per_vertex = {}
    for v in range(n):
        pm = _perfect_matching(adj, full & ~(1 << v))
        if pm is None:
            return MatchingResult("neither")
        per_vertex[v] = tuple(sorted(pm))
    return MatchingResult("near_perfect", per_vertex=per_vertex)


def tutte_witness(g: Graph, *, cap: int = DEFAULT_VERTEX_CAP) -> Optional[tuple[int, ...]]:
    """A vertex set U with more odd components in G - U than |U|.

    Such a set exists exactly when the graph has no perfect matching
    (Tutte's condition), and it is checkable in a single pass.  Returns
    the smallest such U, or None when a perfect matching exists.
    """
    n = g.vertex_count
    if n > cap:
        raise VertexCapExceeded(f"{n} vertices exceed the cap {cap}")
    for size in range(0, n + 1):
        for u_set in itertools.combinations(range(n), size):
            removed = set(u_set)
            dsu = _DSU(n)
            for x, y in g.edges:
                if x not in removed and y not in removed:
                    dsu.merge(x, y)
            comp_sizes: dict[int, int] = {}
            for v in range(n):
                if v not in removed:
                    r = dsu.find(v)
                    comp_sizes[r] = comp_sizes.get(r, 0) + 1
            odd = sum(1 for s in comp_sizes.values() if s % 2 == 1)
            if odd > size:
                return u_set
    return None


def tree_packing(g: Graph, *, cap: int = 20_000) -> int:
    """Maximum number of edge-disjoint spanning forests, by backtracking.

    Forests are chosen in strictly ascending bitmask order, which removes
    permutation symmetry from the search.
    """
    k = rank_of(g)
    if k == 0:
        return 0
    forests = spanning_forests(g, cap=cap)
    forests.sort()
    upper = g.edge_count // k

    def extend(used: int, start: int, remaining: int) -> bool:
        if remaining == 0:
            return True
        for i in range(start, len(forests)):
            f = forests[i]
            if used & f == 0 and extend(used | f, i + 1, remaining - 1):
                return True
        return False

    for t in range(upper, 0, -1):
        if extend(0, 0, t):
            return t
    return 0


def reduced_incidence_matrix(g: Graph):
    """Signed incidence matrix with one row deleted per component.

    Edge {u, v} with u < v gets +1 at u and -1 at v; the lowest-index
    vertex of every connected component is dropped.  The result is a
    full-row-rank exact representation of the cycle matroid.
    """
    from .representable import Representation

    if g.edge_count == 0:
        raise EmptyEdgeSet("incidence matrix needs at least one edge")
    dsu = _DSU(g.vertex_count)
    for u, v in g.edges:
        dsu.merge(u, v)
    drop = set()
    seen_roots: set[int] = set()
    for v in range(g.vertex_count):
        r = dsu.find(v)
        if r not in seen_roots:
            seen_roots.add(r)
            drop.add(v)
    rows = []
    for v in range(g.vertex_count):
        if v in drop:
            continue
        row = []
        for u, w in g.edges:
            if v == u:
                row.append(Fraction(1))
            elif v == w:
                row.append(Fraction(-1))
            else:
                row.append(Fraction(0))
        rows.append(row)
    return Representation(tuple(tuple(r) for r in rows))
