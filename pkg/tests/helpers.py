"""Shared test utilities: exhaustive generators and independent oracles.

Everything here is deliberately written as brute force, separate from the
library's own algorithms, so tests compare two independent routes.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from udm.graphs import Graph, _DSU
from udm.matroid import Matroid, UnequalCardinality, ExchangeViolation, validate_matroid


# ---------------------------------------------------------------------------
# Graph generation up to isomorphism
# ---------------------------------------------------------------------------


def _invariant(n: int, edges: frozenset[tuple[int, int]]):
    deg = [0] * n
    adj = [set() for _ in range(n)]
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
        adj[u].add(v)
        adj[v].add(u)
    triangles = sum(
        1
        for u, v in edges
        for w in adj[u]
        if w in adj[v]
    )
    per_vertex = sorted(
        (deg[v], tuple(sorted(deg[u] for u in adj[v]))) for v in range(n)
    )
    return (n, len(edges), triangles, tuple(per_vertex))


def _isomorphic(n: int, e1: frozenset, e2: frozenset) -> bool:
    """Backtracking isomorphism test for small graphs."""
    adj1 = [set() for _ in range(n)]
    adj2 = [set() for _ in range(n)]
    for u, v in e1:
        adj1[u].add(v)
        adj1[v].add(u)
    for u, v in e2:
        adj2[u].add(v)
        adj2[v].add(u)
    deg1 = [len(a) for a in adj1]
    deg2 = [len(a) for a in adj2]
    if sorted(deg1) != sorted(deg2):
        return False
    order = sorted(range(n), key=lambda v: -deg1[v])
    mapping = [-1] * n
    used = [False] * n

    def place(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in range(n):
            if used[w] or deg1[v] != deg2[w]:
                continue
            ok = True
            for u in adj1[v]:
                mu = mapping[u]
                if mu != -1 and mu not in adj2[w]:
                    ok = False
                    break
            if ok:
                for u in range(n):
                    if mapping[u] != -1 and u not in adj1[v] and mapping[u] in adj2[w]:
                        ok = False
                        break
            if ok:
                mapping[v] = w
                used[w] = True
                if place(i + 1):
                    return True
                mapping[v] = -1
                used[w] = False
        return False

    return place(0)


def connected_graphs(max_edges: int) -> list[Graph]:
    """Every connected graph with 1..max_edges edges, up to isomorphism.

    Grown edge-by-edge from a single edge: each graph with m+1 edges
    arises from one with m edges by adding an edge between existing
    vertices or hanging a new leaf, so iterating that closure is
    exhaustive.
    """
    seed = (2, frozenset({(0, 1)}))
    seen: dict[tuple, list[tuple[int, frozenset]]] = {_invariant(*seed): [seed]}
    out = [seed]
    frontier = [seed]
    while frontier:
        nxt = []
        for n, edges in frontier:
            if len(edges) == max_edges:
                continue
            candidates = []
            for u, v in itertools.combinations(range(n), 2):
                if (u, v) not in edges:
                    candidates.append((n, edges | {(u, v)}))
            for v in range(n):
                candidates.append((n + 1, edges | {(v, n)}))
            for cand in candidates:
                key = _invariant(*cand)
                bucket = seen.setdefault(key, [])
                if any(_isomorphic(cand[0], cand[1], e) for nn, e in bucket if nn == cand[0]):
                    continue
                bucket.append(cand)
                out.append(cand)
                nxt.append(cand)
        frontier = nxt
    graphs = []
    for n, edges in out:
        graphs.append(Graph(n, tuple(sorted(edges))))
    return graphs


def random_graph(rng: random.Random, max_vertices: int = 8, p: float = 0.45) -> Graph:
    n = rng.randint(2, max_vertices)
    edges = [
        (u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p
    ]
    if not edges:
        edges = [(0, 1)]
    return Graph(n, tuple(edges))


# ---------------------------------------------------------------------------
# Matroid generation
# ---------------------------------------------------------------------------


def all_matroids(n: int) -> list[Matroid]:
    """Every labeled matroid on ground set {0..n-1} (base-exchange filter)."""
    out = []
    for k in range(0, n + 1):
        subsets = list(itertools.combinations(range(n), k))
        for bits in range(1, 1 << len(subsets)):
            bases = [subsets[i] for i in range(len(subsets)) if bits >> i & 1]
            try:
                out.append(validate_matroid(n, bases))
            except (UnequalCardinality, ExchangeViolation):
                continue
    return out


def matroid_iso_classes(matroids: list[Matroid]) -> list[Matroid]:
    """One representative per isomorphism class (brute-force relabeling)."""
    reps: dict[tuple, Matroid] = {}
    for m in matroids:
        n = m.ground_size
        best = None
        for perm in itertools.permutations(range(n)):
            key = tuple(sorted(tuple(sorted(perm[e] for e in b)) for b in m.bases))
            if best is None or key < best:
                best = key
        reps.setdefault((n, best), m)
    return list(reps.values())


def brute_force_ud(m: Matroid) -> tuple[bool, Fraction | None]:
    """Direct scan of all nonempty subsets; independent of the kernel scan."""
    if m.rank == 0:
        return True, None
    n, k = m.ground_size, m.rank
    worst: Fraction | None = None
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            r = max(len(set(b) & set(subset)) for b in m.bases)
            if r == 0:
                return False, None
            d = Fraction(size, r)
            if worst is None or d > worst:
                worst = d
    return worst <= Fraction(n, k), worst


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------


def set_partitions(items: list[int]):
    """All partitions of a list (for the tree-packing oracle)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def tree_packing_oracle(g: Graph) -> int:
    """Tutte/Nash-Williams formula, evaluated per connected component:
    max packing = min over vertex partitions of floor(cross / (parts-1))."""
    dsu = _DSU(g.vertex_count)
    for u, v in g.edges:
        dsu.merge(u, v)
    comps: dict[int, list[int]] = {}
    for v in range(g.vertex_count):
        comps.setdefault(dsu.find(v), []).append(v)
    best = None
    for verts in comps.values():
        if len(verts) == 1:
            continue
        for part in set_partitions(verts):
            if len(part) < 2:
                continue
            cls = {}
            for i, block in enumerate(part):
                for v in block:
                    cls[v] = i
            cross = sum(1 for u, v in g.edges if cls.get(u) is not None
                        and cls.get(v) is not None and cls[u] != cls[v])
            value = cross // (len(part) - 1)
            if best is None or value < best:
                best = value
    return best if best is not None else 0


def lp_vertex_oracle(a, b, c):
    """Minimum of c.x over all basic feasible solutions of Ax=b, x>=0.

    Valid for full-row-rank systems; returns None when no BFS is feasible
    (infeasible problem).
    """
    from udm import exactla

    m, n = len(a), len(a[0])
    best = None
    for cols in itertools.combinations(range(n), m):
        square = [[a[i][j] for j in cols] for i in range(m)]
        if exactla.mat_det(square) == 0:
            continue
        inv = exactla.mat_inverse(square)
        xs = [sum(inv[i][j] * b[j] for j in range(m)) for i in range(m)]
        if any(x < 0 for x in xs):
            continue
        value = sum(c[col] * x for col, x in zip(cols, xs))
        if best is None or value < best:
            best = value
    return best


def random_full_rank_matrix(rng: random.Random, k: int, n: int, lo=-3, hi=3):
    """Random exact rational k x n matrix of full row rank."""
    from udm import exactla
    from udm.representable import Representation

    while True:
        rows = tuple(
            tuple(Fraction(rng.randint(lo, hi)) for _ in range(n)) for _ in range(k)
        )
        if exactla.mat_rank(rows) == k:
            return Representation(rows)
