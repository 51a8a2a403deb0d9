"""Named example graphs and matroids used across tests and the CLI.

Two labelings of the chorded square are provided because the projector
and scaling fixtures are tied to which diagonal carries the chord: with
chord (0, 2) the spanning trees are every 3-subset except {0,1,4} and
{2,3,4}; with chord (1, 3) the excluded triples are {0,3,4} and {1,2,4}.
"""

from __future__ import annotations

import hashlib
import itertools
import json

from .graphs import Graph
from .matroid import Matroid


def tadpole_graph() -> Graph:
    """Triangle with a pendant edge; the pendant edge has index 0."""
    return Graph(4, ((0, 1), (1, 2), (2, 3), (1, 3)))


def tadpole_matroid() -> Matroid:
    """Rank-3 matroid on 4 elements whose element 0 is a coloop."""
    return Matroid(4, ((0, 1, 2), (0, 1, 3), (0, 2, 3)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))


def hypercube_graph(dim: int) -> Graph:
    n = 1 << dim
    edges = []
    for v in range(n):
        for b in range(dim):
            u = v ^ (1 << b)
            if v < u:
                edges.append((v, u))
    return Graph(n, tuple(edges))


def chorded_square(chord: tuple[int, int] = (0, 2)) -> Graph:
    """The 4-cycle 0-1-2-3 plus one diagonal, as edge index 4."""
    if tuple(sorted(chord)) not in ((0, 2), (1, 3)):
        raise ValueError("chord must be one of the two diagonals (0,2) or (1,3)")
    return Graph(4, ((0, 1), (1, 2), (2, 3), (0, 3), tuple(sorted(chord))))


def theta_graph(l1: int, l2: int, l3: int) -> Graph:
    """Three internally disjoint paths of the given lengths joined at both
    ends; length 0 collapses the junctions into one vertex (two cycles).

    Edges are laid out path by path in ascending length order.  Simple
    graphs require at most one length-1 path and no length-2 cycles.
    """
    lengths = sorted((l1, l2, l3))
    if lengths[0] < 0:
        raise ValueError("path lengths must be nonnegative")
    if lengths[0] == 0:
        if lengths[1] < 3 or lengths[2] < 3:
            raise ValueError("cycles at a shared vertex need length >= 3")
        a = b = 0
        nxt = 1
        lengths = lengths[1:]
    else:
        if lengths[1] < 2:
            raise ValueError("at most one path may have length 1")
        a, b = 0, 1
        nxt = 2
    edges: list[tuple[int, int]] = []
    for length in lengths:
        if length == 0:
            continue
        prev = a
        for step in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, b))
    return Graph(nxt, tuple(edges))


def clique_sharing_cycle_edge(clique: int, cycle: int) -> Graph:
    """Complete graph and a cycle glued along one common edge.

    Vertices 0..clique-1 form the clique; the cycle runs through the
    shared edge (0, 1) and cycle-2 extra vertices.
    """
    if clique < 3 or cycle < 3:
        raise ValueError("need clique >= 3 and cycle >= 3")
    edges = list(itertools.combinations(range(clique), 2))
    prev = 1
    for i in range(cycle - 2):
        nxt = clique + i
        edges.append((prev, nxt) if prev < nxt else (nxt, prev))
        prev = nxt
    edges.append((0, prev))
    return Graph(clique + cycle - 2, tuple(edges))


_CORPUS = {
    "tadpole_graph": tadpole_graph,
    "tadpole_matroid": tadpole_matroid,
    "cycle_4": lambda: cycle_graph(4),
    "complete_4": lambda: complete_graph(4),
    "hypercube_3": lambda: hypercube_graph(3),
    "path_4": lambda: path_graph(4),
    "chorded_square_02": lambda: chorded_square((0, 2)),
    "chorded_square_13": lambda: chorded_square((1, 3)),
    "theta_044": lambda: theta_graph(0, 4, 4),
    "theta_336": lambda: theta_graph(3, 3, 6),
    "theta_236": lambda: theta_graph(2, 3, 6),
    "clique5_cycle20": lambda: clique_sharing_cycle_edge(5, 20),
}


def corpus_hash() -> str:
    """Stable digest of the bundled example corpus (for --version)."""
    blob = {}
    for name, make in sorted(_CORPUS.items()):
        obj = make()
        if isinstance(obj, Graph):
            blob[name] = {"n": obj.vertex_count, "edges": list(map(list, obj.edges))}
        else:
            blob[name] = {"n": obj.ground_size, "bases": list(map(list, obj.bases))}
    digest = hashlib.sha256(json.dumps(blob, sort_keys=True).encode()).hexdigest()
    return digest[:16]
