"""Command-line front end.

Exit codes: 0 the property holds or the computation succeeded, 1 the
property fails (a re-verifiable certificate is embedded in the report),
2 usage or parse error, 3 inconclusive (an enumeration cap was hit).

Reports are deterministic JSON (sorted keys) by default; --format text
renders the same payload as indented key/value lines.  The environment
variable UDM_SUBSET_CAP overrides the exhaustive-enumeration cap; an
explicit --subset-cap flag wins over both.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import __version__, catalog, graphs, io, matroid, measure, representable, spectral
from .graphs import Graph
from .matroid import Certificate, Matroid, MatroidError, Verdict

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

_CAP_ERRORS = (
    matroid.GroundSetTooLarge,
    measure.TooManyBases,
    graphs.TooManyForests,
    graphs.VertexCapExceeded,
    representable.Inconclusive,
)


def _cap(args, default: int) -> int:
    """Cap precedence: explicit --subset-cap, then UDM_SUBSET_CAP, then the
    per-command default (24 for element scans, 18 spectral, 20 vertex)."""
    if args.subset_cap is not None:
        return args.subset_cap
    env = os.environ.get("UDM_SUBSET_CAP")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise io.ParseError(f"UDM_SUBSET_CAP={env!r} is not an integer")
    return default


class _Inputs:
    """Resolved input object plus its kind."""

    def __init__(self, args):
        self.one_indexed = args.one_indexed
        given = [
            (kind, getattr(args, kind))
            for kind in ("matroid", "graph", "matrix", "projection")
            if getattr(args, kind, None)
        ]
        if len(given) != 1:
            raise io.ParseError("exactly one input (--matroid/--graph/--matrix/--projection) is required")
        self.kind, self.path = given[0]
        if self.kind == "matroid":
            self.obj = io.load_matroid(self.path, one_indexed=self.one_indexed)
        elif self.kind == "graph":
            self.obj = io.load_graph(self.path, one_indexed=self.one_indexed)
        elif self.kind == "matrix":
            self.obj = io.load_representation(self.path)
        else:
            self.obj = io.load_projection(self.path)

    def as_matroid(self) -> Matroid:
        if self.kind == "matroid":
            return self.obj
        if self.kind == "graph":
            return graphs.cycle_matroid(self.obj)
        if self.kind == "matrix":
            return representable.matroid_from_matrix(self.obj)
        return representable.matroid_from_projection(self.obj)

    def require(self, *kinds: str):
        if self.kind not in kinds:
            raise io.ParseError(
                f"this command needs {' or '.join('--' + k for k in kinds)}"
            )
        return self.obj


def _emit(args, payload: dict) -> None:
    payload = dict(payload)
    payload["version"] = __version__
    text = io.render_json(payload) if args.format == "json" else io.render_text(payload)
    sys.stdout.write(text)


def _density_certificate(cert: Certificate, one_indexed: bool, kind: str) -> dict:
    out = io.dump_certificate(cert, one_indexed=one_indexed)
    if cert.violator is not None:
        out["certificate"] = {
            "kind": "equality_subset"
            if cert.verdict is Verdict.UNIFORMLY_DENSE_NOT_STRICT
            else "density_violation",
            "subset": [io._shift_out(e, one_indexed) for e in cert.violator],
            "density": "infinite"
            if cert.violator_density is None
            else io.fraction_to_str(cert.violator_density),
            "ground_density": io.fraction_to_str(cert.ground_density),
            "input_kind": kind,
        }
    return out


def _attach_witness(cert: Certificate, m: Optional[Matroid]) -> Certificate:
    if m is None or not cert.is_uniformly_dense or len(m.bases) > 500:
        return cert
    found = measure.find_e_uniform_measure(m)
    if isinstance(found, measure.BasisMeasure):
        return Certificate(
            cert.verdict, cert.ground_density, cert.violator, cert.violator_density, found
        )
    return cert


def cmd_check_ud(args) -> int:
    inputs = _Inputs(args)
    cap = _cap(args, matroid.DEFAULT_GROUND_CAP)
    if inputs.kind == "graph":
        cert = graphs.is_uniformly_dense_graph(
            inputs.obj, mode=args.mode, cap=cap, tol=args.tol, max_iter=args.max_iter
        )
        m = None
        if cert.is_uniformly_dense and inputs.obj.edge_count <= cap:
            try:
                m = graphs.cycle_matroid(inputs.obj, cap=501)
            except graphs.TooManyForests:
                m = None
    else:
        m = inputs.as_matroid()
        cert = matroid.is_uniformly_dense(m, cap=cap, threads=args.threads)
    cert = _attach_witness(cert, m)
    payload = _density_certificate(cert, args.one_indexed, inputs.kind)
    if cert.witness is not None:
        payload["certificate"] = {
            "kind": "e_uniform_measure",
            "input_kind": inputs.kind,
            "measure": io.dump_measure(cert.witness, one_indexed=args.one_indexed),
        }
    payload["command"] = "check-ud"
    _emit(args, payload)
    return EXIT_OK if cert.is_uniformly_dense else EXIT_FAIL


def cmd_check_strict_ud(args) -> int:
    inputs = _Inputs(args)
    cap = _cap(args, matroid.DEFAULT_GROUND_CAP)
    use_scaling = args.mode == "scaling" or (
        args.mode == "auto"
        and inputs.kind in ("graph", "matrix")
        and (inputs.kind == "matrix" or inputs.obj.edge_count > cap)
    )
    if use_scaling and inputs.kind in ("graph", "matrix"):
        return _strict_by_scaling(args, inputs)
    m = inputs.as_matroid()
    cert = matroid.is_strictly_uniformly_dense(m, cap=cap, threads=args.threads)
    payload = _density_certificate(cert, args.one_indexed, inputs.kind)
    payload["command"] = "check-strict-ud"
    _emit(args, payload)
    return (
        EXIT_OK
        if cert.verdict is Verdict.STRICTLY_UNIFORMLY_DENSE
        else EXIT_FAIL
    )


def _strict_by_scaling(args, inputs: _Inputs) -> int:
    """Strict uniform density through the scaling recognizer: convergence
    is the interior certificate, divergence yields an exact violator and
    boundary cases surface the equality subset."""
    x = (
        graphs.reduced_incidence_matrix(inputs.obj)
        if inputs.kind == "graph"
        else inputs.obj
    )
    result = representable.operator_scale(
        x,
        tol=args.tol,
        max_iter=args.max_iter,
        fallback_cap=_cap(args, representable.DEFAULT_FALLBACK_CAP),
    )
    rho = Fraction(x.cols, x.rows)
    payload: dict = {"command": "check-strict-ud", "mode": "scaling"}
    if result.status == representable.CONVERGED:
        payload["verdict"] = Verdict.STRICTLY_UNIFORMLY_DENSE.value
        payload["ground_density"] = io.fraction_to_str(rho)
        payload["certificate"] = {
            "kind": "scaling_converged",
            "weights": list(result.weights),
            "tol": args.tol,
            "input_kind": inputs.kind,
        }
        _emit(args, payload)
        return EXIT_OK
    if result.status == representable.DIVERGED:
        cert = Certificate(
            Verdict.NOT_UNIFORMLY_DENSE, rho, result.violator, result.violator_density
        )
    else:
        cert = Certificate(
            Verdict.UNIFORMLY_DENSE_NOT_STRICT, rho, result.equality_subset, rho
        )
    payload.update(_density_certificate(cert, args.one_indexed, inputs.kind))
    _emit(args, payload)
    return EXIT_FAIL


def cmd_density(args) -> int:
    inputs = _Inputs(args)
    m = inputs.as_matroid()
    if args.subset:
        try:
            subset = [
                io._shift_in(int(s), args.one_indexed) for s in args.subset.split(",")
            ]
        except ValueError:
            raise io.ParseError(f"--subset {args.subset!r} is not a comma-separated index list")
    else:
        subset = list(range(m.ground_size))
    value = matroid.density(m, subset)
    _emit(
        args,
        {
            "command": "density",
            "subset": [io._shift_out(e, args.one_indexed) for e in subset],
            "rank": matroid.rank(m, subset),
            "density": io.fraction_to_str(value),
        },
    )
    return EXIT_OK


def cmd_dual(args) -> int:
    inputs = _Inputs(args)
    m = inputs.require("matroid")
    _emit(
        args,
        {
            "command": "dual",
            "matroid": io.dump_matroid(matroid.dual(m), one_indexed=args.one_indexed),
        },
    )
    return EXIT_OK


def cmd_measure(args) -> int:
    inputs = _Inputs(args)
    m = inputs.as_matroid()
    finder = measure.find_positive_measure if args.positive else measure.find_e_uniform_measure
    found = finder(m)
    if isinstance(found, measure.BasisMeasure):
        _emit(
            args,
            {
                "command": "measure",
                "positive": args.positive,
                "found": True,
                "measure": io.dump_measure(found, one_indexed=args.one_indexed),
                "certificate": {
                    "kind": "e_uniform_measure",
                    "input_kind": inputs.kind,
                    "measure": io.dump_measure(found, one_indexed=args.one_indexed),
                },
            },
        )
        return EXIT_OK
    payload = {"command": "measure", "positive": args.positive, "found": False}
    if isinstance(found, measure.Infeasible) and found.certificate is not None:
        payload.update(
            _density_certificate(found.certificate, args.one_indexed, inputs.kind)
        )
    if isinstance(found, measure.NotStrict):
        payload["max_min_weight"] = io.fraction_to_str(found.max_min_weight)
        if found.measure is not None:
            payload["boundary_measure"] = io.dump_measure(
                found.measure, one_indexed=args.one_indexed
            )
        strict = matroid.is_strictly_uniformly_dense(
            m, cap=_cap(args, matroid.DEFAULT_GROUND_CAP)
        )
        if strict.violator is not None:
            payload.update(
                _density_certificate(strict, args.one_indexed, inputs.kind)
            )
    _emit(args, payload)
    return EXIT_FAIL


def cmd_scale(args) -> int:
    inputs = _Inputs(args)
    if inputs.kind == "graph":
        x = graphs.reduced_incidence_matrix(inputs.obj)
    else:
        x = inputs.require("matrix")
    result = representable.operator_scale(
        x,
        tol=args.tol,
        max_iter=args.max_iter,
        fallback_cap=_cap(args, representable.DEFAULT_FALLBACK_CAP),
    )
    payload: dict = {
        "command": "scale",
        "status": result.status,
        "iterations": result.iterations,
        "tol": args.tol,
    }
    if result.weights is not None:
        payload["weights"] = list(result.weights)
        payload["final_deviation"] = result.final_deviation
    if result.weights_exact is not None:
        payload["weights_exact"] = [io.fraction_to_str(w) for w in result.weights_exact]
    if result.status == representable.CONVERGED:
        payload["diagonal"] = io.fraction_to_str(Fraction(x.rows, x.cols))
        if result.weights_exact is not None:
            m = representable.matroid_from_matrix(x)
            weights = {
                b: x.minor(b) ** 2
                * math.prod((result.weights_exact[e] for e in b), start=Fraction(1))
                for b in m.bases
            }
            mu = measure.BasisMeasure.from_mapping(m, weights).normalized()
            payload["measure"] = io.dump_measure(mu, one_indexed=args.one_indexed)
        payload["certificate"] = {
            "kind": "scaling_converged",
            "weights": list(result.weights),
            "tol": args.tol,
            "input_kind": inputs.kind,
        }
        _emit(args, payload)
        return EXIT_OK
    if result.status == representable.DIVERGED:
        payload["violator"] = [io._shift_out(e, args.one_indexed) for e in result.violator]
        payload["certificate"] = {
            "kind": "density_violation",
            "subset": payload["violator"],
            "density": "infinite"
            if result.violator_density is None
            else io.fraction_to_str(result.violator_density),
            "ground_density": io.fraction_to_str(Fraction(x.cols, x.rows)),
            "input_kind": inputs.kind,
        }
    else:
        payload["equality_subset"] = [
            io._shift_out(e, args.one_indexed) for e in result.equality_subset
        ]
        payload["certificate"] = {
            "kind": "equality_subset",
            "subset": payload["equality_subset"],
            "density": io.fraction_to_str(Fraction(x.cols, x.rows)),
            "ground_density": io.fraction_to_str(Fraction(x.cols, x.rows)),
            "input_kind": inputs.kind,
        }
    _emit(args, payload)
    return EXIT_FAIL


def cmd_projection(args) -> int:
    inputs = _Inputs(args)
    x = inputs.require("matrix")
    t = representable.projection(x)
    _emit(
        args,
        {
            "command": "projection",
            "size": t.size,
            "rank": t.rank,
            "entries": [[io.fraction_to_str(v) for v in row] for row in t.entries],
            "diagonal": [io.fraction_to_str(v) for v in t.diagonal()],
        },
    )
    return EXIT_OK


def cmd_variety(args) -> int:
    # --projection input is loaded raw: whether the matrix is an actual
    # constant-diagonal projector is exactly the membership question
    if args.projection:
        if args.matroid or args.graph or args.matrix:
            raise io.ParseError("variety takes exactly one input")
        entries = io.load_square_matrix(args.projection)
        member = representable.variety_membership_matrix(entries, tol=args.tol)
        payload = {
            "command": "variety",
            "form": "projection",
            "n": len(entries),
            "member": member,
            "tol": args.tol,
        }
        _emit(args, payload)
        return EXIT_OK if member else EXIT_FAIL
    inputs = _Inputs(args)
    x = inputs.require("matrix")
    coords = representable.plucker(x)
    member = representable.variety_membership_coords(
        coords, x.cols, x.rows, tol=args.tol
    )
    payload = {
        "command": "variety",
        "form": "plucker",
        "n": x.cols,
        "k": x.rows,
        "member": member,
        "plucker": [io.fraction_to_str(c) for c in coords],
        "tol": args.tol,
    }
    _emit(args, payload)
    return EXIT_OK if member else EXIT_FAIL


def cmd_spectral(args) -> int:
    inputs = _Inputs(args)
    g = inputs.require("graph")
    report = spectral.lambda_max_bounds(
        g, subsets=args.subsets, cap=_cap(args, spectral.DEFAULT_SPECTRAL_EDGE_CAP)
    )
    sub, _ = graphs.edge_subgraph(g, range(g.edge_count))
    payload = {
        "command": "spectral",
        "lambda_max": report.lambda_max,
        "density": io.fraction_to_str(report.density),
        "uniformly_dense": report.uniformly_dense,
        "component_nullity": spectral.normalized_laplacian(sub).nullity,
        "cycle_nullity": spectral.edge_laplacian(sub).nullity,
        "global_bound": _bound_dict(report.global_lower, args.one_indexed),
        "boundary_bound_worst": _bound_dict(report.boundary_worst, args.one_indexed),
        "subgraph_bound_worst": _bound_dict(report.subgraph_worst, args.one_indexed),
        "violations": [
            _bound_dict(v, args.one_indexed) for v in report.subgraph_violations
        ],
        "tree_packing": report.tree_packing,
        "packing_bound": _bound_dict(report.packing_bound, args.one_indexed),
    }
    if report.subgraph_violations:
        worst = report.subgraph_violations[0]
        payload["certificate"] = {
            "kind": "density_violation",
            "subset": [io._shift_out(e, args.one_indexed) for e in worst.subset],
            "density": io.fraction_to_str(
                Fraction(len(worst.subset), graphs.rank_of(g, worst.subset))
            ),
            "ground_density": io.fraction_to_str(report.density),
            "input_kind": "graph",
        }
    _emit(args, payload)
    return EXIT_FAIL if report.subgraph_violations else EXIT_OK


def _bound_dict(check, one_indexed: bool):
    if check is None:
        return None
    out = {
        "name": check.name,
        "lhs": check.lhs,
        "rhs": check.rhs,
        "holds": check.holds,
    }
    if check.subset is not None:
        out["subset"] = [io._shift_out(e, one_indexed) for e in check.subset]
    return out


def cmd_classify_bicyclic(args) -> int:
    inputs = _Inputs(args)
    g = inputs.require("graph")
    result = graphs.classify_bicyclic(g)
    payload: dict = {"command": "classify-bicyclic", "kind": result.kind}
    if result.lengths is not None:
        payload["lengths"] = list(result.lengths)
        payload["certificate"] = {
            "kind": "bicyclic_lengths",
            "lengths": list(result.lengths),
            "input_kind": "graph",
        }
    if result.cut_edge is not None:
        payload["cut_edge"] = [io._shift_out(v, args.one_indexed) for v in result.cut_edge]
        payload["certificate"] = {
            "kind": "cut_edge",
            "edge": payload["cut_edge"],
            "input_kind": "graph",
        }
    if result.reason:
        payload["reason"] = result.reason
    _emit(args, payload)
    return EXIT_OK if result.kind == "ud" else EXIT_FAIL


def cmd_toughness(args) -> int:
    inputs = _Inputs(args)
    g = inputs.require("graph")
    t = io.parse_fraction(args.t, "--t")
    result = graphs.toughness_verify(g, t, cap=_cap(args, graphs.DEFAULT_VERTEX_CAP))
    payload: dict = {"command": "toughness", "t": io.fraction_to_str(t), "holds": result.holds}
    if not result.holds:
        payload["counterexample"] = [
            io._shift_out(v, args.one_indexed) for v in result.counterexample
        ]
        payload["components_after"] = result.components_after
        payload["certificate"] = {
            "kind": "toughness_counterexample",
            "removed": payload["counterexample"],
            "components": result.components_after,
            "t": io.fraction_to_str(t),
            "input_kind": "graph",
        }
    _emit(args, payload)
    return EXIT_OK if result.holds else EXIT_FAIL


def cmd_matching(args) -> int:
    inputs = _Inputs(args)
    g = inputs.require("graph")
    result = graphs.near_perfect_matching(g, cap=_cap(args, graphs.DEFAULT_VERTEX_CAP))
    payload: dict = {"command": "matching", "kind": result.kind}
    if result.kind == "perfect":
        payload["matching"] = [list(e) for e in result.matching]
        payload["certificate"] = {
            "kind": "perfect_matching",
            "matching": payload["matching"],
            "input_kind": "graph",
        }
    elif result.kind == "near_perfect":
        payload["per_vertex"] = {
            str(io._shift_out(v, args.one_indexed)): [list(e) for e in match]
            for v, match in sorted(result.per_vertex.items())
        }
        payload["certificate"] = {
            "kind": "near_perfect_matching",
            "per_vertex": payload["per_vertex"],
            "input_kind": "graph",
        }
    else:
        witness = graphs.tutte_witness(g, cap=_cap(args, graphs.DEFAULT_VERTEX_CAP))
        payload["certificate"] = {
            "kind": "tutte_witness",
            "removed": [io._shift_out(v, args.one_indexed) for v in witness],
            "input_kind": "graph",
        }
    _emit(args, payload)
    return EXIT_OK if result.kind != "neither" else EXIT_FAIL


def cmd_tree_packing(args) -> int:
    inputs = _Inputs(args)
    g = inputs.require("graph")
    count = graphs.tree_packing(g)
    payload = {
        "command": "tree-packing",
        "count": count,
        "density": io.fraction_to_str(graphs.graph_density(g)),
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_enumerate_bases(args) -> int:
    inputs = _Inputs(args)
    m = inputs.as_matroid()
    _emit(
        args,
        {
            "command": "enumerate-bases",
            "matroid": io.dump_matroid(m, one_indexed=args.one_indexed),
            "count": len(m.bases),
        },
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    """Re-verify the certificate embedded in a previous report, one pass."""
    inputs = _Inputs(args)
    try:
        report = json.loads(Path(args.report).read_text())
    except json.JSONDecodeError as exc:
        raise io.ParseError(f"{args.report}: invalid JSON at line {exc.lineno}")
    cert = report.get("certificate")
    if cert is None:
        raise io.ParseError(f"{args.report}: report carries no certificate")
    ok = _verify_certificate(cert, inputs, args)
    _emit(args, {"command": "verify", "certificate_kind": cert.get("kind"), "valid": ok})
    return EXIT_OK if ok else EXIT_FAIL


def _subset_density(inputs: _Inputs, subset: list[int]):
    """Exact (size, rank) of a subset in the input's matroid."""
    if inputs.kind == "graph":
        return len(subset), graphs.rank_of(inputs.obj, subset)
    if inputs.kind == "matrix":
        import udm.exactla as exactla

        return len(subset), exactla.mat_rank(inputs.obj.column_submatrix(subset))
    m = inputs.as_matroid()
    return len(subset), matroid.rank(m, subset)


def _verify_certificate(cert: dict, inputs: _Inputs, args) -> bool:
    kind = cert.get("kind")
    shift = args.one_indexed
    if kind in ("density_violation", "equality_subset"):
        subset = [io._shift_in(int(e), shift) for e in cert["subset"]]
        size, r = _subset_density(inputs, subset)
        ground = Fraction(cert["ground_density"])
        if cert["density"] == "infinite":
            return r == 0 and size > 0
        claimed = Fraction(cert["density"])
        if r == 0 or Fraction(size, r) != claimed:
            return False
        return claimed > ground if kind == "density_violation" else claimed == ground
    if kind == "e_uniform_measure":
        m = inputs.as_matroid()
        mapping = {
            tuple(io._shift_in(int(e), shift) for e in item["basis"]): Fraction(item["weight"])
            for item in cert["measure"]["weights"]
        }
        mu = measure.BasisMeasure.from_mapping(m, mapping)
        return isinstance(measure.verify_measure(m, mu), measure.EUniform)
    if kind == "scaling_converged":
        x = (
            graphs.reduced_incidence_matrix(inputs.obj)
            if inputs.kind == "graph"
            else inputs.obj
        )
        import numpy as np

        xs = representable.scaled_representation(x, cert["weights"])
        t = xs.T @ np.linalg.solve(xs @ xs.T, xs)
        return bool(np.abs(np.diag(t) - x.rows / x.cols).max() <= 10 * cert["tol"])
    if kind == "toughness_counterexample":
        g: Graph = inputs.require("graph")
        removed = [io._shift_in(int(v), shift) for v in cert["removed"]]
        keep_edges = [
            i for i, (u, v) in enumerate(g.edges) if u not in removed and v not in removed
        ]
        comps = graphs.components(g, keep_edges) - len(removed)
        t = Fraction(cert["t"])
        return comps == cert["components"] and comps >= 2 and comps * t > len(removed)
    if kind == "perfect_matching":
        g = inputs.require("graph")
        edges = [tuple(e) for e in cert["matching"]]
        seen = [v for e in edges for v in e]
        return (
            len(set(seen)) == len(seen) == g.vertex_count
            and all(tuple(sorted(e)) in g.edge_index for e in edges)
        )
    if kind == "near_perfect_matching":
        g = inputs.require("graph")
        for v_str, match in cert["per_vertex"].items():
            v = io._shift_in(int(v_str), shift)
            seen = [w for e in match for w in e]
            if v in seen or len(set(seen)) != len(seen) or len(seen) != g.vertex_count - 1:
                return False
            if not all(tuple(sorted(e)) in g.edge_index for e in match):
                return False
        return True
    if kind == "tutte_witness":
        g = inputs.require("graph")
        removed = set(io._shift_in(int(v), shift) for v in cert["removed"])
        keep_edges = [
            i for i, (u, v) in enumerate(g.edges) if u not in removed and v not in removed
        ]
        dsu = graphs._DSU(g.vertex_count)
        for i in keep_edges:
            dsu.merge(*g.edges[i])
        sizes: dict[int, int] = {}
        for v in range(g.vertex_count):
            if v not in removed:
                sizes[dsu.find(v)] = sizes.get(dsu.find(v), 0) + 1
        odd = sum(1 for s in sizes.values() if s % 2 == 1)
        return odd > len(removed)
    if kind == "bicyclic_lengths":
        g = inputs.require("graph")
        l1, l2, l3 = sorted(cert["lengths"])
        if graphs.components(g) != 1 or graphs.betti(g) != 2:
            return False
        return l1 + l2 + l3 == g.edge_count
    if kind == "cut_edge":
        g = inputs.require("graph")
        edge = tuple(sorted(io._shift_in(int(v), shift) for v in cert["edge"]))
        idx = g.edge_index.get(edge)
        if idx is None:
            return False
        keep = [i for i in range(g.edge_count) if i != idx]
        return graphs.components(g, keep) > graphs.components(g)
    raise io.ParseError(f"unknown certificate kind {kind!r}")


def _add_common(p: argparse.ArgumentParser, *, subsets: bool = False) -> None:
    p.add_argument("--matroid", help="matroid JSON file")
    p.add_argument("--graph", help="graph text file")
    p.add_argument("--matrix", help="representation JSON file")
    p.add_argument("--projection", help="projection-matrix JSON file")
    p.add_argument("--one-indexed", action="store_true", help="1-based indices in files and reports")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--tol", type=float, default=representable.DEFAULT_TOL)
    p.add_argument("--max-iter", type=int, default=representable.DEFAULT_MAX_ITER)
    p.add_argument("--subset-cap", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)
    if subsets:
        p.add_argument("--subsets", default="sample:64", help="all | connected | sample:N")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="udm",
        description="Uniform-density toolkit for matroids, graphs and represented matroids",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"udm {__version__} (corpus {catalog.corpus_hash()})",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "check-ud": (cmd_check_ud, "decide uniform density"),
        "check-strict-ud": (cmd_check_strict_ud, "decide strict uniform density"),
        "density": (cmd_density, "density of the ground set or a subset"),
        "dual": (cmd_dual, "dual matroid"),
        "measure": (cmd_measure, "find an E-uniform basis measure"),
        "scale": (cmd_scale, "operator-scale a representation"),
        "projection": (cmd_projection, "exact projection representation"),
        "variety": (cmd_variety, "membership in the scaled-representation variety"),
        "spectral": (cmd_spectral, "Laplacian bounds and nullities"),
        "classify-bicyclic": (cmd_classify_bicyclic, "two-cycle classification"),
        "toughness": (cmd_toughness, "exhaustive toughness check"),
        "matching": (cmd_matching, "perfect or near-perfect matching"),
        "tree-packing": (cmd_tree_packing, "edge-disjoint spanning forests"),
        "enumerate-bases": (cmd_enumerate_bases, "list matroid bases"),
        "verify": (cmd_verify, "re-verify a report certificate"),
    }
    for name, (func, help_text) in commands.items():
        p = sub.add_parser(name, help=help_text)
        _add_common(p, subsets=(name == "spectral"))
        if name in ("check-ud", "check-strict-ud"):
            p.add_argument("--mode", choices=("auto", "exhaustive", "scaling"), default="auto")
        if name == "density":
            p.add_argument("--subset", help="comma-separated element indices")
        if name == "measure":
            p.add_argument("--positive", action="store_true", help="require full support")
        if name == "toughness":
            p.add_argument("--t", default="1", help="toughness threshold (rational)")
        if name == "verify":
            p.add_argument("--report", required=True, help="report JSON to re-verify")
        p.set_defaults(func=func)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors and 0 on --help/--version
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
        return EXIT_USAGE if code else EXIT_OK
    try:
        if args.threads < 1:
            raise io.ParseError("--threads must be at least 1")
        return args.func(args)
    except io.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _CAP_ERRORS as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (MatroidError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
