"""File formats and JSON rendering.

Matroid (JSON):    {"n": 4, "rank": 3, "bases": [[0,1,2], ...]}
Graph (text):      first line "n_V m", then m lines "u v"
Matrix (JSON):     {"rows": k, "cols": n, "entries": [["p/q", ...], ...]}
Projection (JSON): square matrix schema; entries may be floats

Indices are 0-based unless one_indexed is set, which shifts both parsing
and rendering symmetrically.  Rationals travel as strings "p/q" (or "p");
floats stay JSON numbers and always ride with a "tol" field.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Union

from .graphs import Graph
from .matroid import Certificate, Matroid
from .measure import BasisMeasure
from .representable import ProjectionMatrix, Representation


class ParseError(ValueError):
    """Input file is malformed; the message names the line or field."""


def _shift_in(index: int, one_indexed: bool) -> int:
    return index - 1 if one_indexed else index


def _shift_out(index: int, one_indexed: bool) -> int:
    return index + 1 if one_indexed else index


def fraction_to_str(x: Fraction) -> str:
    return str(Fraction(x))


def parse_fraction(text: Union[str, int], field: str) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"field {field!r}: {text!r} is not a rational") from exc


def load_matroid(path: Union[str, Path], *, one_indexed: bool = False) -> Matroid:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}") from exc
    for key in ("n", "bases"):
        if key not in data:
            raise ParseError(f"{path}: missing field {key!r}")
    n = data["n"]
    if not isinstance(n, int) or n <= 0:
        raise ParseError(f"{path}: field 'n' must be a positive integer")
    bases = []
    for i, basis in enumerate(data["bases"]):
        try:
            bases.append(tuple(_shift_in(int(e), one_indexed) for e in basis))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"{path}: bases[{i}] is not an index list") from exc
    try:
        m = Matroid(n, tuple(bases))
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if "rank" in data and data["rank"] != m.rank:
        raise ParseError(
            f"{path}: field 'rank' is {data['rank']} but bases have size {m.rank}"
        )
    return m


def dump_matroid(m: Matroid, *, one_indexed: bool = False) -> dict:
    return {
        "n": m.ground_size,
        "rank": m.rank,
        "bases": [[_shift_out(e, one_indexed) for e in b] for b in m.bases],
    }


def load_graph(path: Union[str, Path], *, one_indexed: bool = False) -> Graph:
    lines = Path(path).read_text().splitlines()
    rows = [(i + 1, ln.strip()) for i, ln in enumerate(lines)]
    rows = [(no, ln) for no, ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise ParseError(f"{path}: empty graph file")
    no, header = rows[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError(f"{path}: line {no}: expected 'n_V m'")
    try:
        nv, m = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ParseError(f"{path}: line {no}: expected two integers") from exc
    if len(rows) - 1 != m:
        raise ParseError(f"{path}: header promises {m} edges, found {len(rows) - 1}")
    edges = []
    for no, ln in rows[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"{path}: line {no}: expected 'u v'")
        try:
            u, v = (_shift_in(int(p), one_indexed) for p in parts)
        except ValueError as exc:
            raise ParseError(f"{path}: line {no}: expected two integers") from exc
        edges.append((u, v))
    try:
        return Graph(nv, tuple(edges))
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def dump_graph(g: Graph, *, one_indexed: bool = False) -> str:
    lines = [f"{g.vertex_count} {g.edge_count}"]
    for u, v in g.edges:
        lines.append(f"{_shift_out(u, one_indexed)} {_shift_out(v, one_indexed)}")
    return "\n".join(lines) + "\n"


def _load_matrix_entries(path: Union[str, Path]) -> tuple[list[list], bool]:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}") from exc
    if "entries" not in data:
        raise ParseError(f"{path}: missing field 'entries'")
    entries = data["entries"]
    has_float = any(isinstance(x, float) for row in entries for x in row)
    out: list[list] = []
    for i, row in enumerate(entries):
        vals: list = []
        for j, x in enumerate(row):
            if isinstance(x, float):
                vals.append(x)
            else:
                vals.append(parse_fraction(x, f"entries[{i}][{j}]"))
        out.append(vals)
    if "rows" in data and len(out) != data["rows"]:
        raise ParseError(f"{path}: field 'rows' disagrees with the entry count")
    if "cols" in data and out and len(out[0]) != data["cols"]:
        raise ParseError(f"{path}: field 'cols' disagrees with the entry count")
    return out, has_float


def load_representation(path: Union[str, Path]) -> Representation:
    entries, has_float = _load_matrix_entries(path)
    if has_float:
        raise ParseError(f"{path}: representations must have exact rational entries")
    return Representation(tuple(tuple(row) for row in entries))


def load_projection(path: Union[str, Path], *, tol: float = 1e-8) -> ProjectionMatrix:
    entries, has_float = _load_matrix_entries(path)
    if has_float:
        return ProjectionMatrix(
            tuple(tuple(float(x) for x in row) for row in entries), tol=tol
        )
    return ProjectionMatrix(tuple(tuple(row) for row in entries))


def load_square_matrix(path: Union[str, Path]) -> list[list]:
    """Raw square matrix (Fractions or floats), no projector validation.

    Used where being a projector is the question, not a precondition.
    """
    entries, _ = _load_matrix_entries(path)
    if entries and any(len(r) != len(entries) for r in entries):
        raise ParseError(f"{path}: matrix must be square")
    return entries


def dump_representation(x: Representation) -> dict:
    return {
        "rows": x.rows,
        "cols": x.cols,
        "entries": [[fraction_to_str(v) for v in row] for row in x.entries],
    }


def dump_measure(mu: BasisMeasure, *, one_indexed: bool = False) -> dict:
    out = {
        "weights": [
            {
                "basis": [_shift_out(e, one_indexed) for e in basis],
                "weight": fraction_to_str(w),
            }
            for basis, w in mu.items()
        ],
        "total": fraction_to_str(mu.total),
    }
    marg = mu.marginals()
    if marg and all(v == marg[0] for v in marg):
        out["marginal"] = fraction_to_str(marg[0])
    return out


def dump_certificate(cert: Certificate, *, one_indexed: bool = False) -> dict:
    out: dict[str, Any] = {
        "verdict": cert.verdict.value,
        "ground_density": None
        if cert.ground_density is None
        else fraction_to_str(cert.ground_density),
    }
    if cert.violator is not None:
        out["violator"] = [_shift_out(e, one_indexed) for e in cert.violator]
        out["violator_density"] = (
            "infinite"
            if cert.violator_density is None
            else fraction_to_str(cert.violator_density)
        )
    if cert.witness is not None:
        out["witness"] = dump_measure(cert.witness, one_indexed=one_indexed)
    return out


def render_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def render_text(payload: dict, indent: int = 0) -> str:
    """Human-readable key/value rendering of a report."""
    lines: list[str] = []
    pad = "  " * indent
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_text(value, indent + 1).rstrip("\n"))
        elif isinstance(value, list):
            lines.append(f"{pad}{key}: {json.dumps(value)}")
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(lines) + "\n"
