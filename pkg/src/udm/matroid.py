"""Explicit-bases matroid kernel.

A matroid is stored as a ground-set size plus the full list of bases.
All density arithmetic is exact (``fractions.Fraction``); there are no
tolerances anywhere in this module.  The uniform-density oracle
enumerates every nonempty subset of the ground set, so it is gated by a
configurable cap (default 24 elements).

Subsets cross the public API as sorted tuples of 0-based indices and are
bitmasks internally (bit e set means element e is in the subset).
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, Optional

if TYPE_CHECKING:  # pragma: no cover
    from .measure import BasisMeasure

DEFAULT_GROUND_CAP = 24


class MatroidError(Exception):
    """Base class for matroid-kernel errors."""


class UnequalCardinality(MatroidError):
    """Bases do not all have the same size."""


class ExchangeViolation(MatroidError):
    """Base-exchange fails; carries the offending pair (basis, element)."""

    def __init__(self, basis_a: tuple[int, ...], element: int, basis_b: tuple[int, ...]):
        self.basis_a = basis_a
        self.element = element
        self.basis_b = basis_b
        super().__init__(
            f"exchange fails for bases {basis_a} and {basis_b} at element {element}"
        )


class EmptySubset(MatroidError):
    """Density of the empty subset is undefined."""


class ZeroRank(MatroidError):
    """Density of a rank-zero (all-loop) subset is undefined."""


class GroundSetTooLarge(MatroidError):
    """Exhaustive enumeration refused; ground set exceeds the cap."""


class GroundSetMismatch(MatroidError):
    """Union/intersection require equal ground sets."""


def _as_sorted_tuple(subset: Iterable[int]) -> tuple[int, ...]:
    t = tuple(sorted(subset))
    if any(t[i] == t[i + 1] for i in range(len(t) - 1)):
        raise ValueError(f"duplicate indices in subset {t}")
    return t


def _mask_of(subset: Iterable[int], n: int) -> int:
    mask = 0
    for e in subset:
        if not 0 <= e < n:
            raise ValueError(f"element {e} outside ground set of size {n}")
        mask |= 1 << e
    return mask


def _mask_to_tuple(mask: int) -> tuple[int, ...]:
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


@dataclass(frozen=True)
class Matroid:
    """Ground set {0..n-1} plus an explicit, equicardinal list of bases."""

    ground_size: int
    bases: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.ground_size <= 0:
            raise ValueError("ground_size must be positive")
        if not self.bases:
            raise ValueError("bases must be nonempty")
        norm = tuple(sorted(_as_sorted_tuple(b) for b in set(map(frozenset, self.bases))))
        if len({len(b) for b in norm}) != 1:
            raise UnequalCardinality(
                f"bases have cardinalities {sorted({len(b) for b in norm})}"
            )
        object.__setattr__(self, "bases", norm)
        for b in norm:
            if b and (b[0] < 0 or b[-1] >= self.ground_size):
                raise ValueError(f"basis {b} outside ground set")

    @cached_property
    def rank(self) -> int:
        return len(self.bases[0])

    @cached_property
    def basis_masks(self) -> tuple[int, ...]:
        return tuple(_mask_of(b, self.ground_size) for b in self.bases)

    @cached_property
    def density(self) -> Fraction:
        """Density of the full ground set, |E| / rank(E)."""
        if self.rank == 0:
            raise ZeroRank("matroid has rank 0; its density is undefined")
        return Fraction(self.ground_size, self.rank)

    def rank_of_mask(self, mask: int) -> int:
        if mask == 0:
            return 0
        cap = min(mask.bit_count(), self.rank)
        best = 0
        for b in self.basis_masks:
            r = (b & mask).bit_count()
            if r > best:
                best = r
                if best == cap:
                    break
        return best

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.ground_size == other.ground_size and self.bases == other.bases

    def __hash__(self) -> int:
        return hash((self.ground_size, self.bases))


class Verdict(str, Enum):
    UNIFORMLY_DENSE = "UniformlyDense"
    STRICTLY_UNIFORMLY_DENSE = "StrictlyUniformlyDense"
    NOT_UNIFORMLY_DENSE = "NotUniformlyDense"
    UNIFORMLY_DENSE_NOT_STRICT = "UniformlyDenseNotStrict"


@dataclass(frozen=True)
class Certificate:
    """Checkable outcome of a uniform-density decision.

    For a NotUniformlyDense verdict, ``violator`` is the canonical subset
    with density above the ground density (``violator_density`` is None
    exactly when the violator has rank 0, i.e. infinite density).  For
    UniformlyDenseNotStrict, ``violator`` carries the canonical
    non-component subset achieving density equality.
    """

    verdict: Verdict
    ground_density: Optional[Fraction]
    violator: Optional[tuple[int, ...]] = None
    violator_density: Optional[Fraction] = None
    witness: Optional["BasisMeasure"] = field(default=None, compare=False)

    @property
    def is_uniformly_dense(self) -> bool:
        return self.verdict is not Verdict.NOT_UNIFORMLY_DENSE


def validate_matroid(ground_size: int, bases: Iterable[Iterable[int]]) -> Matroid:
    """Build a Matroid, enforcing equal cardinality and base exchange.

    Raises UnequalCardinality or ExchangeViolation (naming the offending
    pair) when the input is not a matroid.
    """
    basis_list = [_as_sorted_tuple(b) for b in bases]
    if not basis_list:
        raise ValueError("bases must be nonempty")
    sizes = {len(b) for b in basis_list}
    if len(sizes) != 1:
        raise UnequalCardinality(f"bases have cardinalities {sorted(sizes)}")
    m = Matroid(ground_size, tuple(basis_list))
    masks = set(m.basis_masks)
    for a_mask, a in zip(m.basis_masks, m.bases):
        for b_mask, b in zip(m.basis_masks, m.bases):
            only_a = a_mask & ~b_mask
            only_b = b_mask & ~a_mask
            for e in _mask_to_tuple(only_a):
                removed = a_mask & ~(1 << e)
                if not any(removed | (1 << f) in masks for f in _mask_to_tuple(only_b)):
                    raise ExchangeViolation(a, e, b)
    return m


def rank(m: Matroid, subset: Iterable[int]) -> int:
    """Rank of a subset: the largest intersection with any basis."""
    return m.rank_of_mask(_mask_of(subset, m.ground_size))


def density(m: Matroid, subset: Iterable[int]) -> Fraction:
    """|A| / rank(A) as an exact rational; errors on empty or all-loop A."""
    mask = _mask_of(subset, m.ground_size)
    if mask == 0:
        raise EmptySubset("density of the empty subset is undefined")
    r = m.rank_of_mask(mask)
    if r == 0:
        raise ZeroRank(f"subset {_mask_to_tuple(mask)} consists of loops")
    return Fraction(mask.bit_count(), r)


def loops(m: Matroid) -> tuple[int, ...]:
    """Elements contained in no basis."""
    covered = 0
    for b in m.basis_masks:
        covered |= b
    return _mask_to_tuple(~covered & ((1 << m.ground_size) - 1))


def coloops(m: Matroid) -> tuple[int, ...]:
    """Elements contained in every basis."""
    common = (1 << m.ground_size) - 1
    for b in m.basis_masks:
        common &= b
    return _mask_to_tuple(common)


def dual(m: Matroid) -> Matroid:
    """Dual matroid: complement every basis."""
    full = (1 << m.ground_size) - 1
    return Matroid(m.ground_size, tuple(_mask_to_tuple(full & ~b) for b in m.basis_masks))


def union(m1: Matroid, m2: Matroid) -> Matroid:
    """Matroid union on a common ground set.

    Bases are the inclusion-maximal sets B1 | B2 over all basis pairs;
    matroid theory guarantees these are equicardinal.
    """
    if m1.ground_size != m2.ground_size:
        raise GroundSetMismatch(
            f"union needs equal ground sets, got {m1.ground_size} and {m2.ground_size}"
        )
    unions = {b1 | b2 for b1 in m1.basis_masks for b2 in m2.basis_masks}
    maximal = [u for u in unions if not any(u != v and u & v == u for v in unions)]
    sizes = {u.bit_count() for u in maximal}
    assert len(sizes) == 1, "maximal unions are not equicardinal"
    return Matroid(m1.ground_size, tuple(_mask_to_tuple(u) for u in maximal))


def intersection(m1: Matroid, m2: Matroid) -> Matroid:
    """Matroid intersection, defined as the dual of the union of duals."""
    if m1.ground_size != m2.ground_size:
        raise GroundSetMismatch(
            f"intersection needs equal ground sets, got {m1.ground_size} and {m2.ground_size}"
        )
    return dual(union(dual(m1), dual(m2)))


def direct_sum(m1: Matroid, m2: Matroid) -> Matroid:
    """Direct sum; elements of m2 are relabelled to n1 .. n1+n2-1."""
    n1 = m1.ground_size
    bases = tuple(
        tuple(b1) + tuple(e + n1 for e in b2) for b1 in m1.bases for b2 in m2.bases
    )
    return Matroid(n1 + m2.ground_size, bases)


def connected_components(m: Matroid) -> tuple[tuple[int, ...], ...]:
    """Finest partition of the ground set into direct-sum blocks.

    Elements sharing a circuit are merged (union-find); every circuit is
    the fundamental circuit of some (basis, external element) pair, so
    iterating those pairs covers all circuits.  Loops and coloops end up
    as singleton components.
    """
    parent = list(range(m.ground_size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def merge(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    masks = set(m.basis_masks)
    full = (1 << m.ground_size) - 1
    for b in m.basis_masks:
        outside = full & ~b
        for e in _mask_to_tuple(outside):
            circuit = [e]
            for x in _mask_to_tuple(b):
                if (b & ~(1 << x)) | (1 << e) in masks:
                    circuit.append(x)
            for x in circuit[1:]:
                merge(e, x)
    groups: dict[int, list[int]] = {}
    for e in range(m.ground_size):
        groups.setdefault(find(e), []).append(e)
    return tuple(sorted(tuple(g) for g in groups.values()))


def _better_candidate(new: tuple[int, int, int], cur: Optional[tuple[int, int, int]]) -> bool:
    """Tie-break for violators: density desc, cardinality asc, bitmask asc.

    Candidates are (size, rank, mask); cross-multiplication makes the
    density comparison exact and treats rank 0 as infinite density.
    """
    if cur is None:
        return True
    ns, nr, nm = new
    cs, cr, cm = cur
    lhs, rhs = ns * cr, cs * nr
    if lhs != rhs:
        return lhs > rhs
    if ns != cs:
        return ns < cs
    return nm < cm


def _scan_range(
    n: int,
    k: int,
    basis_masks: tuple[int, ...],
    lo: int,
    hi: int,
    component_masks: Optional[tuple[int, ...]],
) -> tuple[Optional[tuple[int, int, int]], Optional[tuple[int, int, int]]]:
    """Scan bitmasks in [lo, hi); return best violation and equality candidates.

    The equality candidate is only tracked when component_masks is given
    (strict mode) and only among subsets that are not unions of whole
    components.
    """
    best_viol: Optional[tuple[int, int, int]] = None
    best_eq: Optional[tuple[int, int, int]] = None
    for mask in range(lo, hi):
        if mask == 0:
            continue
        size = mask.bit_count()
        cap = size if size < k else k
        r = 0
        for b in basis_masks:
            c = (b & mask).bit_count()
            if c > r:
                r = c
                if r == cap:
                    break
        lhs, rhs = size * k, n * r
        if lhs > rhs:
            cand = (size, r, mask)
            if _better_candidate(cand, best_viol):
                best_viol = cand
        elif lhs == rhs and component_masks is not None:
            if any(mask & c and mask & c != c for c in component_masks):
                cand = (size, r, mask)
                if _better_candidate(cand, best_eq):
                    best_eq = cand
    return best_viol, best_eq


def _full_scan(
    m: Matroid,
    strict: bool,
    cap: int,
    threads: int,
) -> tuple[Optional[tuple[int, int, int]], Optional[tuple[int, int, int]]]:
    n = m.ground_size
    if n > cap:
        raise GroundSetTooLarge(
            f"ground set of size {n} exceeds the enumeration cap {cap}"
        )
    component_masks = None
    if strict:
        component_masks = tuple(
            _mask_of(c, n) for c in connected_components(m)
        )
    total = 1 << n
    if threads <= 1 or total < (1 << 16):
        return _scan_range(n, m.rank, m.basis_masks, 0, total, component_masks)
    chunk = -(-total // threads)
    args = [
        (n, m.rank, m.basis_masks, lo, min(lo + chunk, total), component_masks)
        for lo in range(0, total, chunk)
    ]
    best_viol = best_eq = None
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for viol, eq in pool.map(_scan_range, *zip(*args)):
            if viol is not None and _better_candidate(viol, best_viol):
                best_viol = viol
            if eq is not None and _better_candidate(eq, best_eq):
                best_eq = eq
    return best_viol, best_eq


def is_uniformly_dense(
    m: Matroid, *, cap: int = DEFAULT_GROUND_CAP, threads: int = 1
) -> Certificate:
    """Decide rho(A) <= rho(E) for every nonempty A by exhaustive scan.

    Returns UniformlyDense, or NotUniformlyDense with the violator of
    maximal density (ties: smallest cardinality, then smallest bitmask).
    """
    if m.rank == 0:
        return Certificate(Verdict.UNIFORMLY_DENSE, None)
    viol, _ = _full_scan(m, strict=False, cap=cap, threads=threads)
    rho = m.density
    if viol is None:
        return Certificate(Verdict.UNIFORMLY_DENSE, rho)
    size, r, mask = viol
    vdens = Fraction(size, r) if r else None
    return Certificate(
        Verdict.NOT_UNIFORMLY_DENSE, rho, _mask_to_tuple(mask), vdens
    )


def is_strictly_uniformly_dense(
    m: Matroid, *, cap: int = DEFAULT_GROUND_CAP, threads: int = 1
) -> Certificate:
    """Strict uniform density: equality is allowed only on unions of
    connected components (and the whole ground set)."""
    if m.rank == 0:
        return Certificate(Verdict.STRICTLY_UNIFORMLY_DENSE, None)
    viol, eq = _full_scan(m, strict=True, cap=cap, threads=threads)
    rho = m.density
    if viol is not None:
        size, r, mask = viol
        vdens = Fraction(size, r) if r else None
        return Certificate(
            Verdict.NOT_UNIFORMLY_DENSE, rho, _mask_to_tuple(mask), vdens
        )
    if eq is not None:
        size, r, mask = eq
        return Certificate(
            Verdict.UNIFORMLY_DENSE_NOT_STRICT, rho, _mask_to_tuple(mask), Fraction(size, r)
        )
    return Certificate(Verdict.STRICTLY_UNIFORMLY_DENSE, rho)


def uniform_matroid(n: int, k: int) -> Matroid:
    """U_n^k: all k-subsets of an n-element ground set are bases."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    return Matroid(n, tuple(itertools.combinations(range(n), k)))
