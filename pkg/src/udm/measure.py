"""E-uniform basis measures: verification and exact feasibility.

A basis measure assigns a nonnegative rational weight to every basis.
It is E-uniform when the marginal mu({B : B contains e}) is the same for
every ground-set element e.  A matroid is uniformly dense exactly when a
nonzero E-uniform measure exists, and strictly uniformly dense exactly
when one with full support exists; both are decided here by exact
rational linear programming.

Normalisation convention: returned measures have total mass 1, so their
common marginal equals 1/rho(M).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from .matroid import Certificate, Matroid, MatroidError, is_uniformly_dense
from .simplex import OPTIMAL, feasible_point, solve_lp

DEFAULT_BASIS_CAP = 100_000

_ZERO = Fraction(0)
_ONE = Fraction(1)


class SupportMismatch(MatroidError):
    """A measure puts weight on a set that is not a basis."""


class TooManyBases(MatroidError):
    """Basis count exceeds the feasibility-solver cap."""


@dataclass(frozen=True)
class BasisMeasure:
    """Nonnegative weights on the bases of a matroid, in basis-sorted order."""

    matroid: Matroid
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.weights) != len(self.matroid.bases):
            raise ValueError("one weight per basis is required")
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        if any(w < 0 for w in self.weights):
            raise ValueError("measure weights must be nonnegative")

    @classmethod
    def from_mapping(
        cls, m: Matroid, mapping: Mapping[Iterable[int], Union[Fraction, int, str]]
    ) -> "BasisMeasure":
        """Build a measure from {basis: weight}; unlisted bases get weight 0."""
        index = {b: i for i, b in enumerate(m.bases)}
        weights = [_ZERO] * len(m.bases)
        for subset, w in mapping.items():
            key = tuple(sorted(subset))
            if key not in index:
                raise SupportMismatch(f"{key} is not a basis of the matroid")
            weights[index[key]] += Fraction(w)
        return cls(m, tuple(weights))

    @property
    def total(self) -> Fraction:
        return sum(self.weights, _ZERO)

    def marginal(self, e: int) -> Fraction:
        bit = 1 << e
        return sum(
            (w for mask, w in zip(self.matroid.basis_masks, self.weights) if mask & bit),
            _ZERO,
        )

    def marginals(self) -> tuple[Fraction, ...]:
        out = [_ZERO] * self.matroid.ground_size
        for mask, w in zip(self.matroid.basis_masks, self.weights):
            if w:
                for e in range(self.matroid.ground_size):
                    if mask >> e & 1:
                        out[e] += w
        return tuple(out)

    def normalized(self) -> "BasisMeasure":
        t = self.total
        if t == 0:
            raise ValueError("cannot normalise the zero measure")
        return BasisMeasure(self.matroid, tuple(w / t for w in self.weights))

    def items(self):
        return zip(self.matroid.bases, self.weights)


@dataclass(frozen=True)
class EUniform:
    """verify_measure outcome: all marginals equal this common value."""

    marginal: Fraction


@dataclass(frozen=True)
class NotEUniform:
    """verify_measure outcome: the first element pair with unequal marginals."""

    element_a: int
    element_b: int
    marginal_a: Fraction
    marginal_b: Fraction


@dataclass(frozen=True)
class Infeasible:
    """No E-uniform measure exists; the matroid is not uniformly dense."""

    certificate: Optional[Certificate] = None


@dataclass(frozen=True)
class NotStrict:
    """No full-support E-uniform measure exists."""

    max_min_weight: Fraction
    measure: Optional[BasisMeasure] = None


def verify_measure(m: Matroid, mu: BasisMeasure) -> Union[EUniform, NotEUniform]:
    """Check E-uniformity of a measure by exact marginal comparison.

    Also re-derives the marginal-sum identity: the marginals of any basis
    measure add up to rank(M) times its total mass.
    """
    if mu.matroid != m:
        raise SupportMismatch("measure is supported on a different matroid")
    marg = mu.marginals()
    assert sum(marg, _ZERO) == m.rank * mu.total, "marginal-sum identity failed"
    for e in range(1, m.ground_size):
        if marg[e] != marg[0]:
            return NotEUniform(0, e, marg[0], marg[e])
    return EUniform(marg[0] if marg else _ZERO)


def _not_ud_certificate(m: Matroid) -> Optional[Certificate]:
    """Cross-check an infeasible marginal system against the density oracle."""
    try:
        cert = is_uniformly_dense(m)
    except MatroidError:
        return None
    assert not cert.is_uniformly_dense, (
        "measure infeasible but density oracle says uniformly dense"
    )
    return cert


def _marginal_system(m: Matroid) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Equations sum_{B ni e} mu(B) = 1/rho for every element e."""
    target = _ONE / m.density
    rows = []
    for e in range(m.ground_size):
        bit = 1 << e
        rows.append([_ONE if mask & bit else _ZERO for mask in m.basis_masks])
    return rows, [target] * m.ground_size


def find_e_uniform_measure(
    m: Matroid, *, cap: int = DEFAULT_BASIS_CAP
) -> Union[BasisMeasure, Infeasible]:
    """Normalised E-uniform measure via exact phase-1 simplex.

    The result is a vertex of the measure polytope (so typically sparse);
    only its defining equations are canonical, not the particular point.
    Infeasibility is cross-checked against the density oracle, whose
    violator is attached when the ground set is small enough to scan.
    """
    if len(m.bases) > cap:
        raise TooManyBases(f"{len(m.bases)} bases exceed the cap {cap}")
    if m.rank == 0:
        return BasisMeasure(m, (_ONE,))
    a, b = _marginal_system(m)
    x = feasible_point(a, b)
    if x is None:
        return Infeasible(_not_ud_certificate(m))
    mu = BasisMeasure(m, tuple(x))
    assert mu.total == 1
    return mu


def find_positive_measure(
    m: Matroid, *, cap: int = DEFAULT_BASIS_CAP
) -> Union[BasisMeasure, Infeasible, NotStrict]:
    """Full-support E-uniform measure, or why none exists.

    Maximises the minimum weight t over the measure polytope with an
    exact LP (variables mu, t and slacks s with mu_B - t - s_B = 0).
    t > 0 at the optimum exactly when the matroid is strictly uniformly
    dense; t = 0 yields NotStrict with a witness of the boundary.
    """
    if len(m.bases) > cap:
        raise TooManyBases(f"{len(m.bases)} bases exceed the cap {cap}")
    if m.rank == 0:
        return BasisMeasure(m, (_ONE,))
    nb = len(m.bases)
    a, b = _marginal_system(m)
    # Columns: mu_0..mu_{nb-1}, t, s_0..s_{nb-1}
    ncols = 2 * nb + 1
    rows = [row + [_ZERO] * (nb + 1) for row in a]
    for i in range(nb):
        row = [_ZERO] * ncols
        row[i] = _ONE
        row[nb] = -_ONE
        row[nb + 1 + i] = -_ONE
        rows.append(row)
        b.append(_ZERO)
    cost = [_ZERO] * ncols
    cost[nb] = -_ONE
    res = solve_lp(rows, b, cost)
    if res.status != OPTIMAL:
        return Infeasible(_not_ud_certificate(m))
    assert res.x is not None
    mu = BasisMeasure(m, tuple(res.x[:nb]))
    t = res.x[nb]
    if t > 0:
        return mu
    return NotStrict(t, mu)
