"""Positive numeric realizations of geometric-type patterns.

Propagation is subtraction-free: every exchange step combines positive
monomial terms, so all intermediate values stay strictly positive (asserted
at each step).  The same propagation with the deformed addition
(y^k + z^k)^(1/k) in place of + drives the tropical-degeneration
experiment; at k -> -inf it converges to a min-plus propagation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import DimensionError, DomainError
from .exchange import ExtendedExchangeMatrix, GeometricSeed
from .semifields import deformed_add


def _exchange_terms_numeric(ext: ExtendedExchangeMatrix, values, qvals, k):
    term_plus = 1.0
    term_minus = 1.0
    for i in range(ext.n):
        b = ext.rows[i][k]
        if b > 0:
            term_plus *= values[i] ** b
        elif b < 0:
            term_minus *= values[i] ** (-b)
    for i in range(ext.n, ext.m):
        b = ext.rows[i][k]
        if b > 0:
            term_plus *= qvals[i - ext.n] ** b
        elif b < 0:
            term_minus *= qvals[i - ext.n] ** (-b)
    return term_plus, term_minus


def _propagate(ext: ExtendedExchangeMatrix, values, qvals, path, combine):
    values = list(values)
    for k in path:
        term_plus, term_minus = _exchange_terms_numeric(ext, values, qvals, k)
        new_value = combine(term_plus, term_minus) / values[k]
        if not new_value > 0:
            raise DomainError("propagation produced a nonpositive value")
        values[k] = new_value
        ext = ext.mutate(k)
    return ext, values


class Realization:
    """Lazy numeric realization of the pattern reachable from one seed."""

    def __init__(self, seed: GeometricSeed, xvals: Sequence[float],
                 qvals: Sequence[float]):
        if len(xvals) != seed.n or len(qvals) != seed.ngens:
            raise DimensionError(
                f"assignment needs {seed.n} cluster and {seed.ngens} "
                f"coefficient values")
        if any(v <= 0 for v in xvals) or any(v <= 0 for v in qvals):
            raise DomainError("realization values must be strictly positive")
        self.seed = seed
        self.xvals = tuple(float(v) for v in xvals)
        self.qvals = tuple(float(v) for v in qvals)
        self._cache: dict = {(): (seed.ext, list(self.xvals))}

    def values_at(self, path: Sequence[int]) -> list[float]:
        """Cluster values after mutating along the path (prefix-cached)."""
        path = tuple(path)
        known = ()
        for cut in range(len(path), -1, -1):
            if path[:cut] in self._cache:
                known = path[:cut]
                break
        ext, values = self._cache[known]
        for idx in range(len(known), len(path)):
            ext, values = _propagate(ext, values, self.qvals, [path[idx]], _add)
            self._cache[path[: idx + 1]] = (ext, values)
        return list(values)

    def cycle_residual(self, path: Sequence[int]) -> float:
        """Max relative deviation from the initial values after a closed walk."""
        final = self.values_at(path)
        return max(abs(f - x) / x for f, x in zip(final, self.xvals))


def _add(a: float, b: float) -> float:
    return a + b


def realize(seed: GeometricSeed, assignment) -> Realization:
    """assignment: {"x": [..], "q": [..]} with strictly positive entries."""
    return Realization(seed, assignment["x"], assignment.get("q", []))


# ---------------------------------------------------------------------------
# tropical degeneration


@dataclass
class DegenerationReport:
    schedule: tuple[float, ...]
    values_by_k: dict
    tropical_values: list[float]
    deltas: list[float] = field(default_factory=list)

    def __post_init__(self):
        if not self.deltas:
            for k in self.schedule:
                vals = self.values_by_k[k]
                self.deltas.append(max(abs(v - t) for v, t
                                       in zip(vals, self.tropical_values)))

    def converged(self, tol: float) -> bool:
        return self.deltas[-1] <= tol

    def monotone(self) -> bool:
        return all(self.deltas[i + 1] <= self.deltas[i] + 1e-15
                   for i in range(len(self.deltas) - 1))


def degeneration_experiment(ext: ExtendedExchangeMatrix, xvals, qvals,
                            path: Sequence[int],
                            schedule: Sequence[float] = (-1.0, -10.0, -100.0, -1000.0),
                            ) -> DegenerationReport:
    """Propagate exchange relations under (+)_k along a mutation path and
    compare against the min-plus propagation."""
    if any(k >= 0 for k in schedule[1:]):
        raise DomainError("schedule after the first entry must be negative")
    if sorted(schedule, reverse=True) != list(schedule):
        raise DomainError("schedule must decrease toward -infinity")
    values_by_k = {}
    for k in schedule:
        _, vals = _propagate(ext, xvals, qvals, path,
                             lambda a, b: deformed_add(k, a, b))
        values_by_k[k] = vals
    _, trop_vals = _propagate(ext, xvals, qvals, path, min)
    return DegenerationReport(tuple(schedule), values_by_k, trop_vals)
