"""Acts, credal sets, and exact lower/upper expectations.

A credal set is a closed convex set of probability mass functions over a
finite state space, given either as an explicit list of vertices or as linear
constraints on the mass function (the simplex conditions are always implied).
Upper expectations maximize a gamble's expectation over the set: a dot-product
maximum in vertex form, a small dense LP in constraint form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import simplex
from .errors import GuardExceededError, InfeasibleCredalError

PMF_TOL = 1e-9
VERTEX_DEDUP_TOL = 1e-9
ENUM_MAX_DIM = 12

RELATIONS = ("<=", ">=", "=")


@dataclass(frozen=True)
class StateSpace:
    """Ordered, uniquely-labelled finite set of states."""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.labels) == 0:
            raise ValueError("states: at least one state label is required")
        if any(not lbl for lbl in self.labels):
            raise ValueError("states: labels must be nonempty strings")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("states: labels must be unique")

    @property
    def size(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class Act:
    """A named uncertain reward: one utility payoff per state."""

    name: str
    payoffs: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("act.name: must be a nonempty string")
        if len(self.payoffs) == 0:
            raise ValueError(f"act {self.name!r}: payoffs must be nonempty")
        if not all(np.isfinite(self.payoffs)):
            raise ValueError(f"act {self.name!r}: payoffs must all be finite")

    def payoff_array(self) -> np.ndarray:
        return np.asarray(self.payoffs, dtype=float)


@dataclass(frozen=True)
class LinearConstraint:
    """One row `coeffs . p <relation> rhs` restricting the mass function p."""

    coeffs: tuple[float, ...]
    relation: str
    rhs: float

    def __post_init__(self) -> None:
        if self.relation not in RELATIONS:
            raise ValueError(
                f"constraint.relation: expected one of {RELATIONS}, got {self.relation!r}"
            )
        if not all(np.isfinite(self.coeffs)) or not np.isfinite(self.rhs):
            raise ValueError("constraint: coefficients and rhs must be finite")


class CredalSet:
    """Convex set of pmfs in vertex or constraint form.

    Instances are immutable and safe to share across threads; every query is
    a pure function of the stored representation.
    """

    def __init__(
        self,
        dimension: int,
        *,
        vertices: np.ndarray | None = None,
        constraints: tuple[LinearConstraint, ...] | None = None,
        a_ub: np.ndarray | None = None,
        b_ub: np.ndarray | None = None,
    ):
        self.dimension = dimension
        self._vertices = vertices
        self.constraints = constraints
        self._a_ub = a_ub
        self._b_ub = b_ub
        if vertices is not None:
            vertices.setflags(write=False)

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_vertices(cls, vectors, *, tol: float = PMF_TOL) -> "CredalSet":
        """Build from explicit pmf vertices, renormalizing within `tol`."""
        arr = np.asarray(vectors, dtype=float)
        if arr.ndim != 2 or arr.shape[0] == 0:
            raise ValueError("credal.vertices: expected a nonempty list of pmf vectors")
        if np.min(arr) < -tol:
            bad = int(np.argmin(np.min(arr, axis=1)))
            raise ValueError(f"credal.vertices[{bad}]: negative probability mass")
        sums = arr.sum(axis=1)
        if np.max(np.abs(sums - 1.0)) > tol:
            bad = int(np.argmax(np.abs(sums - 1.0)))
            raise ValueError(f"credal.vertices[{bad}]: mass sums to {sums[bad]}, not 1")
        arr = np.clip(arr, 0.0, None)
        arr = arr / arr.sum(axis=1, keepdims=True)
        return cls(arr.shape[1], vertices=arr)

    @classmethod
    def from_constraints(cls, constraints, dimension: int) -> "CredalSet":
        """Build from linear constraint rows; checks feasibility with an LP."""
        rows = tuple(constraints)
        for idx, c in enumerate(rows):
            if len(c.coeffs) != dimension:
                raise ValueError(
                    f"credal.constraints[{idx}].coeffs: expected {dimension} entries, "
                    f"got {len(c.coeffs)}"
                )
        a_list: list[np.ndarray] = []
        b_list: list[float] = []
        for c in rows:
            coefs = np.asarray(c.coeffs, dtype=float)
            if c.relation in ("<=", "="):
                a_list.append(coefs)
                b_list.append(float(c.rhs))
            if c.relation in (">=", "="):
                a_list.append(-coefs)
                b_list.append(float(-c.rhs))
        a_ub = np.array(a_list) if a_list else np.zeros((0, dimension))
        b_ub = np.array(b_list)
        a_ub.setflags(write=False)
        b_ub.setflags(write=False)
        made = cls(dimension, constraints=rows, a_ub=a_ub, b_ub=b_ub)
        try:
            made.upper_expectation(np.zeros(dimension))
        except simplex.Infeasible as exc:
            raise InfeasibleCredalError(
                "credal.constraints: no probability mass function satisfies them"
            ) from exc
        return made

    # -- queries -----------------------------------------------------------

    @property
    def is_vertex_form(self) -> bool:
        return self._vertices is not None

    @property
    def vertices(self) -> np.ndarray | None:
        return self._vertices

    def upper_expectation(self, gamble) -> float:
        """Maximum expectation of the gamble over the set."""
        g = np.asarray(gamble, dtype=float)
        if g.shape != (self.dimension,):
            raise ValueError(
                f"gamble: expected length {self.dimension}, got shape {g.shape}"
            )
        if self._vertices is not None:
            return float(np.max(self._vertices @ g))
        ones = np.ones((1, self.dimension))
        try:
            value, _ = simplex.maximize(g, self._a_ub, self._b_ub, ones, np.array([1.0]))
        except simplex.Unbounded as exc:  # compact region: cannot happen
            raise RuntimeError("internal error: credal LP reported unbounded") from exc
        return value

    def lower_expectation(self, gamble) -> float:
        """Minimum expectation, by duality the negated upper of the negation."""
        g = np.asarray(gamble, dtype=float)
        return -self.upper_expectation(-g)

    def extreme_points(self) -> np.ndarray:
        """Vertices of the set.

        Vertex form returns the stored list. Constraint form enumerates basic
        feasible points of {A p <= b, sum p = 1, p >= 0} by intersecting rows,
        keeping feasible ones and dropping duplicates; guarded to dimensions
        at most ENUM_MAX_DIM.
        """
        if self._vertices is not None:
            return self._vertices
        n = self.dimension
        if n > ENUM_MAX_DIM:
            raise GuardExceededError(
                f"vertex enumeration limited to dimension {ENUM_MAX_DIM}, got {n}"
            )
        rows = [np.asarray(r, dtype=float) for r in self._a_ub]
        rhs = list(self._b_ub)
        for i in range(n):  # p_i >= 0 as -p_i <= 0
            unit = np.zeros(n)
            unit[i] = -1.0
            rows.append(unit)
            rhs.append(0.0)

        found: list[np.ndarray] = []
        ones = np.ones(n)
        for active in itertools.combinations(range(len(rows)), n - 1):
            system = np.vstack([ones] + [rows[r] for r in active])
            target = np.array([1.0] + [rhs[r] for r in active])
            try:
                point = np.linalg.solve(system, target)
            except np.linalg.LinAlgError:
                continue
            if not np.all(np.isfinite(point)):
                continue
            if np.max(np.abs(system @ point - target)) > 1e-7:  # ill-conditioned basis
                continue
            if np.min(point) < -PMF_TOL:
                continue
            residual = self._a_ub @ point - self._b_ub if len(self._b_ub) else np.zeros(0)
            if residual.size and np.max(residual) > PMF_TOL:
                continue
            if any(np.max(np.abs(point - seen)) <= VERTEX_DEDUP_TOL for seen in found):
                continue
            found.append(point)
        if not found:
            raise InfeasibleCredalError("credal.constraints: polytope has no vertices")
        out = np.array(found)
        out.setflags(write=False)
        return out
