"""Pairwise regret matrix and the subset evaluators built on it.

The matrix stores entries[i, j] = upper expectation of (payoff_j - payoff_i):
the worst expected loss of keeping act i when act j was available. Printed
tables follow the opposite orientation (rows indexed by the challenger j),
so only the CSV emitter transposes; everything else reads entries[i, j].
"""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .credal import Act, CredalSet

NEG_INFINITY = float("-inf")

MAXIMALITY_TOL = 1e-9

THREADS_ENV_VAR = "CREDALBUDGET_THREADS"


@dataclass(frozen=True, eq=False)
class RegretMatrix:
    """Dense pairwise regret table; the diagonal is stored as 0 but never read."""

    names: tuple[str, ...]
    entries: np.ndarray

    def __post_init__(self) -> None:
        entries = np.asarray(self.entries, dtype=float)
        n = len(self.names)
        if entries.shape != (n, n):
            raise ValueError(f"matrix: expected shape {(n, n)}, got {entries.shape}")
        object.__setattr__(self, "entries", entries)
        entries.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.names)

    def entry(self, i: int, j: int) -> float:
        if i == j:
            raise ValueError("regret entry is undefined on the diagonal")
        return float(self.entries[i, j])

    def off_diagonal_values(self) -> np.ndarray:
        mask = ~np.eye(self.n, dtype=bool)
        return self.entries[mask]

    def submatrix(self, indices) -> "RegretMatrix":
        idx = list(indices)
        sub = self.entries[np.ix_(idx, idx)].copy()
        return RegretMatrix(tuple(self.names[i] for i in idx), sub)


def pairwise_regret_from_vertices(vertices: np.ndarray, payoffs: np.ndarray) -> np.ndarray:
    """Vectorized entries[i, j] = max over vertices of E_v(a_j) - E_v(a_i)."""
    ev = vertices @ payoffs.T  # (n_vertices, n_acts)
    diff = ev[:, None, :] - ev[:, :, None]  # diff[v, i, j] = E_v(a_j) - E_v(a_i)
    entries = diff.max(axis=0)
    np.fill_diagonal(entries, 0.0)
    return entries


def regret_matrix(acts: list[Act], credal: CredalSet, *, threads: int | None = None) -> RegretMatrix:
    """Compute all pairwise regrets for the acts under the credal set.

    Vertex-form credal sets use one vectorized pass. Constraint-form sets
    solve one LP per ordered pair; with threads > 1 the solves run on a
    thread pool, each entry written to its own slot, so the result is
    identical for any pool size.
    """
    if len(acts) == 0:
        raise ValueError("acts: at least one act is required")
    dims = {len(a.payoffs) for a in acts}
    if len(dims) != 1:
        raise ValueError("acts: payoff vectors must share one dimension")
    names = tuple(a.name for a in acts)
    payoffs = np.array([a.payoffs for a in acts], dtype=float)

    if credal.is_vertex_form:
        return RegretMatrix(names, pairwise_regret_from_vertices(credal.vertices, payoffs))

    n = len(acts)
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV_VAR, "1") or "1")
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    entries = np.zeros((n, n))

    def solve(pair):
        i, j = pair
        return i, j, credal.upper_expectation(payoffs[j] - payoffs[i])

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(solve, pairs))
    else:
        results = [solve(p) for p in pairs]
    for i, j, value in results:
        entries[i, j] = value
    return RegretMatrix(names, entries)


def worst_regret(matrix: RegretMatrix, i: int, others) -> float:
    """Largest regret of keeping act i against any challenger in `others`.

    The maximum over an empty challenger set is NEG_INFINITY.
    """
    other_set = set(others)
    if not 0 <= i < matrix.n:
        raise IndexError(f"act index {i} out of range")
    if any(not 0 <= j < matrix.n for j in other_set):
        raise IndexError("challenger index out of range")
    if i in other_set:
        raise ValueError(f"act {i} cannot challenge itself")
    if not other_set:
        return NEG_INFINITY
    return float(max(matrix.entries[i, j] for j in other_set))


def _check_subset(matrix: RegretMatrix, subset) -> tuple[list[int], list[int]]:
    chosen = sorted(set(subset))
    if not chosen:
        raise ValueError("subset must be nonempty")
    if chosen[0] < 0 or chosen[-1] >= matrix.n:
        raise IndexError("subset index out of range")
    complement = [j for j in range(matrix.n) if j not in set(chosen)]
    return chosen, complement


def minimax_regret(matrix: RegretMatrix, subset) -> float:
    """Keep the best act of the subset against the worst outside challenger.

    min over i in subset of max over j outside of entries[i, j];
    NEG_INFINITY exactly when the subset is all acts.
    """
    chosen, complement = _check_subset(matrix, subset)
    if not complement:
        return NEG_INFINITY
    block = matrix.entries[np.ix_(chosen, complement)]
    return float(block.max(axis=1).min())


def maximin_regret(matrix: RegretMatrix, subset) -> float:
    """Let the challenger commit first, then answer from the subset.

    max over j outside of min over i in subset of entries[i, j];
    NEG_INFINITY exactly when the subset is all acts. Never exceeds
    minimax_regret of the same subset.
    """
    chosen, complement = _check_subset(matrix, subset)
    if not complement:
        return NEG_INFINITY
    block = matrix.entries[np.ix_(chosen, complement)]
    return float(block.min(axis=0).max())


def maximal_acts(matrix: RegretMatrix, *, tol: float = MAXIMALITY_TOL) -> tuple[int, ...]:
    """Acts not strictly dominated by any other act.

    Act i stays when every challenger j satisfies
    upper expectation of (payoff_i - payoff_j) >= -tol, i.e. no j makes the
    lower expectation of (payoff_j - payoff_i) positive. The slack absorbs
    LP rounding so a genuinely maximal act is never dropped. Never empty.
    """
    shielded = matrix.entries.copy()
    np.fill_diagonal(shielded, np.inf)
    # column i of entries collects the upper expectations of (payoff_i - payoff_j)
    keep = shielded.min(axis=0) >= -tol
    return tuple(int(i) for i in np.flatnonzero(keep))


def matrix_to_csv(matrix: RegretMatrix) -> str:
    """Render with challenger acts as rows and kept acts as columns.

    Matches the conventional printed orientation; the diagonal is left empty.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + list(matrix.names))
    for j in range(matrix.n):
        row: list[str] = [matrix.names[j]]
        for i in range(matrix.n):
            row.append("" if i == j else f"{matrix.entries[i, j] + 0.0:.6f}")
        writer.writerow(row)
    return buf.getvalue()


def matrix_from_csv(text: str) -> RegretMatrix:
    """Parse the emitter's format back into a matrix (inverse of matrix_to_csv)."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if len(rows) < 2:
        raise ValueError("matrix csv: expected a header row and one row per act")
    names = tuple(rows[0][1:])
    n = len(names)
    if len(rows) - 1 != n:
        raise ValueError(f"matrix csv: expected {n} data rows, got {len(rows) - 1}")
    entries = np.zeros((n, n))
    for j, row in enumerate(rows[1:]):
        if len(row) != n + 1:
            raise ValueError(f"matrix csv row {j + 1}: expected {n + 1} cells")
        if row[0] != names[j]:
            raise ValueError(f"matrix csv row {j + 1}: name {row[0]!r} does not match header")
        for i, cell in enumerate(row[1:]):
            if i == j:
                continue
            if cell.strip() in ("", "-"):
                raise ValueError(f"matrix csv row {j + 1}: empty off-diagonal cell")
            entries[i, j] = float(cell)
    return RegretMatrix(names, entries)
