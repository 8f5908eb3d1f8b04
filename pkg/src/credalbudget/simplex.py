"""Dense two-phase simplex for the tiny LPs that arise from credal sets.

Problems here have a handful of variables (one per state) and a handful of
rows, so a plain dense tableau with Bland's anti-cycling rule is both simple
and robust. Variables are implicitly nonnegative.
"""

from __future__ import annotations

import numpy as np

FEAS_TOL = 1e-9
OPT_TOL = 1e-9

_MAX_PIVOTS = 10_000


class Infeasible(Exception):
    """The constraint system admits no nonnegative solution."""


class Unbounded(Exception):
    """The objective is unbounded above on the feasible region."""


def _pivot(tableau: np.ndarray, row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    for r in range(tableau.shape[0]):
        if r != row and abs(tableau[r, col]) > 0.0:
            tableau[r] -= tableau[r, col] * tableau[row]


def _iterate(tableau: np.ndarray, basis: list[int], ncols: int) -> None:
    """Run simplex pivots until the maximization tableau is optimal.

    Objective row is the last row and holds reduced costs z_j - c_j; a column
    improves while its entry is below -OPT_TOL. Bland's rule: entering column
    is the smallest improving index, leaving row is the one whose basic
    variable index is smallest among the ratio-test ties.
    """
    for _ in range(_MAX_PIVOTS):
        obj = tableau[-1, :ncols]
        entering = -1
        for j in range(ncols):
            if obj[j] < -OPT_TOL:
                entering = j
                break
        if entering < 0:
            return
        best_ratio = None
        leaving = -1
        for r in range(tableau.shape[0] - 1):
            coef = tableau[r, entering]
            if coef > FEAS_TOL:
                ratio = tableau[r, -1] / coef
                if (
                    best_ratio is None
                    or ratio < best_ratio - FEAS_TOL
                    or (abs(ratio - best_ratio) <= FEAS_TOL and basis[r] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = r
        if leaving < 0:
            raise Unbounded("no leaving row for entering column %d" % entering)
        _pivot(tableau, leaving, entering)
        basis[leaving] = entering
    raise RuntimeError("simplex failed to converge within %d pivots" % _MAX_PIVOTS)


def maximize(
    objective: np.ndarray,
    a_ub: np.ndarray,
    b_ub: np.ndarray,
    a_eq: np.ndarray,
    b_eq: np.ndarray,
) -> tuple[float, np.ndarray]:
    """Maximize objective @ x subject to a_ub @ x <= b_ub, a_eq @ x = b_eq, x >= 0.

    Returns (optimal value, an optimal x). Raises Infeasible when the rows
    admit no nonnegative solution and Unbounded when the maximum does not
    exist; the credal-set polytopes this package builds are compact, so
    Unbounded escaping this module signals a malformed caller.
    """
    objective = np.asarray(objective, dtype=float)
    nvars = objective.size
    a_ub = np.asarray(a_ub, dtype=float).reshape(-1, nvars)
    a_eq = np.asarray(a_eq, dtype=float).reshape(-1, nvars)
    b_ub = np.asarray(b_ub, dtype=float).ravel()
    b_eq = np.asarray(b_eq, dtype=float).ravel()

    rows: list[np.ndarray] = []
    rhs: list[float] = []
    kinds: list[str] = []  # 'le' (slack) or 'ge' (surplus+artificial) or 'eq'
    for coefs, b in zip(a_ub, b_ub):
        if b >= 0:
            rows.append(coefs.copy())
            rhs.append(float(b))
            kinds.append("le")
        else:
            rows.append(-coefs)
            rhs.append(float(-b))
            kinds.append("ge")
    for coefs, b in zip(a_eq, b_eq):
        rows.append(coefs.copy() if b >= 0 else -coefs)
        rhs.append(float(abs(b)))
        kinds.append("eq")

    m = len(rows)
    n_slack = sum(1 for k in kinds if k in ("le", "ge"))
    n_art = sum(1 for k in kinds if k in ("ge", "eq"))
    ncols = nvars + n_slack + n_art

    tableau = np.zeros((m + 1, ncols + 1))
    basis: list[int] = []
    slack_at = nvars
    art_at = nvars + n_slack
    art_cols: list[int] = []
    for r in range(m):
        tableau[r, :nvars] = rows[r]
        tableau[r, -1] = rhs[r]
        if kinds[r] == "le":
            tableau[r, slack_at] = 1.0
            basis.append(slack_at)
            slack_at += 1
        elif kinds[r] == "ge":
            tableau[r, slack_at] = -1.0
            slack_at += 1
            tableau[r, art_at] = 1.0
            basis.append(art_at)
            art_cols.append(art_at)
            art_at += 1
        else:
            tableau[r, art_at] = 1.0
            basis.append(art_at)
            art_cols.append(art_at)
            art_at += 1

    # Phase 1: maximize -(sum of artificials); reduced-cost row starts as
    # -(sum of rows with an artificial basic) so basic columns read zero.
    if art_cols:
        for r in range(m):
            if basis[r] in art_cols:
                tableau[-1] -= tableau[r]
        for c in art_cols:
            tableau[-1, c] = 0.0
        _iterate(tableau, basis, ncols)
        if tableau[-1, -1] < -FEAS_TOL:
            raise Infeasible("phase-1 optimum leaves infeasibility %g" % -tableau[-1, -1])
        # Drive leftover artificials out of the basis; all-zero rows are
        # redundant constraints and can be neutralized in place.
        art_set = set(art_cols)
        for r in range(m):
            if basis[r] in art_set:
                for j in range(ncols):
                    if j not in art_set and abs(tableau[r, j]) > FEAS_TOL:
                        _pivot(tableau, r, j)
                        basis[r] = j
                        break
        for c in art_cols:
            tableau[:, c] = 0.0

    # Phase 2: rebuild the reduced-cost row for the real objective.
    cost = np.zeros(ncols)
    cost[:nvars] = objective
    tableau[-1, :] = 0.0
    tableau[-1, :ncols] = -cost
    for r in range(m):
        cb = cost[basis[r]]
        if cb != 0.0:
            tableau[-1] += cb * tableau[r]
    _iterate(tableau, basis, ncols)

    x = np.zeros(nvars)
    for r in range(m):
        if basis[r] < nvars:
            x[basis[r]] = tableau[r, -1]
    return float(tableau[-1, -1]), x
