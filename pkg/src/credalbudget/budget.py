"""Optimal budgeted subsets of acts under the two regret criteria.

The minimax solver is the direct polynomial selection over per-act top-k
regret columns. The maximin solver scans candidate levels alpha upward and
asks, per level, whether k acts can answer every outside challenger at
regret <= alpha; that check is a dominating-set search over cover sets and
is done by a lexicographic DFS with pruning. A brute-force oracle evaluates
every subset for cross-checking.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import GuardExceededError
from .regret import (
    NEG_INFINITY,
    RegretMatrix,
    maximal_acts,
    maximin_regret,
    minimax_regret,
)

COVER_TOL = 1e-12
ORACLE_MAX_SUBSETS = 10**6

LEX = "lex"
SEEDED = "seeded"


class Criterion(str, Enum):
    MINIMAX = "minimax"
    MAXIMIN = "maximin"
    GREEDY_MINIMAX = "greedy-minimax"
    GREEDY_MAXIMIN = "greedy-maximin"
    ORACLE_MINIMAX = "oracle-minimax"
    ORACLE_MAXIMIN = "oracle-maximin"


@dataclass(frozen=True)
class BudgetSolution:
    """A chosen subset of act indices plus the criterion value it achieves.

    `value` is recomputable: applying the criterion's evaluator to `subset`
    returns it exactly. `tie_count` is the exact number of optimal subsets
    for the oracle criteria and the lower-bound flag 1 otherwise.
    """

    subset: tuple[int, ...]
    value: float
    criterion: Criterion
    tie_count: int
    tie_break: str


@dataclass(frozen=True)
class CoverFamily:
    """Per-act sets of challengers answered at regret <= alpha.

    sets[i] contains j exactly when entries[i, j] <= alpha + COVER_TOL;
    an act never covers itself.
    """

    alpha: float
    sets: tuple[frozenset[int], ...]


def _validate_k(k: int) -> None:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")


def _policy(tie_break: str, seed: int | None) -> tuple[str, np.random.Generator | None]:
    if tie_break == LEX:
        return LEX, None
    if tie_break == SEEDED:
        actual = 0 if seed is None else int(seed)
        return f"seeded:{actual}", np.random.default_rng(np.random.PCG64(actual))
    raise ValueError(f"tie_break: expected '{LEX}' or '{SEEDED}', got {tie_break!r}")


def _pick(candidates: list[int], rng: np.random.Generator | None) -> int:
    if rng is None or len(candidates) == 1:
        return min(candidates)
    return candidates[int(rng.integers(len(candidates)))]


def solve_minimax(
    matrix: RegretMatrix, k: int, *, tie_break: str = LEX, seed: int | None = None
) -> BudgetSolution:
    """Optimal size-min(k, n) subset under the minimax regret criterion.

    For each act i take its k largest regrets, note their minimum and where
    it sits; the act with the smallest such minimum anchors the answer: keep
    it together with its top challengers except the one attaining the
    minimum. Ties follow the lex or seeded policy.
    """
    _validate_k(k)
    label, rng = _policy(tie_break, seed)
    return _minimax_impl(matrix, k, rng, label)


def _minimax_impl(
    matrix: RegretMatrix, k: int, rng: np.random.Generator | None, label: str
) -> BudgetSolution:
    n = matrix.n
    if k >= n:
        return BudgetSolution(tuple(range(n)), NEG_INFINITY, Criterion.MINIMAX, 1, label)
    tops: list[list[int]] = []
    mins: list[float] = []
    drop: list[int] = []
    for i in range(n):
        vals = matrix.entries[i]
        order = sorted((j for j in range(n) if j != i), key=lambda j: (-vals[j], j))
        threshold = float(vals[order[k - 1]])
        if rng is None:
            top = order[:k]
        else:
            definite = [j for j in order[:k] if vals[j] > threshold]
            border = [j for j in order if vals[j] == threshold]
            extra = rng.choice(len(border), size=k - len(definite), replace=False)
            top = definite + [border[t] for t in sorted(int(t) for t in extra)]
        at_min = [j for j in top if vals[j] == threshold]
        tops.append(top)
        mins.append(threshold)
        drop.append(_pick(at_min, rng))
    best = min(mins)
    i_star = _pick([i for i in range(n) if mins[i] == best], rng)
    subset = sorted(({i_star} | set(tops[i_star])) - {drop[i_star]})
    return BudgetSolution(tuple(subset), best, Criterion.MINIMAX, 1, label)


def cover_family(matrix: RegretMatrix, alpha: float, *, tol: float = COVER_TOL) -> CoverFamily:
    """Challengers each act answers at level alpha."""
    n = matrix.n
    sets = tuple(
        frozenset(
            j for j in range(n) if j != i and matrix.entries[i, j] <= alpha + tol
        )
        for i in range(n)
    )
    return CoverFamily(float(alpha), sets)


def _cover_masks(covers: CoverFamily, n: int) -> list[int]:
    masks = []
    for i in range(n):
        mask = 1 << i
        for j in covers.sets[i]:
            mask |= 1 << j
        masks.append(mask)
    return masks


def reachability_check(covers: CoverFamily, k: int, n: int) -> tuple[int, ...] | None:
    """Find T with |T| = k whose members plus their covers reach all n acts.

    Returns None when no such T exists. The search enumerates k-subsets in
    lexicographic order, after two short-cuts: a size bound (k plus the k
    largest cover sizes must reach n) and a greedy pass that picks the act
    covering the most still-uncovered acts and returns immediately on
    success. Neither affects completeness; the enumeration is the fallback.
    """
    if k > n:
        raise ValueError(f"k = {k} exceeds the number of acts {n}")
    if len(covers.sets) != n:
        raise ValueError("cover family size does not match n")
    if k == n:
        return tuple(range(n))

    sizes = sorted((len(s) for s in covers.sets), reverse=True)
    if k + sum(sizes[:k]) < n:
        return None

    masks = _cover_masks(covers, n)
    full = (1 << n) - 1

    covered = 0
    chosen: list[int] = []
    for _ in range(k):
        gains = [
            ((masks[i] & ~covered & full).bit_count(), -i)
            for i in range(n)
            if i not in chosen
        ]
        best_gain, neg_i = max(gains)
        if best_gain == 0:
            break
        chosen.append(-neg_i)
        covered |= masks[-neg_i]
        if covered == full:
            spare = (i for i in range(n) if i not in chosen)
            while len(chosen) < k:
                chosen.append(next(spare))
            return tuple(sorted(chosen))

    return _dfs_first(masks, k, n, full)


def _dfs_first(masks: list[int], k: int, n: int, full: int) -> tuple[int, ...] | None:
    """Lexicographically first satisfying k-subset, or None."""

    def walk(start: int, depth: int, covered: int, prefix: list[int]):
        remaining = k - depth
        if covered == full:
            return tuple(prefix + list(range(start, start + remaining)))
        if remaining == 0:
            return None
        missing = (~covered) & full
        best_gain = 0
        for i in range(start, n):
            gain = (masks[i] & missing).bit_count()
            if gain > best_gain:
                best_gain = gain
        if best_gain * remaining < missing.bit_count():
            return None
        for i in range(start, n - remaining + 1):
            prefix.append(i)
            hit = walk(i + 1, depth + 1, covered | masks[i], prefix)
            if hit is not None:
                return hit
            prefix.pop()
        return None

    return walk(0, 0, 0, [])


def _collect_satisfying(masks: list[int], k: int, n: int, full: int) -> list[tuple[int, ...]]:
    """Every satisfying k-subset (potentially expensive; seeded ties only)."""
    hits: list[tuple[int, ...]] = []

    def walk(start: int, depth: int, covered: int, prefix: list[int]) -> None:
        remaining = k - depth
        if remaining == 0:
            if covered == full:
                hits.append(tuple(prefix))
            return
        missing = (~covered) & full
        if missing:
            best_gain = max(
                ((masks[i] & missing).bit_count() for i in range(start, n)), default=0
            )
            if best_gain * remaining < missing.bit_count():
                return
        for i in range(start, n - remaining + 1):
            prefix.append(i)
            walk(i + 1, depth + 1, covered | masks[i], prefix)
            prefix.pop()

    walk(0, 0, 0, [])
    return hits


def solve_maximin(
    matrix: RegretMatrix, k: int, *, tie_break: str = LEX, seed: int | None = None
) -> BudgetSolution:
    """Optimal size-min(k, n) subset under the maximin regret criterion.

    Scans candidate levels upward through the sorted off-diagonal regrets,
    starting at the (n - k)-th lowest and visiting each distinct value once;
    the first level whose cover family admits a size-k reachability subset
    is the optimum. The scan always terminates: the minimax value is an
    upper bound, and at the largest regret every cover is complete.
    """
    _validate_k(k)
    label, rng = _policy(tie_break, seed)
    n = matrix.n
    if k >= n:
        return BudgetSolution(tuple(range(n)), NEG_INFINITY, Criterion.MAXIMIN, 1, label)

    values = np.sort(matrix.off_diagonal_values())
    idx = n - k - 1
    previous = None
    while idx < values.size:
        alpha = float(values[idx])
        idx += 1
        if previous is not None and alpha == previous:
            continue
        previous = alpha
        covers = cover_family(matrix, alpha)
        found = reachability_check(covers, k, n)
        if found is None:
            continue
        value = maximin_regret(matrix, found)
        if value != alpha:
            # The cover tolerance merged levels closer than COVER_TOL, so a
            # strictly better subset may hide between alpha and this value.
            # Re-test each distinct level in that window with exact covers;
            # the first hit is the true optimum.
            for mid in np.unique(values[(values >= alpha) & (values <= value)]):
                exact = reachability_check(cover_family(matrix, float(mid), tol=0.0), k, n)
                if exact is not None:
                    found = exact
                    value = maximin_regret(matrix, found)
                    covers = cover_family(matrix, float(mid), tol=0.0)
                    break
        if rng is not None:
            masks = _cover_masks(covers, n)
            options = _collect_satisfying(masks, k, n, (1 << n) - 1)
            best = [T for T in options if maximin_regret(matrix, T) == value]
            found = best[int(rng.integers(len(best)))]
        return BudgetSolution(tuple(found), value, Criterion.MAXIMIN, 1, label)
    raise RuntimeError("internal error: maximin level scan found no reachable value")


def _base_criterion(criterion) -> Criterion:
    crit = Criterion(criterion)
    if crit in (Criterion.MINIMAX, Criterion.GREEDY_MINIMAX, Criterion.ORACLE_MINIMAX):
        return Criterion.MINIMAX
    return Criterion.MAXIMIN


def solve_greedy(
    matrix: RegretMatrix,
    k: int,
    criterion=Criterion.MINIMAX,
    *,
    tie_break: str = LEX,
    seed: int | None = None,
) -> BudgetSolution:
    """Greedy approximation: k rounds of the exact single-pick solver.

    Each round solves for the single best act among the acts not yet taken
    (challengers restricted to those same acts) and keeps the winner. The
    reported value applies the requested evaluator to the accumulated set
    against the full act set. Because the single-pick solvers of the two
    criteria coincide, the selected subset is criterion-independent.
    """
    _validate_k(k)
    label, rng = _policy(tie_break, seed)
    base = _base_criterion(criterion)
    n = matrix.n
    remaining = list(range(n))
    chosen: list[int] = []
    for _ in range(min(k, n)):
        sub = matrix.submatrix(remaining)
        winner = _minimax_impl(sub, 1, rng, label).subset[0]
        chosen.append(remaining[winner])
        remaining.pop(winner)
    evaluator = minimax_regret if base is Criterion.MINIMAX else maximin_regret
    out_crit = (
        Criterion.GREEDY_MINIMAX if base is Criterion.MINIMAX else Criterion.GREEDY_MAXIMIN
    )
    return BudgetSolution(
        tuple(sorted(chosen)), evaluator(matrix, chosen), out_crit, 1, label
    )


def budgeted_rule(
    matrix: RegretMatrix,
    k: int,
    criterion=Criterion.MINIMAX,
    *,
    tie_break: str = LEX,
    seed: int | None = None,
) -> tuple[int, ...]:
    """The k-budgeted decision rule for one of the exact criteria.

    Returns the maximality set outright when the whole act set fits the
    budget or when the optimal value is negative (the optimal subset then
    already contains every maximal act); otherwise the optimal subset.
    """
    _validate_k(k)
    base = _base_criterion(criterion)
    if matrix.n <= k:
        return maximal_acts(matrix)
    solver = solve_minimax if base is Criterion.MINIMAX else solve_maximin
    solution = solver(matrix, k, tie_break=tie_break, seed=seed)
    if solution.value < 0:
        return maximal_acts(matrix)
    return solution.subset


def _oracle_scan(matrix: RegretMatrix, k: int, criterion):
    base = _base_criterion(criterion)
    n = matrix.n
    size = min(k, n)
    total = math.comb(n, size)
    if total > ORACLE_MAX_SUBSETS:
        raise GuardExceededError(
            f"oracle enumeration of {total} subsets exceeds the {ORACLE_MAX_SUBSETS} guard"
        )
    evaluator = minimax_regret if base is Criterion.MINIMAX else maximin_regret
    best: float | None = None
    optima: list[tuple[int, ...]] = []
    for combo in itertools.combinations(range(n), size):
        value = evaluator(matrix, combo)
        if best is None or value < best:
            best = value
            optima = [combo]
        elif value == best:
            optima.append(combo)
    return best, optima


def oracle_solve(matrix: RegretMatrix, k: int, criterion=Criterion.MINIMAX) -> BudgetSolution:
    """Exhaustive reference solver: exact optimum, lex-first subset, tie count."""
    _validate_k(k)
    base = _base_criterion(criterion)
    value, optima = _oracle_scan(matrix, k, base)
    out_crit = (
        Criterion.ORACLE_MINIMAX if base is Criterion.MINIMAX else Criterion.ORACLE_MAXIMIN
    )
    return BudgetSolution(optima[0], value, out_crit, len(optima), LEX)


def oracle_optima(matrix: RegretMatrix, k: int, criterion=Criterion.MINIMAX) -> list[tuple[int, ...]]:
    """All optimal subsets of size min(k, n) for the criterion."""
    _validate_k(k)
    _, optima = _oracle_scan(matrix, k, criterion)
    return optima


def domination_graph_dot(matrix: RegretMatrix, alpha: float, *, tol: float = COVER_TOL) -> str:
    """DOT digraph with an edge i -> j when act i answers challenger j at alpha."""
    covers = cover_family(matrix, alpha, tol=tol)
    lines = ["digraph domination {", f'  label="alpha = {alpha:g}";']
    for name in matrix.names:
        lines.append(f'  "{name}";')
    for i in range(matrix.n):
        for j in sorted(covers.sets[i]):
            lines.append(f'  "{matrix.names[i]}" -> "{matrix.names[j]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
