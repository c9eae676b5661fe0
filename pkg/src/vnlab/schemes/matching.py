from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from loguru import logger
from scipy.optimize import linear_sum_assignment

from vnlab.config import settings
from vnlab.errors import EnumerationCapError, SchemeInputError
from vnlab.graph.core import LabeledGraph
from vnlab.graph.labels import VertexLabel
from vnlab.graph.permutation import Permutation
from vnlab.schemes.base import PositionalScheme
from vnlab.schemes.tiebreak import TieBreak

MatchMode = Literal["exact", "relaxed", "auto"]
FwObjective = Literal["convex", "indefinite"]


def _disagreements(A: np.ndarray, B: np.ndarray, assignment: np.ndarray) -> int:
    PB = B[np.ix_(assignment, assignment)]
    return int(np.triu(A != PB, k=1).sum())


def gm_delta(ga: LabeledGraph, gb: LabeledGraph, Q: Permutation) -> float:
    """``||A Q - Q B||_F`` for the vertex correspondence ``Q: labels(ga) -> labels(gb)``.

    Equals ``sqrt(2 * d)`` where ``d`` counts vertex pairs that are adjacent in exactly
    one of the two graphs under ``Q``.
    """
    if ga.n != gb.n:
        raise SchemeInputError(f"graphs differ in size ({ga.n} vs {gb.n})")
    if Q.domain != frozenset(ga.labels) or Q.codomain != frozenset(gb.labels):
        raise SchemeInputError("Q must map the labels of the first graph onto the second")
    assignment = np.array([gb.position(Q(x)) for x in ga.labels], dtype=np.int64)
    return math.sqrt(2 * _disagreements(ga.adjacency, gb.adjacency, assignment))


@dataclass(frozen=True)
class MatchResult:
    """Outcome of a graph matching run.

    ``assignment[i]`` is the position in the second graph matched to position ``i`` of
    the first; ``permutation`` is the same map on labels. ``soft`` holds the final
    doubly stochastic iterate of the relaxed solver.
    """

    permutation: Permutation
    assignment: tuple[int, ...]
    disagreements: int
    certified: bool
    converged: bool = True
    iterations: int = 0
    soft: np.ndarray | None = field(default=None, repr=False, compare=False)

    @property
    def objective(self) -> float:
        return math.sqrt(2 * self.disagreements)


def _bitrows(A: np.ndarray) -> list[int]:
    return [sum(1 << int(j) for j in np.flatnonzero(row)) for row in A]


def _branch_and_bound(
    rows_a: list[int], rows_b: list[int], pinned: tuple[int, int] | None = None
) -> tuple[int, list[int]]:
    """Minimum-disagreement bijection by depth-first search.

    Vertices of the first graph are placed in position order and candidates tried in
    increasing position, and only strict improvements replace the incumbent, so the
    result is the lexicographically smallest minimizer. A node is pruned when its
    cost plus the row-wise degree gaps towards the unplaced vertices plus the edge
    count gap among them reaches the incumbent.
    """
    n = len(rows_a)
    full = (1 << n) - 1
    suffix_edges_a = [0] * (n + 1)
    for t in range(n):
        mask = full & ~((1 << t) - 1)
        suffix_edges_a[t] = sum((rows_a[j] & mask).bit_count() for j in range(t, n)) // 2

    best_cost = n * n + 1
    best: list[int] = []
    assign = [-1] * n
    pin_a, pin_b = pinned if pinned is not None else (-1, -1)

    def bound(t: int, cost: int, rest_b: int) -> int:
        rest_a = full & ~((1 << t) - 1)
        lb = cost
        for i in range(t):
            lb += abs((rows_a[i] & rest_a).bit_count() - (rows_b[assign[i]] & rest_b).bit_count())
        edges_b = 0
        r = rest_b
        while r:
            low = r & -r
            edges_b += (rows_b[low.bit_length() - 1] & rest_b).bit_count()
            r ^= low
        return lb + abs(suffix_edges_a[t] - edges_b // 2)

    def dfs(t: int, cost: int, used_b: int) -> None:
        nonlocal best_cost, best
        if t == n:
            if cost < best_cost:
                best_cost, best = cost, assign.copy()
            return
        if t == pin_a:
            candidates: range | tuple[int, ...] = (pin_b,)
        else:
            candidates = range(n)
        for b in candidates:
            if used_b >> b & 1 or (b == pin_b and t != pin_a):
                continue
            inc = 0
            for i in range(t):
                inc += (rows_a[t] >> i & 1) != (rows_b[b] >> assign[i] & 1)
            assign[t] = b
            now_used = used_b | (1 << b)
            if bound(t + 1, cost + inc, full & ~now_used) < best_cost:
                dfs(t + 1, cost + inc, now_used)
            assign[t] = -1

    dfs(0, 0, 0)
    return best_cost, best


def _check_pair(ga: LabeledGraph, gb: LabeledGraph) -> None:
    if ga.n != gb.n:
        raise SchemeInputError(f"graph matching needs equal sizes, got {ga.n} and {gb.n}")


def _result(ga: LabeledGraph, gb: LabeledGraph, assignment: list[int], **kw) -> MatchResult:
    perm = Permutation.from_sequences(ga.labels, [gb.labels[j] for j in assignment])
    d = _disagreements(ga.adjacency, gb.adjacency, np.asarray(assignment, dtype=np.int64))
    return MatchResult(perm, tuple(assignment), d, **kw)


def exact_match(
    ga: LabeledGraph,
    gb: LabeledGraph,
    cap: int | None = None,
    pinned: tuple[VertexLabel, VertexLabel] | None = None,
) -> MatchResult:
    """Certified minimizer of ``gm_delta`` over all bijections.

    :param pinned: optional ``(x, y)`` forcing ``x`` onto ``y``.
    :raises EnumerationCapError: above ``cap`` vertices (``settings.exact_match_cap``).
    """
    _check_pair(ga, gb)
    cap = settings.exact_match_cap if cap is None else cap
    if ga.n > cap:
        raise EnumerationCapError("exact graph matching", ga.n, cap, "use relaxed matching")
    if ga.n == 0:
        return _result(ga, gb, [], certified=True)
    pin = None if pinned is None else (ga.position(pinned[0]), gb.position(pinned[1]))
    _, assignment = _branch_and_bound(_bitrows(ga.adjacency), _bitrows(gb.adjacency), pin)
    return _result(ga, gb, assignment, certified=True)


def _initial_iterate(n: int, init: str) -> np.ndarray:
    if init == "barycenter":
        return np.full((n, n), 1.0 / n)
    if init == "identity":
        return np.eye(n)
    raise SchemeInputError(f"unknown Frank-Wolfe initialization {init!r}")


def relaxed_match(
    ga: LabeledGraph,
    gb: LabeledGraph,
    max_iter: int | None = None,
    tol: float | None = None,
    init: str | None = None,
    objective: FwObjective = "convex",
) -> MatchResult:
    """Frank-Wolfe over doubly stochastic matrices, rounded to the nearest permutation.

    ``convex`` minimizes ``||A D - D B||_F^2``; ``indefinite`` minimizes
    ``-trace(A D B D^T)``. Each step solves a linear assignment on the gradient and moves
    by the exact line-search step, clipped to ``[0, 1]``. The run stops when the
    relative objective change drops below ``tol``.
    """
    _check_pair(ga, gb)
    max_iter = settings.fw_max_iter if max_iter is None else max_iter
    tol = settings.fw_tol if tol is None else tol
    init = settings.fw_init if init is None else init
    n = ga.n
    if n == 0:
        return _result(ga, gb, [], certified=False)

    A = ga.adjacency.astype(np.float64)
    B = gb.adjacency.astype(np.float64)
    D = _initial_iterate(n, init)

    def f(M: np.ndarray) -> float:
        if objective == "convex":
            R = A @ M - M @ B
            return float((R * R).sum())
        return -float(np.trace(A @ M @ B @ M.T))

    obj = f(D)
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        if objective == "convex":
            R0 = A @ D - D @ B
            grad = 2.0 * (A @ R0 - R0 @ B)
        else:
            grad = -2.0 * (A @ D @ B)
        rows, cols = linear_sum_assignment(grad)
        Q = np.zeros_like(D)
        Q[rows, cols] = 1.0
        step = Q - D
        if objective == "convex":
            R1 = A @ step - step @ B
            denom = float((R1 * R1).sum())
            t = 0.0 if denom <= 0.0 else float(np.clip(-(R0 * R1).sum() / denom, 0.0, 1.0))
        else:
            a = -float(np.trace(A @ step @ B @ step.T))
            b = -2.0 * float(np.trace(A @ step @ B @ D.T))
            if a > 0.0:
                t = float(np.clip(-b / (2.0 * a), 0.0, 1.0))
            else:
                t = 1.0 if a + b < 0.0 else 0.0
        D = D + t * step
        new_obj = f(D)
        change = abs(obj - new_obj)
        obj = new_obj
        if t == 0.0 or change <= tol * max(abs(obj), 1.0):
            converged = True
            break

    if not converged:
        logger.warning(
            "Frank-Wolfe stopped after {} iterations without converging (tol={})", it, tol
        )
    _, cols = linear_sum_assignment(D, maximize=True)
    return _result(
        ga, gb, [int(c) for c in cols], certified=False, converged=converged, iterations=it, soft=D
    )


class GraphMatchingScheme(PositionalScheme):
    """Nominate by graph matching: the image of ``v*`` first, then by match quality.

    Exact mode re-solves with ``v*`` pinned to each candidate and orders candidates by
    the constrained optimum; relaxed mode orders by the ``v*`` row of the final soft
    assignment. Remaining ties follow the tie-break order.
    """

    def __init__(
        self,
        mode: MatchMode = "auto",
        tie_break: TieBreak | None = None,
        cap: int | None = None,
        max_iter: int | None = None,
        tol: float | None = None,
        init: str | None = None,
        objective: FwObjective = "convex",
    ) -> None:
        super().__init__(tie_break)
        if mode not in ("exact", "relaxed", "auto"):
            raise SchemeInputError(f"unknown matching mode {mode!r}")
        self.mode = mode
        self.cap = settings.exact_match_cap if cap is None else cap
        self.max_iter = max_iter
        self.tol = tol
        self.init = init
        self.objective = objective
        self.name = f"gm-{mode}"

    def _use_exact(self, n: int) -> bool:
        if self.mode == "auto":
            return n <= self.cap
        return self.mode == "exact"

    def _rank(self, g1: LabeledGraph, h: LabeledGraph, v_star: VertexLabel) -> list[int]:
        _check_pair(g1, h)
        i = g1.position(v_star)
        if self._use_exact(g1.n):
            res = exact_match(g1, h, cap=self.cap)
            rows_a, rows_b = _bitrows(g1.adjacency), _bitrows(h.adjacency)
            first = res.assignment[i]
            cost = {
                j: _branch_and_bound(rows_a, rows_b, (i, j))[0] for j in range(h.n) if j != first
            }
            rest = sorted((j for j in range(h.n) if j != first), key=lambda j: (cost[j], j))
            return [first, *rest]

        res = relaxed_match(
            g1, h, max_iter=self.max_iter, tol=self.tol, init=self.init, objective=self.objective
        )
        first = res.assignment[i]
        score = res.soft[i]
        rest = sorted((j for j in range(h.n) if j != first), key=lambda j: (-score[j], j))
        return [first, *rest]

    def describe(self) -> dict:
        return {"name": self.name, "mode": self.mode, "cap": self.cap, "objective": self.objective}
