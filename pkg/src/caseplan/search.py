"""Grounded forward search: greedy best-first with a delete-relaxation heuristic.

The solver takes whatever model its problem carries, complete or degraded,
and never second-guesses it: a degraded precondition list simply makes more
actions applicable.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .strips import (
    Grounding,
    Plan,
    PlanningProblem,
    StripsError,
    execute_plan,
)

SOLVED = "solved"
UNSOLVABLE = "unsolvable"
BUDGET = "budget"

RELAXED_ADD = "relaxed-add"
GOAL_COUNT = "goal-count"


@dataclass(frozen=True)
class SearchConfig:
    heuristic: str = RELAXED_ADD
    max_expansions: int = 100_000

    def __post_init__(self) -> None:
        if self.heuristic not in (RELAXED_ADD, GOAL_COUNT):
            raise ValueError(f"unknown heuristic {self.heuristic!r}")
        if self.max_expansions <= 0:
            raise ValueError("max_expansions must be positive")


@dataclass(frozen=True)
class SolveResult:
    status: str
    plan: Plan | None
    expansions: int

    @property
    def solved(self) -> bool:
        return self.status == SOLVED


def _h_add(state: frozenset[int], goal_ids: tuple[int, ...], grounding: Grounding) -> float:
    """Additive delete-relaxation cost of the goal set from a state.

    Dijkstra over atoms: an action fires once all its preconditions have
    final costs and charges 1 plus their sum to every atom it adds.
    """
    n = len(grounding.atoms)
    cost = [math.inf] * n
    waiting: dict[int, list[int]] = {}
    remaining = []
    acc = []
    heap: list[tuple[float, int]] = []

    for a in state:
        cost[a] = 0.0
        heap.append((0.0, a))
    heapq.heapify(heap)

    for op_idx, (pre, _, _) in enumerate(grounding.ops_ids):
        remaining.append(len(pre))
        acc.append(1.0)
        for a in pre:
            waiting.setdefault(a, []).append(op_idx)

    def fire(op_idx: int) -> None:
        c = acc[op_idx]
        for b in grounding.ops_ids[op_idx][1]:
            if c < cost[b]:
                cost[b] = c
                heapq.heappush(heap, (c, b))

    for op_idx, r in enumerate(remaining):
        if r == 0:
            fire(op_idx)

    done = [False] * n
    while heap:
        c, a = heapq.heappop(heap)
        if done[a] or c > cost[a]:
            continue
        done[a] = True
        for op_idx in waiting.get(a, ()):
            acc[op_idx] += c
            remaining[op_idx] -= 1
            if remaining[op_idx] == 0:
                fire(op_idx)

    total = 0.0
    for gid in goal_ids:
        if cost[gid] == math.inf:
            return math.inf
        total += cost[gid]
    return total


def relaxed_add_heuristic(state, goal, grounding: Grounding) -> float:
    """Public entry point over atom sets; 0 iff the goal already holds."""
    return _h_add(grounding.encode(state), tuple(sorted(grounding.encode(goal))), grounding)


def solve(problem: PlanningProblem, config: SearchConfig | None = None,
          grounding: Grounding | None = None) -> SolveResult:
    """Greedy best-first search from the initial state to the goal.

    Deterministic: ties in the heuristic fall back to discovery order, and
    successors are generated in lexicographic ground-action order. Any plan
    returned has been re-executed against the model as a self-check.
    ``unsolvable`` is only reported on a proof (exhausted reachable space, or
    a goal atom unreachable even under delete relaxation).
    """
    config = config or SearchConfig()
    grounding = grounding or Grounding.for_problem(problem)

    init = grounding.encode(problem.init)
    goal = grounding.encode(problem.goal)
    goal_ids = tuple(sorted(goal))

    if config.heuristic == RELAXED_ADD:
        def h(state: frozenset[int]) -> float:
            return _h_add(state, goal_ids, grounding)
    else:
        def h(state: frozenset[int]) -> float:
            return float(len(goal - state))

    if goal <= init:
        return SolveResult(SOLVED, (), 0)

    h0 = h(init)
    if h0 == math.inf:
        return SolveResult(UNSOLVABLE, None, 0)

    ops = grounding.ops_ids
    actions = grounding.actions
    op_ids_sets = [(frozenset(pre), frozenset(add), frozenset(dele))
                   for pre, add, dele in ops]

    parent: dict[frozenset[int], tuple[frozenset[int], int] | None] = {init: None}
    heap: list[tuple[float, int, frozenset[int]]] = [(h0, 0, init)]
    closed: set[frozenset[int]] = set()
    counter = 1
    expansions = 0

    while heap:
        _, _, state = heapq.heappop(heap)
        if state in closed:
            continue
        if goal <= state:
            plan = _reconstruct(parent, state, actions)
            check = execute_plan(problem, plan)
            if not check.success:
                raise StripsError(f"internal: search produced an invalid plan ({check.reason})")
            return SolveResult(SOLVED, plan, expansions)
        if expansions >= config.max_expansions:
            return SolveResult(BUDGET, None, expansions)
        closed.add(state)
        expansions += 1
        for op_idx, (pre, add, dele) in enumerate(op_ids_sets):
            if pre <= state:
                succ = (state - dele) | add
                if succ not in parent:
                    hs = h(succ)
                    if hs == math.inf:
                        continue
                    parent[succ] = (state, op_idx)
                    heapq.heappush(heap, (hs, counter, succ))
                    counter += 1
    return SolveResult(UNSOLVABLE, None, expansions)


def _reconstruct(parent, state, actions) -> Plan:
    steps = []
    cur = state
    while parent[cur] is not None:
        prev, op_idx = parent[cur]
        steps.append(actions[op_idx].action)
        cur = prev
    steps.reverse()
    return tuple(steps)
