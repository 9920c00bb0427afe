"""Concatenate frequent fragments into a plan, guided by causal pairs.

Fragments may only be joined where they overlap on a common contiguous run
at one end. Once every causal pair is satisfied, the draft plan is trimmed
(inapplicable actions from the front, goal-deleting actions from the back)
and must execute to the goal under the problem's own model.
"""

from __future__ import annotations

from .causal import CausalPair
from .mining import ActionSeq, FrequentFragmentSet
from .strips import GroundAction, Plan, PlanningProblem, execute_plan, grounded


def share(partial: Plan, fragment: ActionSeq) -> bool:
    """True if the partial plan is empty or overlaps the fragment at an end.

    An overlap is a contiguous run of equal actions that is both a suffix of
    one sequence and a prefix of the other, of length at least one.
    """
    if not partial:
        return True
    limit = min(len(partial), len(fragment))
    for k in range(1, limit + 1):
        if partial[-k:] == fragment[:k] or fragment[-k:] == partial[:k]:
            return True
    return False


def _overlap(head: Plan, tail: Plan) -> int:
    """Longest k such that the last k actions of head equal the first k of tail."""
    best = 0
    for k in range(1, min(len(head), len(tail)) + 1):
        if head[-k:] == tail[:k]:
            best = k
    return best


def append(partial: Plan, fragment: ActionSeq) -> Plan:
    """Merge the fragment into the partial plan on their longest end overlap.

    The overlap appears once in the result. When both directions overlap, the
    longer one wins; ties attach the fragment at the end.
    """
    fragment = tuple(fragment)
    if not partial:
        return fragment
    at_end = _overlap(partial, fragment)
    at_front = _overlap(fragment, partial)
    if at_end == 0 and at_front == 0:
        raise ValueError("append requires share(partial, fragment)")
    if at_end >= at_front:
        return partial + fragment[at_end:]
    return fragment + partial[at_front:]


def removelinks(plan: Plan, pairs: frozenset[CausalPair]) -> frozenset[CausalPair]:
    """Drop every pair whose provider occurs somewhere before its consumer."""
    first: dict[GroundAction, int] = {}
    last: dict[GroundAction, int] = {}
    for i, action in enumerate(plan):
        first.setdefault(action, i)
        last[action] = i
    kept = []
    for pair in pairs:
        i = first.get(pair.provider)
        j = last.get(pair.consumer)
        if i is None or j is None or i >= j:
            kept.append(pair)
    return frozenset(kept)


def trim(plan: Plan, problem: PlanningProblem) -> Plan:
    """Remove broken leading actions and goal-deleting trailing actions.

    Front: simulate from the initial state under the problem's model and
    delete the earliest inapplicable action, restarting until the whole
    remainder executes. Back: while the last action's delete list touches a
    goal atom, drop it.
    """
    model = problem.domain
    actions = list(plan)
    while actions:
        state = problem.init
        failed = None
        for i, action in enumerate(actions):
            ga = grounded(model, action)
            if not ga.pre <= state:
                failed = i
                break
            state = (state - ga.delete) | ga.add
        if failed is None:
            break
        del actions[failed]
    while actions and grounded(model, actions[-1]).delete & problem.goal:
        actions.pop()
    return tuple(actions)


def concat_frag(problem: PlanningProblem, pairs: frozenset[CausalPair],
                fragments: FrequentFragmentSet, *,
                node_budget: int = 20_000) -> Plan | None:
    """Depth-first assembly of fragments until all causal pairs are satisfied.

    At each step, pick a remaining pair and an unused fragment that mentions
    one of the pair's actions and shares an end overlap with the draft; merge
    and recurse. When no pairs remain the draft is trimmed and accepted iff
    it executes to the goal under the problem's model. Branches are explored
    pairs-sorted and fragments longest-first, so results are deterministic;
    the node budget caps backtracking on adversarial inputs.
    """
    nodes = 0

    def rec(partial: Plan, remaining: frozenset[CausalPair],
            available: tuple[ActionSeq, ...]) -> Plan | None:
        nonlocal nodes
        if not remaining:
            candidate = trim(partial, problem)
            result = execute_plan(problem, candidate)
            return candidate if result.success else None
        for pair in sorted(remaining):
            for idx, frag in enumerate(available):
                if (pair.provider in frag or pair.consumer in frag) \
                        and share(partial, frag):
                    nodes += 1
                    if nodes > node_budget:
                        return None
                    merged = append(partial, frag)
                    rest = available[:idx] + available[idx + 1:]
                    found = rec(merged, removelinks(merged, remaining), rest)
                    if found is not None:
                        return found
        return None

    return rec((), pairs, fragments.patterns)
