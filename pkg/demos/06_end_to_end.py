"""The whole pipeline on the walkthrough instance, then validation.

Fragments are merged on their longest common end run, links are discharged,
the draft loses its two inapplicable lead actions, and the result survives
execution under the complete model that the planner never saw.
"""

from pathlib import Path

from caseplan import (
    execute_plan,
    parse_domain,
    parse_problem,
    read_case_library,
    solve_with_library,
)
from caseplan.evaluate import check_solution

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures" / "blocks"

complete = parse_domain((FIXTURES / "domain.pddl").read_text())
incomplete = parse_domain((FIXTURES / "incomplete.pddl").read_text())
problem = parse_problem((FIXTURES / "tower.pddl").read_text(), incomplete)
cases = read_case_library(FIXTURES / "cases")

outcome = solve_with_library(problem, cases, min_support=1)

print(f"route: {outcome.route}")
print(f"causal pairs: {len(outcome.pairs)}, fragments: {len(outcome.fragments)}, "
      f"frequent patterns: {len(outcome.frequent.patterns)}")
print()
print("solution:")
for action in outcome.plan:
    print("  ", action.pddl())

print()
print("executes under the incomplete model:",
      execute_plan(problem, outcome.plan).success)
print("valid under the hidden complete model:",
      check_solution(problem, outcome.plan, complete))

print()
print("for contrast, withholding the second case forces the skeletal fallback,")
print("whose shortcut plan fools the incomplete model but not the real one:")
partial = solve_with_library(problem, cases[:1], min_support=1)
print("  route:", partial.route)
print("  plan: ", " ".join(a.pddl() for a in partial.plan))
print("  valid under complete model:",
      check_solution(problem, partial.plan, complete))
