"""States, actions, and plan execution on the blocks world.

Parses the complete blocks domain and the four-block tower problem, pokes at
applicability, and executes a full plan step by step.
"""

from pathlib import Path

from caseplan import GroundAction, applicable, apply_action, execute_plan, \
    parse_domain, parse_problem

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures" / "blocks"

domain = parse_domain((FIXTURES / "domain.pddl").read_text())
problem = parse_problem((FIXTURES / "tower.pddl").read_text(), domain)

print("initial state:")
for atom in sorted(problem.init):
    print("  ", atom.pddl())
print("goal:", " ".join(a.pddl() for a in sorted(problem.goal)))

pickup_b = GroundAction("pickup", ("b",))
pickup_c = GroundAction("pickup", ("c",))
print()
print("pickup b applicable?", applicable(problem.init, pickup_b, domain))
print("pickup c applicable?", applicable(problem.init, pickup_c, domain),
      " (c sits on a, not on the table)")

plan = [GroundAction("unstack", ("c", "a")), GroundAction("putdown", ("c",)),
        GroundAction("pickup", ("b",)), GroundAction("stack", ("b", "a")),
        GroundAction("pickup", ("c",)), GroundAction("stack", ("c", "b")),
        GroundAction("pickup", ("d",)), GroundAction("stack", ("d", "c"))]

print()
print("executing an eight-step plan:")
state = problem.init
for action in plan:
    state = apply_action(state, action, domain)
    holding = [a for a in state if a.predicate == "holding"]
    print(f"  after {action.pddl():18s} holding={holding[0].pddl() if holding else '-'}")

result = execute_plan(problem, tuple(plan))
print()
print("plan succeeds:", result.success)
