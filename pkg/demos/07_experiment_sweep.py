"""A small benchmark sweep: accuracy versus model completeness and library size.

Desk-scale version of the full harness; expect the accuracy column to climb
with both knobs. Writes demo_sweep.csv next to this script.
"""

from pathlib import Path

from caseplan import ExperimentSpec, SearchConfig, make_problem_suite, \
    parse_domain, run_experiment
from caseplan.cases import write_rows
from caseplan.experiment import accuracy_of

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures" / "blocks"

domain = parse_domain((FIXTURES / "domain.pddl").read_text())
problems = make_problem_suite(domain, 12, seed=3, n_blocks=4)

spec = ExperimentSpec(
    domain=domain,
    problems=problems,
    case_counts=(10, 40),
    completeness_levels=(0.4, 0.7, 1.0),
    deltas=(3,),
    seeds=(1, 2),
    search=SearchConfig(max_expansions=4000),
    case_blocks=4,
    timing=True,
)

rows, _ = run_experiment(spec)
out = Path(__file__).with_name("demo_sweep.csv")
write_rows(out, rows)
print(f"wrote {len(rows)} rows to {out.name}")

print()
print("accuracy by (completeness, library size):")
print("  completeness   10 cases   40 cases")
for completeness in spec.completeness_levels:
    cells = [accuracy_of(rows, completeness=completeness, num_cases=n)
             for n in spec.case_counts]
    print(f"  {completeness:12.1f}   {cells[0]:8.2f}   {cells[1]:8.2f}")

print()
print("total solve time (ms) by library size:")
for n in spec.case_counts:
    millis = sum(r.cpu_millis for r in rows if r.num_cases == n)
    print(f"  {n:3d} cases: {millis} ms")
