"""Mining maximal frequent contiguous patterns from a fragment database.

With the two walkthrough fragments, threshold 2 keeps exactly their shared
four-action run; threshold 1 keeps the two whole fragments. All shorter
sub-runs are absorbed by maximality.
"""

from pathlib import Path

from caseplan import (
    SequenceDB,
    build_fragments,
    mine_frequent,
    parse_domain,
    parse_problem,
    read_case_library,
    support,
)

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures" / "blocks"

domain = parse_domain((FIXTURES / "domain.pddl").read_text())
problem = parse_problem((FIXTURES / "tower.pddl").read_text(), domain)
cases = read_case_library(FIXTURES / "cases")

fragments = build_fragments(problem, cases)
db = SequenceDB.from_sequences([f.actions for f in fragments])
print("fragment database:")
for sid, seq in db.entries:
    print(f"  #{sid}: " + " ".join(a.pddl() for a in seq))

for threshold in (2, 1):
    result = mine_frequent(db, threshold)
    print()
    print(f"maximal frequent patterns at support >= {threshold}:")
    for pattern in result.patterns:
        print(f"  [{result.supports[pattern]}x] " +
              " ".join(a.pddl() for a in pattern))

shared = result.patterns[-1][:2]
print()
print(f"support of {' '.join(a.pddl() for a in shared)}:", support(db, shared))
