"""Degrading a domain model, reproducibly.

Strips a seeded fraction of precondition/effect atoms from the blocks
schemas and shows the nesting property: raising completeness under the same
seed only ever restores atoms, never swaps them.
"""

from pathlib import Path

from caseplan import DegradeSpec, degrade, parse_domain

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures" / "blocks"

complete = parse_domain((FIXTURES / "domain.pddl").read_text())
print(f"complete blocks model carries {complete.atom_count()} schema atoms")

for completeness in (1.0, 0.8, 0.6, 0.4, 0.2):
    model = degrade(complete, DegradeSpec(completeness=completeness, seed=7))
    sizes = {name: schema.atom_count() for name, schema in model.schemas.items()}
    print(f"completeness {completeness:.1f}: {model.atom_count():2d} atoms kept  {sizes}")

print()
print("what 60% completeness does to the stack schema (seed 7):")
degraded = degrade(complete, DegradeSpec(completeness=0.6, seed=7))
for label in ("pre", "add", "delete"):
    full = getattr(complete.schemas["stack"], label)
    kept = getattr(degraded.schemas["stack"], label)
    missing = " ".join(a.pddl() for a in sorted(full - kept)) or "-"
    print(f"  {label:6s} lost: {missing}")
