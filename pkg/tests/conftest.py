"""Shared fixtures: a hand-built blocks world, the tower problem, and its cases.

Everything here is constructed in Python, independently of the PDDL parser,
so parser tests can compare against it and semantic tests do not depend on
file I/O.
"""

from __future__ import annotations

from pathlib import Path

import pytest

from caseplan import ActionSchema, Atom, CaseFile, DomainModel, GroundAction, PlanningProblem

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures" / "blocks"


def A(text: str) -> Atom:
    parts = text.split()
    return Atom(parts[0], tuple(parts[1:]))


def GA(text: str) -> GroundAction:
    parts = text.split()
    return GroundAction(parts[0], tuple(parts[1:]))


def atoms(*texts: str) -> frozenset[Atom]:
    return frozenset(A(t) for t in texts)


def plan(text: str) -> tuple[GroundAction, ...]:
    return tuple(GA(step) for step in text.split(","))


BLOCKS_PREDICATES = {
    "on": ("object", "object"),
    "ontable": ("object",),
    "clear": ("object",),
    "handempty": (),
    "holding": ("object",),
}


def make_blocks_domain() -> DomainModel:
    x = ("?x", "object")
    y = ("?y", "object")
    schemas = {
        "pickup": ActionSchema(
            "pickup", (x,),
            pre=frozenset({A("clear ?x"), A("ontable ?x"), A("handempty")}),
            add=frozenset({A("holding ?x")}),
            delete=frozenset({A("ontable ?x"), A("clear ?x"), A("handempty")})),
        "putdown": ActionSchema(
            "putdown", (x,),
            pre=frozenset({A("holding ?x")}),
            add=frozenset({A("ontable ?x"), A("clear ?x"), A("handempty")}),
            delete=frozenset({A("holding ?x")})),
        "stack": ActionSchema(
            "stack", (x, y),
            pre=frozenset({A("holding ?x"), A("clear ?y")}),
            add=frozenset({A("on ?x ?y"), A("clear ?x"), A("handempty")}),
            delete=frozenset({A("holding ?x"), A("clear ?y")})),
        "unstack": ActionSchema(
            "unstack", (x, y),
            pre=frozenset({A("on ?x ?y"), A("clear ?x"), A("handempty")}),
            add=frozenset({A("holding ?x"), A("clear ?y")}),
            delete=frozenset({A("on ?x ?y"), A("clear ?x"), A("handempty")})),
    }
    return DomainModel(name="blocks", types={"object": None},
                       predicates=dict(BLOCKS_PREDICATES), schemas=schemas)


def make_incomplete_blocks() -> DomainModel:
    """The degraded variant used by the golden walkthrough: pickup lost its
    (handempty) precondition, stack lost (clear ?y) from precondition and
    delete list, unstack no longer deletes (handempty)."""
    complete = make_blocks_domain()
    schemas = dict(complete.schemas)
    pickup = schemas["pickup"]
    schemas["pickup"] = ActionSchema(
        "pickup", pickup.params,
        pre=pickup.pre - {A("handempty")}, add=pickup.add, delete=pickup.delete)
    stack = schemas["stack"]
    schemas["stack"] = ActionSchema(
        "stack", stack.params,
        pre=stack.pre - {A("clear ?y")}, add=stack.add,
        delete=stack.delete - {A("clear ?y")})
    unstack = schemas["unstack"]
    schemas["unstack"] = ActionSchema(
        "unstack", unstack.params,
        pre=unstack.pre, add=unstack.add, delete=unstack.delete - {A("handempty")})
    return DomainModel(name="blocks", types={"object": None},
                       predicates=dict(BLOCKS_PREDICATES), schemas=schemas)


TOWER_INIT = atoms("clear b", "clear c", "clear d", "handempty",
                   "on c a", "ontable a", "ontable b", "ontable d")
TOWER_GOAL = atoms("on b a", "on c b", "on d c")

GOLDEN_SOLUTION = plan("unstack c a,putdown c,pickup b,stack b a,"
                       "pickup c,stack c b,pickup d,stack d c")

P1_FRAGMENT = plan("pickup b,stack b a,pickup c,stack c b,pickup d,stack d c")
P2_FRAGMENT = plan("unstack b c,putdown b,unstack c a,putdown c,"
                   "pickup b,stack b a,pickup c,stack c b")


def make_tower_problem(domain: DomainModel) -> PlanningProblem:
    objects = {o: "object" for o in "abcd"}
    return PlanningProblem(name="tower", domain=domain, objects=objects,
                           init=TOWER_INIT, goal=TOWER_GOAL)


def make_p1() -> CaseFile:
    return CaseFile(
        init=atoms("clear b1", "clear b2", "clear b3", "clear b4", "handempty",
                   "ontable b1", "ontable b2", "ontable b3", "ontable b4"),
        goal=atoms("on b1 b3", "on b3 b2", "on b4 b1"),
        plan=plan("pickup b3,stack b3 b2,pickup b1,stack b1 b3,pickup b4,stack b4 b1"))


def make_p2() -> CaseFile:
    return CaseFile(
        init=atoms("clear b1", "handempty", "on b1 b3", "on b3 b2", "ontable b2"),
        goal=atoms("on b1 b2", "on b3 b1"),
        plan=plan("unstack b1 b3,putdown b1,unstack b3 b2,putdown b3,"
                  "pickup b1,stack b1 b2,pickup b3,stack b3 b1"))


@pytest.fixture(scope="session")
def blocks():
    return make_blocks_domain()


@pytest.fixture(scope="session")
def incomplete_blocks():
    return make_incomplete_blocks()


@pytest.fixture(scope="session")
def tower(blocks):
    return make_tower_problem(blocks)


@pytest.fixture(scope="session")
def tower_incomplete(incomplete_blocks):
    return make_tower_problem(incomplete_blocks)


@pytest.fixture(scope="session")
def p1():
    return make_p1()


@pytest.fixture(scope="session")
def p2():
    return make_p2()


@pytest.fixture(scope="session")
def fixture_dir():
    return FIXTURES
