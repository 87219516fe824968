"""Seeded random models and formulas shared by the property and acceptance tests."""

from __future__ import annotations

import random

from episkill.model import Model, make_model
from episkill.syntax import (
    AddSkills,
    AssignSkills,
    Atom,
    BoxAssign,
    BoxMinus,
    BoxPlus,
    Common,
    CopySkills,
    Distributed,
    Field,
    Formula,
    Implies,
    Knows,
    Mutual,
    Not,
    RemoveSkills,
)

ATOMS = ("p", "q", "r")
AGENTS = ("a", "b", "c")
SKILLS = ("s1", "s2", "s3")


def random_subset(rng: random.Random, items, nonempty: bool = False) -> frozenset:
    while True:
        chosen = frozenset(x for x in items if rng.random() < 0.5)
        if chosen or not nonempty:
            return chosen


def random_model(
    rng: random.Random, max_worlds: int = 4, agents=AGENTS, skills=SKILLS, min_worlds: int = 1
) -> Model:
    n = rng.randint(min_worlds, max_worlds)
    worlds = [f"w{i}" for i in range(n)]
    edges = {}
    for i in range(n):
        for j in range(i, n):
            edges[(worlds[i], worlds[j])] = random_subset(rng, skills)
    caps = {a: random_subset(rng, skills) for a in agents if rng.random() < 0.9}
    valuation = {w: random_subset(rng, ATOMS) for w in worlds}
    return make_model(worlds, edges, caps, valuation)


QUANTIFIER_FREE = ("not", "imp", "K", "C", "D", "E", "F", "+", "-", "=", "copy")
BASIC = ("not", "imp", "K")
QUANTIFIERS = ("box+", "box-", "box=")


def random_formula(
    rng: random.Random,
    depth: int,
    kinds=QUANTIFIER_FREE,
    agents=AGENTS,
    skills=SKILLS,
    max_quantifiers: int = 0,
) -> Formula:
    """Random primitive AST of depth at most ``depth``."""
    budget = [max_quantifiers]

    def build(d: int) -> Formula:
        if d == 0 or rng.random() < 0.2:
            return Atom(rng.choice(ATOMS))
        options = list(kinds)
        if budget[0] > 0:
            options += list(QUANTIFIERS)
        kind = rng.choice(options)
        if kind in QUANTIFIERS:
            budget[0] -= 1
        agent = rng.choice(agents)
        if kind == "not":
            return Not(build(d - 1))
        if kind == "imp":
            return Implies(build(d - 1), build(d - 1))
        if kind == "K":
            return Knows(agent, build(d - 1))
        if kind in ("C", "D", "E", "F"):
            group = random_subset(rng, agents, nonempty=True)
            cls = {"C": Common, "D": Distributed, "E": Mutual, "F": Field}[kind]
            return cls(group, build(d - 1))
        if kind in ("+", "-", "="):
            cls = {"+": AddSkills, "-": RemoveSkills, "=": AssignSkills}[kind]
            return cls(agent, random_subset(rng, skills, nonempty=True), build(d - 1))
        if kind == "copy":
            return CopySkills(agent, rng.choice(agents), build(d - 1))
        cls = {"box+": BoxPlus, "box-": BoxMinus, "box=": BoxAssign}[kind]
        return cls(agent, build(d - 1))

    return build(depth)


def random_spine_formula(
    rng: random.Random, depth: int, kinds=QUANTIFIER_FREE, agents=AGENTS, skills=SKILLS
) -> Formula:
    """Formula of modal/boolean depth exactly ``depth``: a spine with shallow side branches.

    Keeps the size linear in ``depth`` where a uniform generator would grow
    exponentially through implications.
    """
    f: Formula = Atom(rng.choice(ATOMS))
    for _ in range(depth):
        kind = rng.choice(kinds)
        agent = rng.choice(agents)
        if kind == "not":
            f = Not(f)
        elif kind == "imp":
            side = random_formula(rng, 2, kinds, agents, skills)
            f = Implies(side, f) if rng.random() < 0.5 else Implies(f, side)
        elif kind == "K":
            f = Knows(agent, f)
        elif kind in ("C", "D", "E", "F"):
            cls = {"C": Common, "D": Distributed, "E": Mutual, "F": Field}[kind]
            f = cls(random_subset(rng, agents, nonempty=True), f)
        elif kind in ("+", "-", "="):
            cls = {"+": AddSkills, "-": RemoveSkills, "=": AssignSkills}[kind]
            f = cls(agent, random_subset(rng, skills, nonempty=True), f)
        else:
            f = CopySkills(agent, rng.choice(agents), f)
    return f
