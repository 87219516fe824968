"""Direct semantics, world by world, with no tabulation.

This evaluator follows the satisfaction clauses literally and is meant as
a test oracle for :mod:`episkill.checker`.  It is exponential in several
ways and only suitable for small models.

Quantifiers range over the nonempty subsets of one universe fixed at the
root: every skill in the model, every skill written in the formula, and as
many fresh skills as the formula has quantifiers.  That is deliberately
larger than the per-quantifier universe the checker uses.

The module also holds direct implementations of knowing de dicto and
explicit/implicit knowing de re, and the formulas claimed to express them.
"""

from __future__ import annotations

from .checker import fresh_names, nonempty_subsets
from .model import Add, Assign, Copy, Model, Remove, apply_update
from .syntax import (
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
    Quantifier,
    RemoveSkills,
    agents_of,
    dual,
    skills_of,
    subformulas,
)


def reference_universe(m: Model, f: Formula) -> frozenset[str]:
    base = set(m.edge_skill_union()) | skills_of(f)
    for skills in m.capabilities.values():
        base |= skills
    quantifiers = sum(isinstance(node, Quantifier) for node in subformulas(f))
    return frozenset(base) | frozenset(fresh_names(base, max(quantifiers, 1)))


def accessible(m: Model, cap: frozenset[str], w: str) -> list[str]:
    return [u for u in m.worlds if cap <= m.edge_skills(w, u)]


def satisfies(m: Model, w: str, f: Formula, universe: frozenset[str] | None = None) -> bool:
    m.check_world(w)
    if universe is None:
        universe = reference_universe(m, f)
    return _sat(m, w, f, universe)


def _sat(m: Model, w: str, f: Formula, universe) -> bool:
    if isinstance(f, Atom):
        return f.name in m.valuation[w]
    if isinstance(f, Not):
        return not _sat(m, w, f.operand, universe)
    if isinstance(f, Implies):
        return not _sat(m, w, f.left, universe) or _sat(m, w, f.right, universe)
    if isinstance(f, Knows):
        return all(_sat(m, u, f.operand, universe) for u in accessible(m, m.capability(f.agent), w))
    if isinstance(f, Mutual):
        return all(_sat(m, w, Knows(a, f.operand), universe) for a in sorted(f.group))
    if isinstance(f, Common):
        # E_G^n for every n >= 1; n = |W| already covers every shortest path
        level = f.operand
        for _ in range(len(m.worlds)):
            level = Mutual(f.group, level)
            if not _sat(m, w, level, universe):
                return False
        return True
    if isinstance(f, Distributed):
        pooled = frozenset().union(*(m.capability(a) for a in f.group))
        return all(_sat(m, u, f.operand, universe) for u in accessible(m, pooled, w))
    if isinstance(f, Field):
        shared = frozenset.intersection(*(m.capability(a) for a in f.group))
        return all(_sat(m, u, f.operand, universe) for u in accessible(m, shared, w))
    if isinstance(f, AddSkills):
        return _sat(apply_update(m, Add(f.agent, f.skills)), w, f.operand, universe)
    if isinstance(f, RemoveSkills):
        return _sat(apply_update(m, Remove(f.agent, f.skills)), w, f.operand, universe)
    if isinstance(f, AssignSkills):
        return _sat(apply_update(m, Assign(f.agent, f.skills)), w, f.operand, universe)
    if isinstance(f, CopySkills):
        return _sat(apply_update(m, Copy(f.learner, f.source)), w, f.operand, universe)
    if isinstance(f, Quantifier):
        update = {BoxPlus: Add, BoxMinus: Remove, BoxAssign: Assign}[type(f)]
        return all(
            _sat(apply_update(m, update(f.agent, chosen)), w, f.operand, universe)
            for chosen in nonempty_subsets(universe)
        )
    raise TypeError(f"not a formula node: {f!r}")


# -- knowing de dicto / de re ------------------------------------------------------

def _choices(m: Model, agent: str, f: Formula, include_empty: bool):
    universe = reference_universe(m, f) | m.capability(agent)
    if include_empty:
        yield frozenset()
    yield from nonempty_subsets(universe)


def de_dicto(m: Model, w: str, agent: str, f: Formula, include_empty: bool = False) -> bool:
    """For every world the agent considers possible, some skill gain makes ``f`` true there."""
    m.check_world(w)
    return all(
        any(satisfies(apply_update(m, Add(agent, s)), u, f) for s in _choices(m, agent, f, include_empty))
        for u in accessible(m, m.capability(agent), w)
    )


def explicit_de_re(m: Model, w: str, agent: str, f: Formula, include_empty: bool = False) -> bool:
    """Some skill gain makes ``f`` true at every world the agent now considers possible."""
    m.check_world(w)
    worlds = accessible(m, m.capability(agent), w)
    return any(
        all(satisfies(apply_update(m, Add(agent, s)), u, f) for u in worlds)
        for s in _choices(m, agent, f, include_empty)
    )


def implicit_de_re(m: Model, w: str, agent: str, f: Formula, include_empty: bool = False) -> bool:
    """Some skill gain after which the agent knows ``f``."""
    m.check_world(w)
    for s in _choices(m, agent, f, include_empty):
        upskilled = apply_update(m, Add(agent, s))
        if all(satisfies(upskilled, u, f) for u in accessible(upskilled, upskilled.capability(agent), w)):
            return True
    return False


def de_dicto_formula(agent: str, f: Formula) -> Formula:
    return Knows(agent, dual(BoxPlus, agent, f))


def implicit_de_re_formula(agent: str, f: Formula) -> Formula:
    return dual(BoxPlus, agent, Knows(agent, f))


def spare_agent(used) -> str:
    used = set(used)
    n = 0
    while f"_c{n}" in used:
        n += 1
    return f"_c{n}"


def explicit_de_re_formula(agent: str, f: Formula, helper: str | None = None) -> Formula:
    """``(≡_a)_c <+*>_c K_a (≡_c)_a f`` with a helper agent ``c`` absent from ``f``."""
    if helper is None:
        helper = spare_agent(agents_of(f) | {agent})
    elif helper in agents_of(f) or helper == agent:
        raise ValueError(f"helper agent {helper!r} must not occur in the formula")
    inner = Knows(agent, CopySkills(agent, helper, f))
    return CopySkills(helper, agent, dual(BoxPlus, helper, inner))
