"""Formula AST for epistemic logic with skill updates, plus static analyses.

Only the primitive constructors live here.  Conjunction, disjunction,
biconditional, the constants and the dual modalities are expanded by the
parser and have no node type of their own.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

# Reserved atom used to expand ``true``/``false``; the parser rejects it in user input.
RESERVED_ATOM = "p0"

# Fragment letters in the canonical order used for language names.
LETTERS = ("C", "D", "E", "F", "+", "-", "=", "≡", "⊞", "⊟", "□")


class Formula:
    """Base class of all formula nodes."""

    __slots__ = ()

    def children(self) -> tuple[Formula, ...]:
        return ()


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula

    def children(self):
        return (self.operand,)


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Knows(Formula):
    agent: str
    operand: Formula

    def children(self):
        return (self.operand,)


@dataclass(frozen=True)
class GroupOp(Formula):
    group: frozenset[str]
    operand: Formula

    def __post_init__(self):
        if not isinstance(self.group, frozenset):
            object.__setattr__(self, "group", frozenset(self.group))
        if not self.group:
            raise ValueError(f"{type(self).__name__} needs a nonempty group")

    def children(self):
        return (self.operand,)


class Common(GroupOp):
    pass


class Distributed(GroupOp):
    pass


class Mutual(GroupOp):
    pass


class Field(GroupOp):
    pass


@dataclass(frozen=True)
class SkillUpdate(Formula):
    agent: str
    skills: frozenset[str]
    operand: Formula

    def __post_init__(self):
        if not isinstance(self.skills, frozenset):
            object.__setattr__(self, "skills", frozenset(self.skills))
        if not self.skills:
            raise ValueError(f"{type(self).__name__} needs a nonempty skill set")

    def children(self):
        return (self.operand,)


class AddSkills(SkillUpdate):
    pass


class RemoveSkills(SkillUpdate):
    pass


class AssignSkills(SkillUpdate):
    pass


@dataclass(frozen=True)
class CopySkills(Formula):
    """``(≡_source)_learner``: the learner takes over the source's skill set."""

    learner: str
    source: str
    operand: Formula

    def children(self):
        return (self.operand,)


@dataclass(frozen=True)
class Quantifier(Formula):
    agent: str
    operand: Formula

    def children(self):
        return (self.operand,)


class BoxPlus(Quantifier):
    pass


class BoxMinus(Quantifier):
    pass


class BoxAssign(Quantifier):
    pass


# Dataclass equality compares classes exactly, so Common(G, p) != Mutual(G, p)
# even though both inherit their fields from GroupOp.

GROUP_SYMBOL = {Common: "C", Distributed: "D", Mutual: "E", Field: "F"}
UPDATE_SYMBOL = {AddSkills: "+", RemoveSkills: "-", AssignSkills: "="}
QUANTIFIER_SYMBOL = {BoxPlus: "⊞", BoxMinus: "⊟", BoxAssign: "□"}


# -- derived connectives, used by the parser and by formula builders --------

TOP = Implies(Atom(RESERVED_ATOM), Atom(RESERVED_ATOM))
BOTTOM = Not(TOP)


def conj(left: Formula, right: Formula) -> Formula:
    return Not(Implies(left, Not(right)))


def disj(left: Formula, right: Formula) -> Formula:
    return Implies(Not(left), right)


def iff(left: Formula, right: Formula) -> Formula:
    return conj(Implies(left, right), Implies(right, left))


def big_conj(parts) -> Formula:
    """Right-nested conjunction; the empty conjunction is ``true``."""
    parts = list(parts)
    if not parts:
        return TOP
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = conj(part, result)
    return result


def big_disj(parts) -> Formula:
    """Right-nested disjunction; the empty disjunction is ``false``."""
    parts = list(parts)
    if not parts:
        return BOTTOM
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = disj(part, result)
    return result


def possible(agent: str, f: Formula) -> Formula:
    """The dual of ``K_agent``."""
    return Not(Knows(agent, Not(f)))


def dual(quantifier: type[Quantifier], agent: str, f: Formula) -> Formula:
    """Existential dual of a quantifier, e.g. ``dual(BoxPlus, a, f)`` is ``<+*>_a f``."""
    return Not(quantifier(agent, Not(f)))


# -- traversal and analyses --------------------------------------------------

def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order walk over every node, repeats included."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def formula_length(f: Formula) -> int:
    """Symbol count of ``f`` by the inductive clauses (brackets included)."""
    total = 0
    for node in subformulas(f):
        if isinstance(node, Atom):
            total += 1
        elif isinstance(node, Not):
            total += 1
        elif isinstance(node, Implies):
            total += 3
        elif isinstance(node, (Knows, Quantifier)):
            total += 2
        elif isinstance(node, GroupOp):
            total += 2 * len(node.group) + 2
        elif isinstance(node, SkillUpdate):
            total += 2 * len(node.skills) + 5
        elif isinstance(node, CopySkills):
            total += 5
        else:
            raise TypeError(f"not a formula node: {node!r}")
    return total


def agents_of(f: Formula) -> frozenset[str]:
    found = set()
    for node in subformulas(f):
        if isinstance(node, (Knows, SkillUpdate, Quantifier)):
            found.add(node.agent)
        elif isinstance(node, GroupOp):
            found |= node.group
        elif isinstance(node, CopySkills):
            found.add(node.learner)
            found.add(node.source)
    return frozenset(found)


def skills_of(f: Formula) -> frozenset[str]:
    found = set()
    for node in subformulas(f):
        if isinstance(node, SkillUpdate):
            found |= node.skills
    return frozenset(found)


def atoms_of(f: Formula) -> frozenset[str]:
    return frozenset(node.name for node in subformulas(f) if isinstance(node, Atom))


def groups_of(f: Formula, common_and_mutual_only: bool = False) -> frozenset[frozenset[str]]:
    """Groups occurring in ``f``.

    With ``common_and_mutual_only`` only groups under ``C_G``/``E_G`` count,
    which is the group index set the common-knowledge algorithm works with.
    """
    kinds = (Common, Mutual) if common_and_mutual_only else (GroupOp,)
    return frozenset(node.group for node in subformulas(f) if isinstance(node, kinds))


def fragment_of(f: Formula) -> frozenset[str]:
    """Smallest set of extension letters whose language contains ``f``."""
    letters = set()
    for node in subformulas(f):
        cls = type(node)
        if cls in GROUP_SYMBOL:
            letters.add(GROUP_SYMBOL[cls])
        elif cls in UPDATE_SYMBOL:
            letters.add(UPDATE_SYMBOL[cls])
        elif cls is CopySkills:
            letters.add("≡")
        elif cls in QUANTIFIER_SYMBOL:
            letters.add(QUANTIFIER_SYMBOL[cls])
    return frozenset(letters)


def language_name(letters) -> str:
    """``{'F', '+'}`` -> ``'L_{F+}'``; the empty set names the basic language ``L``."""
    ordered = "".join(letter for letter in LETTERS if letter in letters)
    return f"L_{{{ordered}}}" if ordered else "L"


def modal_depth(f: Formula) -> int:
    if isinstance(f, Atom):
        return 0
    inner = max(modal_depth(c) for c in f.children())
    return inner if isinstance(f, (Not, Implies)) else inner + 1
