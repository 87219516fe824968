"""Truth-set computation for the full language.

World sets are int bitmasks over ``model.worlds``.  Every node is evaluated
only on the worlds the caller asks about: ``K_a psi`` restricted to ``X``
needs ``psi`` only on the successors of ``X``, and an implication needs its
consequent only where the antecedent holds.  Results are memoized per
(node, capabilities of the agents occurring in the node), since nothing
else can influence a node's truth value.  That key stays valid when update
modalities and quantifiers change capabilities mid-evaluation.

Quantifiers range over the nonempty subsets of a finite skill universe:
the edge labels, the skills of the agents occurring under the quantifier,
the skills written in the formula, and one fresh skill standing in for all
unused ones.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator, Mapping

from .model import FRESH_PREFIX, Model
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
    skills_of,
)

EMPTY: frozenset[str] = frozenset()

Caps = Mapping[str, frozenset[str]]


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def nonempty_subsets(universe) -> Iterator[frozenset[str]]:
    """Nonempty subsets by increasing size, lexicographic within a size."""
    items = sorted(universe)
    for size in range(1, len(items) + 1):
        for combo in combinations(items, size):
            yield frozenset(combo)


def fresh_names(taken, count: int) -> list[str]:
    names = []
    n = 0
    while len(names) < count:
        name = f"{FRESH_PREFIX}{n}"
        if name not in taken:
            names.append(name)
        n += 1
    return names


class Evaluator:
    """Evaluates formulas over one model, sharing memo tables across queries.

    ``extra_fresh`` is the number of unused skills added to each quantifier's
    universe; one is enough, more only serves to test that claim.
    """

    def __init__(self, model: Model, extra_fresh: int = 1):
        if extra_fresh < 1:
            raise ValueError("extra_fresh must be at least 1")
        self.model = model
        self.extra_fresh = extra_fresh
        self.worlds = model.worlds
        self.index = {w: i for i, w in enumerate(self.worlds)}
        n = len(self.worlds)
        self.full = (1 << n) - 1

        # skill -> per-world mask of partners whose shared edge carries that skill
        self._skill_rows: dict[str, list[int]] = {}
        for key, label in model.edges.items():
            ends = [self.index[w] for w in key]
            x, y = ends[0], ends[-1]
            for s in label:
                row = self._skill_rows.setdefault(s, [0] * n)
                row[x] |= 1 << y
                row[y] |= 1 << x
        self._edge_skills = frozenset(self._skill_rows)

        self._atom_masks: dict[str, int] = {}
        for w, atoms in model.valuation.items():
            for p in atoms:
                self._atom_masks[p] = self._atom_masks.get(p, 0) | (1 << self.index[w])

        self._succ_cache: dict[frozenset[str], tuple[int, ...]] = {}
        self._group_cache: dict[tuple, tuple[int, ...]] = {}
        self._closure_cache: dict[tuple, tuple[int, ...]] = {}
        self._memo: dict[tuple, list[int]] = {}
        self._agents: dict[int, tuple[str, ...]] = {}
        self._skills: dict[int, frozenset[str]] = {}
        self._roots: list[Formula] = []  # memo keys use id(); keep nodes alive

    # -- public API ---------------------------------------------------------

    def mask_of(self, worlds) -> int:
        mask = 0
        for w in worlds:
            self.model.check_world(w)
            mask |= 1 << self.index[w]
        return mask

    def worlds_of(self, mask: int) -> frozenset[str]:
        return frozenset(self.worlds[i] for i in bits(mask))

    def truth_mask(self, f: Formula, within: int | None = None, caps: Caps | None = None) -> int:
        self._register(f)
        domain = self.full if within is None else within
        return self._eval(f, self.model.capabilities if caps is None else caps, domain)

    def truth_set(self, f: Formula) -> frozenset[str]:
        return self.worlds_of(self.truth_mask(f))

    def holds(self, w: str, f: Formula) -> bool:
        return bool(self.truth_mask(f, self.mask_of([w])))

    def successors(self, cap: frozenset[str]) -> tuple[int, ...]:
        """Per-world masks of the worlds an agent with skill set ``cap`` cannot rule out."""
        cached = self._succ_cache.get(cap)
        if cached is not None:
            return cached
        n = len(self.worlds)
        if any(s not in self._skill_rows for s in cap):
            # some skill labels no edge, so every world is distinguishable
            succ = (0,) * n
        else:
            rows = [self._skill_rows[s] for s in cap]
            succ = tuple(_and_rows(rows, x, self.full) for x in range(n))
        self._succ_cache[cap] = succ
        return succ

    def quantifier_universe(self, f: Quantifier, caps: Caps) -> frozenset[str]:
        self._register(f)
        base = set(self._edge_skills)
        for agent in self._agents[id(f)]:
            base |= caps.get(agent, EMPTY)
        base |= self._skills[id(f)]
        return frozenset(base) | frozenset(fresh_names(base, self.extra_fresh))

    # -- internals ----------------------------------------------------------

    def _register(self, f: Formula) -> None:
        if id(f) in self._agents:
            return
        self._roots.append(f)
        stack = [f]
        while stack:
            node = stack.pop()
            if id(node) not in self._agents:
                self._agents[id(node)] = tuple(sorted(agents_of(node)))
                if isinstance(node, Quantifier):
                    self._skills[id(node)] = skills_of(node)
                stack.extend(node.children())

    def _eval(self, f: Formula, caps: Caps, domain: int) -> int:
        if not domain:
            return 0
        if isinstance(f, Atom):
            return domain & self._atom_masks.get(f.name, 0)
        key = (id(f), tuple(caps.get(a, EMPTY) for a in self._agents[id(f)]))
        entry = self._memo.get(key)
        if entry is None:
            entry = self._memo[key] = [0, 0]
        todo = domain & ~(entry[0] | entry[1])
        if todo:
            true = self._compute(f, caps, todo)
            entry[0] |= true
            entry[1] |= todo & ~true
        return domain & entry[0]

    def _box(self, succ: tuple[int, ...], body: Formula, caps: Caps, domain: int) -> int:
        """Worlds of ``domain`` all of whose ``succ``-successors satisfy ``body``."""
        needed = 0
        for x in bits(domain):
            needed |= succ[x]
        good = self._eval(body, caps, needed)
        result = 0
        for x in bits(domain):
            if not succ[x] & ~good:
                result |= 1 << x
        return result

    def _group_successors(self, group: frozenset[str], caps: Caps) -> tuple[int, ...]:
        members = tuple(sorted(group))
        key = tuple(caps.get(a, EMPTY) for a in members)
        cached = self._group_cache.get(key)
        if cached is None:
            rows = [self.successors(cap) for cap in key]
            cached = tuple(_or_column(rows, x) for x in range(len(self.worlds)))
            self._group_cache[key] = cached
        return cached

    def _group_closure(self, group: frozenset[str], caps: Caps) -> tuple[int, ...]:
        """Worlds reachable in one or more group steps."""
        members = tuple(sorted(group))
        key = tuple(caps.get(a, EMPTY) for a in members)
        cached = self._closure_cache.get(key)
        if cached is None:
            reach = list(self._group_successors(group, caps))
            n = len(reach)
            for k in range(n):
                via = reach[k]
                bit = 1 << k
                for i in range(n):
                    if reach[i] & bit:
                        reach[i] |= via
            cached = tuple(reach)
            self._closure_cache[key] = cached
        return cached

    def _compute(self, f: Formula, caps: Caps, domain: int) -> int:
        if isinstance(f, Not):
            return domain & ~self._eval(f.operand, caps, domain)
        if isinstance(f, Implies):
            antecedent = self._eval(f.left, caps, domain)
            return (domain & ~antecedent) | self._eval(f.right, caps, antecedent)
        if isinstance(f, Knows):
            return self._box(self.successors(caps.get(f.agent, EMPTY)), f.operand, caps, domain)
        if isinstance(f, Distributed):
            pooled = frozenset().union(*(caps.get(a, EMPTY) for a in f.group))
            return self._box(self.successors(pooled), f.operand, caps, domain)
        if isinstance(f, Field):
            shared = frozenset.intersection(*(caps.get(a, EMPTY) for a in f.group))
            return self._box(self.successors(shared), f.operand, caps, domain)
        if isinstance(f, Mutual):
            return self._box(self._group_successors(f.group, caps), f.operand, caps, domain)
        if isinstance(f, Common):
            return self._box(self._group_closure(f.group, caps), f.operand, caps, domain)
        if isinstance(f, AddSkills):
            return self._eval(f.operand, _with(caps, f.agent, caps.get(f.agent, EMPTY) | f.skills), domain)
        if isinstance(f, RemoveSkills):
            return self._eval(f.operand, _with(caps, f.agent, caps.get(f.agent, EMPTY) - f.skills), domain)
        if isinstance(f, AssignSkills):
            return self._eval(f.operand, _with(caps, f.agent, f.skills), domain)
        if isinstance(f, CopySkills):
            return self._eval(f.operand, _with(caps, f.learner, caps.get(f.source, EMPTY)), domain)
        if isinstance(f, Quantifier):
            current = caps.get(f.agent, EMPTY)
            remaining = domain
            for chosen in nonempty_subsets(self.quantifier_universe(f, caps)):
                if isinstance(f, BoxPlus):
                    new = current | chosen
                elif isinstance(f, BoxMinus):
                    new = current - chosen
                else:
                    new = chosen
                remaining = self._eval(f.operand, _with(caps, f.agent, new), remaining)
                if not remaining:
                    break
            return remaining
        raise TypeError(f"not a formula node: {f!r}")


def _with(caps: Caps, agent: str, skills: frozenset[str]) -> dict[str, frozenset[str]]:
    new = dict(caps)
    new[agent] = skills
    return new


def _and_rows(rows: list[list[int]], x: int, full: int) -> int:
    mask = full
    for row in rows:
        mask &= row[x]
    return mask


def _or_column(rows, x: int) -> int:
    mask = 0
    for row in rows:
        mask |= row[x]
    return mask


# -- module-level conveniences ---------------------------------------------------

def truth_set(m: Model, f: Formula, extra_fresh: int = 1) -> frozenset[str]:
    """Worlds of ``m`` where ``f`` holds."""
    return Evaluator(m, extra_fresh).truth_set(f)


def holds(m: Model, w: str, f: Formula) -> bool:
    """Whether ``m, w`` satisfies ``f``."""
    m.check_world(w)
    return Evaluator(m).holds(w, f)


def iterate_mutual(group, f: Formula, n: int) -> Formula:
    for _ in range(n):
        f = Mutual(frozenset(group), f)
    return f


def common_oracle(m: Model, group, f: Formula) -> frozenset[str]:
    """Truth set of ``C_G f`` as the intersection of ``E_G^n f`` for n = 1..|W|.

    Each iterate is evaluated on its own, without reachability closure; a
    cross-check for the common-knowledge case of :class:`Evaluator`.
    """
    result = frozenset(m.worlds)
    for n in range(1, len(m.worlds) + 1):
        result &= truth_set(m, iterate_mutual(group, f, n))
    return result
