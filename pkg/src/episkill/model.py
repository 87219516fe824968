"""Weighted epistemic models.

A model has a finite set of worlds, an edge function from unordered world
pairs to skill sets, a capability function from agents to skill sets, and a
valuation.  Agent ``a`` cannot tell ``w`` from ``u`` when ``C(a)`` is a subset
of ``E(w, u)``.

Edges are keyed by unordered pairs, so symmetry holds by construction.  Edge
labels are finite while the skill universe is not, so positivity (only a
self-loop may carry every skill) holds vacuously and is never checked.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Union

from .syntax import Formula, agents_of, skills_of

FRESH_PREFIX = "_fresh"


class ModelError(ValueError):
    pass


class FormatError(ModelError):
    pass


class ConflictError(ModelError):
    pass


class UnknownWorldError(ModelError):
    pass


def pair(w: str, u: str) -> frozenset[str]:
    return frozenset((w, u))


@dataclass(frozen=True, eq=True)
class Model:
    """An immutable model.  Build one with :func:`make_model` or :func:`load_model`.

    ``edges`` only stores nonempty labels; ``valuation`` has an entry for
    every world.  Agents missing from ``capabilities`` have no skills.
    """

    worlds: tuple[str, ...]
    edges: dict[frozenset[str], frozenset[str]] = field(hash=False)
    capabilities: dict[str, frozenset[str]] = field(hash=False)
    valuation: dict[str, frozenset[str]] = field(hash=False)

    def check_world(self, w: str) -> None:
        if w not in self.valuation:
            raise UnknownWorldError(f"unknown world {w!r}")

    def edge_skills(self, w: str, u: str) -> frozenset[str]:
        self.check_world(w)
        self.check_world(u)
        return self.edges.get(pair(w, u), frozenset())

    def capability(self, agent: str) -> frozenset[str]:
        return self.capabilities.get(agent, frozenset())

    def atoms_at(self, w: str) -> frozenset[str]:
        self.check_world(w)
        return self.valuation[w]

    def edge_skill_union(self) -> frozenset[str]:
        return frozenset().union(*self.edges.values())

    def with_capabilities(self, capabilities: Mapping[str, Iterable[str]]) -> Model:
        caps = {agent: frozenset(skills) for agent, skills in capabilities.items()}
        return Model(self.worlds, self.edges, caps, self.valuation)


def make_model(
    worlds: Iterable[str],
    edges: Union[Mapping[tuple[str, str], Iterable[str]], Iterable[tuple[str, str, Iterable[str]]]] = (),
    capabilities: Mapping[str, Iterable[str]] | None = None,
    valuation: Mapping[str, Iterable[str]] | None = None,
) -> Model:
    """Validate and normalize model data.

    ``edges`` is either a mapping ``(w, u) -> skills`` or an iterable of
    ``(w, u, skills)`` triples.  Listing a pair in both orientations is
    allowed only if the labels agree.
    """
    worlds = tuple(worlds)
    if not worlds:
        raise FormatError("a model needs at least one world")
    for w in worlds:
        if not isinstance(w, str) or not w:
            raise FormatError(f"world names must be nonempty strings, got {w!r}")
    if len(set(worlds)) != len(worlds):
        raise FormatError("duplicate world names")
    known = set(worlds)

    triples = edges.items() if isinstance(edges, Mapping) else edges
    edge_map: dict[frozenset[str], frozenset[str]] = {}
    for entry in triples:
        if isinstance(edges, Mapping):
            (w, u), skills = entry
        else:
            w, u, skills = entry
        for x in (w, u):
            if x not in known:
                raise UnknownWorldError(f"edge mentions unknown world {x!r}")
        key = pair(w, u)
        skills = frozenset(skills)
        if key in edge_map and edge_map[key] != skills:
            raise ConflictError(
                f"pair {{{w}, {u}}} listed with labels {sorted(edge_map[key])} and {sorted(skills)}"
            )
        edge_map[key] = skills
    edge_map = {key: skills for key, skills in edge_map.items() if skills}

    caps = {agent: frozenset(skills) for agent, skills in (capabilities or {}).items()}

    val = {w: frozenset() for w in worlds}
    for w, atoms in (valuation or {}).items():
        if w not in known:
            raise UnknownWorldError(f"valuation mentions unknown world {w!r}")
        val[w] = frozenset(atoms)

    return Model(worlds, edge_map, caps, val)


# -- capability updates ------------------------------------------------------

@dataclass(frozen=True)
class Add:
    agent: str
    skills: frozenset[str]


@dataclass(frozen=True)
class Remove:
    agent: str
    skills: frozenset[str]


@dataclass(frozen=True)
class Assign:
    agent: str
    skills: frozenset[str]


@dataclass(frozen=True)
class Copy:
    """``agent`` takes over ``source``'s skill set."""

    agent: str
    source: str


CapabilityUpdate = Union[Add, Remove, Assign, Copy]


def updated_capability(capabilities: Mapping[str, frozenset[str]], upd: CapabilityUpdate) -> frozenset[str]:
    """New skill set of ``upd.agent`` after the update."""
    current = capabilities.get(upd.agent, frozenset())
    if isinstance(upd, Add):
        return current | frozenset(upd.skills)
    if isinstance(upd, Remove):
        return current - frozenset(upd.skills)
    if isinstance(upd, Assign):
        return frozenset(upd.skills)
    if isinstance(upd, Copy):
        return capabilities.get(upd.source, frozenset())
    raise TypeError(f"not a capability update: {upd!r}")


def apply_update(m: Model, upd: CapabilityUpdate) -> Model:
    caps = dict(m.capabilities)
    caps[upd.agent] = updated_capability(m.capabilities, upd)
    return Model(m.worlds, m.edges, caps, m.valuation)


# -- skill universe for the quantifiers ---------------------------------------

def relevant_skills(m: Model, f: Formula) -> frozenset[str]:
    """Every edge label plus the skills of the agents occurring in ``f``."""
    skills = set(m.edge_skill_union())
    for agent in agents_of(f):
        skills |= m.capability(agent)
    return frozenset(skills)


def fresh_skill(m: Model, f: Formula, avoid: Iterable[str] = ()) -> str:
    """First ``_freshN`` not used by ``m`` (edges, agents of ``f``), by ``f`` or in ``avoid``."""
    taken = relevant_skills(m, f) | skills_of(f) | frozenset(avoid)
    n = 0
    while f"{FRESH_PREFIX}{n}" in taken:
        n += 1
    return f"{FRESH_PREFIX}{n}"


def model_size(m: Model) -> int:
    """Symbol count of the model: worlds, edge triples, capability pairs and valuation pairs."""
    size = len(m.worlds)
    size += sum(2 + len(skills) for skills in m.edges.values())
    size += sum(1 + len(skills) for skills in m.capabilities.values())
    size += sum(1 + len(atoms) for atoms in m.valuation.values())
    return size


# -- file format -------------------------------------------------------------

def _string_list(value, where: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(item, str) and item for item in value):
        raise FormatError(f"{where} must be a list of nonempty strings")
    return value


def model_from_dict(data) -> Model:
    if not isinstance(data, dict):
        raise FormatError("model document must be a JSON object")
    unknown = set(data) - {"worlds", "valuation", "edges", "capabilities"}
    if unknown:
        raise FormatError(f"unknown keys {sorted(unknown)}")
    if "worlds" not in data:
        raise FormatError("missing 'worlds'")
    worlds = _string_list(data["worlds"], "'worlds'")

    valuation = data.get("valuation", {})
    if not isinstance(valuation, dict):
        raise FormatError("'valuation' must be an object")
    valuation = {w: _string_list(atoms, f"valuation of {w!r}") for w, atoms in valuation.items()}

    raw_edges = data.get("edges", [])
    if not isinstance(raw_edges, list):
        raise FormatError("'edges' must be a list")
    triples = []
    for i, entry in enumerate(raw_edges):
        if not isinstance(entry, dict) or set(entry) != {"between", "skills"}:
            raise FormatError(f"edge #{i} must have exactly 'between' and 'skills'")
        between = _string_list(entry["between"], f"edge #{i} 'between'")
        if len(between) != 2:
            raise FormatError(f"edge #{i} 'between' must name two worlds")
        skills = entry["skills"]
        if not isinstance(skills, list) or not all(isinstance(s, str) and s for s in skills):
            raise FormatError(f"edge #{i} 'skills' must be a list of nonempty strings")
        triples.append((between[0], between[1], skills))

    capabilities = data.get("capabilities", {})
    if not isinstance(capabilities, dict):
        raise FormatError("'capabilities' must be an object")
    capabilities = {
        agent: _string_list(skills, f"capabilities of {agent!r}")
        for agent, skills in capabilities.items()
    }
    return make_model(worlds, triples, capabilities, valuation)


def load_model(text: str) -> Model:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    return model_from_dict(data)


def model_to_dict(m: Model) -> dict:
    order = {w: i for i, w in enumerate(m.worlds)}
    edges = []
    for key, skills in m.edges.items():
        ends = sorted(key, key=order.__getitem__)
        if len(ends) == 1:
            ends = ends * 2
        edges.append((order[ends[0]], order[ends[1]], ends, skills))
    edges.sort(key=lambda e: (e[0], e[1]))
    return {
        "worlds": list(m.worlds),
        "valuation": {w: sorted(m.valuation[w]) for w in m.worlds},
        "edges": [{"between": ends, "skills": sorted(skills)} for _, _, ends, skills in edges],
        "capabilities": {agent: sorted(m.capabilities[agent]) for agent in sorted(m.capabilities)},
    }


def save_model(m: Model) -> str:
    return json.dumps(model_to_dict(m), indent=2, ensure_ascii=False) + "\n"


# -- the running example -----------------------------------------------------

def demo_model() -> Model:
    """Five worlds, agents a, b, c; the example used throughout the tests."""
    full = {"s1", "s2", "s3", "s4"}
    edges = {("w1", "w1"): full, ("w2", "w2"): full, ("w3", "w3"): full,
             ("w4", "w4"): full, ("w5", "w5"): full,
             ("w1", "w2"): {"s1", "s4"}, ("w3", "w5"): {"s1", "s4"},
             ("w1", "w3"): {"s1", "s2", "s3"}, ("w2", "w5"): {"s1", "s2", "s3"},
             ("w1", "w4"): set(),
             ("w1", "w5"): {"s1"}, ("w2", "w3"): {"s1"},
             ("w2", "w4"): {"s2", "s3"},
             ("w3", "w4"): {"s4"},
             ("w4", "w5"): {"s2", "s3", "s4"}}
    capabilities = {"a": {"s1", "s2", "s3"}, "b": {"s2", "s3", "s4"}, "c": {"s4"}}
    valuation = {"w1": {"p1", "p2"}, "w2": {"p1", "p3"}, "w3": {"p1", "p2", "p4"},
                 "w4": {"p3", "p4"}, "w5": {"p1", "p3", "p4"}}
    return make_model(["w1", "w2", "w3", "w4", "w5"], edges, capabilities, valuation)
