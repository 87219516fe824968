"""Undirected edge geography, and its encoding as a model-checking instance.

Two players take turns moving a token along unused edges of an undirected
graph, starting at the root; whoever cannot move loses.  The induced model
turns nodes into worlds and gives every edge its own skill.  The induced
formula lets agent ``a_i`` make move ``i`` by acquiring (or, per variant,
being assigned or keeping) exactly that edge's skill.  Player one wins the
game iff the formula holds at the root.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .checker import Evaluator
from .model import Model, make_model
from .syntax import (
    BOTTOM,
    Atom,
    BoxAssign,
    BoxMinus,
    BoxPlus,
    Formula,
    Knows,
    Not,
    big_conj,
    big_disj,
    dual,
    possible,
)

DEFAULT_MAX_EDGES = 5


class GraphError(ValueError):
    pass


class Player(enum.Enum):
    ONE = "PlayerOne"
    TWO = "PlayerTwo"

    def __str__(self):
        return self.value


class Variant(enum.Enum):
    """Which quantifier carries the moves."""

    PLUS = "plus"
    BOX = "box"
    MINUS = "minus"

    @property
    def quantifier(self):
        return {Variant.PLUS: BoxPlus, Variant.BOX: BoxAssign, Variant.MINUS: BoxMinus}[self]


@dataclass(frozen=True)
class RootedGraph:
    nodes: tuple[str, ...]
    edges: frozenset[frozenset[str]]
    root: str

    def __post_init__(self):
        if not self.nodes:
            raise GraphError("a graph needs at least one node")
        if len(set(self.nodes)) != len(self.nodes):
            raise GraphError("duplicate node names")
        if self.root not in self.nodes:
            raise GraphError(f"root {self.root!r} is not a node")
        for edge in self.edges:
            if len(edge) != 2:
                raise GraphError(f"self-loop or malformed edge {sorted(edge)}")
            for node in edge:
                if node not in self.nodes:
                    raise GraphError(f"edge mentions unknown node {node!r}")

    @classmethod
    def build(cls, nodes, edges, root) -> RootedGraph:
        nodes = tuple(str(x) for x in nodes)
        pairs = []
        for edge in edges:
            u, v = (str(x) for x in edge)
            if u == v:
                raise GraphError(f"self-loop at {u!r}")
            pairs.append(frozenset((u, v)))
        return cls(nodes, frozenset(pairs), str(root))

    def ordered(self, edge: frozenset[str]) -> tuple[str, str]:
        u, v = sorted(edge, key=self.nodes.index)
        return u, v

    def relabel(self, mapping: dict[str, str]) -> RootedGraph:
        return RootedGraph.build(
            [mapping[x] for x in self.nodes],
            [[mapping[x] for x in edge] for edge in self.edges],
            mapping[self.root],
        )


# -- the game -------------------------------------------------------------------

@lru_cache(maxsize=None)
def _mover_wins(edges: frozenset[frozenset[str]], node: str) -> bool:
    for edge in edges:
        if node in edge:
            (nxt,) = edge - {node}
            if not _mover_wins(edges - {edge}, nxt):
                return True
    return False


def ueg_winner(g: RootedGraph) -> Player:
    """Winner under optimal play, by exhaustive search over game positions."""
    return Player.ONE if _mover_wins(g.edges, g.root) else Player.TWO


# -- the encoding ----------------------------------------------------------------

def agent_count(g: RootedGraph) -> int:
    """Smallest positive even number at least the number of edges."""
    n = max(len(g.edges), 1)
    return n + (n % 2)


def agent_name(i: int) -> str:
    return f"a{i}"


def atom_name(node: str) -> str:
    return f"p_{node}"


@dataclass(frozen=True)
class InducedModel:
    model: Model
    skill: dict[frozenset[str], str]
    atom: dict[str, str]


def induced_model(g: RootedGraph, variant: Variant = Variant.PLUS) -> InducedModel:
    """Worlds are nodes, each edge gets its own skill, each node its own atom.

    For :attr:`Variant.MINUS` every move agent starts with the skills of all
    node pairs, edges or not, and moves by discarding all but one.
    """
    # named by node position so that underscores in node names cannot collide
    skill = {}
    for (i, u), (j, v) in combinations(enumerate(g.nodes), 2):
        skill[frozenset((u, v))] = f"s_{i}_{j}"
    atom = {x: atom_name(x) for x in g.nodes}
    edges = {g.ordered(e): {skill[e]} for e in g.edges}
    caps = {}
    if variant is Variant.MINUS:
        everything = set(skill.values())
        caps = {agent_name(i): everything for i in range(1, agent_count(g) + 1)}
    model = make_model(g.nodes, edges, caps, {x: {atom[x]} for x in g.nodes})
    return InducedModel(model, {e: skill[e] for e in g.edges}, atom)


def _single_move(g: RootedGraph, i: int) -> Formula:
    """Agent ``a_i`` can see exactly one world: the endpoint of one chosen edge."""
    a = agent_name(i)
    return big_conj([Not(Knows(a, BOTTOM)), big_disj(Knows(a, Atom(atom_name(x))) for x in g.nodes)])


def _reused_edge(g: RootedGraph, i: int) -> Formula:
    """The edge ``a_i`` is about to take was taken by some earlier agent."""
    a = agent_name(i)
    terms = []
    for j in range(1, i):
        for x in g.nodes:
            for y in g.nodes:
                if x != y:
                    px, py = Atom(atom_name(x)), Atom(atom_name(y))
                    terms.append(big_conj([px, possible(agent_name(j), py), Knows(a, py)]))
    return big_disj(terms)


def induced_formula(g: RootedGraph, variant: Variant = Variant.PLUS) -> Formula:
    n = agent_count(g)
    quantifier = variant.quantifier
    # innermost: the last move is player two's and leaves player one stuck if legal
    body: Formula = quantifier(
        agent_name(n), big_disj([Not(_single_move(g, n)), _reused_edge(g, n)])
    )
    for i in range(n - 1, 0, -1):
        a = agent_name(i)
        if i % 2:
            legal = big_conj([_single_move(g, i), Not(_reused_edge(g, i)), Knows(a, body)])
            body = dual(quantifier, a, legal)
        else:
            answer = big_disj([Not(_single_move(g, i)), _reused_edge(g, i), possible(a, body)])
            body = quantifier(a, answer)
    return body


@dataclass(frozen=True)
class ReductionResult:
    game: Player
    logic: bool

    @property
    def agree(self) -> bool:
        return (self.game is Player.ONE) == self.logic


def reduction_check(
    g: RootedGraph, variant: Variant = Variant.PLUS, max_edges: int | None = DEFAULT_MAX_EDGES
) -> ReductionResult:
    """Solve the game directly and by model checking the induced instance.

    Evaluation cost grows like (2^k)^n for k skills and n move agents, so
    graphs with more than ``max_edges`` edges are refused unless the cap is
    lifted with ``max_edges=None``.
    """
    if max_edges is not None and len(g.edges) > max_edges:
        raise GraphError(
            f"graph has {len(g.edges)} edges; the cap is {max_edges} (quantifier nesting is exponential)"
        )
    induced = induced_model(g, variant)
    logic = Evaluator(induced.model).holds(g.root, induced_formula(g, variant))
    return ReductionResult(ueg_winner(g), logic)


# -- enumeration and file format -----------------------------------------------------

def _connected(nodes, edges) -> bool:
    seen = {nodes[0]}
    frontier = [nodes[0]]
    while frontier:
        x = frontier.pop()
        for e in edges:
            if x in e:
                (y,) = e - {x}
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
    return len(seen) == len(nodes)


def rooted_graphs(max_nodes: int = 4, max_edges: int = 4, connected: bool = True) -> Iterator[RootedGraph]:
    """Every rooted graph on nodes ``0..k-1`` (k <= max_nodes), all labelings and roots."""
    for k in range(1, max_nodes + 1):
        nodes = tuple(str(i) for i in range(k))
        possible_edges = [frozenset(p) for p in combinations(nodes, 2)]
        for size in range(0, min(max_edges, len(possible_edges)) + 1):
            for chosen in combinations(possible_edges, size):
                if connected and not _connected(nodes, chosen):
                    continue
                for root in nodes:
                    yield RootedGraph(nodes, frozenset(chosen), root)


def graph_from_dict(data) -> RootedGraph:
    if not isinstance(data, dict) or set(data) != {"nodes", "edges", "root"}:
        raise GraphError("graph document needs exactly 'nodes', 'edges' and 'root'")
    if not isinstance(data["nodes"], list) or not isinstance(data["edges"], list):
        raise GraphError("'nodes' and 'edges' must be lists")
    for edge in data["edges"]:
        if not isinstance(edge, list) or len(edge) != 2:
            raise GraphError(f"edge {edge!r} must be a two-element list")
    return RootedGraph.build(data["nodes"], data["edges"], data["root"])


def load_graph(text: str) -> RootedGraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"invalid JSON: {exc}") from exc
    return graph_from_dict(data)


def save_graph(g: RootedGraph) -> str:
    edges = sorted((list(g.ordered(e)) for e in g.edges), key=lambda e: (g.nodes.index(e[0]), g.nodes.index(e[1])))
    return json.dumps({"nodes": list(g.nodes), "edges": edges, "root": g.root}, indent=2) + "\n"
