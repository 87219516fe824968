import json
import random
from importlib import resources

import pytest

from episkill.model import (
    Add,
    Assign,
    ConflictError,
    Copy,
    FormatError,
    Remove,
    UnknownWorldError,
    apply_update,
    demo_model,
    fresh_skill,
    load_model,
    make_model,
    model_size,
    relevant_skills,
    save_model,
    updated_capability,
)
from episkill.parse import parse_formula
from episkill.syntax import AddSkills, Atom, BoxPlus, Knows
from episkill.ueg import RootedGraph, induced_model
from gen import AGENTS, SKILLS, random_model, random_subset


@pytest.fixture(scope="module")
def demo():
    return load_model(resources.files("episkill").joinpath("data/demo.json").read_text(encoding="utf-8"))


def test_fixture_shape(demo):
    assert demo.worlds == ("w1", "w2", "w3", "w4", "w5")
    assert len(demo.edges) == 14
    assert sum(len(key) == 1 for key in demo.edges) == 5
    assert set(demo.capabilities) == {"a", "b", "c"}


def test_fixture_matches_builder(demo):
    assert demo == demo_model()


def test_missing_pair_is_empty(demo):
    assert demo.edge_skills("w1", "w4") == frozenset()


def test_edges_are_symmetric(demo):
    assert demo.edge_skills("w1", "w5") == demo.edge_skills("w5", "w1") == {"s1"}


def test_capabilities(demo):
    assert demo.capability("a") == {"s1", "s2", "s3"}
    assert demo.capability("nobody") == frozenset()


def test_conflicting_orientations():
    with pytest.raises(ConflictError):
        make_model(["u", "v"], [("u", "v", {"s1"}), ("v", "u", {"s2"})])


def test_agreeing_orientations():
    m = make_model(["u", "v"], [("u", "v", {"s1"}), ("v", "u", {"s1"})])
    assert m.edge_skills("v", "u") == {"s1"}


def test_unknown_world():
    with pytest.raises(UnknownWorldError):
        make_model(["u"], {("u", "x"): {"s"}})
    with pytest.raises(UnknownWorldError):
        make_model(["u"], valuation={"x": {"p"}})
    with pytest.raises(UnknownWorldError):
        make_model(["u"]).edge_skills("u", "x")


def test_no_worlds():
    with pytest.raises(FormatError):
        make_model([])


# -- updates --------------------------------------------------------------------

def test_add(demo):
    assert apply_update(demo, Add("a", frozenset({"s4"}))).capability("a") == {"s1", "s2", "s3", "s4"}


def test_remove(demo):
    assert apply_update(demo, Remove("a", frozenset({"s2", "s3"}))).capability("a") == {"s1"}


def test_copy(demo):
    assert apply_update(demo, Copy("b", "c")).capability("b") == {"s4"}


def test_copy_from_updated_source(demo):
    m = apply_update(demo, Assign("c", frozenset({"s2"})))
    assert m.capability("c") == {"s2"}
    assert apply_update(m, Copy("b", "c")).capability("b") == {"s2"}


def test_unknown_agent_starts_empty(demo):
    assert updated_capability(demo.capabilities, Add("d", frozenset({"s1"}))) == {"s1"}


@pytest.mark.parametrize("seed", range(30))
def test_updates_touch_only_their_agent(seed):
    rng = random.Random(seed)
    m = random_model(rng)
    agent = rng.choice(AGENTS)
    skills = random_subset(rng, SKILLS)
    upd = rng.choice([Add(agent, skills), Remove(agent, skills), Assign(agent, skills),
                      Copy(agent, rng.choice(AGENTS))])
    after = apply_update(m, upd)
    for other in AGENTS:
        if other != agent:
            assert after.capability(other) == m.capability(other)
    assert after.edges == m.edges and after.valuation == m.valuation


@pytest.mark.parametrize("seed", range(30))
def test_identity_updates(seed):
    rng = random.Random(seed)
    m = random_model(rng)
    agent = rng.choice(AGENTS)
    same = [Add(agent, frozenset()), Remove(agent, frozenset()), Assign(agent, m.capability(agent)),
            Copy(agent, agent)]
    for upd in same:
        assert apply_update(m, upd).capability(agent) == m.capability(agent)


# -- skill universe --------------------------------------------------------------

def test_relevant_skills_demo(demo):
    assert relevant_skills(demo, parse_formula("K_a p1")) == {"s1", "s2", "s3", "s4"}


def test_relevant_skills_single_edge():
    g = RootedGraph.build(["0", "1"], [["0", "1"]], "0")
    induced = induced_model(g)
    (skill,) = induced.skill.values()
    assert relevant_skills(induced.model, Knows("a1", Atom("p_0"))) == {skill}


def test_relevant_skills_ignore_absent_agents():
    m = make_model(["w"], capabilities={"a": {"x"}, "b": {"y"}})
    assert relevant_skills(m, Knows("a", Atom("p"))) == {"x"}


def test_fresh_skill(demo):
    f = BoxPlus("a", Atom("p"))
    assert fresh_skill(demo, f) == "_fresh0"
    assert fresh_skill(demo, AddSkills("a", {"_fresh0"}, f)) == "_fresh1"
    assert fresh_skill(demo, f, avoid={"_fresh0"}) == "_fresh1"


# -- files ----------------------------------------------------------------------

def test_round_trip(demo):
    assert load_model(save_model(demo)) == demo


@pytest.mark.parametrize("seed", range(20))
def test_round_trip_random(seed):
    m = random_model(random.Random(seed))
    text = save_model(m)
    assert load_model(text) == m
    assert save_model(load_model(text)) == text


@pytest.mark.parametrize("doc", [
    "not json",
    "[]",
    '{"worlds": ["w"], "extra": 1}',
    '{"valuation": {}}',
    '{"worlds": ["w", "w"]}',
    '{"worlds": ["w"], "edges": [{"between": ["w"], "skills": []}]}',
    '{"worlds": ["w"], "edges": [{"between": ["w", "w"], "skills": "s"}]}',
    '{"worlds": ["w"], "capabilities": {"a": "s"}}',
    '{"worlds": [""]}',
])
def test_bad_documents(doc):
    with pytest.raises(FormatError):
        load_model(doc)


def test_defaults_fill_in():
    m = load_model(json.dumps({"worlds": ["w1", "w2"]}))
    assert m.edges == {} and m.valuation == {"w1": frozenset(), "w2": frozenset()}


def test_model_size():
    m = make_model(["u", "v"], {("u", "v"): {"s"}, ("u", "u"): {"s", "t"}}, {"a": {"s"}}, {"u": {"p"}})
    # 2 worlds + (2+1) + (2+2) edges + (1+1) capability + (1+1) + (1+0) valuation
    assert model_size(m) == 2 + 3 + 4 + 2 + 2 + 1
