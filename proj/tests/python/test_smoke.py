import json

import pytest

import seqdyn


def test_lazy_graph():
    g = seqdyn.Game.fixture("fig1")
    graph = g.graph("I,L,1P")
    assert sorted(graph["edges"]) == [("lr", "rr"), ("rl", "ll"), ("rr", "rl")]
    assert graph["terminates"]
    assert graph["terminal"] == ["ll"]


def test_cycle_and_equilibria():
    g = seqdyn.Game.fixture("fig1")
    graph = g.graph("I,L")
    assert not graph["terminates"]
    assert len(graph["cycle"]) >= 2
    assert g.equilibria() == {"ne": ["ll"], "spe": ["ll"], "sne": []}
    assert g.is_nash("ll") and not g.is_sne("ll")
    assert g.outcome("rl") == "y"


def test_round_trip():
    g = seqdyn.Game.fixture("fig5_left")
    assert seqdyn.Game.from_json(g.to_json()) == g
    assert g.profile_count == len(g.profiles()) == 8
    assert g.players == ["1", "2"]


def test_preferences():
    table = seqdyn.fixture_document("table2")
    assert seqdyn.layers(table) == [["y", "z"], ["x"], ["u", "v", "w"]]
    assert seqdyn.is_layerable(table)
    three = seqdyn.fixture_document("three_player_layering")
    assert seqdyn.out_of_pattern(three)
    assert seqdyn.layers(three) is None


def test_errors():
    with pytest.raises(ValueError):
        seqdyn.Game.from_json("{}")
    with pytest.raises(ValueError):
        seqdyn.Game.fixture("fig1").graph("Q")
    with pytest.raises(ValueError):
        seqdyn.verify("nope")


def test_verify():
    assert len(seqdyn.claim_ids()) == 14
    report = seqdyn.verify("lemma1", trials=5)
    assert report["passed"]
    assert report["trials"] == 5


def test_cli():
    code, out, _ = seqdyn.run_cli(["--json", "equilibria", "--kind", "ne",
                                   "/nonexistent.json"])
    assert code == 2
    code, out, _ = seqdyn.run_cli(["verify", "--claim", "lemma1",
                                   "--trials", "3"])
    assert code == 0
    assert out.startswith("lemma1: PASS")
