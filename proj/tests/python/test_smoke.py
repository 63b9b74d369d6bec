import json
import os
import subprocess
from pathlib import Path

import jsonschema
import pytest

import confound

ROOT = Path(__file__).resolve().parents[2]
FIXTURES = ROOT / "fixtures"
SCHEMAS = ROOT / "schemas"
CLI = os.environ.get("CONFOUND_CLI")


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def valid(name, doc):
    jsonschema.validate(doc, schema(name))
    return doc


def test_minimal_sets():
    doc = valid("catalog", confound.minimal_sets(FIXTURES / "alternative_sets.graph"))
    assert doc["minimal_sets"] == [["C1"], ["C2"]]
    assert doc["union"]["sufficient"]


def test_classify_without_model():
    doc = valid("classify", confound.classify(confound.fixture("m_bias.graph")))
    c3 = next(v for v in doc["variables"] if v["variable"] == "C3")
    assert {d: v["holds"] for d, v in c3["definitions"].items()} == {"D1": True, "D2": False, "D3": False, "D4": False}
    assert doc["cf_unconfounded_empty"] is None


def test_classify_with_model():
    doc = valid(
        "classify",
        confound.classify(FIXTURES / "cancellation.graph", FIXTURES / "cancellation.json", defs=["D5", "D6"]),
    )
    (c,) = doc["variables"]
    assert not c["definitions"]["D5"]["holds"]
    assert not c["definitions"]["D6"]["holds"]
    assert doc["cf_unconfounded_empty"] is False


def test_properties():
    doc = valid("properties", confound.properties(FIXTURES / "alternative_sets.graph", definition="D3"))
    p1 = doc["verdicts"][0]
    assert p1["property"] == "P1" and not p1["holds"] and p1["witness"]["set"] == []
    doc = valid(
        "properties",
        confound.properties(FIXTURES / "confounder_chain.graph", FIXTURES / "confounder_chain.json", definition="D2"),
    )
    assert [v["property"] for v in doc["verdicts"]] == ["P1", "P2A", "P2B"]
    assert not doc["verdicts"][2]["holds"]


def test_selection():
    graph = FIXTURES / "alternative_sets.graph"
    doc = valid("selection", confound.select(graph, mode="backward", set=["C1", "C2"]))
    assert doc["final"] == ["C1"]
    doc = valid("selection", confound.select(graph, mode="robins", keep=["C1"], set=["C2"]))
    assert doc["holds"]


def test_effects_and_dsep():
    e = confound.effects(FIXTURES / "confounder_chain.graph", FIXTURES / "confounder_chain.json")
    assert e["ace"]["exact"] == "1/4"
    assert e["standardized_rd"]["decimal"] == "0.266"
    assert confound.d_separated(FIXTURES / "m_bias.graph", ["C1"], ["C2"])
    assert not confound.d_separated(FIXTURES / "m_bias.graph", ["C1"], ["C2"], ["C3"])


def test_suite_and_fuzz():
    doc = valid("suite", confound.paper_suite())
    assert doc["failed"] == 0 and doc["passed"] == len(doc["rows"])
    assert valid("suite", confound.paper_suite(FIXTURES))["failed"] == 0
    doc = valid("fuzz", confound.fuzz(seed=7, trials=10))
    assert doc["hard_failures"] == 0
    assert doc == confound.fuzz(seed=7, trials=10)


def test_errors_carry_kind():
    with pytest.raises(confound.ConfoundError) as info:
        confound.minimal_sets("node A exposure\nnode Y outcome\nedge A\n")
    assert info.value.args[0] == "ParseError"
    with pytest.raises(confound.ConfoundError) as info:
        confound.classify(FIXTURES / "m_bias.graph", defs="D5")
    assert info.value.args[0] == "MissingModel"


@pytest.mark.skipif(not CLI, reason="CONFOUND_CLI not set")
@pytest.mark.parametrize(
    "name,args",
    [
        ("catalog", ["minimal-sets", "fixtures/alternative_sets.graph"]),
        ("classify", ["classify", "fixtures/proxy_confounder.graph", "fixtures/proxy_confounder.json", "--exact"]),
        ("properties", ["properties", "fixtures/m_bias.graph", "fixtures/m_bias.json", "--def", "D6"]),
        ("selection", ["select", "fixtures/alternative_sets.graph", "--mode", "forward", "--set", "C1,C2"]),
        ("suite", ["paper-suite"]),
        ("fuzz", ["fuzz", "--seed", "3", "--trials", "5"]),
    ],
)
def test_cli_json_matches_schema(name, args):
    out = subprocess.run([CLI, *args, "--format", "json"], cwd=ROOT, check=True, capture_output=True, text=True)
    valid(name, json.loads(out.stdout))
