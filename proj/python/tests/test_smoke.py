import json
import os
from pathlib import Path

import pytest

import food

CORPUS = Path(os.environ.get("FOOD_CORPUS_DIR", Path(__file__).resolve().parents[2] / "corpus"))


def load(name):
    return food.parse((CORPUS / name).read_text())


def test_transform_sets_to_functional():
    oo = load("sets_oop.food")
    fp = food.transform(oo, ["Set"])
    assert fp == load("sets_fp.food")
    assert food.pretty(fp) == (CORPUS / "sets_oop.Set.expected").read_text()
    assert oo.types == ["Set"]


def test_roundtrip_and_type():
    for name in ["sets_oop.food", "sets_fp.food", "setlist_oop.food", "normalizer_fp.food"]:
        p = load(name)
        assert food.roundtrip(p) == []
    assert food.typecheck(load("sets_oop.food")) == "Bool"


def test_eval_values():
    assert food.eval(load("exp_oop.food"))["value"] == 1
    r = food.eval(load("sets_fp.food"))
    assert r["status"] == "value" and r["value"] is False
    sets = "data Set\ncase Empty() extends Set\ncase Insert(s: Set, n: Int) extends Set\n"
    r = food.eval(food.parse(sets + "Insert(Empty(), 3)"))
    assert r["value"] == food.Obj("Insert", (food.Obj("Empty", ()), 3))
    assert repr(r["value"]) == r["text"] == "obj(Insert, obj(Empty), 3)"


def test_fuel_and_trace():
    p = load("exp_oop.food")
    assert food.eval(p, fuel=0)["status"] == "fuel-exhausted"
    t = food.trace(p)
    assert t["trace"][0] == str(p).splitlines()[-1]
    assert len(t["trace"]) == t["steps"] + 1


def test_errors_are_exceptions():
    with pytest.raises(food.FoodError):
        food.parse("1 +")
    with pytest.raises(food.FoodTypeError):
        food.parse("if (1) true else false")
    assert issubclass(food.FoodTypeError, ValueError)


def test_generated_programs_pass_every_property():
    for seed in range(1, 21):
        p = food.generate(seed)
        assert food.check_properties(p) == [], seed
    summary = json.loads(food.fuzz(trials=10, seed=7))
    assert summary["failures"] == 0


def test_context_dump():
    assert "Insert" in food.context(load("sets_oop.food"))


def test_imported_from_expected_location():
    build = os.environ.get("FOOD_PY_DIR")
    if build:
        assert Path(food._core.__file__).parent == Path(build) / "food"
