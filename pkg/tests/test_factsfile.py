import json

import jsonschema
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from msextract.errors import FactsValidationError
from msextract.extract import FACTS_SCHEMA, build_facts, facts_to_dict, load_facts, save_facts


def three_class_facts():
    return build_facts(
        [
            {"name": "a.Cart", "path": "a/Cart.java", "identifiers": ["Cart", "addItem"], "comments": ["a cart"]},
            {"name": "a.Item", "path": "a/Item.java", "identifiers": [], "comments": []},
            {"name": "b.Bill", "path": "b/Bill.java", "identifiers": ["Bill"], "comments": []},
        ],
        [("a.Cart", "a.Item", 3), ("b.Bill", "a.Cart", 1), ("a.Cart", "a.Cart", 2)],
    )


def test_round_trip(tmp_path):
    facts = three_class_facts()
    save_facts(facts, tmp_path / "f.json")
    assert load_facts(tmp_path / "f.json") == facts


def test_empty_identifier_lists_are_kept(tmp_path):
    save_facts(three_class_facts(), tmp_path / "f.json")
    data = json.loads((tmp_path / "f.json").read_text())
    item = next(c for c in data["classes"] if c["name"] == "a.Item")
    assert item["identifiers"] == [] and item["comments"] == []


def test_output_validates_against_schema(tmp_path):
    save_facts(three_class_facts(), tmp_path / "f.json")
    jsonschema.validate(json.loads((tmp_path / "f.json").read_text()), FACTS_SCHEMA)


def test_consecutive_saves_are_byte_identical(tmp_path):
    facts = three_class_facts()
    save_facts(facts, tmp_path / "a.json")
    save_facts(facts, tmp_path / "b.json")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_ids_follow_sorted_names_regardless_of_file_order(tmp_path):
    data = facts_to_dict(three_class_facts())
    data["classes"].reverse()
    (tmp_path / "f.json").write_text(json.dumps(data))
    facts = load_facts(tmp_path / "f.json")
    assert facts.names == ("a.Cart", "a.Item", "b.Bill")
    assert facts.call_graph.counts[0, 1] == 3


def _write(tmp_path, data):
    path = tmp_path / "f.json"
    path.write_text(json.dumps(data))
    return path


@pytest.mark.parametrize(
    "mutate, where",
    [
        (lambda d: d["calls"].append({"from": "a.Cart", "to": "z.Ghost", "count": 1}), "calls/3/to"),
        (lambda d: d["calls"][0].update(count=-1), "calls/0/count"),
        (lambda d: d["classes"][0].pop("identifiers"), "classes/0"),
        (lambda d: d["classes"].append(dict(d["classes"][0])), "duplicate name"),
        (lambda d: d["calls"].append(dict(d["calls"][0])), "duplicate pair"),
        (lambda d: d.pop("calls"), "<root>"),
    ],
)
def test_invalid_files_name_the_offending_field(tmp_path, mutate, where):
    data = facts_to_dict(three_class_facts())
    mutate(data)
    with pytest.raises(FactsValidationError, match=where):
        load_facts(_write(tmp_path, data))


def test_not_json(tmp_path):
    path = tmp_path / "f.json"
    path.write_text("{nope")
    with pytest.raises(FactsValidationError):
        load_facts(path)


names = st.lists(st.from_regex(r"[a-z]{1,3}\.[A-Z][a-z]{0,4}", fullmatch=True), min_size=1, max_size=6, unique=True)


@settings(max_examples=60, deadline=None)
@given(data=st.data(), class_names=names)
def test_round_trip_property(tmp_path_factory, data, class_names):
    n = len(class_names)
    counts = data.draw(st.lists(st.lists(st.integers(0, 5), min_size=n, max_size=n), min_size=n, max_size=n))
    idents = data.draw(st.lists(st.lists(st.text(max_size=8), max_size=3), min_size=n, max_size=n))
    records = [{"name": c, "path": f"{c}.java", "identifiers": i, "comments": []} for c, i in zip(class_names, idents)]
    calls = [(class_names[i], class_names[j], counts[i][j]) for i in range(n) for j in range(n) if counts[i][j]]
    facts = build_facts(records, calls)
    path = tmp_path_factory.mktemp("rt") / "f.json"
    save_facts(facts, path)
    again = load_facts(path)
    assert again == facts
    order = np.argsort(class_names)
    assert np.array_equal(again.call_graph.counts, np.asarray(counts)[np.ix_(order, order)])
