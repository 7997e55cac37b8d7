import copy
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shortc2.reports import Report, combine
from shortc2.schema import SCHEMA_VERSION, envelope, is_valid, report_schema, validate_report

GREEN = {"point": [0.0, 0.0, 4.0, 0.0], "which": "plus",
         "estimate": {"value": 1.38, "error_bound": 1e-11, "iterations": 5, "escaped": True, "status": "escaped"}}


def test_schema_is_versioned():
    s = report_schema()
    assert s["$id"] == SCHEMA_VERSION
    assert report_schema() == s


def test_verify_report_validates():
    doc = envelope("verify", combine("all", [Report("x", True, 0.0, 1e-10, 3)]))
    validate_report(doc)


def test_missing_error_bound_rejected():
    doc = envelope("green", copy.deepcopy(GREEN))
    assert is_valid(doc)
    del doc["result"]["estimate"]["error_bound"]
    assert not is_valid(doc)


def test_wrong_command_rejected():
    assert not is_valid(envelope("nope", {}))
    assert not is_valid({"command": "green", "result": GREEN})


reports = st.builds(
    Report,
    name=st.text(max_size=20),
    passed=st.booleans(),
    max_error=st.floats(0, 1e6),
    tolerance=st.floats(0, 1),
    samples=st.integers(0, 10_000),
    details=st.dictionaries(st.text(max_size=5), st.integers() | st.text(max_size=5), max_size=3),
)


@given(st.lists(reports, max_size=5), st.text(max_size=10))
def test_round_trip(parts, name):
    doc = envelope("verify", combine(name, parts))
    text = json.dumps(doc)
    validate_report(json.loads(text))
    back = [Report.from_json(c) for c in json.loads(text)["result"]["checks"]]
    assert back == parts
