import json
from fractions import Fraction

import numpy as np
from hypothesis import given, strategies as st

from ineqforge.jsonio import dumps, load_schema


def test_float_format():
    assert dumps(0.1) == "0.10000000000000001"
    assert dumps(1.0) == "1.0"
    assert dumps(1e300) == "1.0000000000000001e+300"
    assert dumps(float("nan")) == "null" and dumps(float("inf")) == "null"


def test_other_types():
    assert dumps(Fraction(1, 57)) == '"1/57"'
    assert dumps(np.float64(0.5)) == "0.5" and dumps(np.int64(3)) == "3"
    assert dumps({"a": [1, True, None]}) == '{"a": [1, true, null]}'
    assert dumps({"b": 1, "a": 2}).index('"b"') < dumps({"b": 1, "a": 2}).index('"a"')


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_round_trip(x):
    assert json.loads(dumps([x]))[0] == x


def test_indented_output_parses():
    doc = {"x": [1.5, {"y": []}], "z": {}}
    assert json.loads(dumps(doc, indent=2)) == doc


def test_schemas_load():
    for name in ("verify", "maximize", "reduce", "region", "constant", "triangle", "roots", "record"):
        assert load_schema(name)["$schema"].endswith("2020-12/schema")
