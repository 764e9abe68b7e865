import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from homkit import io
from homkit.corpus import h4, yd_module_h4_sigma1
from homkit.exactlin import QQ, Field

from conftest import GF5

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@given(st.lists(rationals, min_size=1, max_size=12))
def test_tensor_roundtrip_q(values):
    arr = QQ.array([str(v) for v in values])
    doc = json.loads(io.dumps(io.tensor_to_doc(arr, QQ, "form")))
    assert np.array_equal(io.tensor_from_doc(doc, "form"), arr)


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=12))
def test_tensor_roundtrip_gf(values):
    arr = GF5.array(values)
    back = io.tensor_from_doc(json.loads(io.dumps(io.tensor_to_doc(arr, GF5, "form"))))
    assert np.array_equal(back, arr)
    assert all(0 <= int(x.v) < 5 for x in back)


def test_structure_roundtrip_and_field_change(field):
    H = h4(field)
    doc = io.structure_to_doc(H)
    assert doc["field"] == str(field)
    back = io.structure_from_doc(json.loads(io.dumps(doc)))
    assert np.array_equal(back.mul, H.mul) and back.labels == H.labels
    over5 = io.structure_from_doc(io.structure_to_doc(h4()), GF5)
    assert np.array_equal(over5.comul, h4(GF5).comul)


def test_yd_roundtrip():
    M = yd_module_h4_sigma1(GF5)
    N = io.yd_from_doc(io.yd_to_doc(M, GF5))
    for name in ("mu", "action", "coaction"):
        assert np.array_equal(getattr(M, name), getattr(N, name))


def test_dumps_is_canonical():
    a = io.dumps({"b": 1, "a": [1, 2]})
    assert a == '{"a":[1,2],"b":1}\n'


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.pop("mul"),
        lambda d: d.update(dim=3),
        lambda d: d.update(kind="monoid"),
        lambda d: d.update(field="gf:6"),
        lambda d: d.update(labels=["1"]),
    ],
)
def test_structure_schema_errors(mutate):
    doc = io.structure_to_doc(h4())
    mutate(doc)
    with pytest.raises(io.SchemaError):
        io.structure_from_doc(doc)


def test_tensor_role_and_scalar_errors():
    doc = io.tensor_to_doc(QQ.eye(2), QQ, "form")
    with pytest.raises(io.SchemaError):
        io.tensor_from_doc(doc, "action")
    doc["data"][0][0] = "1/0"
    with pytest.raises(io.SchemaError):
        io.tensor_from_doc(doc)
    gf_doc = io.tensor_to_doc(Field("GF", 7).eye(2), Field("GF", 7), "form")
    gf_doc["data"][0][0] = "x"
    with pytest.raises(io.SchemaError):
        io.tensor_from_doc(gf_doc)
