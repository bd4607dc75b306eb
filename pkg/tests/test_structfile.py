import json

import pytest

from projalg.jordan import (
    FiniteAlgebra,
    TripleSystem,
    algebra_from_ring,
    hermitian_part,
    jordan_from_assoc,
    matrix_algebra,
    rect_triple,
)
from projalg.jordan_lie import (
    TwoProductAlgebra,
    jordan_lie_from_assoc,
    jordan_lie_from_hermitian,
    lie_jordan_from_involution,
    quantize,
)
from projalg.rings import PrimeField, Rationals
from projalg.ringspec import parse_ring
from projalg.structfile import FIELDS, StructFileError, dump, dumps, load, loads

Q = Rationals()


def structures():
    qi = algebra_from_ring(parse_ring("Mat(2,Qi)", "conjtranspose"))
    return {
        "Mat(2,Q)": matrix_algebra(2, Q),
        "J(Mat(2,F5))": jordan_from_assoc(matrix_algebra(2, PrimeField(5))),
        "Herm(2,Qi)": hermitian_part(qi),
        "rect(2,2)": rect_triple(2, 2, Q),
        "Sym(Mat(2,Q))": jordan_lie_from_assoc(matrix_algebra(2, Q)),
        "Herm JL": jordan_lie_from_hermitian(qi),
        "o(3)": lie_jordan_from_involution(matrix_algebra(3, Q)),
        "quantized": quantize(jordan_lie_from_assoc(matrix_algebra(2, Q))).algebra,
    }


@pytest.mark.parametrize("name", list(structures()))
def test_round_trip_is_byte_identical(name):
    s = structures()[name]
    text = dumps(s)
    back = loads(text)
    assert dumps(back) == text
    assert back.dim == s.dim
    assert back.labels == list(s.labels)


def test_round_trip_preserves_tensors(tmp_path):
    s = structures()
    path = tmp_path / "a.json"
    dump(s["Sym(Mat(2,Q))"], str(path))
    back = load(str(path))
    assert isinstance(back, TwoProductAlgebra)
    assert back.bracket == s["Sym(Mat(2,Q))"].bracket
    assert back.second == s["Sym(Mat(2,Q))"].second
    assert back.coupling.value == s["Sym(Mat(2,Q))"].coupling.value
    t = loads(dumps(s["rect(2,2)"]))
    assert isinstance(t, TripleSystem) and t.triple == s["rect(2,2)"].triple
    a = loads(dumps(s["Mat(2,Q)"]))
    assert isinstance(a, FiniteAlgebra) and a.involution == s["Mat(2,Q)"].involution


def test_field_order_and_exact_scalars():
    text = dumps(structures()["Sym(Mat(2,Q))"])
    doc = json.loads(text)
    assert list(doc) == list(FIELDS)
    assert doc["coupling"] == "1/4"
    assert doc["bilinear"]["product"][0][0] == ["1", "0", "0", "0"]
    assert all(isinstance(x, str) for x in doc["bilinear"]["bracket"][0][1])


def test_qi_scalars():
    text = dumps(structures()["Herm JL"])
    doc = json.loads(text)
    assert doc["base"] == "Q"
    assert doc["coupling"] == "-1/4"


def _good():
    return dumps(matrix_algebra(1, Q))


def _offset(text, token):
    return len(text[: text.index(token)].encode("utf-8"))


def test_error_bad_scalar_points_at_token():
    text = _good().replace('[[["1"]]]', '[[["1/0"]]]')
    with pytest.raises(StructFileError) as exc:
        loads(text, "x.json")
    assert exc.value.offset == _offset(text, '"1/0"')
    assert str(exc.value).startswith(f"x.json: byte {exc.value.offset}: ")


def test_error_non_string_scalar():
    text = _good().replace('[[["1"]]]', "[[[1.5]]]")
    with pytest.raises(StructFileError) as exc:
        loads(text)
    assert exc.value.offset == _offset(text, "1.5")


def test_error_malformed_json():
    text = _good()[:-3]
    with pytest.raises(StructFileError) as exc:
        loads(text, "bad.json")
    assert "bad.json: byte" in str(exc.value)
    assert 0 < exc.value.offset <= len(text)


def test_error_unknown_field():
    text = _good().replace('"labels"', '"lables"')
    with pytest.raises(StructFileError) as exc:
        loads(text)
    assert exc.value.offset == _offset(text, '"lables"')


def test_error_wrong_shape():
    text = _good().replace('[[["1"]]]', '[[["1","0"]]]')
    with pytest.raises(StructFileError) as exc:
        loads(text)
    assert "expected a list of length 1" in str(exc.value)


@pytest.mark.parametrize(
    "old,new,message",
    [
        ('"Q"', '"Zmod(4)"', "not a field"),
        ('"Q"', '"Q("', "base"),
        ('"dim": 1', '"dim": 0', "dim"),
        ('"associative"', '"magma"', "flavor"),
        ('"product"', '"prod"', "needs bilinear.product"),
        ('["E11"]', '["a", "b"]', "labels"),
    ],
)
def test_errors(old, new, message):
    text = _good().replace(old, new)
    with pytest.raises(StructFileError) as exc:
        loads(text)
    assert message in str(exc.value)


def test_missing_file(tmp_path):
    with pytest.raises(StructFileError) as exc:
        load(str(tmp_path / "nope.json"))
    assert exc.value.offset == 0


def test_non_utf8(tmp_path):
    p = tmp_path / "b.json"
    p.write_bytes(b'{"base": "\xff"}')
    with pytest.raises(StructFileError) as exc:
        load(str(p))
    assert exc.value.offset == 10
