import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from peirce.constructors import zmod
from peirce.formats import (
    SchemaError,
    dumps,
    genmatrix_from_dict,
    load_genmatrix_json,
    load_structure_json,
    save_structure_json,
    structure_from_dict,
    structure_to_dict,
)
from peirce.gallery import gallery
from peirce.parser import (
    Example,
    GenMatrixRef,
    Matrix,
    ParseError,
    Product,
    SubMatrix,
    Triangular,
    Zmod,
    build,
    parse_expr,
    print_expr,
)
from peirce.peirce import peirce_dimension


def test_parse_examples():
    assert parse_expr("Triangular(2, GF(2))") == Triangular(2, Zmod(2))
    node = parse_expr("SubMatrix(3, 8, [[1,4,2],[2,1,2],[2,2,1]])")
    assert node == SubMatrix(3, 8, ((1, 4, 2), (2, 1, 2), (2, 2, 1)))
    assert build(node).size == 2 ** 20
    assert parse_expr("Example(t2_field(3))") == Example("t2_field", 3)
    assert parse_expr("Product(Zmod(4), GF(3))") == Product((Zmod(4), Zmod(3)))
    assert parse_expr('GenMatrixRef("a\\"b.json")') == GenMatrixRef('a"b.json')


def test_range_error_points_at_literal():
    with pytest.raises(ParseError) as info:
        parse_expr("Matrix(0, GF(2))")
    assert (info.value.line, info.value.col) == (1, 8)


@pytest.mark.parametrize("text, col", [
    ("Zmod(1)", 6), ("GF(4)", 4), ("Zmod(6", 7), ("Foo(2)", 1), ("Zmod(2) x", 9),
    ("SubMatrix(2, 4, [[1,2],[1]])", 24), ("Zmod(2)$", 8),
])
def test_parse_errors_have_positions(text, col):
    with pytest.raises(ParseError) as info:
        parse_expr(text)
    assert info.value.col == col


def test_parse_error_lists_expected_tokens():
    with pytest.raises(ParseError) as info:
        parse_expr("Matrix(2 GF(2))")
    assert "," in info.value.expected


def test_multiline_positions():
    with pytest.raises(ParseError) as info:
        parse_expr("Product(Zmod(2),\n  Zmod(0))")
    assert (info.value.line, info.value.col) == (2, 8)


ints = st.integers(2, 12)


def exprs():
    leaf = st.one_of(ints.map(Zmod), st.sampled_from([Example("warning2_3x3"), Example("t2_field", 3)]),
                     st.text(alphabet='ab"\\/. ', max_size=6).map(GenMatrixRef))
    sub = st.integers(1, 3).flatmap(lambda n: st.builds(
        SubMatrix, st.just(n), ints,
        st.lists(st.lists(st.integers(0, 9), min_size=n, max_size=n).map(tuple),
                 min_size=n, max_size=n).map(tuple)))
    base = st.one_of(leaf, sub)
    return st.recursive(base, lambda inner: st.one_of(
        st.builds(Matrix, st.integers(1, 4), inner),
        st.builds(Triangular, st.integers(1, 4), inner),
        st.lists(inner, min_size=1, max_size=3).map(lambda fs: Product(tuple(fs)))), max_leaves=6)


@given(exprs())
def test_print_parse_round_trip(node):
    text = print_expr(node)
    assert parse_expr(text) == node
    assert print_expr(parse_expr(text)) == text


def test_structure_document_z6(tmp_path):
    doc = {"version": 1, "name": "Z/6", "basis": [{"name": "1", "order": 6}], "one": [1], "mul": [[[1]]]}
    r = structure_from_dict(doc)
    assert r.valid and r.k == 1 and r.size == 6


def test_schema_error_names_path():
    doc = {"version": 1, "basis": [{"name": "a", "order": 2}, {"name": "b", "order": 2}],
           "one": [1, 0], "mul": [[[1], [0, 1]], [[0, 1], [0, 0]]]}
    with pytest.raises(SchemaError) as info:
        structure_from_dict(doc)
    assert info.value.path == "mul[0][0]"
    with pytest.raises(SchemaError, match="basis\\[0\\].order"):
        structure_from_dict({"version": 1, "basis": [{"name": "a", "order": 1}], "one": [0], "mul": [[[0]]]})
    with pytest.raises(SchemaError, match="version"):
        structure_from_dict({"version": 2})


def test_axiom_failure_is_flagged_not_raised():
    doc = structure_to_dict(zmod(6))
    doc["one"] = [2]
    r = structure_from_dict(doc)
    assert not r.valid and r.axiom_report.identity_failures


def test_save_load_round_trip_is_byte_identical(tmp_path):
    ring = gallery("warning2_3x3").ring
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    save_structure_json(ring, p1)
    again = load_structure_json(p1)
    save_structure_json(again, p2)
    assert p1.read_bytes() == p2.read_bytes()
    assert again.orders == ring.orders and again.one == ring.one
    assert np.array_equal(np.asarray(again.table), np.asarray(ring.table))
    assert dumps(structure_to_dict(ring)) == p1.read_text()


def _trivial_pairing_doc():
    return {"version": 1, "kind": "gen_matrix", "name": "A", "n": 2,
            "diagonal": ["GF(2)", {"version": 1, "basis": [{"name": "1", "order": 2}], "one": [1], "mul": [[[1]]]}],
            "modules": [{"i": 1, "j": 2, "orders": [2], "names": ["m"]}, {"i": 2, "j": 1, "orders": [2]}],
            "products": [{"i": 1, "j": 1, "l": 2, "table": [[[1]]]}, {"i": 1, "j": 2, "l": 2, "table": [[[1]]]},
                         {"i": 2, "j": 2, "l": 1, "table": [[[1]]]}, {"i": 2, "j": 1, "l": 1, "table": [[[1]]]}]}


def test_genmatrix_document(tmp_path):
    r = genmatrix_from_dict(_trivial_pairing_doc())
    assert r.size == 16 and peirce_dimension(r).dimension == 2
    p = tmp_path / "spec.json"
    p.write_text(json.dumps(_trivial_pairing_doc()))
    assert load_genmatrix_json(p).size == 16
    assert build(parse_expr(f'GenMatrixRef("{p}")')).size == 16
    (tmp_path / "t.json").write_text(dumps(structure_to_dict(zmod(6))))
    assert load_genmatrix_json(tmp_path / "t.json").size == 6


def test_genmatrix_document_errors():
    doc = _trivial_pairing_doc()
    doc["modules"][0]["i"] = 2
    with pytest.raises(SchemaError, match="modules\\[0\\]"):
        genmatrix_from_dict(doc)
    doc = _trivial_pairing_doc()
    doc["diagonal"][1]["one"] = [5]
    with pytest.raises(SchemaError, match="diagonal\\[1\\].one\\[0\\]"):
        genmatrix_from_dict(doc)
    doc = _trivial_pairing_doc()
    doc["products"][0]["table"] = [[1, 2], [3]]
    with pytest.raises(SchemaError, match="products\\[0\\].table"):
        genmatrix_from_dict(doc)
