import pytest
from hypothesis import given

from coalg import Comodule, Q, check_coalgebra, prime_field
from coalg.corpus import EXTENSIONS, build, corpus
from coalg.document import (
    Document,
    IdempotentData,
    MatrixIdempotent,
    ParseError,
    SchemaError,
    change_field,
    emit,
    load,
    parse,
)
from conftest import GOLDEN
from strategies import transported_algebras, transported_coalgebras

F5 = prime_field(5)

COALG = """{
  "schema_version": "1",
  "field": "q",
  "kind": "coalgebra",
  "payload": {
    "labels": ["g"],
    "comul": [
      ["1"]
    ],
    "counit": [
      ["1"]
    ]
  }
}
"""


def _equal(a, b):
    if isinstance(a, Comodule):
        return a == b
    if isinstance(a, IdempotentData) or hasattr(a, "endo"):
        return a.n == b.n and a.endo == b.endo
    return a == b


@pytest.mark.parametrize("name", sorted(corpus()))
def test_corpus_round_trip(name):
    obj = build(name)
    text = emit(obj)
    doc = parse(text)
    assert doc.kind == corpus()[name].kind
    assert emit(doc.obj) == text
    assert _equal(obj, doc.obj)


@pytest.mark.parametrize("path", sorted(p for p in GOLDEN.iterdir() if p.suffix in set(EXTENSIONS.values())),
                         ids=lambda p: p.name)
def test_golden_fixtures_are_canonical(path):
    text = path.read_text(encoding="utf-8")
    assert emit(load(path).obj) == text
    assert text == emit(build(path.stem))


@given(transported_coalgebras())
def test_round_trip_of_random_coalgebras(c):
    assert parse(emit(c)).obj == c


@given(transported_algebras())
def test_round_trip_of_random_algebras(a):
    assert parse(emit(a)).obj == a


def test_minimal_document():
    doc = parse(COALG)
    assert isinstance(doc, Document) and doc.field == Q and doc.schema_version == "1"
    assert check_coalgebra(doc.obj).ok
    assert emit(doc.obj) == COALG


class TestRejections:
    def test_fraction_not_in_lowest_terms(self):
        with pytest.raises(ParseError, match="lowest terms") as info:
            parse(COALG.replace('"comul": [\n      ["1"]', '"comul": [\n      ["2/4"]'))
        assert (info.value.line, info.value.column) == (8, 8)

    @pytest.mark.parametrize("bad", ["1/1", "0/3", "+1", "01", "1.5", " 1", "-0"])
    def test_non_canonical_rationals(self, bad):
        with pytest.raises(ParseError):
            parse(COALG.replace('"counit": [\n      ["1"]', f'"counit": [\n      ["{bad}"]'))

    def test_residue_out_of_range(self):
        text = COALG.replace('"q"', '"fp:5"').replace('"counit": [\n      ["1"]', '"counit": [\n      ["7"]')
        with pytest.raises(ParseError):
            parse(text)

    def test_residue_in_range(self):
        assert parse(COALG.replace('"q"', '"fp:5"')).field == F5

    def test_schema_version(self):
        with pytest.raises(SchemaError):
            parse(COALG.replace('"schema_version": "1"', '"schema_version": "2"'))

    def test_unknown_kind(self):
        with pytest.raises(SchemaError):
            parse(COALG.replace('"coalgebra"', '"hopf"'))

    def test_duplicate_key(self):
        with pytest.raises(ParseError, match="duplicate"):
            parse(COALG.replace('"labels": ["g"],', '"labels": ["g"],\n    "labels": ["g"],'))

    def test_missing_key(self):
        with pytest.raises(ParseError):
            parse(COALG.replace('"labels": ["g"],\n', ''))

    def test_numbers_must_be_strings(self):
        with pytest.raises(ParseError):
            parse(COALG.replace('["1"]\n    ],\n    "counit"', '[1]\n    ],\n    "counit"'))

    def test_shape_mismatch(self):
        with pytest.raises(ParseError):
            parse(COALG.replace('"comul": [\n      ["1"]', '"comul": [\n      ["1", "0"]'))

    def test_not_json(self):
        with pytest.raises(ParseError) as info:
            parse("{\n  oops\n}")
        assert info.value.line == 2

    def test_composite_modulus(self):
        with pytest.raises(ParseError):
            parse(COALG.replace('"q"', '"fp:4"'))


class TestFieldChange:
    def test_reduce_divided_powers_mod_two(self):
        c = change_field(build("divpow3"), prime_field(2))
        assert c == build("divpow3-f2")

    def test_matrix_idempotent_reduced(self):
        e = change_field(build("group-c2-alg-half"), F5)
        assert isinstance(e, MatrixIdempotent) and e.field == F5
        assert e.entries[0][0] == (3, 3)

    def test_no_lifting(self):
        with pytest.raises(ValueError):
            change_field(build("divpow2-f3"), Q)
