"""Tests for the JSON and CSV codecs"""

import sys
import os

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import io
import json
from fractions import Fraction

import pytest

from models.composition import ScalarDomain
from models.freudenthal import FreudenthalElement, GroupWord, Phi, Struct, Tau
from models.isomorphisms import to_cube
from models.jordan import JordanElement, JordanKind
from models.reduction import classify_orbit
from models.structure import Congruence, Permute, StructureMap
from models.composition import Algebra, element
from utils.errors import DomainError, ParseError
from utils.serialization import (
    FORMAT_TAG,
    decode_cube,
    decode_element,
    decode_wedge,
    decode_word,
    dumps,
    encode_cube,
    encode_element,
    encode_label,
    encode_word,
    label_key,
    load_json,
    read_input,
    write_csv,
)


def test_element_document_layout():
    x = FreudenthalElement.reduced(JordanKind.H3B, 1, 2, (1, 1, 2))
    doc = encode_element(x)
    assert doc["format"] == FORMAT_TAG
    assert doc["kind"] == "H3B" and doc["scalars"] == "int"
    assert doc["A"]["diag"] == [1, 1, 2]
    assert doc["A"]["off"] == [[0, 0], [0, 0], [0, 0]]
    assert decode_element(json.loads(dumps(doc))) == x


def test_minimal_documents_use_flags():
    x = decode_element({"alpha": 1, "beta": 1, "A": {"diag": [1, 1, 1]}}, JordanKind.DIAG3)
    assert x == FreudenthalElement.reduced(JordanKind.DIAG3, 1, 1, (1, 1, 1))
    y = decode_element({"kind": "diag3", "coords": [1, 1, 1, 1, 1, 0, 0, 0]})
    assert y == x


def test_rational_scalars():
    x = decode_element({"kind": "H3H", "scalars": "rat", "alpha": "1/2", "beta": 0})
    assert x.alpha == Fraction(1, 2)
    assert x.domain is ScalarDomain.RAT
    assert encode_element(x)["alpha"] == "1/2"
    with pytest.raises(DomainError):
        decode_element({"kind": "H3H", "alpha": "1/2", "beta": 0})


def test_decoding_errors():
    with pytest.raises(ParseError):
        decode_element({"alpha": 1, "beta": 0})
    with pytest.raises(DomainError):
        decode_element({"kind": "H3B", "alpha": 1, "beta": 0}, JordanKind.H3O)
    with pytest.raises(DomainError):
        decode_element({"kind": "H3X", "alpha": 1, "beta": 0})
    with pytest.raises(ParseError):
        decode_element({"format": "other", "kind": "H3B", "alpha": 1, "beta": 0})
    with pytest.raises(ParseError):
        decode_element([1, 2, 3], JordanKind.DIAG3)
    with pytest.raises(ParseError):
        decode_element({"kind": "H3B", "alpha": True, "beta": 0})


def test_malformed_json_reports_position():
    with pytest.raises(ParseError) as info:
        load_json('{"alpha": 1,\n "beta": }')
    assert "line 2" in info.value.message
    assert info.value.exit_code == 2


def test_read_input_sources(tmp_path):
    path = tmp_path / "x.json"
    path.write_text('{"kind": "H3B", "alpha": 3, "beta": 0}', encoding="utf-8")
    assert read_input(str(path))["alpha"] == 3
    assert read_input('{"kind": "H3B", "alpha": 4, "beta": 0}')["alpha"] == 4


def test_word_codec():
    kind = JordanKind.H3B
    c = element(Algebra.B, (2, -1))
    s = StructureMap(kind, (Permute.swap(0, 1), Congruence(0, 2, c)))
    word = GroupWord((Phi(JordanElement.unit(kind)), Tau(), Struct(s)))
    encoded = encode_word(word)
    assert [g["gen"] for g in encoded] == ["phi", "tau", "struct"]
    assert encoded[2]["moves"][0] == {"move": "permute", "sigma": [2, 1, 3]}
    assert encoded[2]["moves"][1]["i"] == 1 and encoded[2]["moves"][1]["j"] == 3
    assert decode_word(json.loads(dumps(encoded)), kind, ScalarDomain.INT) == word
    with pytest.raises(ParseError):
        decode_word({"gen": "tau"}, kind, ScalarDomain.INT)
    with pytest.raises(ParseError):
        decode_word([{"gen": "rho"}], kind, ScalarDomain.INT)


def test_label_documents():
    label = classify_orbit(FreudenthalElement.reduced(JordanKind.H3O, 1, 1, (1, 1, 1)))
    doc = encode_label(label, with_representative=False)
    assert doc == {"variant": "Projective", "epsilon": 1, "k": 1}
    assert label_key(label) == "Projective(eps=1,k=1)"
    rank1 = classify_orbit(FreudenthalElement.reduced(JordanKind.H3O, 3, 0, (0, 0, 0)))
    assert encode_label(rank1)["representative"]["alpha"] == 3
    assert label_key(rank1) == "Rank1(d1=3)"


def test_cube_and_wedge_documents():
    x = FreudenthalElement.from_coordinates(JordanKind.DIAG3, (1, 2, 3, 4, 5, 6, 7, 8))
    doc = encode_cube(to_cube(x))
    assert doc["cube"][0][0][0] == 1 and doc["cube"][1][1][1] == 2
    assert decode_cube(json.loads(dumps(doc))) == to_cube(x)
    with pytest.raises(ParseError):
        decode_cube({"cube": [[1, 2], [3, 4]]})
    with pytest.raises(ParseError):
        decode_wedge({"wedge": [0] * 19})


def test_csv_writer():
    stream = io.StringIO()
    write_csv(["norm", "count"], [[5, 2], [12, 1]], stream)
    assert stream.getvalue() == "norm,count\n5,2\n12,1\n"
