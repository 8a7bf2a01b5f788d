import json

import pytest
from hypothesis import given, settings

from dtower.complex import format_id, is_isomorphic
from dtower.errors import ComplexParseError
from dtower.io import dumps, loads, read_complex, to_document, write_complex
from dtower.models import right_trefoil

from strategies import small_knots


def test_canonical_document():
    doc = to_document(right_trefoil())
    assert doc == {
        "name": "RHT",
        "generators": [
            {"id": "a", "i": 0, "j": 1},
            {"id": "c", "i": 1, "j": 0},
            {"id": "b", "i": 1, "j": 1},
        ],
        "differential": [{"from": "b", "to": ["a", "c"]}],
    }
    assert dumps(right_trefoil()).endswith("}\n")


@settings(max_examples=100, deadline=None)
@given(small_knots())
def test_round_trip(c):
    text = dumps(c)
    again = loads(text)
    assert dumps(again) == text
    assert is_isomorphic(again, c)
    assert {format_id(g.id) for g in c.generators} == set(again.ids)


def test_gradings_survive(tmp_path):
    c = right_trefoil().with_gradings({"a": 0, "b": 1, "c": 0})
    path = tmp_path / "g.json"
    write_complex(c, path)
    back = read_complex(path)
    assert back["b"].grading == 1


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("not json", "invalid JSON"),
        ("[]", "JSON object"),
        ('{"generators": 3}', "generators"),
        ('{"generators": [{"id": "a", "i": 0}]}', "lacks j"),
        ('{"generators": [{"id": "a", "i": "0", "j": 0}]}', "integer"),
        ('{"generators": [{"id": "a", "i": true, "j": 0}]}', "integer"),
        ('{"generators": [{"id": "a", "i": 0, "j": 0}, {"id": "a", "i": 1, "j": 1}]}', "duplicate"),
        ('{"generators": [{"id": "a", "i": 0, "j": 0}], "differential": [{"from": "a", "to": ["b"]}]}', "b"),
        ('{"generators": [], "differential": [{"from": "a"}]}', "'to'"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ComplexParseError) as info:
        loads(text)
    assert fragment in str(info.value)


def test_missing_file(tmp_path):
    with pytest.raises(ComplexParseError):
        read_complex(tmp_path / "nothing.json")


def test_name_defaults_to_file_stem(tmp_path):
    path = tmp_path / "mine.json"
    path.write_text(json.dumps({"generators": [{"id": "e", "i": 0, "j": 0}]}))
    assert read_complex(path).name == "mine"


def test_repeated_arrow_cancels():
    c = loads('{"generators": [{"id": "a", "i": 1, "j": 1}, {"id": "b", "i": 0, "j": 0}],'
              ' "differential": [{"from": "a", "to": ["b", "b"]}]}')
    assert not c.differential
