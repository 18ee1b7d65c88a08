import json
from fractions import Fraction

import pytest

from centralcurve.core.errors import InstanceParseError, UnknownExample
from centralcurve.io.examples import EXAMPLE_NAMES, ExampleSource, example, klee_minty
from centralcurve.io.file_source import FileSource
from centralcurve.io.instance_file import InstanceFile


def test_every_example_survives_a_file_round_trip(example_name, tmp_path):
    document = example(example_name)
    path = tmp_path / f"{example_name}.json"
    document.dump(path)
    again = FileSource(path).load()
    assert again == document
    assert again.to_instance().n == document.to_instance().n


def test_examples_are_written_as_rational_strings():
    doc = json.loads(example("dtz-snake").dumps())
    assert doc["A"][1][5] == "10000/11"
    assert doc["c"][3] == "-449989/990000"
    assert all(isinstance(v, str) for row in doc["A"] for v in row)


def test_integers_are_accepted():
    document = InstanceFile.loads('{"A": [[1, 1, 1]], "b": [1], "c": ["1/2", 0, -3]}')
    assert document.c == (Fraction(1, 2), Fraction(0), Fraction(-3))
    assert document.name == "instance"


def test_floats_are_rejected_with_their_position():
    text = '{\n  "A": [[1, 1, 1]],\n  "b": [0.5],\n  "c": ["1", "2", "3"]\n}\n'
    with pytest.raises(InstanceParseError) as info:
        InstanceFile.loads(text)
    assert (info.value.line, info.value.column) == (3, 9)
    assert "0.5" in str(info.value)


def test_malformed_json_reports_its_line():
    with pytest.raises(InstanceParseError) as info:
        InstanceFile.loads('{\n  "A": [[1, 1]],\n  "b": [1\n}')
    assert info.value.line == 4


def test_bad_rational_string():
    with pytest.raises(InstanceParseError) as info:
        InstanceFile.loads('{"A": [["1", "x"]], "b": ["1"], "c": ["1", "1"]}')
    assert info.value.line == 1


@pytest.mark.parametrize(
    "text",
    [
        '{"A": [["1", "1"]], "b": ["1", "2"], "c": ["1", "1"]}',
        '{"A": [["1", "1"], ["1"]], "b": ["1", "2"], "c": ["1", "1"]}',
        '{"A": [["0", "0"]], "b": ["1"], "c": ["1", "1"]}',
        '{"A": [["1", "1"]], "c": ["1", "1"]}',
        '["not", "an", "object"]',
    ],
)
def test_malformed_documents(text):
    with pytest.raises(InstanceParseError):
        InstanceFile.loads(text)


def test_variant_overrides_cost():
    document = example("hexagon")
    assert document.variant_names == ["c-prime"]
    inst = document.to_instance("c-prime")
    assert inst.name == "hexagon-c-prime"
    assert inst.c[-1] == 2
    with pytest.raises(KeyError):
        document.to_instance("nope")


def test_unknown_example():
    with pytest.raises(UnknownExample) as info:
        example("nope")
    assert info.value.known == list(EXAMPLE_NAMES)
    with pytest.raises(UnknownExample):
        ExampleSource("nope")


def test_example_source_and_parameters():
    source = ExampleSource("klee-minty")
    assert source.name == "klee-minty"
    assert source.load() == klee_minty()
    assert klee_minty(Fraction(1, 3)).A[2][0] == Fraction(2, 9)


def test_hexagon_drops_its_dependent_row():
    inst = example("hexagon").to_instance()
    assert (inst.d, inst.n) == (4, 6)
