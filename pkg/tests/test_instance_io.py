import json
from fractions import Fraction

import pytest

from sspt.graph import Graph
from sspt.instance import Instance
from sspt.instance_io import (
    dump_instance,
    load_instance,
    parse_instance,
    parse_set_cover,
    parse_solution,
    parse_steinlib,
    serialize_instance,
    serialize_set_cover,
    serialize_solution,
)
from sspt.steiner import solve_sspt, solve_weighted_sspt
from sspt.utils import InvariantViolation, ParseError

STAR_TEXT = """{
  "format_version": 1,
  "directed": true,
  "n": 4,
  "source": 0,
  "terminals": [2, 3],
  "vertex_weights": null,
  "edges": [
    [0, 1, 1],
    [1, 2, 1],
    [1, 3, 1]
  ]
}
"""


def _instance_text(**overrides) -> str:
    data = json.loads(STAR_TEXT)
    data.update(overrides)
    return json.dumps(data)


class TestInstanceFormat:
    def test_canonical_text(self, star_instance):
        assert serialize_instance(star_instance) == STAR_TEXT

    def test_parse(self, star_instance):
        assert parse_instance(STAR_TEXT) == star_instance

    def test_undirected_edges_are_written_once(self, four_cycle_instance):
        text = serialize_instance(four_cycle_instance)
        assert json.loads(text)["edges"] == [
            [0, 1, 1],
            [0, 3, 1],
            [1, 2, 1],
            [2, 3, 1],
        ]
        assert parse_instance(text) == four_cycle_instance

    def test_weighted_instance(self, diamond):
        inst = Instance(diamond, 0, [3], vertex_weights=[0, 5, 1, 0])
        text = serialize_instance(inst)
        assert '"vertex_weights": [0, 5, 1, 0]' in text
        assert parse_instance(text) == inst

    def test_no_edges(self):
        inst = Instance(Graph(1), 0, [])
        text = serialize_instance(inst)
        assert '"edges": []' in text
        assert parse_instance(text) == inst

    def test_file_round_trip(self, tmp_path, star_instance):
        path = tmp_path / "star.json"
        dump_instance(star_instance, path)
        assert path.read_text() == STAR_TEXT
        assert load_instance(str(path)) == star_instance


class TestInstanceErrors:
    def test_bad_json_names_line_and_column(self):
        with pytest.raises(ParseError) as info:
            parse_instance('{\n  "n": 3,\n  oops\n}')
        assert info.value.location.startswith("line 3")

    def test_not_an_object(self):
        with pytest.raises(ParseError):
            parse_instance("[1, 2]")

    def test_missing_field(self):
        data = json.loads(STAR_TEXT)
        del data["terminals"]
        with pytest.raises(ParseError) as info:
            parse_instance(json.dumps(data))
        assert info.value.location == "terminals"

    @pytest.mark.parametrize("version", [None, 0, 2, "1", True, 1.0])
    def test_bad_version(self, version):
        with pytest.raises(ParseError) as info:
            parse_instance(_instance_text(format_version=version))
        assert info.value.location == "format_version"

    @pytest.mark.parametrize(
        "field, value",
        [
            ("n", "4"),
            ("n", True),
            ("directed", 1),
            ("source", 0.0),
            ("terminals", [2, "3"]),
            ("edges", [[0, 1]]),
            ("edges", [[0, 1, 1.5]]),
            ("vertex_weights", [0, "1", 0, 0]),
        ],
    )
    def test_wrong_type(self, field, value):
        with pytest.raises(ParseError) as info:
            parse_instance(_instance_text(**{field: value}))
        assert info.value.location == field

    def test_source_is_a_terminal(self):
        with pytest.raises(InvariantViolation):
            parse_instance(_instance_text(terminals=[0, 2]))

    def test_duplicate_terminal(self):
        with pytest.raises(InvariantViolation):
            parse_instance(_instance_text(terminals=[2, 2]))

    def test_edge_out_of_range(self):
        with pytest.raises(InvariantViolation):
            parse_instance(_instance_text(edges=[[0, 9, 1]]))

    def test_negative_weight(self):
        with pytest.raises(InvariantViolation):
            parse_instance(_instance_text(edges=[[0, 1, -3]]))

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_instance(tmp_path / "absent.json")


class TestSolutionFormat:
    def test_round_trip(self, four_cycle_instance):
        report = solve_sspt(four_cycle_instance)
        text = serialize_solution(report)
        assert parse_solution(text) == report
        assert serialize_solution(parse_solution(text)) == text

    def test_key_order(self, star_instance):
        data = json.loads(serialize_solution(solve_sspt(star_instance)))
        assert list(data) == [
            "format_version",
            "root",
            "nt_count",
            "nt_weight",
            "cover_owners",
            "certificate",
            "parent",
        ]
        assert data["parent"] == [[1, 0, 1], [2, 1, 1], [3, 1, 1]]
        assert data["certificate"]["harmonic_bound"] == "3/2"
        assert data["certificate"]["weight_ratio"] is None

    def test_weight_ratio_is_a_fraction(self, diamond):
        inst = Instance(diamond, 0, [3], vertex_weights=[0, 5, 2, 0])
        report = solve_weighted_sspt(inst)
        parsed = parse_solution(serialize_solution(report))
        assert parsed.certificate.weight_ratio == Fraction(1)

    def test_vertex_listed_twice(self):
        text = json.dumps(
            {
                "format_version": 1,
                "root": 0,
                "nt_count": 0,
                "nt_weight": 0,
                "parent": [[1, 0, 1], [1, 0, 2]],
            }
        )
        with pytest.raises(ParseError) as info:
            parse_solution(text)
        assert info.value.location == "parent"

    def test_root_with_parent(self):
        text = json.dumps(
            {
                "format_version": 1,
                "root": 0,
                "nt_count": 0,
                "nt_weight": 0,
                "parent": [[0, 1, 1]],
            }
        )
        with pytest.raises(InvariantViolation):
            parse_solution(text)

    def test_bad_certificate(self, star_instance):
        data = json.loads(serialize_solution(solve_sspt(star_instance)))
        del data["certificate"]["radius"]
        with pytest.raises(ParseError) as info:
            parse_solution(json.dumps(data))
        assert info.value.location == "certificate"


class TestSetCoverFormat:
    def test_round_trip(self, abc_cover):
        text = serialize_set_cover(abc_cover)
        assert '    [0, [0, 1], 1],' in text
        assert parse_set_cover(text) == abc_cover

    def test_bad_subset(self):
        text = json.dumps(
            {"format_version": 1, "universe_size": 2, "subsets": [[0, [0, 1]]]}
        )
        with pytest.raises(ParseError) as info:
            parse_set_cover(text)
        assert info.value.location == "subsets[0]"

    @pytest.mark.parametrize(
        "subset", [[True, [0], 1], [0, [0], True], [0, [False], 1]]
    )
    def test_booleans_are_not_integers(self, subset):
        text = json.dumps(
            {"format_version": 1, "universe_size": 1, "subsets": [subset]}
        )
        with pytest.raises(ParseError) as info:
            parse_set_cover(text)
        assert info.value.location == "subsets[0]"

    def test_member_outside_universe(self):
        text = json.dumps(
            {"format_version": 1, "universe_size": 1, "subsets": [[0, [3], 1]]}
        )
        with pytest.raises(InvariantViolation):
            parse_set_cover(text)


def test_steinlib_is_not_supported():
    with pytest.raises(NotImplementedError):
        parse_steinlib("SECTION Graph\nEND\n")
