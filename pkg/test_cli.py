"""
End-to-end tests of the tcpair command line through main.run.
"""

import json

import pytest

from main import run
from src.algebra.serialization import (
    BOUND_REPORT_SCHEMA, CERTIFICATE_SCHEMA, PATH_SAMPLE_SCHEMA, VERIFICATION_SCHEMA, validate_document
)

FIBONACCI = "1,1,2,3,5,7"


def last_json_line(text: str) -> dict:
    return json.loads(text.strip().splitlines()[-1])


@pytest.fixture
def spec_file(tmp_path, rp_pair_document):
    def write(document=None, name="pair.json"):
        path = tmp_path / name
        path.write_text(json.dumps(document or rp_pair_document(3, 2)), encoding="utf-8")
        return str(path)
    return write


class TestReports:

    def test_polygon_text(self, capsys):
        assert run(["polygon", "--lengths", FIBONACCI]) == 0
        out = capsys.readouterr().out
        assert "TC = 7 (exact)" in out
        assert "certificate: k = 6" in out

    @pytest.mark.parametrize("partition,expected", [("1|3|4|2,5|6", 6), ("1|2|4|5|3,6", 6), ("1,4|6|2,3,5", 4)])
    def test_polygon_pair_json(self, capsys, partition, expected):
        assert run(["--json", "polygon-pair", "--lengths", FIBONACCI, "--partition", partition]) == 0
        document = json.loads(capsys.readouterr().out)
        validate_document(document, BOUND_REPORT_SCHEMA)
        assert document["lower"] == document["upper"] == expected
        assert document["exact"] is True

    def test_degenerate_pair_exits_with_input_error(self, capsys):
        code = run(["polygon-pair", "--lengths", FIBONACCI, "--partition", "1|2|6|3,4,5"])
        assert code == 2
        assert "error: DegenerateLength" in capsys.readouterr().err

    def test_polygon_needs_rational_field(self, capsys):
        assert run(["polygon", "--lengths", FIBONACCI, "--field", "F2"]) == 2
        assert "InvalidField" in capsys.readouterr().err

    def test_json_flag_after_nested_subcommand(self, capsys):
        assert run(["catalog", "sphere-pair", "--n", "4", "--m", "2", "--json"]) == 0
        document = json.loads(capsys.readouterr().out)
        assert document["lower"] == document["upper"] == 2

    @pytest.mark.parametrize("argv,expected", [
        (["catalog", "torus", "--n", "3"], 4),
        (["catalog", "wedge", "--dims", "2,2,3", "--m", "2"], 3),
        (["catalog", "cp-pair", "--n", "3", "--m", "2"], 6)
    ])
    def test_catalog_families(self, capsys, argv, expected):
        assert run(["--json"] + argv) == 0
        assert json.loads(capsys.readouterr().out)["lower"] == expected

    def test_rp_pair_with_quaternion_witness(self, capsys):
        assert run(["rp-pair", "--n", "3", "--m", "2", "--quaternion"]) == 0
        out = capsys.readouterr().out
        assert "TC = 4 (exact)" in out
        assert "not a closed form" in out

    def test_rp_pair_without_witness_is_a_range(self, capsys):
        assert run(["rp-pair", "--n", "3", "--m", "2"]) == 0
        assert "4 ≤ TC ≤ 6" in capsys.readouterr().out

    def test_output_file_matches_stdout(self, capsys, tmp_path):
        target = tmp_path / "reports" / "polygon.json"
        assert run(["--json", "--output", str(target), "polygon", "--lengths", FIBONACCI]) == 0
        assert json.loads(capsys.readouterr().out) == json.loads(target.read_text(encoding="utf-8"))


class TestCupLengthCommand:

    def test_search_on_spec_file(self, capsys, spec_file):
        assert run(["cuplength", "--spec", spec_file(), "--json"]) == 0
        document = json.loads(capsys.readouterr().out)
        validate_document(document, CERTIFICATE_SCHEMA)
        assert document["k"] == 3
        assert document["bound"] == "TC >= 4"

    def test_malformed_field_reports_pointer(self, capsys, spec_file, rp_pair_document):
        document = rp_pair_document(3, 2)
        document["target"]["field"] = "R"
        assert run(["--json", "cuplength", "--spec", spec_file(document)]) == 2
        diagnostic = last_json_line(capsys.readouterr().err)
        assert diagnostic["error"] == "SchemaError"
        assert diagnostic["pointer"] == "/target/field"

    def test_relation_violation_reports_index(self, capsys, spec_file, rp_pair_document):
        assert run(["--json", "cuplength", "--spec", spec_file(rp_pair_document(2, 3))]) == 2
        diagnostic = last_json_line(capsys.readouterr().err)
        assert diagnostic["error"] == "RelationNotPreserved"
        assert diagnostic["index"] == 0

    def test_field_flag_must_match_spec(self, capsys, spec_file):
        assert run(["cuplength", "--spec", spec_file(), "--field", "Q"]) == 2
        assert "FieldMismatch" in capsys.readouterr().err

    def test_missing_file(self, capsys, tmp_path):
        assert run(["cuplength", "--spec", str(tmp_path / "absent.json")]) == 2

    def test_invalid_json(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{", encoding="utf-8")
        assert run(["--json", "cuplength", "--spec", str(path)]) == 2
        assert last_json_line(capsys.readouterr().err)["error"] == "SchemaError"


class TestPlannerCommands:

    def test_plan_sphere_pair(self, capsys):
        assert run(["--json", "plan", "sphere-pair", "--n", "2", "--m", "1", "--x", "1,0,0", "--y", "0,1"]) == 0
        document = json.loads(capsys.readouterr().out)
        validate_document(document, PATH_SAMPLE_SCHEMA)
        assert document["rule"] == 1
        assert document["points"][-1] == pytest.approx([0.0, 1.0, 0.0])

    def test_plan_wedge_from_cap(self, capsys):
        argv = ["plan", "wedge", "--dims", "2,2,3", "--m", "2", "--p", "3:-1,0,0,0", "--q", "0", "--json"]
        assert run(argv) == 0
        assert json.loads(capsys.readouterr().out)["rule"] == 2

    def test_plan_rp_pair(self, capsys):
        argv = ["plan", "rp-pair", "--n", "3", "--m", "2", "--quaternion", "--start", "0,0,0,1", "--goal", "0,1,0"]
        assert run(argv) == 0
        assert "rule 3" in capsys.readouterr().out

    @pytest.mark.parametrize("argv", [
        ["plan", "sphere-pair", "--n", "2", "--m", "1", "--x", "1,0,0", "--y", "0,0,1"],
        ["plan", "sphere-pair", "--n", "2", "--m", "1", "--x", "1,a,0", "--y", "0,1"],
        ["plan", "wedge", "--dims", "2,2,3", "--m", "2", "--p", "x:1", "--q", "0"],
        ["plan", "wedge", "--dims", "2,2,3", "--m", "2", "--p", "1:0,1,0", "--q", "3:0,1,0,0"]
    ])
    def test_bad_points(self, capsys, argv):
        assert run(argv) == 2

    @pytest.mark.parametrize("target", [
        ["sphere-pair", "--n", "5", "--m", "3"],
        ["wedge", "--dims", "2,2,3", "--m", "2"],
        ["rp-pair", "--n", "3", "--m", "2", "--quaternion"]
    ])
    def test_verify_passes(self, capsys, target):
        assert run(["--json", "verify"] + target + ["--samples", "300"]) == 0
        document = json.loads(capsys.readouterr().out)
        validate_document(document, VERIFICATION_SCHEMA)
        assert document["cover_failures"] == 0
        assert document["N"] == 300

    def test_verify_is_reproducible(self, capsys):
        argv = ["verify", "sphere-pair", "--n", "2", "--m", "1", "--samples", "200", "--seed", "5", "--json"]
        assert run(argv) == 0
        first = capsys.readouterr().out
        assert run(argv + ["--threads", "3"]) == 0
        assert capsys.readouterr().out == first
        assert json.loads(first)["seed"] == 5


class TestArguments:

    def test_missing_required_option(self, capsys):
        assert run(["polygon"]) == 2

    def test_unknown_command(self, capsys):
        assert run(["triangulate"]) == 2

    def test_invalid_thread_count(self, capsys):
        assert run(["--threads", "0", "catalog", "torus", "--n", "2"]) == 2
        assert "threads" in capsys.readouterr().err
