"""Command line interface: formats, exit codes, determinism."""

import io
import json
import subprocess
import sys

import numpy as np
import pytest

from banachmp.cli import (
    EXIT_PARSE,
    EXIT_PRECONDITION,
    EXIT_TOLERANCE,
    main,
    matrix_to_obj,
    obj_to_matrix,
)

from conftest import DIFFERENCE_MAP, SYM_PROJECTOR, random_complex


def write_matrix(path, m):
    path.write_text(json.dumps(matrix_to_obj(np.asarray(m, dtype=complex))))
    return str(path)


def run_cli(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


class TestMatrixFiles:
    def test_round_trip_is_exact(self, rng):
        m = random_complex(rng, 3, 5)
        assert (obj_to_matrix(matrix_to_obj(m)) == m).all()

    def test_json_round_trip_is_exact(self, rng):
        m = random_complex(rng, 4)
        blob = json.dumps(matrix_to_obj(m))
        assert (obj_to_matrix(json.loads(blob)) == m).all()

    @pytest.mark.parametrize(
        "obj",
        [
            {"rows": 2},
            {"rows": 2, "cols": 2, "entries": [[1, 0]]},
            {"rows": 1, "cols": 1, "entries": [[1, 0, 0]]},
            {"rows": 1, "cols": 1, "entries": [1]},
            [1, 2, 3],
        ],
    )
    def test_malformed_objects_rejected(self, obj):
        from banachmp.cli import ParseError

        with pytest.raises(ParseError):
            obj_to_matrix(obj)


class TestClassify:
    def test_projector_under_l2(self, tmp_path, capsys):
        path = write_matrix(tmp_path / "t.json", SYM_PROJECTOR)
        code, out = run_cli(["classify", path, "--norm", "l2", "--report", "json"], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["hermitian"]["is_hermitian"] is True
        assert report["hermitian"]["is_hermitian_idempotent"] is True
        assert report["moore_penrose"]["exists"] is True
        assert report["ep"]["is_ep"] is True
        mp = obj_to_matrix(report["moore_penrose"]["mp"])
        assert np.abs(mp - SYM_PROJECTOR).max() <= 1e-12

    def test_difference_map_under_l1(self, tmp_path, capsys):
        path = write_matrix(tmp_path / "s.json", DIFFERENCE_MAP)
        code, out = run_cli(["classify", path, "--norm", "l1", "--report", "json"], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["hermitian"]["is_hermitian"] is False
        assert report["moore_penrose"] == {
            "exists": False,
            "failure": "nullspace_not_representable",
        }
        assert report["ep"] is None

    def test_identity_default_norm(self, tmp_path, capsys):
        path = write_matrix(tmp_path / "i.json", np.eye(2))
        code, out = run_cli(["classify", path, "--report", "json"], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["norm"] == "l2"
        assert report["ep"]["is_ep"] is True

    def test_missing_file_is_parse_error(self, capsys):
        code, _ = run_cli(["classify", "/nonexistent.json"], capsys)
        assert code == EXIT_PARSE

    def test_corrupt_json_is_parse_error(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, _ = run_cli(["classify", str(path)], capsys)
        assert code == EXIT_PARSE

    def test_non_finite_entries_rejected(self, tmp_path, capsys):
        path = tmp_path / "inf.json"
        path.write_text(
            json.dumps({"rows": 1, "cols": 1, "entries": [[1e999, 0.0]]})
        )
        code, _ = run_cli(["classify", str(path)], capsys)
        assert code == EXIT_PARSE

    def test_byte_stable_output(self, tmp_path, capsys):
        path = write_matrix(tmp_path / "t.json", SYM_PROJECTOR)
        outputs = set()
        for _ in range(2):
            _, out = run_cli(["classify", path, "--report", "json"], capsys)
            outputs.add(out)
        assert len(outputs) == 1


class TestProduct:
    def test_counterexample(self, tmp_path, capsys):
        s = write_matrix(tmp_path / "s.json", np.diag([1.0, 0.0]))
        t = write_matrix(tmp_path / "t.json", 0.5 * np.ones((2, 2)))
        code, out = run_cli(["product", s, t, "--report", "json"], capsys)
        assert code == 0
        got = json.loads(out)["product"]
        assert got["hyp_range"] is False
        assert got["product_ep"] is False
        assert got["hyp_range_defect"] == pytest.approx(0.25)

    def test_projector_pair(self, tmp_path, capsys):
        d = write_matrix(tmp_path / "d.json", np.diag([1.0, 0.0]))
        code, out = run_cli(["product", d, d, "--report", "json"], capsys)
        assert code == 0
        got = json.loads(out)["product"]
        assert all(got[k] for k in ("hyp_range", "hyp_null", "null_sum_eq", "range_cap_eq", "product_ep"))

    def test_non_ep_input_names_the_offender(self, tmp_path, capsys):
        s = write_matrix(tmp_path / "s.json", np.array([[0.0, 1.0], [0.0, 0.0]]))
        t = write_matrix(tmp_path / "t.json", np.eye(2))
        code = main(["product", s, t])
        assert code == EXIT_PRECONDITION


class TestSuite:
    def test_small_run_passes(self, capsys):
        code, out = run_cli(
            ["suite", "--seed", "42", "--instances", "3", "--size", "3", "--report", "json"],
            capsys,
        )
        assert code == 0
        report = json.loads(out)
        assert report["all_passed"] is True
        assert len(report["properties"]) > 0

    def test_zero_instances_warns(self, capsys):
        code, out = run_cli(["suite", "--instances", "0", "--report", "json"], capsys)
        assert code == 0
        report = json.loads(out)
        assert "warning" in report
        assert report["all_passed"] is True

    def test_loose_tolerance_blocks_success(self, capsys):
        code, out = run_cli(
            ["suite", "--instances", "2", "--tol", "1e-1", "--report", "json"], capsys
        )
        assert code == EXIT_TOLERANCE
        report = json.loads(out)
        assert report["tolerance_supported"] is False
        assert "warning" in report

    def test_deterministic_for_fixed_seed(self, capsys):
        argv = ["suite", "--seed", "9", "--instances", "2", "--size", "3", "--report", "json"]
        _, first = run_cli(argv, capsys)
        _, second = run_cli(argv, capsys)
        assert first == second


class TestExamples:
    def test_gallery_matches_recorded_verdicts(self, capsys):
        code, out = run_cli(["examples", "--report", "json"], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["all_match"] is True
        assert len(report["entries"]) == 5
        names = {e["name"] for e in report["entries"]}
        assert names == {
            "symmetric-line-projector",
            "coordinate-difference-map",
            "projector-product-counterexample",
        }

    def test_output_is_byte_identical_across_runs(self, capsys):
        _, first = run_cli(["examples", "--report", "json"], capsys)
        _, second = run_cli(["examples", "--report", "json"], capsys)
        assert first == second

    def test_norm_flag_rejected(self):
        proc = subprocess.run(
            [sys.executable, "-m", "banachmp.cli", "examples", "--norm", "l2"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == EXIT_PARSE


class TestTextReport:
    def test_text_report_renders(self, tmp_path, capsys):
        path = write_matrix(tmp_path / "i.json", np.eye(2))
        code, out = run_cli(["classify", path], capsys)
        assert code == 0
        assert "is_hermitian: True" in out
        assert "command: classify" in out
