import json

import numpy as np
import pytest

from absnorm import bounds_report_from_json, bounds_report_to_json, mu_bounds
from absnorm.cli import (
    EXIT_COMPUTE_ERROR,
    EXIT_FIXTURE_FAILURE,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    main,
)

SHARP_JSON = json.dumps({"field": "real", "n": 2, "rows": [[1, 1], [-1, -1]]})
HADAMARD_GRID = "1 1\n1 -1\n"


@pytest.fixture
def sharp_file(tmp_path):
    path = tmp_path / "sharp.json"
    path.write_text(SHARP_JSON)
    return str(path)


@pytest.fixture
def hadamard_file(tmp_path):
    path = tmp_path / "hadamard.txt"
    path.write_text(HADAMARD_GRID)
    return str(path)


def run(capsys, args):
    code = main(args)
    return code, capsys.readouterr().out


class TestMu:
    def test_sharp_exact_two(self, capsys, sharp_file):
        code, out = run(capsys, ["mu", sharp_file, "--format", "json"])
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["lower"] == pytest.approx(2.0, abs=1e-9)
        assert payload["upper"] == pytest.approx(2.0, abs=1e-9)
        assert payload["shortcut"] == "sign_equivalent"

    def test_identity_grid(self, capsys, tmp_path):
        path = tmp_path / "eye.txt"
        path.write_text("1 0\n0 1\n")
        code, out = run(capsys, ["mu", str(path), "--format", "json"])
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["lower"] == pytest.approx(1.0, abs=1e-9)
        assert payload["upper"] == pytest.approx(1.0, abs=1e-9)

    def test_text_header_states_seed(self, capsys, sharp_file):
        code, out = run(capsys, ["mu", sharp_file, "--seed", "7"])
        assert code == EXIT_OK
        assert out.splitlines()[0] == "# absnorm mu  seed=7"

    def test_stdin(self, capsys, monkeypatch):
        import io

        monkeypatch.setattr("sys.stdin", io.StringIO(SHARP_JSON))
        code, out = run(capsys, ["mu", "-", "--format", "json"])
        assert code == EXIT_OK
        assert json.loads(out)["exact"] is True

    def test_malformed_json_exits_2(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        code, _ = run(capsys, ["mu", str(path)])
        assert code == EXIT_INPUT_ERROR

    def test_non_square_exits_2(self, capsys, tmp_path):
        path = tmp_path / "rect.txt"
        path.write_text("1 2 3\n4 5 6\n")
        code, _ = run(capsys, ["mu", str(path)])
        assert code == EXIT_INPUT_ERROR

    def test_missing_file_exits_2(self, capsys, tmp_path):
        code, _ = run(capsys, ["mu", str(tmp_path / "absent.json")])
        assert code == EXIT_INPUT_ERROR

    def test_empty_input_exits_2(self, capsys, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("\n\n")
        code, _ = run(capsys, ["mu", str(path)])
        assert code == EXIT_INPUT_ERROR

    def test_capacity_exits_3(self, capsys, hadamard_file):
        code, _ = run(capsys, ["mu", hadamard_file, "--depth", "40"])
        assert code == EXIT_COMPUTE_ERROR

    def test_complex_matrix_flags_heuristic(self, capsys, tmp_path):
        path = tmp_path / "cx.json"
        path.write_text(
            json.dumps(
                {"field": "complex", "n": 2, "rows": [[[1, 0], [0, 1]], [[1, 0], [-1, 0]]]}
            )
        )
        code, out = run(
            capsys, ["mu", str(path), "--grid-q", "4", "--depth", "3", "--format", "json"]
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["grid_q"] == 4
        assert payload["upper_heuristic"] is True

    def test_odd_grid_order_exits_2(self, capsys, hadamard_file):
        code, _ = run(capsys, ["mu", hadamard_file, "--grid-q", "3"])
        assert code == EXIT_INPUT_ERROR

    def test_round_trip_through_engine(self, sharp_file):
        report = mu_bounds([[1, 1], [-1, -1]], max_depth=1)
        data = bounds_report_to_json(report)
        assert bounds_report_to_json(bounds_report_from_json(data)) == data


class TestDeterminism:
    def test_identical_runs_byte_identical(self, capsys, hadamard_file):
        _, out1 = run(capsys, ["mu", hadamard_file, "--depth", "4", "--format", "json"])
        _, out2 = run(capsys, ["mu", hadamard_file, "--depth", "4", "--format", "json"])
        assert out1 == out2

    def test_thread_counts_byte_identical(self, capsys, hadamard_file):
        _, out1 = run(
            capsys,
            ["mu", hadamard_file, "--depth", "6", "--threads", "1", "--format", "json"],
        )
        _, out8 = run(
            capsys,
            ["mu", hadamard_file, "--depth", "6", "--threads", "8", "--format", "json"],
        )
        assert out1 == out8

    def test_demo_verdicts_stable_across_seeds(self, capsys):
        code0, out0 = run(capsys, ["demo", "--trials", "50", "--seed", "0", "--format", "json"])
        code1, out1 = run(capsys, ["demo", "--trials", "50", "--seed", "123", "--format", "json"])
        assert code0 == code1 == EXIT_OK
        verdicts0 = [f["passed"] for f in json.loads(out0)["fixtures"]]
        verdicts1 = [f["passed"] for f in json.loads(out1)["fixtures"]]
        assert verdicts0 == verdicts1

    def test_demo_threads_identical_payload(self, capsys):
        _, out1 = run(capsys, ["demo", "--trials", "50", "--threads", "1", "--format", "json"])
        _, out8 = run(capsys, ["demo", "--trials", "50", "--threads", "8", "--format", "json"])
        assert out1 == out8


class TestSignEquiv:
    def test_witness_payload(self, capsys, sharp_file):
        code, out = run(capsys, ["sign-equiv", sharp_file, "--format", "json"])
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["verdict"] == "sign_equivalent"
        assert payload["left"] == [1, -1]
        assert payload["right"] == [1, 1]

    def test_cycle_payload(self, capsys, hadamard_file):
        code, out = run(capsys, ["sign-equiv", hadamard_file, "--format", "json"])
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["verdict"] == "not_sign_equivalent"
        assert payload["cycle"] == [["r", 0], ["c", 0], ["r", 1], ["c", 1]]
        assert payload["phase_product"] == [-1.0, 0.0]

    def test_nonnegative_identity_witness(self, capsys, tmp_path):
        path = tmp_path / "nn.txt"
        path.write_text("1 2\n3 4\n")
        code, out = run(capsys, ["sign-equiv", str(path), "--format", "json"])
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["left"] == [1, 1] and payload["right"] == [1, 1]


class TestGrowth:
    def test_growing_with_level(self, capsys, sharp_file):
        code, out = run(
            capsys, ["growth", sharp_file, "--level", "0.5", "--format", "json"]
        )
        assert code == EXIT_OK
        payload = json.loads(out)
        assert payload["verdict"] == "growing"
        seq = payload["sequence"]
        assert all(b / a == pytest.approx(4.0, abs=1e-6) for a, b in zip(seq, seq[1:]))

    def test_bounded_with_level(self, capsys, sharp_file):
        code, out = run(
            capsys, ["growth", sharp_file, "--level", "2.5", "--format", "json"]
        )
        assert json.loads(out)["verdict"] == "bounded" and code == EXIT_OK

    def test_identity_bounded_with_eps(self, capsys, tmp_path):
        path = tmp_path / "eye.txt"
        path.write_text("1 0\n0 1\n")
        code, out = run(capsys, ["growth", str(path), "--eps", "0.1", "--format", "json"])
        assert json.loads(out)["verdict"] == "bounded" and code == EXIT_OK

    def test_missing_eps_exits_2(self, capsys, sharp_file):
        code, _ = run(capsys, ["growth", sharp_file])
        assert code == EXIT_INPUT_ERROR


class TestDemo:
    def test_all_fixtures_pass(self, capsys):
        code, out = run(capsys, ["demo", "--trials", "50"])
        assert code == EXIT_OK
        assert "overall = PASS" in out
        assert "FAIL" not in out

    def test_fixture_failure_exits_1(self, capsys, monkeypatch):
        import absnorm.cli as cli

        real = cli._demo_fixtures

        def sabotaged(cfg):
            fixtures = real(cfg)
            fixtures.append(("forced-failure", lambda: (False, "injected")))
            return fixtures

        monkeypatch.setattr(cli, "_demo_fixtures", sabotaged)
        code, out = run(capsys, ["demo", "--trials", "50"])
        assert code == EXIT_FIXTURE_FAILURE
        assert "[FAIL] forced-failure" in out
