import json
import subprocess
import sys

import numpy as np
import pytest

import statesep as ss
from statesep import cli, stateio

from conftest import KET0, KET1, MIXED2, PLUS, state_set


def run_cli(*argv):
    return cli.run(list(argv))


def write_set(path, *matrices):
    stateio.save_state_set(str(path), state_set(*matrices))
    return str(path)


@pytest.fixture
def files(tmp_path):
    return {
        "orth0": write_set(tmp_path / "orth0.json", KET0),
        "orth1": write_set(tmp_path / "orth1.json", KET1),
        "basis": write_set(tmp_path / "basis.json", KET0, KET1),
        "mixed": write_set(tmp_path / "mixed.json", MIXED2),
        "tmp": tmp_path,
    }


class TestValidate:
    def test_ok_pair(self, files, capsys):
        assert run_cli("validate", files["orth0"], files["orth1"]) == 0
        out = capsys.readouterr().out
        assert out.count(": ok") == 2

    def test_bad_trace_names_index(self, files, capsys):
        bad = files["tmp"] / "bad.json"
        doc = stateio.state_set_to_jsonable(state_set(KET0, MIXED2))
        doc["states"][1]["matrix"][0][0]["re"] = 0.4  # trace 0.9
        bad.write_text(stateio.dumps(doc), encoding="utf-8")
        assert run_cli("validate", str(bad), files["orth1"]) == 1
        out = capsys.readouterr().out
        assert "state 1" in out and "BadTrace" in out

    def test_dim_mismatch(self, files, capsys, tmp_path):
        three = tmp_path / "three.json"
        stateio.save_state_set(
            str(three), ss.StateSet(dim=3, states=(ss.random_density(3, 3, 1),))
        )
        assert run_cli("validate", files["orth0"], str(three)) == 1
        assert "dimension mismatch" in capsys.readouterr().out

    def test_parse_error_exit_1(self, files, capsys, tmp_path):
        broken = tmp_path / "broken.json"
        broken.write_text("{", encoding="utf-8")
        assert run_cli("validate", str(broken), files["orth1"]) == 1
        assert "error:" in capsys.readouterr().err


class TestSolve:
    def test_orthogonal_converges(self, files, capsys):
        assert run_cli("solve", files["orth0"], files["orth1"]) == 0
        out = capsys.readouterr().out
        assert "converged: yes" in out

    def test_degenerate_instance(self, files, capsys):
        assert run_cli("solve", files["basis"], files["mixed"], "--json") == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["result"]["upper_bound"] <= 1e-4
        np.testing.assert_allclose(doc["result"]["mu0"], [0.5, 0.5], atol=1e-9)

    def test_round_cap_exit_2(self, files, capsys, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        assert run_cli("random", "--dim", "2", "--count", "3", "--seed", "35", "--out", str(a)) == 0
        assert run_cli("random", "--dim", "2", "--count", "4", "--seed", "36", "--out", str(b)) == 0
        assert run_cli("solve", str(a), str(b), "--rounds", "10", "--gap", "1e-9") == 2
        assert "converged: no" in capsys.readouterr().out

    def test_writes_measurement(self, files, capsys, tmp_path):
        out = tmp_path / "T.json"
        assert run_cli("solve", files["orth0"], files["orth1"], "--out", str(out)) == 0
        t = stateio.load_measurement(str(out))
        np.testing.assert_allclose(t.matrix, np.diag([1.0, 0.0]), atol=1e-9)

    def test_json_deterministic(self, files, capsys):
        run_cli("solve", files["basis"], files["mixed"], "--json")
        first = capsys.readouterr().out
        run_cli("solve", files["basis"], files["mixed"], "--json")
        second = capsys.readouterr().out
        assert first == second

    def test_explicit_eta(self, files, capsys):
        assert run_cli("solve", files["orth0"], files["orth1"], "--eta", "0.1") == 0


class TestDistance:
    def test_singletons_default_uniform(self, files, capsys):
        assert run_cli("distance", files["orth0"], files["orth1"]) == 0
        assert "trace distance: 1" in capsys.readouterr().out

    def test_degenerate_uniform(self, files, capsys):
        assert run_cli("distance", files["basis"], files["mixed"], "--json") == 0
        doc = json.loads(capsys.readouterr().out)
        assert abs(doc["result"]["distance"]) <= 1e-12

    def test_point_mass_flag(self, files, capsys):
        assert run_cli("distance", files["basis"], files["mixed"], "--mu0", "1,0", "--json") == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["result"]["distance"] == pytest.approx(0.5, abs=1e-12)

    def test_bad_weights_exit_1(self, files, capsys):
        assert run_cli("distance", files["basis"], files["mixed"], "--mu0", "0.9,0.9") == 1
        assert "error:" in capsys.readouterr().err

    def test_wrong_length_exit_1(self, files, capsys):
        assert run_cli("distance", files["basis"], files["mixed"], "--mu0", "1") == 1
        assert "error:" in capsys.readouterr().err


class TestHelstrom:
    def test_orthogonal_pair(self, files, capsys, tmp_path):
        out = tmp_path / "T.json"
        assert run_cli("helstrom", files["orth0"], files["orth1"], "--out", str(out)) == 0
        assert "achieved gap: 1" in capsys.readouterr().out
        t = stateio.load_measurement(str(out))
        np.testing.assert_allclose(t.matrix, np.diag([1.0, 0.0]), atol=1e-12)

    def test_identical_states(self, files, capsys):
        assert run_cli("helstrom", files["mixed"], files["mixed"], "--json") == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["result"]["gap"] == 0.0

    def test_multi_state_file_rejected(self, files, capsys):
        assert run_cli("helstrom", files["basis"], files["orth1"]) == 1
        assert "error:" in capsys.readouterr().err


class TestCertify:
    def test_half_identity_certifies(self, files, capsys, tmp_path):
        t_path = tmp_path / "T.json"
        stateio.save_measurement(str(t_path), ss.PovmElement(np.eye(2) / 2.0))
        code = run_cli("certify", files["basis"], files["mixed"], str(t_path), "--trials", "50")
        assert code == 0
        assert "certified" in capsys.readouterr().out

    def test_pipeline_solve_then_certify(self, files, capsys, tmp_path):
        t_path = tmp_path / "T.json"
        run_cli("solve", files["orth0"], files["orth1"], "--out", str(t_path), "--quiet")
        capsys.readouterr()
        code = run_cli(
            "certify", files["orth0"], files["orth1"], str(t_path),
            "--trials", "100", "--seed", "4", "--json",
        )
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["result"]["max_violation"] <= 1e-9
        assert doc["result"]["certified"] is True

    def test_invalid_measurement_rejected_before_sampling(self, files, capsys, tmp_path):
        t_path = tmp_path / "T.json"
        doc = {"dim": 2, "matrix": [[{"re": 1.2, "im": 0.0}, {"re": 0.0, "im": 0.0}],
                                    [{"re": 0.0, "im": 0.0}, {"re": 0.0, "im": 0.0}]]}
        t_path.write_text(stateio.dumps(doc), encoding="utf-8")
        assert run_cli("certify", files["basis"], files["mixed"], str(t_path)) == 1
        assert "error:" in capsys.readouterr().err


class TestRandom:
    def test_reproducible_bytes(self, tmp_path, capsys):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        run_cli("random", "--dim", "2", "--count", "3", "--seed", "7", "--out", str(a))
        run_cli("random", "--dim", "2", "--count", "3", "--seed", "7", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_output_validates(self, tmp_path, capsys):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        run_cli("random", "--dim", "3", "--count", "2", "--seed", "1", "--out", str(a))
        run_cli("random", "--dim", "3", "--count", "2", "--seed", "2", "--out", str(b))
        capsys.readouterr()
        assert run_cli("validate", str(a), str(b)) == 0

    def test_rank_one_states_are_pure(self, tmp_path, capsys):
        a = tmp_path / "a.json"
        run_cli("random", "--dim", "3", "--count", "2", "--rank", "1", "--seed", "5",
                "--out", str(a))
        sset = stateio.load_state_set(str(a))
        for rho in sset.states:
            lam = ss.hermitian_eig(rho.matrix).eigenvalues
            assert lam[-1] == pytest.approx(1.0, abs=1e-9)

    def test_bad_rank_exit_1(self, tmp_path, capsys):
        code = run_cli("random", "--dim", "2", "--count", "1", "--rank", "5", "--seed", "0",
                       "--out", str(tmp_path / "x.json"))
        assert code == 1


class TestJsonAndQuiet:
    def test_quiet_suppresses_summary(self, files, capsys):
        assert run_cli("distance", files["orth0"], files["orth1"], "--quiet") == 0
        assert capsys.readouterr().out == ""

    def test_json_is_single_document(self, files, capsys):
        run_cli("helstrom", files["orth0"], files["orth1"], "--json")
        doc = json.loads(capsys.readouterr().out)
        assert doc["command"] == "helstrom"
        assert doc["result"]["measurement"]["dim"] == 2


class TestRunRecord:
    def test_round_trip(self):
        record = cli.RunRecord(
            command="distance", inputs={"set0": "a"}, result={"distance": 0.5},
            wall_time_ms=12,
        )
        doc = json.loads(stateio.dumps(record.to_jsonable()))
        back = cli.RunRecord.from_jsonable(doc)
        assert back == record


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "statesep.cli", "--help"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "validate" in proc.stdout and "solve" in proc.stdout
