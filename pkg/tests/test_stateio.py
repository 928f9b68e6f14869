import json

import numpy as np
import pytest

import statesep as ss
from statesep import stateio
from statesep.errors import MultiStateFileError, ParseError, SpectrumOutOfRangeError

from conftest import KET0, KET1, MIXED2, state_set


def write(path, doc):
    path.write_text(json.dumps(doc), encoding="utf-8")


def entry(re, im=0.0):
    return {"re": re, "im": im}


GOOD = {
    "dim": 2,
    "states": [
        {"label": "up", "matrix": [[entry(1.0), entry(0.0)], [entry(0.0), entry(0.0)]]},
        {"matrix": [[entry(0.5), entry(0.0)], [entry(0.0), entry(0.5)]]},
    ],
}


class TestParsing:
    def test_good_file(self, tmp_path):
        p = tmp_path / "s.json"
        write(p, GOOD)
        sset = stateio.load_state_set(str(p))
        assert sset.dim == 2 and len(sset) == 2
        assert sset.labels[0] == "up"
        np.testing.assert_array_equal(sset.states[0].matrix, KET0)

    def test_ragged_row_rejected(self, tmp_path):
        doc = {"dim": 2, "states": [{"matrix": [[entry(1.0), entry(0.0)], [entry(0.0)]]}]}
        p = tmp_path / "s.json"
        write(p, doc)
        with pytest.raises(ParseError, match="row 1"):
            stateio.load_state_set(str(p))

    def test_row_count_mismatch_rejected(self, tmp_path):
        doc = {"dim": 3, "states": [{"matrix": [[entry(1.0)] * 3] * 2}]}
        p = tmp_path / "s.json"
        write(p, doc)
        with pytest.raises(ParseError, match="rows"):
            stateio.load_state_set(str(p))

    def test_missing_im_rejected(self, tmp_path):
        doc = {"dim": 1, "states": [{"matrix": [[{"re": 1.0}]]}]}
        p = tmp_path / "s.json"
        write(p, doc)
        with pytest.raises(ParseError, match="im"):
            stateio.load_state_set(str(p))

    def test_non_numeric_rejected(self, tmp_path):
        doc = {"dim": 1, "states": [{"matrix": [[{"re": "x", "im": 0.0}]]}]}
        p = tmp_path / "s.json"
        write(p, doc)
        with pytest.raises(ParseError, match="number"):
            stateio.load_state_set(str(p))

    def test_bad_json_reports_position(self, tmp_path):
        p = tmp_path / "s.json"
        p.write_text('{"dim": 2,', encoding="utf-8")
        with pytest.raises(ParseError, match="line"):
            stateio.load_state_set(str(p))

    def test_bad_dim_rejected(self, tmp_path):
        p = tmp_path / "s.json"
        write(p, {"dim": 0, "states": []})
        with pytest.raises(ParseError, match="dim"):
            stateio.load_state_set(str(p))

    def test_invalid_state_names_index(self, tmp_path):
        doc = {
            "dim": 2,
            "states": [
                {"matrix": [[entry(0.5), entry(0.0)], [entry(0.0), entry(0.5)]]},
                {"matrix": [[entry(0.9), entry(0.0)], [entry(0.0), entry(0.0)]]},
            ],
        }
        p = tmp_path / "s.json"
        write(p, doc)
        with pytest.raises(ss.StatesepError, match="state 1"):
            stateio.load_state_set(str(p))

    def test_single_state_file(self, tmp_path):
        p = tmp_path / "s.json"
        write(p, GOOD)
        with pytest.raises(MultiStateFileError):
            stateio.load_single_state(str(p))

    def test_measurement_file(self, tmp_path):
        p = tmp_path / "t.json"
        write(p, {"dim": 2, "matrix": [[entry(1.0), entry(0.0)], [entry(0.0), entry(0.0)]]})
        t = stateio.load_measurement(str(p))
        np.testing.assert_array_equal(t.matrix, KET0)

    def test_measurement_validated(self, tmp_path):
        p = tmp_path / "t.json"
        write(p, {"dim": 2, "matrix": [[entry(1.2), entry(0.0)], [entry(0.0), entry(0.0)]]})
        with pytest.raises(SpectrumOutOfRangeError):
            stateio.load_measurement(str(p))


class TestRoundTrip:
    def test_state_set_bits_survive(self, tmp_path):
        rng_states = [ss.random_density(3, 3, seed) for seed in (5, 6, 7)]
        sset = ss.StateSet(dim=3, states=tuple(rng_states))
        p = tmp_path / "s.json"
        stateio.save_state_set(str(p), sset)
        back = stateio.load_state_set(str(p))
        for a, b in zip(sset.states, back.states):
            assert a.matrix.tobytes() == b.matrix.tobytes()

    def test_file_bytes_stable(self, tmp_path):
        sset = state_set(KET0, KET1, MIXED2)
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        stateio.save_state_set(str(p1), sset)
        stateio.save_state_set(str(p2), stateio.load_state_set(str(p1)))
        assert p1.read_bytes() == p2.read_bytes()

    def test_measurement_round_trip(self, tmp_path):
        t = ss.validate_povm_element(np.array([[0.3, 0.1j], [-0.1j, 0.6]]))
        p = tmp_path / "t.json"
        stateio.save_measurement(str(p), t)
        back = stateio.load_measurement(str(p))
        assert t.matrix.tobytes() == back.matrix.tobytes()

    def test_seventeen_digit_floats(self):
        for x in (1 / 3, 0.1, -2.5e-17, 123456.789, 5e-324):
            assert float(stateio.format_float(x)) == x

    def test_dumps_is_valid_json(self):
        doc = {"a": [1, 2.5, "x"], "b": {"re": 1 / 3, "im": -0.25}, "c": True, "d": None}
        parsed = json.loads(stateio.dumps(doc))
        assert parsed["b"]["re"] == 1 / 3
        assert parsed["c"] is True and parsed["d"] is None
