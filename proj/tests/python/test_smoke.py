import math
import os
import pathlib

import pytest

import rigspace

DATA = pathlib.Path(os.environ.get("RIGSPACE_TEST_DATA", pathlib.Path(__file__).parents[1] / "data"))


def test_text():
    assert rigspace.tokenize("X-ray (XRD) data.") == ["x", "ray", "xrd", "data"]
    assert rigspace.stem("running") == "run"


def test_hand_cell():
    c = rigspace.cell(2, 3, 3, 5)
    assert math.isclose(c["H"], 0.970951, abs_tol=1e-6)
    assert math.isclose(c["H_given_w"], 0.950978, abs_tol=1e-6)
    assert math.isclose(c["IG"], 0.019973, abs_tol=1e-6)
    assert math.isclose(c["RIG"], 0.020570, abs_tol=1e-6)
    with pytest.raises(ValueError):
        rigspace.cell(4, 3, 5, 10)


def test_analyse_and_rank():
    records = [
        {"id": "1", "text": "sound waves echo", "categories": ["Acoustics"]},
        {"id": "2", "text": "sound pressure", "categories": ["Acoustics"]},
        {"id": "3", "text": "ballet dance", "categories": ["Dance"]},
        {"id": "4", "text": "dance floor", "categories": ["Dance"]},
    ]
    a = rigspace.analyse(records, threshold=1)
    assert a.categories == ["Acoustics", "Dance"]
    assert a.documents == 4
    j = a.stems.index("sound")
    assert a.count(j, 0) == 2
    assert a.rig(j, 0) == 1.0
    top = a.rank("rig:Dance", 1)
    assert top == [("danc", 1.0)]
    assert len(a.thesaurus(3)) == 3
    with pytest.raises(ValueError):
        a.rank("rig:Nope")


def test_pipeline(tmp_path):
    result = rigspace.run_pipeline(DATA / "fixture.conf", tmp_path)
    assert "thesaurus.csv" in result["artifacts"]
    assert (tmp_path / "rig_matrix.csv").is_file()
    again = rigspace.run_pipeline(DATA / "fixture.conf", tmp_path)
    assert "clean" in again["reused"]
