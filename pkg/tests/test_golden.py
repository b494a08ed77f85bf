import json

import pytest

from tnnspringer import golden
from tnnspringer.cli import atlas_document, flag_atlas_document
from tnnspringer.errors import ValidationError

ATLAS_FILES = {
    "atlas_A2_e.json": ("A", 2, (), ()),
    "atlas_A3_121.json": ("A", 3, (1, 2, 1), ()),
    "atlas_A3_121_x3.json": ("A", 3, (1, 2, 1), (3,)),
    "atlas_A3_13.json": ("A", 3, (1, 3), ()),
    "atlas_A3_13_x2.json": ("A", 3, (1, 3), (2,)),
    "atlas_A3_1.json": ("A", 3, (1,), ()),
    "atlas_A3_2.json": ("A", 3, (2,), ()),
    "atlas_A4_1213214.json": ("A", 4, (1, 2, 1, 3, 2, 1), ()),
}


def load(name):
    return golden.load_golden(golden.golden_path(name))


@pytest.mark.parametrize("name", sorted(ATLAS_FILES))
def test_regenerated_atlases_match(name):
    diff = golden.diff_against(load(name), atlas_document(*ATLAS_FILES[name]))
    assert diff.ok and diff.category == golden.REGRESSION


@pytest.mark.parametrize("name,args", [("flag_atlas_A2_H2_1.json", ("A", 2, (2,), (1,), ())),
                                       ("flag_atlas_A3_H13_2.json", ("A", 3, (1, 3), (2,), ()))])
def test_regenerated_flag_atlases_match(name, args):
    assert golden.diff_against(load(name), flag_atlas_document(*args)).ok


@pytest.mark.parametrize("name,y,x", [("list_a_A3.json", (1, 2, 1), ()),
                                      ("list_a_A3_zprime3.json", (1, 2, 1), (3,))])
def test_transcriptions_match_exactly(name, y, x):
    diff = golden.diff_against(load(name), atlas_document("A", 3, y, x))
    assert diff.ok and not diff.missing and not diff.extra and not diff.suspect


@pytest.mark.parametrize("name,x", [("list_b_A3.json", ()), ("list_b_A3_zprime2.json", (2,))])
def test_omitted_pair_is_flagged(name, x):
    diff = golden.diff_against(load(name), atlas_document("A", 3, (1, 3), x))
    assert diff.ok and diff.category == golden.TRANSCRIPTION_MISMATCH
    assert diff.missing == diff.suspect == [((1, 3), (1, 3))]


def test_printed_list_under_its_own_label_fails():
    diff = golden.diff_against(load("list_s1_A3.json"), atlas_document("A", 3, (1,), ()))
    assert not diff.ok and diff.category == golden.TRANSCRIPTION_MISMATCH
    assert diff.count_mismatches == ["dim 3: stated 2, computed 3"]
    # the printed pairs that are not cells here are all cells of the s2 piece
    s2 = golden.diff_against(load("list_s1_read_as_s2_A3.json"), atlas_document("A", 3, (2,), ()))
    assert diff.extra and not s2.extra


def test_printed_list_read_with_other_reflection():
    diff = golden.diff_against(load("list_s1_read_as_s2_A3.json"), atlas_document("A", 3, (2,), ()))
    assert diff.ok
    assert diff.suspect == [((2, 1, 3), (1, 2, 1, 3, 2))]


def test_equivalent_words_compare_equal():
    doc = {"kind": "transcription", "type": "A", "rank": 2, "z": [], "zprime": [],
           "pairs": [["212", "212"]]}
    diff = golden.diff_against(doc, atlas_document("A", 2, (), ()))
    assert ((1, 2, 1), (1, 2, 1)) not in diff.missing


def test_regression_detected():
    doc = load("atlas_A3_13.json")
    doc["cells"] = doc["cells"][1:]
    diff = golden.diff_against(doc, atlas_document("A", 3, (1, 3), ()))
    assert not diff.ok and diff.category == golden.REGRESSION and len(diff.missing) == 1


def test_context_mismatch_and_bad_files(tmp_path):
    with pytest.raises(ValidationError):
        golden.diff_against(load("atlas_A3_13.json"), atlas_document("A", 3, (1,), ()))
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "other"}))
    with pytest.raises(ValidationError):
        golden.load_golden(bad)
    bad.write_text("{")
    with pytest.raises(ValidationError):
        golden.load_golden(bad)
    doc = {"kind": "transcription", "type": "A", "rank": 2, "z": [], "zprime": [], "pairs": [["11", "1"]]}
    with pytest.raises(ValidationError):
        golden.diff_against(doc, atlas_document("A", 2, (), ()))
