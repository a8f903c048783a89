"""Parameter file parsing, defaults, rejection of unknown keys."""

import pytest

from portcall.classifier import ModelParams
from portcall.params import (
    KNOWN_KEYS,
    ParamsError,
    ParamsFile,
    format_params,
    load_params,
    parse_params,
    save_params,
)


def test_empty_text_gives_defaults():
    pf = parse_params("")
    assert pf.params == ModelParams()
    assert pf.leaf_size == 32


def test_full_round_trip(tmp_path):
    pf = parse_params("\n".join([
        "magnitude.x = 0.5",
        "magnitude.y = 0.25",
        "magnitude.z = 1.0",
        "magnitude.bearing_sin = 0.125",
        "magnitude.bearing_cos = 0.0625",
        "penalty.course = 2.5",
        "penalty.heading = 0.0",
        "penalty.speed = 9.5",
        "penalty.dist_from_departure = 3.25",
        "norm.speed_knots = 40.0",
        "norm.dist_km = 120.0",
        "leaf_size = 16",
        "smoothing.enabled = false",
    ]))
    assert pf.params.weights.m_x == 0.5
    assert pf.params.p_dist == 3.25
    assert pf.params.norm_dist_km == 120.0
    assert pf.leaf_size == 16
    assert pf.params.smoothing_enabled is False

    path = tmp_path / "p.txt"
    save_params(str(path), pf)
    assert load_params(str(path)) == pf


def test_partial_file_keeps_other_defaults():
    pf = parse_params("penalty.speed = 4.0\n")
    assert pf.params.p_speed == 4.0
    assert pf.params.p_course == ModelParams().p_course
    assert pf.params.weights == ModelParams().weights


def test_comments_and_blank_lines():
    pf = parse_params("# tuned 2018-04-02\n\nleaf_size = 8  # small tree\n")
    assert pf.leaf_size == 8


def test_unknown_key_rejected():
    with pytest.raises(ParamsError, match="unknown key"):
        parse_params("magnitude.w = 0.5\n")


def test_bad_value_rejected():
    with pytest.raises(ParamsError, match="line 1"):
        parse_params("penalty.course = fast\n")
    with pytest.raises(ParamsError):
        parse_params("leaf_size = 0\n")
    with pytest.raises(ParamsError):
        parse_params("smoothing.enabled = maybe\n")


def test_duplicate_key_rejected():
    with pytest.raises(ParamsError, match="duplicate"):
        parse_params("leaf_size = 8\nleaf_size = 16\n")


def test_missing_equals_rejected():
    with pytest.raises(ParamsError, match="expected key = value"):
        parse_params("leaf_size 8\n")


def test_out_of_range_magnitude_rejected():
    with pytest.raises(ParamsError):
        parse_params("magnitude.x = 1.5\n")


def test_format_lists_every_known_key():
    text = format_params(ParamsFile(params=ModelParams()))
    present = {line.split("=")[0].strip() for line in text.strip().split("\n")}
    assert present == set(KNOWN_KEYS)
