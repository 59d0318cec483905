import json

import pytest

from divlab.config import CAP_ENV_VAR, DivLabConfig, load_config
from divlab.errors import ConfigError
from divlab.reference import load_curve_config, named_curves, parse_curve_config


def test_defaults_validate():
    cfg = DivLabConfig()
    assert cfg.validate()
    assert cfg.max_group_order == 64
    assert cfg.float_digits == 12


def test_shipped_config_matches_defaults():
    assert load_config(env={}) == DivLabConfig()


def test_json_overrides(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"max_modulus": 16, "log_level": "debug"}))
    cfg = load_config(path, env={})
    assert cfg.max_modulus == 16
    assert cfg.closure_cap == DivLabConfig().closure_cap


@pytest.mark.parametrize("payload", [
    {"no_such_key": 1},
    {"max_modulus": 0},
    {"sweep_workers": 1000},
    {"log_level": "LOUD"},
])
def test_bad_config_files(tmp_path, payload):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(payload))
    with pytest.raises(ConfigError):
        load_config(path, env={})


def test_invalid_json_and_missing_file(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(path, env={})
    with pytest.raises(ConfigError):
        load_config(tmp_path / "absent.json", env={})


def test_cap_environment_variable():
    cfg = load_config(env={CAP_ENV_VAR: "500"})
    assert cfg.closure_cap == 500
    assert cfg.cocycle_candidate_cap == 500
    assert cfg.thm22_cap == 500
    with pytest.raises(ConfigError):
        load_config(env={CAP_ENV_VAR: "lots"})


def test_with_cap():
    cfg = DivLabConfig()
    assert cfg.with_cap(None) is cfg
    assert cfg.with_cap(7).closure_cap == 7
    with pytest.raises(ConfigError):
        cfg.with_cap(0)


def test_named_curves(example_curve):
    curves = named_curves()
    assert curves["paper-sec6"].curve == example_curve
    assert curves["paper-sec6"].legendre is not None
    assert curves["torsion5-a"].legendre is None
    assert load_curve_config("paper-sec6").label == "paper-sec6"


def test_curve_config_files(tmp_path):
    path = tmp_path / "curve.json"
    path.write_text(json.dumps({"alpha": "9", "beta": "6", "gamma": "-15", "label": "E"}))
    cfg = load_curve_config(str(path))
    assert (cfg.curve.b, cfg.curve.c) == (-171, 810)
    assert cfg.legendre is not None


@pytest.mark.parametrize("data", [
    {"b": "1"},
    {"b": "1", "c": "1", "alpha": "1", "beta": "2", "gamma": "-3"},
    {"b": 1.5, "c": "1"},
    {"b": "x", "c": "1"},
    {"b": "0", "c": "0"},
    {"b": "1", "c": "1", "d": "2"},
    [1, 2],
])
def test_curve_config_rejects(data):
    with pytest.raises(ConfigError):
        parse_curve_config(data)


def test_unknown_curve_source():
    with pytest.raises(ConfigError):
        load_curve_config("no-such-curve-or-file")
