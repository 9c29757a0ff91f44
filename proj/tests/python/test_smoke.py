import json
import math
import os
from pathlib import Path

import pytest

import hvf

FIXTURES = Path(os.environ.get("HVF_FIXTURE_DIR", Path(__file__).resolve().parents[2] / "data" / "fixtures"))


def test_check_grushin():
    res = hvf.check(FIXTURES / "grushin.json")
    assert res.passed
    assert res.report["schema"] == hvf.SCHEMA_VERSION
    assert res.report["system"]["q"] == 3
    assert res.report["minimal_depth"] == 2


def test_check_generator_params_and_failure():
    res = hvf.check(FIXTURES / "grushin_k.json", params={"k": 3})
    assert res.report["system"]["q"] == 5
    assert res.report["minimal_depth"] == 4
    assert hvf.check(FIXTURES / "grushin_sigma13.json").exit_code == 2


def test_check_accepts_a_dict():
    res = hvf.check({"schema": 1, "generator": "chain", "params": {"n": 3}})
    assert res.passed
    assert res.report["system"]["q"] == 6


def test_verify_lift():
    assert hvf.verify_lift(FIXTURES / "grushin2_lift.json").passed
    bad = hvf.verify_lift(FIXTURES / "grushin_lift_bad_law.json")
    assert bad.exit_code == 2


def test_norm_matches_closed_form():
    res = hvf.norm(FIXTURES / "grushin.json", [1.0, 1.0])
    closed = math.sqrt(math.sqrt(5) + 1) / math.sqrt(2)
    assert abs(res.report["norm"] - closed) < 1e-12
    assert abs(hvf.homogeneous_norm([1.0, 1.0], [1, 2]) - closed) < 1e-12


def test_parse_errors_surface_as_value_errors():
    with pytest.raises(ValueError):
        hvf.check({"schema": 1, "generator": "spiral"})
    with pytest.raises(hvf.HvfError):
        hvf.homogeneous_norm([1.0], [1, 2])


def test_harness_is_deterministic():
    config = json.loads((FIXTURES / "harness_lift.json").read_text())
    a = hvf.harness(config, base_dir=FIXTURES)
    b = hvf.harness(config, base_dir=FIXTURES)
    assert a.passed
    assert a.report == b.report
    assert a.csv == b.csv
    assert a.report["config"]["quadrature"]["seed"] == config["quadrature"]["seed"]
