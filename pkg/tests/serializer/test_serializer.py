import io
import json

import pytest
from pydantic import ValidationError

from agdndetect.experiments import DetectorKind, ExperimentConfig
from agdndetect.models.dto import SweepRow
from agdndetect.schemas.noise import NoiseModel
from agdndetect.schemas.scenarios import BlockSwitchPolicy, TwoPointSwitchPolicy
from agdndetect.serializer import (
    TOOL_NAME,
    build_manifest,
    config_hash,
    deserialize,
    format_float,
    serialize,
    write_csv,
    write_json,
)
from agdndetect.utils.errors import ConfigError


def _rows() -> list[SweepRow]:
    return [
        SweepRow(snr_db=0.0, pe_upper_theory=0.2, pe_lower_theory=0.1, pe_awgn_theory=0.15),
        SweepRow(
            snr_db=2.0,
            pe_upper_theory=0.1,
            pe_lower_theory=0.05,
            pe_awgn_theory=0.07,
            pe_empirical=0.08,
            ci_half_width=0.01,
            trials=1000,
        ),
    ]


def test_serialize() -> None:
    noise = NoiseModel.build(-0.1, 0.1, 1.0, 2.0)
    assert serialize(noise) == {"mean": {"lo": -0.1, "hi": 0.1}, "sigma": {"sigma_lo": 1.0, "sigma_hi": 2.0}}
    assert serialize([noise, "x"])[1] == "x"
    assert serialize("string") == "string"


def test_deserialize() -> None:
    cfg = deserialize("experiment", {"detector": "min_distance", "snr_db": [0, 5]})
    assert isinstance(cfg, ExperimentConfig)
    assert cfg.detector is DetectorKind.MIN_DISTANCE

    policy = deserialize("scenario", {"type": "two_point_switch", "p": 0.25})
    assert policy == TwoPointSwitchPolicy(p=0.25)

    noise = deserialize("noise", {"sigma": {"sigma_lo": 1.0, "sigma_hi": 1.5}})
    assert noise.mean.is_degenerate


def test_deserialize_errors() -> None:
    with pytest.raises(ConfigError):
        deserialize("unknown", {})  # type: ignore[call-overload]
    with pytest.raises(ValidationError):
        deserialize("scenario", {"type": "no_such_policy"})


def test_format_float() -> None:
    assert format_float(0.1) == "0.10000000000000001"
    assert float(format_float(1 / 3)) == 1 / 3
    assert float(format_float(1e-300)) == 1e-300
    assert format_float(None) == ""
    assert format_float(2) == "2"


def test_config_hash_ignores_threads() -> None:
    a = ExperimentConfig(threads=1, seed=3)
    b = ExperimentConfig(threads=8, seed=3)
    c = ExperimentConfig(threads=1, seed=4)
    assert config_hash(a) == config_hash(b)
    assert config_hash(a) != config_hash(c)
    assert config_hash({"x": 1.0, "threads": 2}) == config_hash({"x": 1.0})
    assert len(config_hash(None)) == 64


def test_config_hash_is_key_order_independent() -> None:
    assert config_hash({"a": 1, "b": 2}) == config_hash({"b": 2, "a": 1})


def test_build_manifest() -> None:
    cfg = ExperimentConfig(policy=BlockSwitchPolicy(), seed=11)
    manifest = build_manifest("curves", cfg.seed, cfg)
    assert list(manifest) == ["tool", "version", "command", "seed", "config_hash"]
    assert manifest["tool"] == TOOL_NAME
    assert manifest["command"] == "curves"
    assert manifest["seed"] == 11
    assert manifest["config_hash"] == config_hash(cfg)


def test_write_csv() -> None:
    stream = io.StringIO()
    manifest = build_manifest("curves", 0, None)
    write_csv(_rows(), SweepRow.columns(), manifest, stream)
    lines = stream.getvalue().split("\n")

    assert lines[0].startswith("# manifest: ")
    assert json.loads(lines[0].removeprefix("# manifest: ")) == manifest
    assert lines[1] == ",".join(SweepRow.columns())
    assert lines[2] == "0,0.20000000000000001,0.10000000000000001,0.14999999999999999,,,0"
    assert lines[3].endswith(",0.080000000000000002,0.01,1000")
    assert lines[4] == ""


def test_write_csv_plain_rows() -> None:
    stream = io.StringIO()
    write_csv([[1, True, None, DetectorKind.OPTIMAL]], ["a", "b", "c", "d"], {}, stream)
    assert stream.getvalue().split("\n")[2] == "1,true,,optimal"


def test_write_csv_rejects_ragged_rows() -> None:
    with pytest.raises(ConfigError):
        write_csv([[1.0, 2.0]], ["only"], {}, io.StringIO())


def test_write_json() -> None:
    stream = io.StringIO()
    manifest = build_manifest("curves", 5, None)
    write_json(_rows(), manifest, stream)
    text = stream.getvalue()
    assert text.endswith("}\n")
    doc = json.loads(text)
    assert doc["manifest"] == manifest
    assert len(doc["rows"]) == 2
    assert doc["rows"][0]["pe_empirical"] is None
    assert doc["rows"][1]["trials"] == 1000
