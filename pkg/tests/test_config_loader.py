from pathlib import Path

import pytest

from toric_cohom.core.config_loader import DEFAULTS, deep_update, load_config


def test_defaults_are_copied() -> None:
    cfg = load_config()
    cfg["algorithm"]["usr_cap"] = 1
    assert DEFAULTS["algorithm"]["usr_cap"] == 1 << 20
    assert load_config()["oracle"]["box_lo_offset"] == 2


def test_yaml_overrides_defaults(tmp_path) -> None:
    path = tmp_path / "cfg.yaml"
    path.write_text("algorithm:\n  dual_filter: false\noutput:\n  indent: 4\n", encoding="utf-8")
    cfg = load_config(str(path))
    assert cfg["algorithm"]["dual_filter"] is False
    assert cfg["algorithm"]["usr_cap"] == 1 << 20
    assert cfg["output"]["indent"] == 4


def test_shipped_config_matches_defaults() -> None:
    assert load_config(str(Path(__file__).resolve().parent.parent / "configs" / "default.yaml")) == DEFAULTS


def test_missing_config(tmp_path) -> None:
    with pytest.raises(FileNotFoundError):
        load_config(str(tmp_path / "missing.yaml"))


def test_config_must_be_mapping(tmp_path) -> None:
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n", encoding="utf-8")
    with pytest.raises(ValueError):
        load_config(str(path))


def test_deep_update_nested() -> None:
    d = {"a": {"b": 1, "c": 2}, "x": 1}
    assert deep_update(d, {"a": {"c": 3}, "y": {"z": 0}}) == {"a": {"b": 1, "c": 3}, "x": 1, "y": {"z": 0}}
