import copy
from pathlib import Path
from typing import Optional

import yaml

DEFAULTS: dict = {
    "paths": {"log_file": "outputs/logs/toric_cohom.log"},
    "logging": {"level": "INFO"},
    "algorithm": {"usr_cap": 1 << 20, "dual_filter": True},
    "oracle": {"box_lo_offset": 2, "box_hi_offset": 1, "max_points": 5_000_000},
    "output": {"indent": 2},
}


def load_config(path: Optional[str] = None) -> dict:
    """Built-in defaults overlaid with the YAML file at ``path`` (if given)."""
    cfg = copy.deepcopy(DEFAULTS)
    if path is None:
        return cfg
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"Config not found: {path}")
    with open(p, "r", encoding="utf-8") as f:
        loaded = yaml.safe_load(f) or {}
    if not isinstance(loaded, dict):
        raise ValueError(f"Config {path} must be a YAML mapping")
    return deep_update(cfg, loaded)


def deep_update(d: dict, u: dict) -> dict:
    for k, v in u.items():
        if isinstance(v, dict):
            d[k] = deep_update(d.get(k, {}), v)
        else:
            d[k] = v
    return d
