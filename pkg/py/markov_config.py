import copy
import logging
from pathlib import Path
from ruamel.yaml import YAML
from ruamel.yaml.error import YAMLError

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent / "config" / "markov.yaml"

DEFAULTS = {
    "seed": 20180101,
    "trials": 1000,
    "generator": {
        "min_length": 1,
        "max_length": 5,
        "max_entry": 9,
        "placeholder_probability": 0.15,
        "max_segments": 6,
    },
    "bruteforce": {"tile_limit": 25},
    "tree": {"max_depth": 12},
    "sweep": {"max_q": 40, "max_i": 40, "max_sum": 12, "jobs": 0},
}


def merge(base, override):
    out = copy.deepcopy(base)
    for key, val in (override or {}).items():
        if isinstance(val, dict) and isinstance(out.get(key), dict):
            out[key] = merge(out[key], val)
        else:
            out[key] = val
    return out


def load_config(path=None):
    """Read a YAML config on top of the built-in defaults."""
    yaml_file = Path(path) if path is not None else DEFAULT_CONFIG_PATH
    yaml = YAML(typ="safe")
    try:
        with open(yaml_file, "r") as file:
            data = yaml.load(file)
    except YAMLError as e:
        raise ValueError(f"{yaml_file} is not valid YAML: {e}") from e
    except OSError as e:
        logging.warning(f"{yaml_file} could not be read, using defaults: {e}")
        return copy.deepcopy(DEFAULTS)
    if data is not None and not isinstance(data, dict):
        raise ValueError(f"{yaml_file} must contain a mapping at the top level")
    logging.debug(f"loaded config from {yaml_file}")
    return merge(DEFAULTS, data)
