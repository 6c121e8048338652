"""Python bindings for the coldgen cold-plate channel generator.

Fields are numpy arrays shaped (ny, nx); row j = 0 is the inlet edge.
Configs are plain dicts in the same layout as the JSON config files.
"""

import json

from ._coldgen import (
    DomainError,
    Error,
    InstabilityError,
    IoError,
    NoSinkError,
    ParseError,
    ValidationError,
    __version__,
    gray_scott_step,
    solve_steady,
    threshold_mask,
)
from . import _coldgen

__all__ = [
    "DomainError",
    "Error",
    "InstabilityError",
    "IoError",
    "NoSinkError",
    "ParseError",
    "ValidationError",
    "__version__",
    "baseline",
    "compare",
    "default_config",
    "evaluate",
    "generate",
    "gray_scott_step",
    "solve_steady",
    "threshold_mask",
]


def _dump(config):
    return json.dumps(config or {})


def _result(raw):
    raw["report"] = json.loads(raw["report"])
    return raw


def default_config():
    """Full config dict with every default filled in."""
    return json.loads(_coldgen.default_config())


def baseline(config=None):
    """Parallel-channel baseline. Returns report, mask and temperature."""
    return _result(_coldgen.baseline(_dump(config)))


def generate(config=None, seed=None):
    """Run the thermally coupled generative loop. Adds the final V field."""
    config = dict(config or {})
    if seed is not None:
        config["loop"] = {**config.get("loop", {}), "seed": int(seed)}
    return _result(_coldgen.generate(_dump(config)))


def evaluate(mask, config=None, name="solve"):
    """Solve the steady temperature for a given 0/1 mask on the configured board."""
    return _result(_coldgen.evaluate(_dump(config), mask, name))


def compare(a, b):
    """Deltas a - b between two results from baseline/generate/evaluate."""
    ma, mb = a["report"]["metrics"], b["report"]["metrics"]
    return {
        "delta_max_c": ma["max_c"] - mb["max_c"],
        "delta_mean_c": ma["mean_c"] - mb["mean_c"],
    }
