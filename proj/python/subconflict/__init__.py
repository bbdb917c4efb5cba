"""Python access to the conflict pipeline core."""

import json

from ._subconflict import (
    ConfigError,
    InputError,
    MissingArtifactError,
    change_count,
    classify_polarity,
    generate_jsonl,
    louvain,
    spearman,
)
from . import _subconflict as _core

__all__ = [
    "ConfigError",
    "InputError",
    "MissingArtifactError",
    "change_count",
    "classify_polarity",
    "default_config",
    "generate_jsonl",
    "louvain",
    "run",
    "spearman",
]


def default_config():
    return json.loads(_core.default_config())


def run(stage, config=None, **overrides):
    """Run one stage ("all" for everything). `config` is a dict shaped like default_config()."""
    cfg = dict(config or {})
    cfg.update(overrides)
    _core.run_stage(stage, json.dumps(cfg))
