"""Search bounds read from a ``key = value`` file.

The file is taken from ``--config`` if given, else from ``$TILTLAB_CONFIG``.
Blank lines and ``#`` comments are ignored; unknown keys are errors.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .errors import ParseError, SemanticError
from .factorization import DEFAULT_TRIAL_BOUND
from .fuchs_salce import DEFAULT_TREE_LIMIT
from .localization import DEFAULT_STAGE_BOUND
from .spectrum import DEFAULT_ORACLE_BOUND

CONFIG_ENV = "TILTLAB_CONFIG"


@dataclass(frozen=True)
class Config:
    trial_bound: int = DEFAULT_TRIAL_BOUND
    product_search_bound: int = DEFAULT_ORACLE_BOUND
    tree_size_limit: int = DEFAULT_TREE_LIMIT
    localization_stage_bound: int = DEFAULT_STAGE_BOUND

    def to_json(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def parse_config(text: str) -> Config:
    known = {f.name for f in fields(Config)}
    values = {}
    offset = 0
    for line in text.splitlines(keepends=True):
        body = line.split("#", 1)[0]
        if body.strip():
            if "=" not in body:
                raise ParseError("expected 'key = value'", text, offset)
            key, _, value = body.partition("=")
            key = key.strip().replace("-", "_")
            if key not in known:
                raise SemanticError(f"unknown config key {key!r}")
            try:
                n = int(value.strip())
            except ValueError:
                raise ParseError(f"{key} needs an integer", text, offset + body.index("=") + 1) from None
            if n < 0:
                raise SemanticError(f"{key} must be nonnegative")
            values[key] = n
        offset += len(line)
    return replace(Config(), **values)


def load_config(path: str | None = None) -> Config:
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return Config()
    return parse_config(Path(path).read_text())
