"""Named objects over one ring, with the command log that produced them."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from .errors import RingMismatch, SemanticError
from .fpmod import FpModule
from .fuchs_salce import TreeTruncation, build_truncation
from .ideals import Ideal
from .parsing import (
    ideal_from_json,
    ideal_to_json,
    module_from_json,
    module_to_json,
    parse_ring,
)
from .rings import RingSpec
from .spectrum import GabrielTopologyFG, ThomasonSet

SCHEMA = 1

SessionObject = Union[FpModule, Ideal, GabrielTopologyFG, ThomasonSet, TreeTruncation]


def object_kind(obj) -> str:
    for kind, cls in (
        ("module", FpModule),
        ("ideal", Ideal),
        ("gabriel", GabrielTopologyFG),
        ("thomason", ThomasonSet),
        ("tree", TreeTruncation),
    ):
        if isinstance(obj, cls):
            return kind
    raise SemanticError(f"cannot store {type(obj).__name__} in a session")


def object_to_json(obj) -> dict:
    kind = object_kind(obj)
    if kind == "module":
        body = module_to_json(obj)
        del body["ring"]
    elif kind == "ideal":
        body = {"generators": ideal_to_json(obj)}
    elif kind == "tree":
        body = {"ideals": [ideal_to_json(I) for I in obj.ideals], "depth": obj.depth}
    else:
        body = {"basis": [ideal_to_json(I) for I in obj.basis]}
    return {"kind": kind, **body}


def object_from_json(data: dict, ring: RingSpec):
    kind = data.get("kind")
    if kind == "module":
        return module_from_json({"ring": str(ring), **{k: v for k, v in data.items() if k != "kind"}})
    if kind == "ideal":
        return ideal_from_json(data["generators"], ring)
    if kind == "tree":
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return build_truncation([ideal_from_json(g, ring) for g in data["ideals"]], data["depth"])
    if kind in ("gabriel", "thomason"):
        basis = tuple(ideal_from_json(g, ring) for g in data["basis"])
        return (GabrielTopologyFG if kind == "gabriel" else ThomasonSet)(ring, basis)
    raise SemanticError(f"unknown object kind {kind!r}")


@dataclass
class Session:
    ring: RingSpec | None = None
    objects: dict[str, SessionObject] = field(default_factory=dict)
    log: list[list[str]] = field(default_factory=list)

    def bind_ring(self, ring: RingSpec) -> None:
        if self.ring is None:
            self.ring = ring
        elif self.ring != ring:
            raise RingMismatch(f"session ring is {self.ring}, got {ring}")

    def store(self, name: str, obj: SessionObject) -> None:
        if not name or not name.replace("_", "").replace("-", "").isalnum():
            raise SemanticError(f"invalid object name {name!r}")
        object_kind(obj)
        self.bind_ring(obj.ring)
        self.objects[name] = obj

    def get(self, name: str) -> SessionObject:
        if name not in self.objects:
            raise SemanticError(f"no object named {name!r} in the session")
        return self.objects[name]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "ring": None if self.ring is None else str(self.ring),
            "objects": {k: object_to_json(v) for k, v in sorted(self.objects.items())},
            "log": [list(cmd) for cmd in self.log],
        }

    def dumps(self) -> str:
        return dump_json(self.to_json())

    @classmethod
    def from_json(cls, data: dict) -> "Session":
        if not isinstance(data, dict) or data.get("schema") != SCHEMA:
            raise SemanticError(f"not a schema {SCHEMA} session")
        ring = None if data.get("ring") is None else parse_ring(data["ring"])
        objects = {}
        for name, body in data.get("objects", {}).items():
            if ring is None:
                raise SemanticError("objects stored without a session ring")
            objects[name] = object_from_json(body, ring)
        log = [list(map(str, cmd)) for cmd in data.get("log", [])]
        return cls(ring, objects, log)

    @classmethod
    def load(cls, path: str | Path) -> "Session":
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise SemanticError(f"{path}: invalid JSON ({exc.msg})") from None
        return cls.from_json(data)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps())


def dump_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
