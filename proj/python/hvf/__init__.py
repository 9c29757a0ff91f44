"""Checks for homogeneous Hormander vector field systems and their Carnot lifts.

Every command takes either a path to a JSON spec or an already-decoded dict,
and returns a ``Result`` whose ``report`` is the decoded JSON report.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, Mapping, NamedTuple, Sequence

from . import _hvf
from ._hvf import SCHEMA_VERSION, HvfError, ParseError, homogeneous_norm

__all__ = [
    "SCHEMA_VERSION",
    "HvfError",
    "ParseError",
    "Result",
    "check",
    "verify_lift",
    "norm",
    "harness",
    "homogeneous_norm",
]

Spec = Any  # path to a JSON file or a decoded dict


class Result(NamedTuple):
    report: dict
    exit_code: int
    csv: str = ""

    @property
    def passed(self) -> bool:
        return self.exit_code == 0


def _load(spec, base_dir) -> tuple[str, str]:
    # paths are read here so relative references resolve against the file's directory
    if isinstance(spec, (str, os.PathLike)):
        path = Path(spec)
        return path.read_text(), str(path.resolve().parent)
    return json.dumps(spec), str(base_dir or Path.cwd())


def _result(raw) -> Result:
    text, code, csv = raw
    return Result(json.loads(text), code, csv)


def check(system: Spec, *, max_depth: int | None = None, params: Mapping[str, int] | None = None,
          base_dir=None) -> Result:
    text, base = _load(system, base_dir)
    return _result(_hvf.check(text, base, max_depth, dict(params or {})))


def verify_lift(lift: Spec, *, base_dir=None) -> Result:
    text, base = _load(lift, base_dir)
    return _result(_hvf.verify_lift(text, base))


def norm(system: Spec, point: Sequence[float], *, base_dir=None) -> Result:
    text, base = _load(system, base_dir)
    return _result(_hvf.norm(text, [float(v) for v in point], base))


def harness(config: Spec, *, resolution: int | None = None, seed: int | None = None, base_dir=None) -> Result:
    text, base = _load(config, base_dir)
    return _result(_hvf.harness(text, base, resolution, seed))
