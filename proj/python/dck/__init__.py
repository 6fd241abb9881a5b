"""Discrete conformal structures: Python front end over the C++ core."""

import json
from dataclasses import dataclass
from typing import Any, Optional

from . import _dck
from ._dck import (
    DckError,
    curvature_jacobian,
    curvatures,
    edge_length,
    f_from_u,
    partial_length,
    triangle_angles,
    u_from_f,
)

__all__ = [
    "CommandResult",
    "DckError",
    "check_derivatives",
    "convert_uf",
    "curvature_jacobian",
    "curvatures",
    "edge_length",
    "f_from_u",
    "partial_length",
    "report",
    "triangle_angles",
    "u_from_f",
    "uniformize",
    "validate",
]


@dataclass
class CommandResult:
    exit_code: int
    body: Any
    surface: Optional[Any] = None

    @property
    def ok(self) -> bool:
        return self.exit_code == 0


def _wrap(raw) -> CommandResult:
    code, body, artifact = raw
    return CommandResult(code, json.loads(body), json.loads(artifact) if artifact is not None else None)


def validate(path: str) -> CommandResult:
    return _wrap(_dck.validate(str(path)))


def report(path: str, jacobian: bool = False) -> CommandResult:
    return _wrap(_dck.report(str(path), jacobian))


def check_derivatives(path: str, seed: int = 0) -> CommandResult:
    return _wrap(_dck.check_derivatives(str(path), seed))


def uniformize(path: str, target: Optional[str] = None, tolerance: Optional[float] = None,
               max_iterations: Optional[int] = None) -> CommandResult:
    return _wrap(_dck.uniformize(str(path), target, tolerance, max_iterations))


def convert_uf(path: str) -> CommandResult:
    return _wrap(_dck.convert_uf(str(path)))
