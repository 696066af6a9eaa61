"""Instance and solution documents (JSON).

Instance files look like::

    {
      "schema_version": "1",
      "mode": "full",
      "points": [
        {"x": 1, "y": 2, "addend": 2, "max_distance": 7},
        ...
      ],
      "strip": {"left": 4, "right": 8}
    }

Unknown keys are rejected everywhere.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import Infeasible, ParseError, ValidationError
from .location import MODES, LocationInstance, LocationSolution

SCHEMA_VERSION = "1"

_TOP_KEYS = {"schema_version", "points", "strip", "mode"}
_POINT_KEYS = {"x", "y", "addend", "max_distance"}
_STRIP_KEYS = {"left", "right"}


@dataclass(frozen=True)
class PointRecord:
    x: float
    y: float
    addend: float
    max_distance: Optional[float] = None


@dataclass(frozen=True)
class InstanceDocument:
    points: tuple
    mode: str
    strip: Optional[tuple] = None
    schema_version: str = SCHEMA_VERSION

    def to_instance(self) -> LocationInstance:
        bounds = [p.max_distance for p in self.points]
        return LocationInstance(
            points=tuple((p.x, p.y) for p in self.points),
            addends=tuple(p.addend for p in self.points),
            distance_bounds=None if any(b is None for b in bounds) else tuple(bounds),
            strip=self.strip,
            mode=self.mode,
        )

    @classmethod
    def from_instance(cls, inst: LocationInstance) -> "InstanceDocument":
        bounds = inst.distance_bounds or (None,) * inst.m
        return cls(
            points=tuple(
                PointRecord(r[0], r[1], w, d) for r, w, d in zip(inst.points, inst.addends, bounds)
            ),
            mode=inst.mode,
            strip=inst.strip,
        )


def _reject_constant(name):
    raise ValueError(f"non-finite number {name} is not allowed")


def _number(value, field):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"expected a number, got {json.dumps(value)}", field)
    if not math.isfinite(value):
        raise ValidationError("number must be finite", field)
    return float(value)


def _check_keys(obj, allowed, field):
    if not isinstance(obj, dict):
        raise ValidationError(f"expected an object, got {type(obj).__name__}", field)
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ValidationError(f"unknown field(s) {', '.join(unknown)}", field)


def parse_instance(text: str) -> InstanceDocument:
    """Parse and validate an instance document.

    Raises:
        ParseError: the text is not valid JSON (message carries line/column).
        ValidationError: the JSON breaks the schema (message carries the field).
    """
    try:
        raw = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    except ValueError as exc:
        raise ParseError(str(exc)) from exc

    _check_keys(raw, _TOP_KEYS, "document")
    for key in ("schema_version", "points", "mode"):
        if key not in raw:
            raise ValidationError("required field missing", key)
    if raw["schema_version"] != SCHEMA_VERSION:
        raise ValidationError(
            f"unsupported version {json.dumps(raw['schema_version'])}; expected \"{SCHEMA_VERSION}\"",
            "schema_version",
        )
    mode = raw["mode"]
    if mode not in MODES:
        raise ValidationError(f"must be one of {', '.join(MODES)}", "mode")

    pts = raw["points"]
    if not isinstance(pts, list) or not pts:
        raise ValidationError("expected a non-empty list", "points")
    records = []
    for j, rec in enumerate(pts):
        where = f"points[{j}]"
        _check_keys(rec, _POINT_KEYS, where)
        for key in ("x", "y", "addend"):
            if key not in rec:
                raise ValidationError("required field missing", f"{where}.{key}")
        dist = rec.get("max_distance")
        if dist is not None:
            dist = _number(dist, f"{where}.max_distance")
            if dist < 0:
                raise ValidationError(f"must be >= 0, got {dist:g}", f"{where}.max_distance")
        records.append(
            PointRecord(
                _number(rec["x"], f"{where}.x"),
                _number(rec["y"], f"{where}.y"),
                _number(rec["addend"], f"{where}.addend"),
                dist,
            )
        )

    strip = raw.get("strip")
    if strip is not None:
        _check_keys(strip, _STRIP_KEYS, "strip")
        for key in ("left", "right"):
            if key not in strip:
                raise ValidationError("required field missing", f"strip.{key}")
        strip = (_number(strip["left"], "strip.left"), _number(strip["right"], "strip.right"))
        if strip[0] > strip[1]:
            raise ValidationError(f"left {strip[0]:g} exceeds right {strip[1]:g}", "strip")

    if mode in ("full", "distance"):
        for j, rec in enumerate(records):
            if rec.max_distance is None:
                raise ValidationError(f"mode {mode} requires max_distance", f"points[{j}]")
    if mode in ("full", "boundary") and strip is None:
        raise ValidationError(f"mode {mode} requires a strip", "strip")

    return InstanceDocument(points=tuple(records), mode=mode, strip=strip)


def load_instance(path) -> InstanceDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def serialize_instance(doc: InstanceDocument) -> str:
    points = []
    for p in doc.points:
        rec = {"x": p.x, "y": p.y, "addend": p.addend}
        if p.max_distance is not None:
            rec["max_distance"] = p.max_distance
        points.append(rec)
    out = {"schema_version": doc.schema_version, "mode": doc.mode, "points": points}
    if doc.strip is not None:
        out["strip"] = {"left": doc.strip[0], "right": doc.strip[1]}
    return json.dumps(out, indent=2) + "\n"


# -- solutions -----------------------------------------------------------------

def _finite_or_none(v):
    return v if math.isfinite(v) else None


def solution_document(sol: LocationSolution) -> dict:
    return {
        "feasible": True,
        "mode": sol.mode,
        "theta": sol.theta,
        "endpoints": [list(p) for p in sol.endpoints],
        "polyline": [list(p) for p in sol.polyline],
        "alpha_breakpoints": list(sol.alpha_breakpoints),
        "derived_scalars": {k: _finite_or_none(v) for k, v in sol.scalars.as_dict().items()},
        "diagnostics": None,
    }


def infeasible_document(inst: LocationInstance, err: Infeasible, scalars) -> dict:
    return {
        "feasible": False,
        "mode": inst.mode,
        "theta": None,
        "endpoints": [],
        "polyline": [],
        "alpha_breakpoints": [],
        "derived_scalars": {k: _finite_or_none(v) for k, v in scalars.as_dict().items()},
        "diagnostics": {"term_index": err.term_index, "term": err.term, "value": err.value},
    }


class ClaimedSolution(NamedTuple):
    """Theta and polyline read back from a solution document."""

    theta: float
    polyline: tuple


def parse_solution(text: str) -> ClaimedSolution:
    try:
        raw = json.loads(text, parse_constant=_reject_constant)
    except (json.JSONDecodeError, ValueError) as exc:
        raise ParseError(f"solution document: {exc}") from exc
    if not isinstance(raw, dict):
        raise ValidationError("expected an object", "solution")
    if not raw.get("feasible", False):
        raise ValidationError("solution document marks the instance infeasible", "feasible")
    theta = _number(raw.get("theta"), "theta")
    poly = raw.get("polyline")
    if not isinstance(poly, list) or not poly:
        raise ValidationError("expected a non-empty list of points", "polyline")
    pts = []
    for k, p in enumerate(poly):
        if not isinstance(p, list) or len(p) != 2:
            raise ValidationError("expected [x1, x2]", f"polyline[{k}]")
        pts.append((_number(p[0], f"polyline[{k}][0]"), _number(p[1], f"polyline[{k}][1]")))
    return ClaimedSolution(theta, tuple(pts))


def parse_cameras(text: str) -> list:
    """Rows of ``x y height`` (whitespace or comma separated, ``#`` comments)."""
    cams = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 3 values (x y height), got {len(parts)}")
        try:
            x, y, hgt = (float(v) for v in parts)
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
        if not all(math.isfinite(v) for v in (x, y, hgt)):
            raise ParseError(f"line {lineno}: values must be finite")
        cams.append((x, y, hgt))
    if not cams:
        raise ParseError("no cameras listed")
    return cams


__all__ = [
    "ClaimedSolution",
    "InstanceDocument",
    "PointRecord",
    "infeasible_document",
    "load_instance",
    "parse_cameras",
    "parse_instance",
    "parse_solution",
    "serialize_instance",
    "solution_document",
]
