"""JSON fan documents: {"dim", "rays", "max_cones", "name"} with 0-based indices."""

from __future__ import annotations

import json
import warnings

from .errors import MalformedFan, ParseError, ValidationError
from .fan import Fan, PrimitivizedRayWarning, make_fan, validate


def build_fan(dim, rays, max_cones, name=None) -> tuple[Fan, list[str]]:
    """Construct and validate a fan, collecting primitivization warnings."""
    for cone in max_cones:
        for i in cone:
            if not isinstance(i, int) or i < 0 or i >= len(rays):
                raise ParseError(
                    "cone index %r out of range (0..%d)" % (i, len(rays) - 1)
                )
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", PrimitivizedRayWarning)
            fan = make_fan(dim, rays, max_cones, name=name)
    except (ValueError, TypeError, MalformedFan) as exc:
        raise ParseError(str(exc)) from exc
    notes = [str(w.message) for w in caught if issubclass(w.category, PrimitivizedRayWarning)]
    diag = validate(fan)
    if not diag.valid:
        raise ValidationError("fan failed validation", diagnostics=list(diag.errors))
    return fan, notes


def parse_fan(text: str) -> Fan:
    fan, _ = parse_fan_with_warnings(text)
    return fan


def parse_fan_with_warnings(text: str) -> tuple[Fan, list[str]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON at line %d: %s" % (exc.lineno, exc.msg)) from exc
    if not isinstance(doc, dict):
        raise ParseError("fan document must be a JSON object")
    for field in ("dim", "rays", "max_cones"):
        if field not in doc:
            raise ParseError("missing field %r" % field)
    dim = doc["dim"]
    rays = doc["rays"]
    cones = doc["max_cones"]
    if not isinstance(dim, int):
        raise ParseError("field 'dim' must be an integer")
    if not isinstance(rays, list) or not all(
        isinstance(r, list) and all(isinstance(x, int) for x in r) for r in rays
    ):
        raise ParseError("field 'rays' must be a list of integer lists")
    if not isinstance(cones, list) or not all(
        isinstance(c, list) and all(isinstance(i, int) for i in c) for c in cones
    ):
        raise ParseError("field 'max_cones' must be a list of index lists")
    for c in cones:
        for i in c:
            if i < 0 or i >= len(rays):
                raise ParseError("cone index %d out of range (0..%d)" % (i, len(rays) - 1))
    return build_fan(dim, rays, cones, name=doc.get("name"))


def serialize_fan(fan: Fan) -> str:
    doc = {
        "dim": fan.dim,
        "rays": [list(r) for r in fan.rays],
        "max_cones": [list(c) for c in fan.max_cones],
        "name": fan.name,
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
