"""Fans: validation, walls, primitive collections/relations, star subdivision.

A fan is given by primitive ray generators and maximal cones as index sets.
Only complete simplicial fans are supported by the downstream geometry.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .errors import (
    InvalidContraction,
    MalformedFan,
    NotDivisorial,
    OutsideSupport,
    RayExists,
)
from .exactlin import (
    clear_denominators,
    det,
    primitivize,
    rank,
    rational_solve,
)


class PrimitivizedRayWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Fan:
    dim: int
    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[tuple[int, ...], ...]
    name: Optional[str] = None

    @property
    def r(self) -> int:
        return len(self.rays)

    @property
    def s(self) -> int:
        return len(self.max_cones)


def make_fan(dim, rays, max_cones, name=None) -> Fan:
    prim = []
    for ray in rays:
        p = primitivize(ray)
        if list(p) != [int(x) for x in ray]:
            warnings.warn(
                "ray %s primitivized to %s" % (tuple(ray), p), PrimitivizedRayWarning
            )
        prim.append(p)
    cones = []
    for cone in max_cones:
        key = tuple(sorted(int(i) for i in cone))
        if key not in cones:
            cones.append(key)
    return Fan(int(dim), tuple(prim), tuple(cones), name)


@dataclass
class FanDiagnostics:
    simplicial: bool
    complete: bool
    smooth: bool
    errors: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.simplicial and self.complete and not self.errors


def validate(fan: Fan) -> FanDiagnostics:
    errors = []
    d, r = fan.dim, fan.r
    if d < 1:
        errors.append("dimension must be >= 1")
    if r == 0:
        errors.append("no rays")
    for i, ray in enumerate(fan.rays):
        if len(ray) != d:
            errors.append("ray %d has wrong length" % i)
        elif all(x == 0 for x in ray):
            errors.append("ray %d is zero" % i)
        elif primitivize(ray) != tuple(ray):
            errors.append("ray %d is not primitive" % i)
    if len(set(fan.rays)) != r:
        errors.append("duplicate rays")
    used = set()
    for cone in fan.max_cones:
        for i in cone:
            if not 0 <= i < r:
                errors.append("cone index %d out of range" % i)
            used.add(i)
    if errors:
        return FanDiagnostics(False, False, False, errors)
    if used != set(range(r)):
        errors.append("some rays belong to no maximal cone")

    simplicial = True
    for cone in fan.max_cones:
        if len(cone) != d or rank([list(fan.rays[i]) for i in cone]) != d:
            simplicial = False
            errors.append("cone %s is not simplicial of full dimension" % (cone,))

    complete = False
    if simplicial and fan.max_cones:
        complete = True
        faces: dict[tuple, list[int]] = {}
        for ci, cone in enumerate(fan.max_cones):
            for face in combinations(cone, d - 1):
                faces.setdefault(face, []).append(ci)
        for face, owners in faces.items():
            if len(owners) != 2:
                complete = False
                errors.append(
                    "wall %s belongs to %d cones (want 2)" % (face, len(owners))
                )
        if complete:
            # dual graph connectivity
            adj = {i: set() for i in range(fan.s)}
            for owners in faces.values():
                a, b = owners
                adj[a].add(b)
                adj[b].add(a)
            seen = {0}
            stack = [0]
            while stack:
                cur = stack.pop()
                for nxt in adj[cur]:
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
            if len(seen) != fan.s:
                complete = False
                errors.append("dual graph of maximal cones is disconnected")

    smooth = False
    if simplicial:
        smooth = all(
            abs(det([list(fan.rays[i]) for i in cone])) == 1 for cone in fan.max_cones
        )
    return FanDiagnostics(simplicial, complete, smooth, errors)


def require_valid(fan: Fan) -> FanDiagnostics:
    diag = validate(fan)
    if not (diag.simplicial and diag.complete):
        raise MalformedFan("; ".join(diag.errors) or "fan is not complete simplicial")
    return diag


def walls(fan: Fan) -> list[tuple[tuple[int, int], tuple[int, ...]]]:
    """Pairs of adjacent maximal cones with their shared (d-1)-face."""
    require_valid(fan)
    faces: dict[tuple, list[int]] = {}
    for ci, cone in enumerate(fan.max_cones):
        for face in combinations(cone, fan.dim - 1):
            faces.setdefault(face, []).append(ci)
    return [((owners[0], owners[1]), face) for face, owners in sorted(faces.items())]


def cone_coordinates(fan: Fan, cone: Sequence[int], v: Sequence) -> Optional[list[Fraction]]:
    """Coordinates of v in the simplicial cone's generators, or None if off-span."""
    cols = [fan.rays[i] for i in cone]
    A = [[cols[j][i] for j in range(len(cols))] for i in range(fan.dim)]
    sol = rational_solve(A, [Fraction(x) for x in v])
    if sol is None:
        return None
    # solution must be exact for square nonsingular systems; verify anyway
    for i in range(fan.dim):
        if sum(A[i][j] * sol[j] for j in range(len(cols))) != Fraction(v[i]):
            return None
    return sol


def containing_cones(fan: Fan, v: Sequence) -> list[tuple[int, list[Fraction]]]:
    """Maximal cones containing v, with simplicial coordinates."""
    out = []
    for ci, cone in enumerate(fan.max_cones):
        coords = cone_coordinates(fan, cone, v)
        if coords is not None and all(c >= 0 for c in coords):
            out.append((ci, coords))
    return out


def minimal_cone(fan: Fan, v: Sequence) -> Optional[tuple[int, ...]]:
    """Index set of the minimal cone of the fan containing v (None if outside)."""
    hits = containing_cones(fan, v)
    if not hits:
        return None
    ci, coords = hits[0]
    cone = fan.max_cones[ci]
    return tuple(i for i, c in zip(cone, coords) if c > 0)


def spans_cone(fan: Fan, indices: Sequence[int]) -> bool:
    s = set(indices)
    return any(s <= set(cone) for cone in fan.max_cones)


@dataclass(frozen=True)
class PrimitiveCollection:
    indices: tuple[int, ...]
    focus: tuple[int, ...]


@dataclass(frozen=True)
class PrimitiveRelation:
    coefficients: tuple[int, ...]
    collection: tuple[int, ...]
    focus: tuple[int, ...]
    k: int  # positive support size
    l: int  # total support size
    degree: int

    @property
    def positive_support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coefficients) if c > 0)

    @property
    def negative_support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coefficients) if c < 0)


def primitive_collections(fan: Fan) -> list[PrimitiveCollection]:
    require_valid(fan)
    out = []
    span_cache: dict[tuple, bool] = {}

    def spans(subset):
        if subset not in span_cache:
            span_cache[subset] = spans_cone(fan, subset)
        return span_cache[subset]

    for size in range(2, fan.dim + 2):
        for subset in combinations(range(fan.r), size):
            if spans(subset):
                continue
            if all(spans(sub) for sub in combinations(subset, size - 1)):
                v = [
                    sum(fan.rays[i][j] for i in subset) for j in range(fan.dim)
                ]
                focus = minimal_cone(fan, v) if any(x != 0 for x in v) else ()
                if focus is None:
                    raise MalformedFan("collection sum lies outside the fan support")
                out.append(PrimitiveCollection(subset, focus))
    return out


def primitive_relation(fan: Fan, P: PrimitiveCollection) -> PrimitiveRelation:
    v = [sum(fan.rays[i][j] for i in P.indices) for j in range(fan.dim)]
    coeffs = [Fraction(0)] * fan.r
    for i in P.indices:
        coeffs[i] += 1
    if any(x != 0 for x in v):
        hit = next(
            (c for c in containing_cones(fan, v) if set(P.focus) <= set(fan.max_cones[c[0]])),
            None,
        )
        if hit is None:
            raise MalformedFan("focus cone not found")
        ci, coords = hit
        for i, lam in zip(fan.max_cones[ci], coords):
            coeffs[i] -= lam
    ints = clear_denominators(coeffs)
    # normalization may flip the sign; the collection side must be positive
    if ints[P.indices[0]] < 0:
        ints = tuple(-x for x in ints)
    pos = sum(c for c in ints if c > 0)
    neg = sum(-c for c in ints if c < 0)
    k = sum(1 for c in ints if c > 0)
    l = k + sum(1 for c in ints if c < 0)
    return PrimitiveRelation(
        coefficients=ints,
        collection=P.indices,
        focus=P.focus,
        k=k,
        l=l,
        degree=pos - neg,
    )


def primitive_relations(fan: Fan) -> list[PrimitiveRelation]:
    return [primitive_relation(fan, P) for P in primitive_collections(fan)]


def star_subdivision(fan: Fan, v: Sequence[int]) -> Fan:
    require_valid(fan)
    v = primitivize(v)
    if v in fan.rays:
        raise RayExists("%s is already a ray" % (v,))
    hits = containing_cones(fan, v)
    if not hits:
        raise OutsideSupport("%s lies outside the fan support" % (v,))
    new_index = fan.r
    cones = []
    for ci, cone in enumerate(fan.max_cones):
        hit = next((h for h in hits if h[0] == ci), None)
        if hit is None:
            cones.append(cone)
            continue
        _, coords = hit
        pos = [i for i, lam in zip(cone, coords) if lam > 0]
        for g in pos:
            cones.append(tuple(sorted((set(cone) - {g}) | {new_index})))
    out = make_fan(fan.dim, list(fan.rays) + [v], cones, name=fan.name)
    require_valid(out)
    return out


def blowdown(fan: Fan, ray_index: int, relation: PrimitiveRelation) -> Fan:
    require_valid(fan)
    if relation.l - relation.k != 1 or relation.negative_support != (ray_index,):
        raise NotDivisorial(
            "relation is not divisorial with negative support {%d}" % ray_index
        )
    pos = set(relation.positive_support)
    remap = {}
    new_rays = []
    for i, ray in enumerate(fan.rays):
        if i == ray_index:
            continue
        remap[i] = len(new_rays)
        new_rays.append(ray)
    cones = []
    for cone in fan.max_cones:
        if ray_index in cone:
            merged = (set(cone) - {ray_index}) | pos
        else:
            merged = set(cone)
        cones.append(tuple(sorted(remap[i] for i in merged)))
    out = make_fan(fan.dim, new_rays, cones, name=fan.name)
    diag = validate(out)
    if not (diag.simplicial and diag.complete):
        raise InvalidContraction("; ".join(diag.errors) or "contracted fan invalid")
    return out
