"""Mori cone, extremal contraction classification, Fano verdicts, blowdown chains."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .classes import ClassGroup, anticanonical, class_group, eff_cone, nef_cone
from .errors import ChainStuck, NotInert, RequiresSmooth, UnmatchedRay
from .exactlin import kernel_lattice, primitivize, rational_solve
from .fan import (
    Fan,
    PrimitiveRelation,
    blowdown,
    primitive_relations,
    require_valid,
    validate,
)
from .polyhedra import Cone, extreme_rays, membership


def relation_basis(fan: Fan) -> list[tuple[int, ...]]:
    """Z-basis of the lattice of relations among the rays (the curve lattice)."""
    A = [[fan.rays[i][j] for i in range(fan.r)] for j in range(fan.dim)]
    return kernel_lattice(A)


def relation_coordinates(fan: Fan, R, basis=None) -> tuple[int, ...]:
    basis = basis if basis is not None else relation_basis(fan)
    A = [[b[i] for b in basis] for i in range(fan.r)]
    sol = rational_solve(A, [Fraction(x) for x in R])
    if sol is None or any(s.denominator != 1 for s in sol):
        raise UnmatchedRay("vector is not in the relation lattice")
    return tuple(int(s) for s in sol)


def mori_cone(fan: Fan) -> Cone:
    """Cone of curve classes, generated by the primitive relations."""
    require_valid(fan)
    basis = relation_basis(fan)
    gens = [
        relation_coordinates(fan, rel.coefficients, basis)
        for rel in primitive_relations(fan)
    ]
    return Cone.from_generators(len(basis), gens)


@dataclass
class ContractionInfo:
    relation: PrimitiveRelation
    ray: tuple[int, ...]  # coordinates in the relation lattice
    kind: str  # "fibration" | "divisorial" | "small"
    fiber_dim: int
    exc_codim: int
    inert: bool
    smooth_blowup: bool
    degree: int
    length: Optional[int] = None  # smooth fans only
    matches: list = field(default_factory=list)
    classification_conflict: bool = False


def _classify(fan: Fan, rel: PrimitiveRelation, ray, smooth: bool) -> ContractionInfo:
    codim = rel.l - rel.k
    if codim == 0:
        kind = "fibration"
    elif codim == 1:
        kind = "divisorial"
    else:
        kind = "small"
    neg_sum = sum(-c for c in rel.coefficients if c < 0)
    inert = kind == "divisorial" and neg_sum == 1
    smooth_blowup = smooth and inert
    length = rel.k - neg_sum if smooth else None
    return ContractionInfo(
        relation=rel,
        ray=ray,
        kind=kind,
        fiber_dim=rel.k - 1,
        exc_codim=codim,
        inert=inert,
        smooth_blowup=smooth_blowup,
        degree=rel.degree,
        length=length,
    )


def extremal_contractions(fan: Fan) -> list[ContractionInfo]:
    diag = require_valid(fan)
    basis = relation_basis(fan)
    rels = primitive_relations(fan)
    coords = [relation_coordinates(fan, rel.coefficients, basis) for rel in rels]
    cone = Cone.from_generators(len(basis), coords)
    out = []
    for ray in sorted(extreme_rays(cone)):
        matched = [
            (rel, c) for rel, c in zip(rels, coords) if primitivize(c) == ray
        ]
        if not matched:
            raise UnmatchedRay("extreme ray %s spanned by no primitive relation" % (ray,))
        infos = [_classify(fan, rel, ray, diag.smooth) for rel, _ in matched]
        info = infos[0]
        info.matches = [rel for rel, _ in matched]
        info.classification_conflict = any(
            (i.kind, i.inert) != (info.kind, info.inert) for i in infos[1:]
        )
        out.append(info)
    return out


def is_fano(fan: Fan, cg: Optional[ClassGroup] = None) -> bool:
    cg = cg or class_group(fan)
    return membership(nef_cone(cg), anticanonical(cg).free, strict=True)


def is_weak_fano(fan: Fan, cg: Optional[ClassGroup] = None) -> bool:
    cg = cg or class_group(fan)
    return membership(nef_cone(cg), anticanonical(cg).free)


def is_projective_space(fan: Fan) -> bool:
    diag = require_valid(fan)
    if not diag.smooth:
        raise RequiresSmooth("projective-space recognition needs a smooth fan")
    return any(
        rel.l == rel.k and rel.k == fan.dim + 1 for rel in primitive_relations(fan)
    )


def is_extremal_fano(fan: Fan, cg: Optional[ClassGroup] = None) -> bool:
    diag = require_valid(fan)
    if not diag.smooth:
        raise RequiresSmooth("extremal-Fano recognition needs a smooth fan")
    if not is_fano(fan, cg):
        return False
    return all(
        info.kind == "fibration" or info.inert for info in extremal_contractions(fan)
    )


def is_birationally_inert_fano(fan: Fan, cg: Optional[ClassGroup] = None) -> bool:
    require_valid(fan)
    if not is_fano(fan, cg):
        return False
    return all(
        info.kind == "fibration" or info.inert for info in extremal_contractions(fan)
    )


def eff_equals_nef(cg: ClassGroup) -> bool:
    eff = set(extreme_rays(eff_cone(cg)))
    nef = set(nef_cone(cg).generators)
    return eff == nef


def blowdown_chain(fan: Fan, cg: Optional[ClassGroup] = None):
    """Greedy inert blowdowns (lowest exceptional ray index first).

    Returns [(fan_after_step, contraction_used), ...]; the terminal fan
    satisfies eff = nef.
    """
    diag = require_valid(fan)
    cg = cg or class_group(fan)
    if diag.smooth:
        eligible = is_extremal_fano(fan, cg)
    else:
        eligible = is_birationally_inert_fano(fan, cg)
    if not eligible:
        raise NotInert("fan is not (birationally) inert Fano")
    chain = []
    current = fan
    while True:
        inert = [
            info
            for info in extremal_contractions(current)
            if info.inert and not info.classification_conflict
        ]
        if not inert:
            break
        info = min(inert, key=lambda i: i.relation.negative_support[0])
        ray_index = info.relation.negative_support[0]
        try:
            current = blowdown(current, ray_index, info.relation)
        except Exception as exc:
            raise ChainStuck(str(exc)) from exc
        if not validate(current).complete:
            raise ChainStuck("intermediate fan fails validation")
        chain.append((current, info))
        if len(chain) > fan.r:
            raise ChainStuck("chain does not terminate")
    terminal_cg = class_group(current)
    if not eff_equals_nef(terminal_cg):
        raise ChainStuck("terminal fan does not satisfy eff = nef")
    return chain
