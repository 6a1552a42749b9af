"""Divisor class group and the cones of divisor classes.

Cl(X) is the cokernel of the character-to-divisor map; its free part is the
Neron-Severi lattice. Effective, big, nef and moving cones live in the free
part; intersection numbers pair class representatives with ray relations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import NotARelation
from .exactlin import mat_vec, rational_solve, smith_normal_form
from .fan import Fan, require_valid
from .polyhedra import (
    Cone,
    HPolytope,
    cone_from_inequalities,
    cone_inequalities,
    lattice_points,
    membership,
)


@dataclass(frozen=True)
class ClassElement:
    free: tuple[int, ...]
    torsion: tuple[int, ...] = ()

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.free) and all(x == 0 for x in self.torsion)


@dataclass(frozen=True)
class ClassGroup:
    fan: Fan
    rank: int
    torsion_factors: tuple[int, ...]  # invariant factors > 1
    _torsion_rows: tuple[int, ...]  # rows of U giving each torsion coordinate
    _u: tuple[tuple[int, ...], ...]
    _uinv: tuple[tuple[int, ...], ...]

    @property
    def r(self) -> int:
        return self.fan.r

    @property
    def dim(self) -> int:
        return self.fan.dim

    def project(self, divisor: Sequence[int]) -> ClassElement:
        if len(divisor) != self.r:
            raise ValueError("divisor length must equal the ray count")
        y = mat_vec(self._u, [int(a) for a in divisor])
        free = tuple(y[self.dim + j] for j in range(self.rank))
        torsion = tuple(
            y[row] % fac for row, fac in zip(self._torsion_rows, self.torsion_factors)
        )
        return ClassElement(free, torsion)

    def project_free(self, divisor: Sequence) -> tuple[Fraction, ...]:
        """Free-part coordinates of a rational divisor."""
        y = mat_vec(self._u, [Fraction(a) for a in divisor])
        return tuple(y[self.dim + j] for j in range(self.rank))

    def representative(self, elem: ClassElement) -> list[int]:
        """An integer divisor coefficient vector with the given class."""
        y = [0] * self.r
        for row, t in zip(self._torsion_rows, elem.torsion):
            y[row] = int(t)
        for j, v in enumerate(elem.free):
            y[self.dim + j] = int(v)
        return mat_vec(self._uinv, y)

    @property
    def ray_classes(self) -> list[ClassElement]:
        return [
            self.project([1 if j == i else 0 for j in range(self.r)])
            for i in range(self.r)
        ]

    @property
    def pi_free(self) -> list[tuple[int, ...]]:
        return [c.free for c in self.ray_classes]

    def e0(self, p: int) -> int:
        """Minimal e with p^e annihilating the p-part of the torsion."""
        e = 0
        for fac in self.torsion_factors:
            cur = 0
            while fac % p == 0:
                fac //= p
                cur += 1
            e = max(e, cur)
        return e

    def num_class(self, free: Sequence[int]) -> ClassElement:
        return ClassElement(tuple(int(x) for x in free), (0,) * len(self.torsion_factors))


def class_group(fan: Fan) -> ClassGroup:
    require_valid(fan)
    d, r = fan.dim, fan.r
    # divisor-of-character map as an r x d matrix acting on characters
    D = [list(ray) for ray in fan.rays]
    snf = smith_normal_form(D)
    diag = snf.diagonal
    if len(diag) < d or any(x == 0 for x in diag):
        raise NotARelation("ray matrix is not of full rank d")
    torsion_rows = tuple(i for i in range(d) if diag[i] > 1)
    torsion_factors = tuple(diag[i] for i in torsion_rows)
    U = snf.u
    uinv_cols = []
    n = len(U)
    for j in range(n):
        e = [Fraction(1) if i == j else Fraction(0) for i in range(n)]
        col = rational_solve(U, e)
        uinv_cols.append([int(x) for x in col])
    uinv = tuple(tuple(uinv_cols[j][i] for j in range(n)) for i in range(n))
    return ClassGroup(
        fan=fan,
        rank=r - d,
        torsion_factors=torsion_factors,
        _torsion_rows=torsion_rows,
        _u=tuple(tuple(row) for row in U),
        _uinv=uinv,
    )


def numerical_class(cg: ClassGroup, divisor: Sequence[int]) -> ClassElement:
    return cg.project(divisor)


def eff_cone(cg: ClassGroup) -> Cone:
    return Cone.from_generators(cg.rank, cg.pi_free)


def big_test(cg: ClassGroup, elem: ClassElement) -> bool:
    """Strict effectivity: the free part admits an all-positive expression."""
    return membership(eff_cone(cg), elem.free, strict=True)


def nef_cone(cg: ClassGroup) -> Cone:
    fan = cg.fan
    pi = cg.pi_free
    rows: list[tuple[int, ...]] = []
    for cone in fan.max_cones:
        gens = [pi[i] for i in range(fan.r) if i not in cone]
        for row in cone_inequalities(Cone.from_generators(cg.rank, gens)):
            if row not in rows:
                rows.append(row)
    return cone_from_inequalities(cg.rank, rows)


def moving_cone(cg: ClassGroup) -> Cone:
    pi = cg.pi_free
    rows: list[tuple[int, ...]] = []
    for skip in range(cg.r):
        gens = [pi[i] for i in range(cg.r) if i != skip]
        for row in cone_inequalities(Cone.from_generators(cg.rank, gens)):
            if row not in rows:
                rows.append(row)
    return cone_from_inequalities(cg.rank, rows)


def is_relation(fan: Fan, R: Sequence[int]) -> bool:
    return all(
        sum(R[i] * fan.rays[i][j] for i in range(fan.r)) == 0 for j in range(fan.dim)
    )


def intersection_number(cg: ClassGroup, E, R: Sequence[int]):
    """E . R for a class (or divisor coefficient vector) against a ray relation."""
    if not is_relation(cg.fan, R):
        raise NotARelation("vector is not a relation among the rays")
    if isinstance(E, ClassElement):
        coeffs = cg.representative(E)
    else:
        coeffs = list(E)
    return sum(Fraction(c) * r for c, r in zip(coeffs, R))


def anticanonical(cg: ClassGroup) -> ClassElement:
    return cg.project([1] * cg.r)


def divisor_polytope(fan: Fan, divisor: Sequence) -> HPolytope:
    rows = [
        (tuple(fan.rays[i]), -Fraction(divisor[i])) for i in range(fan.r)
    ]
    return HPolytope.make(fan.dim, rows)


def h0(fan: Fan, divisor: Sequence[int]) -> int:
    return len(lattice_points(divisor_polytope(fan, divisor)))
