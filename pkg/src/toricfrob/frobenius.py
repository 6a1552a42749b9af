"""Frobenius pushforward splittings and their asymptotics.

Splitting multiplicities by exact coset sweeps, the Frobenius support as the
nonzero lattice points of a half-open zonotope of ray classes, alpha-densities
as lattice-normalized slice volumes, ample/nef F-signatures, F-effective
cones, twisted decompositions, and the discrete intervals attached to inert
divisorial contractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Optional, Sequence

import numpy as np

from .classes import (
    ClassElement,
    ClassGroup,
    anticanonical,
    big_test,
    class_group,
    divisor_polytope,
    eff_cone,
    h0,
    nef_cone,
)
from .errors import BudgetExceeded, DimensionMismatch, NotInert, RequiresSmooth
from .exactlin import LinearProgram, kernel_lattice, lp_optimize
from .fan import Fan, PrimitiveRelation, require_valid, validate
from .polyhedra import (
    Cone,
    HPolytope,
    SWEEP_BUDGET,
    cone_inequalities,
    dual_cone,
    half_open_member,
    lattice_volume,
    lp_over,
    membership,
)


@dataclass(frozen=True)
class FSuppEntry:
    cls: tuple[int, ...]
    alpha: Fraction
    big: bool
    nef: bool
    ample: bool


@dataclass(frozen=True)
class SignatureReport:
    ample_signature: Fraction
    nef_signature: Fraction
    total_big_mass: Fraction


@dataclass
class Decomposition:
    p: int
    e: int
    entries: list  # [(ClassElement, multiplicity)]
    total: int
    e_below_torsion_threshold: bool = False


_FSUPP_CACHE: dict[Fan, list[FSuppEntry]] = {}
_ALPHA_CACHE: dict[tuple, Fraction] = {}


def _zonotope_box(cg: ClassGroup) -> list[tuple[int, int]]:
    """Per-coordinate bounds of the closed zonotope of ray classes."""
    pi = cg.pi_free
    out = []
    for j in range(cg.rank):
        lo = sum(min(p[j], 0) for p in pi)
        hi = sum(max(p[j], 0) for p in pi)
        out.append((lo, hi))
    return out


def _eff_rows(cg: ClassGroup):
    return cone_inequalities(eff_cone(cg))


def _zonotope_candidates(cg: ClassGroup) -> list[tuple[int, ...]]:
    """Lattice points possibly inside the closed zonotope (cheap prefilters only)."""
    box = _zonotope_box(cg)
    size = 1
    for lo, hi in box:
        size *= hi - lo + 1
    if size > SWEEP_BUDGET:
        raise BudgetExceeded("zonotope candidate box of size %d" % size)
    rows = _eff_rows(cg)
    minus_k = tuple(sum(p[j] for p in cg.pi_free) for j in range(cg.rank))
    out = []
    for v in iproduct(*[range(lo, hi + 1) for lo, hi in box]):
        mirror = tuple(k - x for k, x in zip(minus_k, v))
        if all(sum(a * x for a, x in zip(row, v)) >= 0 for row in rows) and all(
            sum(a * x for a, x in zip(row, mirror)) >= 0 for row in rows
        ):
            out.append(v)
    return out


def fsupp(fan: Fan, cg: Optional[ClassGroup] = None) -> list[FSuppEntry]:
    """Nonzero lattice points of the half-open zonotope, with density and flags."""
    if fan in _FSUPP_CACHE:
        return _FSUPP_CACHE[fan]
    require_valid(fan)
    cg = cg or class_group(fan)
    pi = cg.pi_free
    nef = nef_cone(cg)
    entries = []
    for v in sorted(_zonotope_candidates(cg)):
        if all(x == 0 for x in v):
            continue
        if not half_open_member(pi, v):
            continue
        a = alpha(fan, cg, v)
        big = big_test(cg, cg.num_class(v))
        entries.append(
            FSuppEntry(
                cls=v,
                alpha=a,
                big=big,
                nef=membership(nef, v),
                ample=membership(nef, v, strict=True),
            )
        )
    _FSUPP_CACHE[fan] = entries
    return entries


def alpha_slice(cg: ClassGroup, v: Sequence[int]) -> HPolytope:
    """{c in [0,1]^r : sum c_i pi_i = v} in coefficient space."""
    r = cg.r
    pi = cg.pi_free
    ineqs = []
    for i in range(r):
        e = tuple(1 if j == i else 0 for j in range(r))
        ineqs.append((e, 0))
        ineqs.append((tuple(-x for x in e), -1))
    eqs = [
        (tuple(pi[i][j] for i in range(r)), v[j]) for j in range(cg.rank)
    ]
    return HPolytope.make(r, ineqs, eqs)


def alpha(fan: Fan, cg: Optional[ClassGroup] = None, v: Sequence[int] = ()) -> Fraction:
    """Lattice-normalized volume of the coefficient slice of v (0 if degenerate)."""
    cg = cg or class_group(fan)
    key = (fan, tuple(v))
    if key in _ALPHA_CACHE:
        return _ALPHA_CACHE[key]
    proj = [[cg.pi_free[i][j] for i in range(cg.r)] for j in range(cg.rank)]
    lam = kernel_lattice(proj)
    try:
        vol = lattice_volume(alpha_slice(cg, v), lam)
    except DimensionMismatch:
        vol = Fraction(0)
    _ALPHA_CACHE[key] = vol
    return vol


def signatures(fan: Fan, cg: Optional[ClassGroup] = None) -> SignatureReport:
    cg = cg or class_group(fan)
    entries = fsupp(fan, cg)
    a = sum((e.alpha for e in entries if e.ample), Fraction(0))
    n = sum((e.alpha for e in entries if e.nef), Fraction(0))
    mass = sum((e.alpha for e in entries if e.big), Fraction(0))
    return SignatureReport(ample_signature=a, nef_signature=n, total_big_mass=mass)


def f_effective_cones(fan: Fan, cg: Optional[ClassGroup] = None) -> tuple[Cone, Cone]:
    cg = cg or class_group(fan)
    frob = Cone.from_generators(cg.rank, [e.cls for e in fsupp(fan, cg)])
    return frob, dual_cone(frob)


def _torsion_classes(cg: ClassGroup):
    return [
        tuple(t) for t in iproduct(*[range(f) for f in cg.torsion_factors])
    ]


def multiplicity(
    fan: Fan,
    cg: ClassGroup,
    D: Sequence[int],
    E: ClassElement,
    p: int,
    e: int,
) -> int:
    """#{c in {0..q-1}^r : [sum c_i P_i] = [qE - D]}, q = p^e."""
    q = p**e
    if q**fan.dim > SWEEP_BUDGET:
        raise BudgetExceeded("q^d = %d exceeds the sweep budget" % q**fan.dim)
    target = [q * x - int(d) for x, d in zip(cg.representative(E), D)]
    # the solution set is target + (divisor-of-character lattice); sweep m in Z^d
    r, d = fan.r, fan.dim
    rays = fan.rays
    bounds = []
    for j in range(d):
        obj = [1 if i == j else 0 for i in range(d)]
        ineqs = []
        for i in range(r):
            # 0 <= target_i + <u_i, m> <= q-1
            ineqs.append((tuple(rays[i]), -target[i]))
            ineqs.append((tuple(-x for x in rays[i]), target[i] - (q - 1)))
        lo = lp_over(obj, ineqs, (), "min")
        if lo.status == "infeasible":
            return 0
        hi = lp_over(obj, ineqs, (), "max")
        if lo.status != "optimal" or hi.status != "optimal":
            raise BudgetExceeded("unbounded sweep region")
        bounds.append(
            (
                -(-lo.value.numerator // lo.value.denominator),
                hi.value.numerator // hi.value.denominator,
            )
        )
    size = 1
    for lo, hi in bounds:
        size *= max(hi - lo + 1, 0)
    if size == 0:
        return 0
    if size > SWEEP_BUDGET:
        raise BudgetExceeded("coset sweep of size %d" % size)
    grids = np.meshgrid(
        *[np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in bounds], indexing="ij"
    )
    M = np.stack([g.ravel() for g in grids], axis=1)
    U = np.array(rays, dtype=np.int64).T  # d x r
    C = M @ U + np.array(target, dtype=np.int64)
    return int(np.all((C >= 0) & (C <= q - 1), axis=1).sum())


def trace_kernel_decomposition(
    fan: Fan, cg: Optional[ClassGroup] = None, p: int = 2, e: int = 1
) -> Decomposition:
    """Summands of the dual Frobenius pushforward of the structure sheaf,
    excluding the unit summand: entries (E, m(E;q)) with total q^d - 1."""
    cg = cg or class_group(fan)
    q = p**e
    zero = [0] * cg.r
    entries = []
    total = 0
    for free in _zonotope_candidates(cg):
        for tor in _torsion_classes(cg):
            E = ClassElement(tuple(free), tor)
            if E.is_zero:
                continue
            m = multiplicity(fan, cg, zero, E, p, e)
            if m:
                entries.append((E, m))
                total += m
    entries.sort(key=lambda it: (it[0].free, it[0].torsion))
    return Decomposition(
        p=p,
        e=e,
        entries=entries,
        total=total,
        e_below_torsion_threshold=e < cg.e0(p),
    )


def pushforward_decomposition(
    fan: Fan, cg: ClassGroup, D: Sequence[int], p: int, e: int
) -> Decomposition:
    """Full decomposition of the dual pushforward of O(-D): total rank q^d."""
    q = p**e
    box = _zonotope_box(cg)
    dcls = cg.project([int(x) for x in D])
    entries = []
    total = 0
    ranges = []
    for j, (lo, hi) in enumerate(box):
        # qE = D + sum c_i pi_i with c in [0, q-1]
        lo_j = (dcls.free[j] + (q - 1) * lo + q - 1) // q - 1
        hi_j = (dcls.free[j] + (q - 1) * hi) // q + 1
        ranges.append(range(lo_j, hi_j + 1))
    for free in iproduct(*ranges):
        for tor in _torsion_classes(cg):
            E = ClassElement(tuple(free), tor)
            m = multiplicity(fan, cg, D, E, p, e)
            if m:
                entries.append((E, m))
                total += m
    entries.sort(key=lambda it: (it[0].free, it[0].torsion))
    return Decomposition(
        p=p,
        e=e,
        entries=entries,
        total=total,
        e_below_torsion_threshold=e < cg.e0(p),
    )


def twisted_decomposition(
    fan: Fan, cg: Optional[ClassGroup] = None, E: Optional[ClassElement] = None,
    p: int = 2, e: int = 1,
) -> Decomposition:
    """Decomposition of the dual pushforward of O(-E): entries (D, m_E(D;q)).

    m_E(D;q) counts coefficient vectors in {0..q-1}^r of class qD - E;
    total rank q^d. E = 0 reduces to the plain pushforward decomposition.
    """
    cg = cg or class_group(fan)
    if E is None:
        E = ClassElement((0,) * cg.rank, (0,) * len(cg.torsion_factors))
    return pushforward_decomposition(fan, cg, cg.representative(E), p, e)


def m_tilde(fan: Fan, cg: ClassGroup, v: Sequence[int], p: int, e: int) -> int:
    """Torsion-summed multiplicity of the numerical class v in the trace kernel."""
    zero = [0] * cg.r
    return sum(
        multiplicity(fan, cg, zero, ClassElement(tuple(v), tor), p, e)
        for tor in _torsion_classes(cg)
    )


def inert_intervals(
    fan_S: Fan,
    cg_S: Optional[ClassGroup],
    relation: PrimitiveRelation,
    delta: Sequence[int],
) -> tuple[int, int]:
    """The integer interval of floor(D.R) over half-open representatives of delta.

    fan_S/cg_S describe the blowdown target; relation lives on the blown-up
    fan, whose rays are the target rays plus the exceptional one (the
    relation's negative support).
    """
    cg_S = cg_S or class_group(fan_S)
    neg = relation.negative_support
    if relation.l - relation.k != 1 or len(neg) != 1:
        raise NotInert("relation is not divisorial")
    if relation.coefficients[neg[0]] != -1:
        raise NotInert("relation has negative coefficient != 1")
    b = [c for i, c in enumerate(relation.coefficients) if i != neg[0]]
    if len(b) != cg_S.r:
        raise NotInert("relation length does not match the target fan")
    r = cg_S.r
    pi = cg_S.pi_free
    a_eq = [[pi[i][j] for i in range(r)] for j in range(cg_S.rank)]
    b_eq = list(delta)
    lo_res = lp_optimize(LinearProgram(b, a_eq, b_eq, [0] * r, [1] * r), "min")
    hi_res = lp_optimize(LinearProgram(b, a_eq, b_eq, [0] * r, [1] * r), "max")
    if lo_res.status != "optimal" or hi_res.status != "optimal":
        raise NotInert("class has no [0,1]-coefficient representative")
    i_delta = lo_res.value.numerator // lo_res.value.denominator
    hi = hi_res.value
    if hi.denominator != 1:
        k_delta = hi.numerator // hi.denominator
    else:
        # the max is integral; it counts only if attained by a half-open point
        k = int(hi)
        attained = True
        eq_face = a_eq + [b]
        rhs_face = b_eq + [hi]
        for i in range(r):
            obj = [1 if j == i else 0 for j in range(r)]
            res = lp_optimize(
                LinearProgram(obj, eq_face, rhs_face, [0] * r, [1] * r), "min"
            )
            if res.status != "optimal" or res.value >= 1:
                attained = False
                break
        k_delta = k if attained else k - 1
    return i_delta, k_delta


def volume_check(
    fan: Fan, cg: Optional[ClassGroup], E: Sequence[int]
) -> tuple[Fraction, Fraction]:
    """(polytope volume of E, sum of alpha(D) h0(E - D) over big support classes)."""
    diag = require_valid(fan)
    if not diag.smooth:
        raise RequiresSmooth("the volume identity is asserted for smooth fans")
    cg = cg or class_group(fan)
    std = [tuple(1 if i == j else 0 for j in range(fan.dim)) for i in range(fan.dim)]
    try:
        lhs = lattice_volume(divisor_polytope(fan, E), std)
    except DimensionMismatch:
        lhs = Fraction(0)
    rhs = Fraction(0)
    for entry in fsupp(fan, cg):
        if not entry.big:
            continue
        rep = cg.representative(cg.num_class(entry.cls))
        shifted = [int(a) - int(b) for a, b in zip(E, rep)]
        rhs += entry.alpha * h0(fan, shifted)
    return lhs, rhs


def big_pairing_check(fan: Fan, cg: Optional[ClassGroup], v: Sequence[int]) -> bool:
    """Whether [v is big] matches [(-K) - v also supports the trace kernel]."""
    cg = cg or class_group(fan)
    support = {e.cls for e in fsupp(fan, cg)}
    support.add((0,) * cg.rank)  # zero supports the unit summand
    mk = anticanonical(cg).free
    mirror = tuple(a - b for a, b in zip(mk, v))
    is_big = big_test(cg, cg.num_class(v))
    return is_big == (mirror in support)


def nef_blowdown_witnesses(fan: Fan, cg: Optional[ClassGroup] = None) -> list[dict]:
    """Per divisorial extremal ray: does a nef support class with E.R = 0 exist?

    Reported, never asserted.
    """
    from .classes import intersection_number
    from .mori import extremal_contractions

    cg = cg or class_group(fan)
    entries = fsupp(fan, cg)
    out = []
    for info in extremal_contractions(fan):
        if info.kind != "divisorial":
            continue
        witness = None
        for entry in entries:
            if not entry.nef:
                continue
            val = intersection_number(
                cg, cg.num_class(entry.cls), info.relation.coefficients
            )
            if val == 0:
                witness = entry.cls
                break
        out.append(
            {
                "relation": info.relation.coefficients,
                "nef_witness": witness,
            }
        )
    return out
