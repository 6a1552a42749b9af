"""Rational polyhedral cones and polytopes.

H/V duality via the double description method, vertex enumeration by
homogenization, exact lattice-normalized volumes by recursive facet
decomposition, lattice point enumeration, and the constructive half-open
lattice point coming from an integer relation on cone generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Optional, Sequence

from .errors import (
    BudgetExceeded,
    DegenerateRelation,
    DimensionMismatch,
    NotStronglyConvex,
    Unbounded,
)
from .exactlin import (
    LinearProgram,
    clear_denominators,
    lp_optimize,
    primitivize,
    rational_kernel,
    rational_solve,
    rank,
)

SWEEP_BUDGET = 10**7


@dataclass(frozen=True)
class Cone:
    """The cone generated by integer vectors in R^dim."""

    dim: int
    generators: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_generators(dim: int, gens: Sequence[Sequence[int]]) -> "Cone":
        seen = []
        for g in gens:
            p = primitivize(g)
            if any(x != 0 for x in p) and p not in seen:
                seen.append(p)
        return Cone(dim, tuple(seen))


@dataclass(frozen=True)
class HPolytope:
    """{x : a.x >= b for (a,b) in inequalities, a.x = b for (a,b) in equalities}."""

    dim: int
    inequalities: tuple[tuple[tuple[Fraction, ...], Fraction], ...]
    equalities: tuple[tuple[tuple[Fraction, ...], Fraction], ...] = ()

    @staticmethod
    def make(dim, inequalities, equalities=()) -> "HPolytope":
        def conv(rows):
            return tuple(
                (tuple(Fraction(x) for x in a), Fraction(b)) for a, b in rows
            )

        return HPolytope(dim, conv(inequalities), conv(equalities))


@dataclass(frozen=True)
class VPolytope:
    vertices: tuple[tuple[Fraction, ...], ...]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def lp_over(
    objective,
    ineqs=(),
    eqs=(),
    sense="min",
    lower=None,
    upper=None,
):
    """LP over free (or box-bounded) variables with a.x >= b inequality rows."""
    n = len(objective)
    m = len(ineqs)
    lower = list(lower) if lower is not None else [None] * n
    upper = list(upper) if upper is not None else [None] * n
    a_eq = []
    b_eq = []
    # inequality i gets slack variable i: a.x - s_i = b, s_i >= 0
    for i, (a, b) in enumerate(ineqs):
        row = list(a) + [0] * m
        row[n + i] = -1
        a_eq.append(row)
        b_eq.append(b)
    for a, b in eqs:
        a_eq.append(list(a) + [0] * m)
        b_eq.append(b)
    lp = LinearProgram(
        list(objective) + [0] * m,
        a_eq,
        b_eq,
        lower + [0] * m,
        upper + [None] * m,
    )
    res = lp_optimize(lp, sense)
    if res.status == "optimal":
        res.x = res.x[:n]
    return res


def _dd_pointed(dim: int, rows: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone {x : row.x >= 0} (rows have rank dim)."""
    if dim == 0:
        return []
    chosen: list[tuple[int, ...]] = []
    rest: list[tuple[int, ...]] = []
    for row in rows:
        if len(chosen) < dim and rank(chosen + [row]) == len(chosen) + 1:
            chosen.append(row)
        else:
            rest.append(row)
    if len(chosen) < dim:
        raise NotStronglyConvex("inequality rows do not have full rank")
    # initial simplicial cone: rays are the columns of the inverse matrix
    rays = []
    for j in range(dim):
        e = [Fraction(1) if i == j else Fraction(0) for i in range(dim)]
        col = rational_solve(chosen, e)
        rays.append(clear_denominators(col))
    processed = list(chosen)

    for row in rest:
        vals = {ray: _dot(row, ray) for ray in rays}
        plus = [r for r in rays if vals[r] > 0]
        zero = [r for r in rays if vals[r] == 0]
        minus = [r for r in rays if vals[r] < 0]
        if not minus:
            processed.append(row)
            continue
        tight = {
            r: [p for p in processed if _dot(p, r) == 0] for r in plus + minus
        }
        new = []
        for p in plus:
            for q in minus:
                common = [c for c in tight[p] if _dot(c, q) == 0]
                if rank(common) != dim - 2:
                    continue
                w = tuple(vals[p] * qq - vals[q] * pp for pp, qq in zip(p, q))
                w = primitivize(w)
                if any(x != 0 for x in w) and w not in new:
                    new.append(w)
        rays = plus + zero + new
        processed.append(row)
    return rays


def hcone_generators(dim: int, rows: Sequence[Sequence]) -> tuple[list, list]:
    """(lineality basis, extreme rays) of {x : row.x >= 0}, integer vectors."""
    norm = []
    for row in rows:
        p = clear_denominators(row)
        if any(x != 0 for x in p) and p not in norm:
            norm.append(p)
    lin = [clear_denominators(v) for v in rational_kernel(norm)] if norm else [
        tuple(r) for r in ([1 if i == j else 0 for j in range(dim)] for i in range(dim))
    ]
    if not norm:
        return lin, []
    if not lin:
        return [], _dd_pointed(dim, norm)
    # split off the lineality: work in a complement of it
    comp = rational_kernel([list(v) for v in lin])
    basis = [clear_denominators(v) for v in comp]
    reduced = [tuple(_dot(row, b) for b in basis) for row in norm]
    reduced = [r for r in (primitivize(x) for x in reduced) if any(v != 0 for v in r)]
    sub = _dd_pointed(len(basis), reduced) if reduced else []
    rays = []
    for t in sub:
        x = [sum(ti * b[i] for ti, b in zip(t, basis)) for i in range(dim)]
        rays.append(primitivize(x))
    return lin, rays


def cone_from_inequalities(dim: int, rows: Sequence[Sequence]) -> Cone:
    lin, rays = hcone_generators(dim, rows)
    gens = list(rays)
    for v in lin:
        gens.append(v)
        gens.append(tuple(-x for x in v))
    return Cone.from_generators(dim, gens)


def dual_cone(C: Cone) -> Cone:
    return cone_from_inequalities(C.dim, C.generators)


def cone_inequalities(C: Cone) -> list[tuple[int, ...]]:
    """Rows h with C = {x : h.x >= 0}: the generators of the dual cone."""
    return list(dual_cone(C).generators)


def is_strongly_convex(C: Cone) -> bool:
    if not C.generators:
        return True
    m = len(C.generators)
    a_eq = [[g[i] for g in C.generators] for i in range(C.dim)]
    lp = LinearProgram([1] * m, a_eq, [0] * C.dim, [0] * m, [1] * m)
    res = lp_optimize(lp, "max")
    return res.status == "optimal" and res.value == 0


def membership(C: Cone, v: Sequence, strict: bool = False) -> bool:
    """v in C; strict means the relative interior of C."""
    m = len(C.generators)
    if m == 0:
        inside = all(Fraction(x) == 0 for x in v)
        return inside  # relint({0}) = {0}
    a_eq = [[g[i] for g in C.generators] for i in range(C.dim)]
    b_eq = [Fraction(x) for x in v]
    base = LinearProgram([0] * m, a_eq, b_eq, [0] * m, [None] * m)
    if lp_optimize(base, "min").status != "optimal":
        return False
    if not strict:
        return True
    # relint witness: each generator coefficient can be made positive,
    # then the average of the per-coordinate witnesses is all-positive
    for i in range(m):
        obj = [1 if j == i else 0 for j in range(m)]
        res = lp_optimize(LinearProgram(obj, a_eq, b_eq, [0] * m, [None] * m), "max")
        if res.status == "optimal" and res.value == 0:
            return False
    return True


def extreme_rays(C: Cone) -> list[tuple[int, ...]]:
    if not is_strongly_convex(C):
        raise NotStronglyConvex("cone contains a line")
    gens = list(C.generators)
    out = []
    for i, g in enumerate(gens):
        others = [h for j, h in enumerate(gens) if j != i]
        if not others:
            out.append(g)
            continue
        sub = Cone(C.dim, tuple(others))
        if not membership(sub, g):
            out.append(g)
    return out


def _feasible(P: HPolytope) -> bool:
    res = lp_over([0] * P.dim, P.inequalities, P.equalities, "min")
    return res.status == "optimal"


def vertex_enumeration(P: HPolytope) -> VPolytope:
    if not _feasible(P):
        return VPolytope(())
    n = P.dim
    rows = []
    for a, b in P.inequalities:
        rows.append(tuple(a) + (-b,))
    for a, b in P.equalities:
        rows.append(tuple(a) + (-b,))
        rows.append(tuple(-x for x in a) + (b,))
    rows.append(tuple([0] * n) + (1,))
    lin, rays = hcone_generators(n + 1, rows)
    if lin:
        raise Unbounded("polytope contains a line")
    verts = []
    for ray in rays:
        t = ray[-1]
        if t == 0:
            raise Unbounded("polytope has a recession direction")
        v = tuple(Fraction(x, t) for x in ray[:n])
        if v not in verts:
            verts.append(v)
    return VPolytope(tuple(sorted(verts)))


def lattice_points(P: HPolytope) -> list[tuple[int, ...]]:
    n = P.dim
    if not _feasible(P):
        return []
    los, his = [], []
    for j in range(n):
        obj = [1 if i == j else 0 for i in range(n)]
        lo = lp_over(obj, P.inequalities, P.equalities, "min")
        hi = lp_over(obj, P.inequalities, P.equalities, "max")
        if lo.status != "optimal" or hi.status != "optimal":
            raise Unbounded("polytope unbounded in coordinate %d" % j)
        los.append(-(-lo.value.numerator // lo.value.denominator))  # ceil
        his.append(hi.value.numerator // hi.value.denominator)  # floor
    size = 1
    for lo, hi in zip(los, his):
        size *= max(hi - lo + 1, 0)
    if size > SWEEP_BUDGET:
        raise BudgetExceeded("lattice point sweep of size %d" % size)
    pts = []
    for pt in iproduct(*[range(lo, hi + 1) for lo, hi in zip(los, his)]):
        if all(_dot(a, pt) >= b for a, b in P.inequalities) and all(
            _dot(a, pt) == b for a, b in P.equalities
        ):
            pts.append(pt)
    return pts


def _normalize_le(rows):
    """Dedupe rows of the form a.x <= b; keep the tightest b per direction."""
    best = {}
    degenerate_empty = False
    for a, b in rows:
        p = clear_denominators(a)
        if all(x == 0 for x in p):
            if b < 0:
                degenerate_empty = True
            continue
        # positive scale factor between the fraction row and its primitive form
        j = next(i for i, x in enumerate(p) if x != 0)
        scale = Fraction(a[j]) / p[j]
        if scale < 0:
            p = tuple(-x for x in p)
            scale = -scale
        bb = Fraction(b) / scale
        if p not in best or bb < best[p]:
            best[p] = bb
    return degenerate_empty, [(a, b) for a, b in best.items()]


def _volume_rec(rows, k) -> Fraction:
    """Volume of {x in R^k : a.x <= b}, assumed bounded; 0 if empty/degenerate."""
    empty, rows = _normalize_le(rows)
    if empty:
        return Fraction(0)
    if k == 0:
        return Fraction(1)
    if k == 1:
        lo, hi = None, None
        for (a,), b in rows:
            if a > 0:
                v = Fraction(b, a)
                hi = v if hi is None or v < hi else hi
            else:
                v = Fraction(b, a)
                lo = v if lo is None or v > lo else lo
        if lo is None or hi is None:
            raise Unbounded("unbounded 1-dimensional section")
        return max(hi - lo, Fraction(0))
    total = Fraction(0)
    for idx, (a, b) in enumerate(rows):
        j = next(i for i, x in enumerate(a) if x != 0)
        # substitute x_j = (b - sum_{l != j} a_l x_l) / a_j into the other rows
        sub_rows = []
        for i2, (a2, b2) in enumerate(rows):
            if i2 == idx:
                continue
            f = Fraction(a2[j], a[j])
            new_a = tuple(
                Fraction(a2[l]) - f * a[l] for l in range(k) if l != j
            )
            new_b = Fraction(b2) - f * b
            sub_rows.append((new_a, new_b))
        face = _volume_rec(sub_rows, k - 1)
        if face != 0:
            total += Fraction(b, abs(a[j])) * face
    return total / k


def lattice_volume(P: HPolytope, lattice_basis: Sequence[Sequence[int]]) -> Fraction:
    """Volume of P measured so the fundamental cell of the lattice is 1.

    P must lie in a coset of the span of lattice_basis; raises
    DimensionMismatch when P is nonempty but not full-dimensional there.
    """
    k = len(lattice_basis)
    eq_rows = [list(a) for a, _ in P.equalities]
    eq_rhs = [b for _, b in P.equalities]
    for a, _ in P.equalities:
        for v in lattice_basis:
            if _dot(a, v) != 0:
                raise DimensionMismatch("lattice does not lie in the equality kernel")
    if eq_rows and len(rational_kernel(eq_rows)) != k:
        raise DimensionMismatch("equality kernel dimension differs from lattice rank")
    if not eq_rows and k != P.dim:
        raise DimensionMismatch("no equalities: lattice must have full rank")
    x0 = rational_solve(eq_rows, eq_rhs) if eq_rows else [Fraction(0)] * P.dim
    if x0 is None:
        return Fraction(0)
    rows = []
    for a, b in P.inequalities:
        # a.x >= b becomes (-a.B) t <= a.x0 - b in lattice coordinates
        coefs = tuple(-_dot(a, v) for v in lattice_basis)
        rows.append((coefs, _dot(a, x0) - Fraction(b)))
    vol = _volume_rec(rows, k)
    if vol == 0 and _feasible(P):
        raise DimensionMismatch("polytope is lower-dimensional in the coset")
    return vol


def half_open_combination(vectors, v) -> Optional[tuple]:
    """A witness c in [0,1)^m with sum c_i vectors_i = v, or None.

    Protocol: the closed slice {c in [0,1]^m : sum c_i vec_i = v} is nonempty
    and every per-coordinate minimum over it is < 1; the average of the
    per-coordinate minimizers is then a valid half-open witness.
    """
    m = len(vectors)
    dim = len(vectors[0])
    a_eq = [[vec[i] for vec in vectors] for i in range(dim)]
    b_eq = [Fraction(x) for x in v]
    witnesses = []
    for i in range(m):
        obj = [1 if j == i else 0 for j in range(m)]
        res = lp_optimize(LinearProgram(obj, a_eq, b_eq, [0] * m, [1] * m), "min")
        if res.status != "optimal" or res.value >= 1:
            return None
        witnesses.append(res.x)
    avg = tuple(sum(w[i] for w in witnesses) / m for i in range(m))
    return avg


def half_open_member(vectors, v) -> bool:
    return half_open_combination(vectors, v) is not None


def half_open_point_from_relation(vectors, relation) -> tuple[int, ...]:
    """The lemma's half-open lattice point built from a relation on generators.

    Given sum relation_i vectors_i = 0 with mixed signs on a strongly convex
    cone, the sum of the generators on the side carrying the largest
    coefficient is a nonzero lattice point expressible with coefficients in
    [0,1); the expressibility is re-verified by LP before returning.
    """
    total = [sum(c * vec[i] for c, vec in zip(relation, vectors)) for i in range(len(vectors[0]))]
    if any(x != 0 for x in total):
        raise ValueError("input is not a relation on the vectors")
    pos = [i for i, c in enumerate(relation) if c > 0]
    neg = [i for i, c in enumerate(relation) if c < 0]
    if not pos or not neg:
        raise DegenerateRelation("relation coefficients are all of one sign")
    max_pos = max(relation[i] for i in pos)
    max_neg = max(-relation[i] for i in neg)
    side = pos if max_pos >= max_neg else neg
    w = tuple(
        sum(vectors[i][j] for i in side) for j in range(len(vectors[0]))
    )
    if all(x == 0 for x in w):
        raise DegenerateRelation("partial sum vanished; cone is not strongly convex")
    if half_open_combination(vectors, w) is None:
        raise DegenerateRelation("constructed point failed the half-open check")
    return w
