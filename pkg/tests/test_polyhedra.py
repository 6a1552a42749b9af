from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricfrob.errors import DegenerateRelation, DimensionMismatch, NotStronglyConvex, Unbounded
from toricfrob.polyhedra import (
    Cone,
    HPolytope,
    VPolytope,
    dual_cone,
    extreme_rays,
    half_open_member,
    half_open_point_from_relation,
    is_strongly_convex,
    lattice_points,
    lattice_volume,
    membership,
    vertex_enumeration,
)


def cone2(*gens):
    return Cone.from_generators(2, gens)


def same_cone(C, D):
    return all(membership(D, g) for g in C.generators) and all(
        membership(C, g) for g in D.generators
    )


def test_dual_first_orthant():
    C = cone2((1, 0), (0, 1))
    assert same_cone(dual_cone(C), C)


def test_dual_hand_example():
    C = cone2((1, 0), (1, 2))
    D = dual_cone(C)
    assert same_cone(D, cone2((0, 1), (2, -1)))


def test_dual_full_space():
    C = cone2((1, 0), (-1, 0), (0, 1), (0, -1))
    D = dual_cone(C)
    assert D.generators == ()


def test_dual_of_dual():
    for C in [
        cone2((1, 0), (0, 1)),
        cone2((1, 0), (1, 2)),
        cone2((2, 1), (1, 3), (1, 1)),
        Cone.from_generators(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]),
    ]:
        assert same_cone(dual_cone(dual_cone(C)), C)


def test_extreme_rays_redundant():
    assert sorted(extreme_rays(cone2((1, 0), (0, 1), (1, 1)))) == [(0, 1), (1, 0)]


def test_extreme_rays_primitivize():
    assert extreme_rays(cone2((2, 0))) == [(1, 0)]


def test_extreme_rays_not_strongly_convex():
    with pytest.raises(NotStronglyConvex):
        extreme_rays(cone2((1, 0), (-1, 0)))


def test_extreme_rays_irredundant():
    C = cone2((1, 0), (2, 1), (1, 1), (1, 2), (0, 1))
    rays = extreme_rays(C)
    assert sorted(rays) == [(0, 1), (1, 0)]
    for i in range(len(rays)):
        rest = Cone(2, tuple(r for j, r in enumerate(rays) if j != i))
        assert not membership(rest, rays[i])


def test_membership_zero():
    C = cone2((1, 0), (0, 1))
    assert membership(C, (0, 0))
    assert not membership(C, (0, 0), strict=True)


def test_membership_dim1():
    C = Cone.from_generators(1, [(1,)])
    assert membership(C, (1,), strict=True)
    assert not membership(C, (-1,))


def test_membership_strict_boundary():
    C = cone2((1, 0), (0, 1))
    assert membership(C, (1, 0))
    assert not membership(C, (1, 0), strict=True)
    assert membership(C, (1, 1), strict=True)


def test_membership_relative_interior():
    # a ray in R^2: relative interior is the open ray
    C = cone2((1, 1))
    assert membership(C, (2, 2), strict=True)
    assert not membership(C, (0, 0), strict=True)
    assert not membership(C, (1, 0))


def square(n=1):
    return HPolytope.make(
        2,
        [((1, 0), 0), ((0, 1), 0), ((-1, 0), -n), ((0, -1), -n)],
    )


def test_vertex_enumeration_square():
    V = vertex_enumeration(square())
    assert sorted(V.vertices) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_vertex_enumeration_simplex():
    P = HPolytope.make(
        3,
        [((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0)],
        [((1, 1, 1), 1)],
    )
    V = vertex_enumeration(P)
    assert sorted(V.vertices) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_vertex_enumeration_divisor_polytope():
    # {m : <m, u_i> >= -a_i} for the hyperplane divisor (1,0,0) on the 3-ray fan
    P = HPolytope.make(2, [((1, 0), -1), ((0, 1), 0), ((-1, -1), 0)])
    V = vertex_enumeration(P)
    assert sorted(V.vertices) == [(-1, 0), (-1, 1), (0, 0)]
    # after translating by the divisor's vertex this is the standard triangle
    P2 = HPolytope.make(2, [((1, 0), 0), ((0, 1), 0), ((-1, -1), -1)])
    assert sorted(vertex_enumeration(P2).vertices) == [(0, 0), (0, 1), (1, 0)]


def test_vertex_enumeration_unbounded():
    P = HPolytope.make(2, [((1, 0), 0), ((0, 1), 0)])
    with pytest.raises(Unbounded):
        vertex_enumeration(P)


def test_vertex_enumeration_empty():
    P = HPolytope.make(1, [((1,), 1), ((-1,), 0)])
    assert vertex_enumeration(P) == VPolytope(())


def test_lattice_points_square():
    assert sorted(lattice_points(square())) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_lattice_points_twice_triangle():
    P = HPolytope.make(2, [((1, 0), 0), ((0, 1), 0), ((-1, -1), -2)])
    assert len(lattice_points(P)) == 6


def test_lattice_points_unbounded():
    with pytest.raises(Unbounded):
        lattice_points(HPolytope.make(2, [((1, 0), 0), ((0, 1), 0)]))


def std_basis(n):
    return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]


def test_volume_unit_cube():
    P = HPolytope.make(
        3,
        [((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0),
         ((-1, 0, 0), -1), ((0, -1, 0), -1), ((0, 0, -1), -1)],
    )
    assert lattice_volume(P, std_basis(3)) == 1


def test_volume_standard_simplex():
    for d in (2, 3, 4):
        rows = [(tuple(1 if i == j else 0 for j in range(d)), 0) for i in range(d)]
        rows.append((tuple(-1 for _ in range(d)), -1))
        P = HPolytope.make(d, rows)
        import math

        assert lattice_volume(P, std_basis(d)) == Fraction(1, math.factorial(d))


def test_volume_sublattice_normalization():
    # segment from (0,0) to (2,2) against the lattice generated by (1,1)
    P = HPolytope.make(
        2,
        [((1, 0), 0), ((-1, 0), -2)],
        [((1, -1), 0)],
    )
    assert lattice_volume(P, [(1, 1)]) == 2


def test_volume_lower_dimensional():
    P = HPolytope.make(
        2,
        [((1, 0), 0), ((-1, 0), 0), ((0, 1), 0), ((0, -1), -1)],
    )
    with pytest.raises(DimensionMismatch):
        lattice_volume(P, std_basis(2))


def test_volume_empty():
    P = HPolytope.make(1, [((1,), 2), ((-1,), 0)])
    assert lattice_volume(P, std_basis(1)) == 0


def test_volume_scaling_trend():
    # |nP| lattice points over n^d approaches the volume from above-ish;
    # coarse monotone trend with C/n error
    base = [((1, 0), 0), ((0, 1), 0), ((-1, -1), -1)]
    vol = lattice_volume(HPolytope.make(2, base), std_basis(2))
    errs = []
    for n in (3, 4, 5, 6):
        rows = [(a, b * n) for a, b in base]
        count = len(lattice_points(HPolytope.make(2, rows)))
        errs.append(abs(Fraction(count, n * n) - vol))
    assert errs[-1] <= Fraction(3, 6)
    assert errs[0] >= errs[-1]


def test_half_open_member_square():
    gens = [(1, 0), (0, 1)]
    assert not half_open_member(gens, (1, 1))  # needs both coefficients = 1
    assert half_open_member(gens, (0, 0))
    gens = [(1, 0), (1, 0), (0, 1), (0, 1)]
    assert half_open_member(gens, (1, 1))
    assert not half_open_member(gens, (2, 1))


def test_half_open_point_from_relation_projective_classes():
    # all classes equal 1 in Z; relation pi_1 - pi_2 = 0
    vectors = [(1,), (1,), (1,)]
    assert half_open_point_from_relation(vectors, (1, -1, 0)) == (1,)


def test_half_open_point_degenerate():
    vectors = [(1, 1), (1, -1), (-1, 0)]
    with pytest.raises(DegenerateRelation):
        half_open_point_from_relation(vectors, (1, 1, 2))


def test_half_open_point_mixed_sign():
    vectors = [(1, 0), (0, 1), (1, 1)]
    w = half_open_point_from_relation(vectors, (1, 1, -1))
    assert w == (1, 1)
    assert half_open_member(vectors, w)


def test_half_open_point_not_a_relation():
    with pytest.raises(ValueError):
        half_open_point_from_relation([(1, 0), (0, 1)], (1, 1))


def test_strong_convexity():
    assert is_strongly_convex(cone2((1, 0), (0, 1)))
    assert not is_strongly_convex(cone2((1, 0), (-1, 0)))
    assert is_strongly_convex(Cone(2, ()))


small = st.integers(min_value=-4, max_value=4)


@st.composite
def cones(draw):
    dim = draw(st.integers(min_value=2, max_value=3))
    k = draw(st.integers(min_value=1, max_value=4))
    gens = [
        tuple(draw(small) for _ in range(dim))
        for _ in range(k)
    ]
    gens = [g for g in gens if any(x != 0 for x in g)]
    if not gens:
        gens = [tuple([1] + [0] * (dim - 1))]
    return Cone.from_generators(dim, gens)


@settings(max_examples=40, deadline=None)
@given(cones())
def test_dual_dual_property(C):
    assert same_cone(dual_cone(dual_cone(C)), C)


@settings(max_examples=40, deadline=None)
@given(cones())
def test_extreme_rays_property(C):
    if not is_strongly_convex(C):
        return
    rays = extreme_rays(C)
    R = Cone(C.dim, tuple(rays))
    for g in C.generators:
        assert membership(R, g)
    for i in range(len(rays)):
        rest = Cone(C.dim, tuple(r for j, r in enumerate(rays) if j != i))
        assert not membership(rest, rays[i])
