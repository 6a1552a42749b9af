import random
from fractions import Fraction

import pytest

from toricfrob.catalog import (
    SMOOTH_CATALOG,
    catalog,
    delpezzo,
    fatal_example,
    hirzebruch,
    product_fan,
    projective,
    weighted_projective,
)
from toricfrob.classes import (
    ClassElement,
    anticanonical,
    big_test,
    class_group,
    eff_cone,
    h0,
    intersection_number,
    moving_cone,
    nef_cone,
    numerical_class,
)
from toricfrob.errors import NotARelation
from toricfrob.fan import make_fan
from toricfrob.polyhedra import extreme_rays, is_strongly_convex, membership


def test_class_group_p2():
    cg = class_group(projective(2))
    assert cg.rank == 1 and cg.torsion_factors == ()
    assert all(c.free in [(1,), (-1,)] for c in cg.ray_classes)
    assert len({c.free for c in cg.ray_classes}) == 1


def test_class_group_p1xp1():
    cg = class_group(product_fan(1, 1))
    assert cg.rank == 2
    frees = sorted(cg.pi_free)
    # two pairs of equal classes forming a basis
    assert frees[0] == frees[1] and frees[2] == frees[3]
    assert frees[0] != frees[2]


def test_class_group_weighted():
    cg = class_group(weighted_projective(1, 1, 2))
    assert cg.rank == 1 and cg.torsion_factors == ()
    weights = sorted(abs(c.free[0]) for c in cg.ray_classes)
    assert weights == [1, 1, 2]


def test_class_group_torsion():
    # index-3 sublattice quotient of the plane: Z + Z/3
    fan = make_fan(2, [(1, 1), (1, -2), (-2, 1)], [(0, 1), (0, 2), (1, 2)])
    cg = class_group(fan)
    assert cg.rank == 1
    assert cg.torsion_factors == (3,)
    assert cg.e0(3) == 1 and cg.e0(2) == 0


def test_projection_section_roundtrip():
    for name in ["projective(2)", "hirzebruch(2)", "fatal_example", "delpezzo(3)"]:
        cg = class_group(catalog(name))
        rng = random.Random(7)
        for _ in range(10):
            div = [rng.randint(-4, 4) for _ in range(cg.r)]
            elem = cg.project(div)
            rep = cg.representative(elem)
            assert cg.project(rep) == elem


def test_numerical_class_examples():
    cg = class_group(projective(2))
    assert numerical_class(cg, [0, 0, 0]).is_zero
    assert anticanonical(cg).free == (3,) or anticanonical(cg).free == (-3,)
    cg2 = class_group(hirzebruch(2))
    pi = cg2.pi_free
    assert pi[0] == pi[2]
    assert pi[3] == tuple(a + 2 * b for a, b in zip(pi[1], pi[2]))


def test_rank_is_r_minus_d():
    for name in SMOOTH_CATALOG + ["fatal_example", "weighted_projective(1,2,3)"]:
        fan = catalog(name)
        assert class_group(fan).rank == fan.r - fan.dim


def test_eff_cone_strongly_convex():
    for name in SMOOTH_CATALOG + ["fatal_example", "zero_nef_surface"]:
        assert is_strongly_convex(eff_cone(class_group(catalog(name))))


def test_big_examples():
    cg = class_group(projective(2))
    eta = cg.ray_classes[0]
    assert big_test(cg, eta)
    assert not big_test(cg, cg.num_class((0,)))
    cgf = class_group(fatal_example())
    # the two effective boundary generators are not big
    eff = eff_cone(cgf)
    for ray in extreme_rays(eff):
        assert not big_test(cgf, cgf.num_class(ray))


def test_nef_cone_p2_and_p1xp1():
    cg = class_group(projective(2))
    nef = nef_cone(cg)
    assert sorted(nef.generators) == sorted(eff_cone(cg).generators)
    cg2 = class_group(product_fan(1, 1))
    nef2 = nef_cone(cg2)
    assert sorted(nef2.generators) == sorted(eff_cone(cg2).generators)


def test_nef_cone_hirzebruch():
    cg = class_group(hirzebruch(2))
    nef = nef_cone(cg)
    eff = eff_cone(cg)
    # nef strictly inside eff: the negative-section class is effective not nef
    sigma = cg.pi_free[1]
    assert membership(eff, sigma)
    assert not membership(nef, sigma)
    fiber = cg.pi_free[0]
    assert membership(nef, fiber)


def test_nef_subset_mov_subset_eff():
    for name in SMOOTH_CATALOG + ["fatal_example", "zero_nef_surface"]:
        cg = class_group(catalog(name))
        eff, mov, nef = eff_cone(cg), moving_cone(cg), nef_cone(cg)
        for g in nef.generators:
            assert membership(mov, g), name
        for g in mov.generators:
            assert membership(eff, g), name


def test_moving_cone_delpezzo1():
    cg = class_group(delpezzo(1))
    mov = moving_cone(cg)
    eff = eff_cone(cg)
    exceptional = cg.pi_free[3]
    assert membership(eff, exceptional)
    assert not membership(mov, exceptional)


def test_intersection_numbers():
    cg = class_group(projective(2))
    eta = cg.ray_classes[0]
    assert intersection_number(cg, eta, (1, 1, 1)) == 1
    assert intersection_number(cg, anticanonical(cg), (1, 1, 1)) == 3
    with pytest.raises(NotARelation):
        intersection_number(cg, eta, (1, 0, 0))


def test_intersection_fatal():
    cg = class_group(fatal_example())
    rel = (0, 3, 2, 0, -1)
    p5 = cg.ray_classes[4]
    assert intersection_number(cg, p5, rel) == -1


def test_intersection_representative_independent():
    cg = class_group(hirzebruch(2))
    fan = cg.fan
    rng = random.Random(3)
    rel = (1, -2, 1, 0)
    base = [1, 2, 0, -1]
    val = intersection_number(cg, base, rel)
    for _ in range(8):
        chi = [rng.randint(-3, 3) for _ in range(fan.dim)]
        shifted = [
            base[i] + sum(chi[j] * fan.rays[i][j] for j in range(fan.dim))
            for i in range(fan.r)
        ]
        assert intersection_number(cg, shifted, rel) == val


def test_smooth_classes_torsion_free():
    for name in SMOOTH_CATALOG:
        cg = class_group(catalog(name))
        assert cg.torsion_factors == ()


def test_anticanonical_degree_hirzebruch():
    cg = class_group(hirzebruch(2))
    assert intersection_number(cg, anticanonical(cg), (1, -2, 1, 0)) == 0


def test_h0_examples():
    fan = projective(2)
    assert h0(fan, [0, 0, 0]) == 1
    assert h0(fan, [2, 0, 0]) == 6
    assert h0(fan, [-1, 0, 0]) == 0
