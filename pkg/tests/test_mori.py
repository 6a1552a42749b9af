import pytest

from toricfrob.catalog import (
    SMOOTH_CATALOG,
    catalog,
    delpezzo,
    fatal_example,
    hirzebruch,
    product_fan,
    projective,
)
from toricfrob.classes import class_group
from toricfrob.errors import NotInert, RequiresSmooth
from toricfrob.mori import (
    blowdown_chain,
    eff_equals_nef,
    extremal_contractions,
    is_birationally_inert_fano,
    is_extremal_fano,
    is_fano,
    is_projective_space,
    is_weak_fano,
    mori_cone,
)
from toricfrob.polyhedra import extreme_rays


def test_mori_cone_ray_counts():
    assert len(extreme_rays(mori_cone(projective(2)))) == 1
    assert len(extreme_rays(mori_cone(product_fan(1, 1)))) == 2
    assert len(extreme_rays(mori_cone(fatal_example()))) == 2
    assert len(extreme_rays(mori_cone(catalog("zero_nef_surface")))) == 7


def test_contractions_delpezzo1():
    infos = extremal_contractions(delpezzo(1))
    kinds = sorted(i.kind for i in infos)
    assert kinds == ["divisorial", "fibration"]
    div = next(i for i in infos if i.kind == "divisorial")
    assert div.inert and div.smooth_blowup
    fib = next(i for i in infos if i.kind == "fibration")
    assert fib.fiber_dim + 1 == fib.length


def test_contractions_fatal():
    infos = extremal_contractions(fatal_example())
    div = next(i for i in infos if i.kind == "divisorial")
    assert div.inert
    assert div.relation.coefficients == (0, 3, 2, 0, -1)
    assert not div.smooth_blowup  # fan is singular
    assert len(infos) == 2


def test_contractions_hirzebruch2():
    infos = extremal_contractions(hirzebruch(2))
    div = next(i for i in infos if i.kind == "divisorial")
    assert not div.inert  # negative coefficient 2
    fib = next(i for i in infos if i.kind == "fibration")
    assert fib.degree == 2


def test_no_classification_conflicts_on_catalog():
    for name in SMOOTH_CATALOG + ["fatal_example", "zero_nef_surface"]:
        for info in extremal_contractions(catalog(name)):
            assert not info.classification_conflict, name
            assert info.matches


def test_fano_verdicts():
    assert is_fano(projective(3))
    assert is_fano(delpezzo(3))
    s2 = hirzebruch(2)
    assert not is_fano(s2) and is_weak_fano(s2)
    s3 = hirzebruch(3)
    assert not is_weak_fano(s3)


def test_fano_iff_all_degrees_positive():
    for name in SMOOTH_CATALOG + ["fatal_example", "zero_nef_surface"]:
        fan = catalog(name)
        degrees_positive = all(i.degree > 0 for i in extremal_contractions(fan))
        assert is_fano(fan) == degrees_positive, name


def test_is_projective_space():
    assert is_projective_space(projective(3))
    assert not is_projective_space(product_fan(1, 2))
    assert not is_projective_space(delpezzo(1))
    with pytest.raises(RequiresSmooth):
        is_projective_space(fatal_example())


def test_projective_space_iff_rank_one_smooth():
    for name in SMOOTH_CATALOG:
        fan = catalog(name)
        assert is_projective_space(fan) == (class_group(fan).rank == 1), name


def test_extremal_fano():
    for k in (1, 2, 3):
        assert is_extremal_fano(delpezzo(k))
    assert is_extremal_fano(projective(2))
    assert is_extremal_fano(product_fan(1, 1))
    assert is_extremal_fano(product_fan(1, 1, 1))
    assert not is_extremal_fano(hirzebruch(2))
    assert not is_extremal_fano(hirzebruch(3))
    with pytest.raises(RequiresSmooth):
        is_extremal_fano(fatal_example())


def test_birationally_inert_fano():
    assert is_birationally_inert_fano(fatal_example())
    assert not is_birationally_inert_fano(hirzebruch(2))
    assert is_birationally_inert_fano(projective(3))


def test_blowdown_chain_p2_empty():
    assert blowdown_chain(projective(2)) == []


def test_blowdown_chain_delpezzo3():
    chain = blowdown_chain(delpezzo(3))
    assert 1 <= len(chain) <= 3
    terminal = chain[-1][0]
    assert eff_equals_nef(class_group(terminal))
    ranks = [class_group(f).rank for f, _ in chain]
    assert all(a - 1 == b for a, b in zip([class_group(delpezzo(3)).rank] + ranks, ranks))


def test_blowdown_chain_fatal():
    chain = blowdown_chain(fatal_example())
    assert len(chain) == 1
    terminal = chain[-1][0]
    assert terminal.dim == 3 and terminal.r == 4 and terminal.s == 4
    assert eff_equals_nef(class_group(terminal))


def test_blowdown_chain_rejects_non_inert():
    with pytest.raises(NotInert):
        blowdown_chain(hirzebruch(2))


def test_lengths_on_smooth_catalog():
    for name in SMOOTH_CATALOG:
        fan = catalog(name)
        for info in extremal_contractions(fan):
            if info.kind == "fibration":
                assert info.length == info.fiber_dim + 1, name
            elif info.kind == "divisorial":
                assert info.length <= info.fiber_dim + 1, name
