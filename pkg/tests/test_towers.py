import pytest

from oblique import (
    CapExceeded,
    PermGroup,
    cyclic_tower,
    fitting,
    fitting_degenerate_tower,
    ji_certificate,
    pi_core,
    tower_fitting_sequence,
    tower_ob_sequence,
    wreath_tower,
)
from oblique.arith import legendre_factorial_valuation


# ---------------------------------------------------------------------------
# construction


def test_cyclic_tower_orders():
    t = cyclic_tower(2, 3)
    assert [G.order for G in t.levels] == [2, 4, 8]
    t = cyclic_tower(3, 2)
    assert [G.order for G in t.levels] == [3, 9]


def test_wreath_tower_orders():
    t = wreath_tower(2, 3)
    assert [G.order for G in t.levels] == [2, 8, 128]
    t = wreath_tower(3, 2)
    assert [G.order for G in t.levels] == [3, 81]


def test_wreath_levels_are_sylow_of_symmetric():
    for p, depth in ((2, 3), (3, 2)):
        t = wreath_tower(p, depth)
        for k, W in enumerate(t.levels, start=1):
            assert W.order == p ** legendre_factorial_valuation(p**k, p)
            assert W.degree == p**k


def test_fitting_tower_orders():
    t = fitting_degenerate_tower((2, 3), 2)
    assert [G.order for G in t.levels] == [2, 18]
    assert fitting(t.levels[1]).order == 9
    t = fitting_degenerate_tower((2, 3, 2), 3)
    assert [G.order for G in t.levels] == [2, 18, 2**9 * 18]


def test_tower_maps_are_surjective_and_compose():
    for t in (cyclic_tower(2, 4), wreath_tower(2, 3), fitting_degenerate_tower((2, 3), 2)):
        for hom in t.maps:
            assert hom.is_surjective()
        top = len(t.levels) - 1
        pi = t.projection(top, 0)
        # composition maps level top onto level 0
        assert pi.image_of_group(t.levels[top]).same_group(t.levels[0])
        # identity projection
        ident = t.projection(1, 1)
        g = t.levels[1].generators[0]
        assert ident.apply(g) == g


def test_cyclic_tower_is_canonical_reduction():
    t = cyclic_tower(2, 3)
    g8 = t.levels[2].generators[0]  # an 8-cycle
    g4 = t.maps[1].apply(g8)
    assert g4.order() == 4
    # reduction mod 4 of the generator is the level-2 generator
    assert g4 == t.levels[1].generators[0]


def test_tower_validation_errors():
    with pytest.raises(ValueError):
        cyclic_tower(2, 0)
    with pytest.raises(ValueError):
        fitting_degenerate_tower((2, 2), 2)
    with pytest.raises(ValueError):
        fitting_degenerate_tower((2, 3), 5)
    with pytest.raises(ValueError):
        fitting_degenerate_tower((2,), 2)


def test_fitting_tower_degree_overflow_message():
    with pytest.raises(CapExceeded) as err:
        fitting_degenerate_tower((2, 3, 2, 3), 4)
    assert "3^512" in str(err.value)


def test_fitting_tower_faithful_action():
    # the glued elementary abelian group is exactly the p-core of its level,
    # and the previous level's prime contributes no normal p-subgroup
    t = fitting_degenerate_tower((2, 3), 2)
    G2 = t.levels[1]
    assert pi_core(G2, {3}).order == 9
    assert pi_core(G2, {2}).order == 1


# ---------------------------------------------------------------------------
# ob sequences along towers


def test_ob_sequence_cyclic_2_6():
    t = cyclic_tower(2, 6)
    values, stable = tower_ob_sequence(t, 5)
    assert values == [2, 4, 4, 4, 4, 4]
    assert stable


def test_ob_sequence_cyclic_3_4():
    t = cyclic_tower(3, 4)
    values, stable = tower_ob_sequence(t, 10)
    assert values == [3, 9, 9, 9]
    assert stable


def test_ob_sequence_n1_all_trivial():
    t = cyclic_tower(2, 5)
    values, stable = tower_ob_sequence(t, 1)
    assert values == [1, 1, 1, 1, 1]
    assert stable


def test_ob_sequence_unstable_when_growing():
    # for n = p^k the cyclic tower's ob keeps growing with the level
    t = cyclic_tower(2, 4)
    values, stable = tower_ob_sequence(t, 16)
    assert values == [2, 4, 8, 16]
    assert not stable


# ---------------------------------------------------------------------------
# Fitting sequences


def test_fitting_sequence_nilpotent_towers_are_flat():
    for t in (cyclic_tower(2, 4), wreath_tower(2, 3), cyclic_tower(3, 3)):
        assert tower_fitting_sequence(t) == [1] * len(t.levels)


def test_fitting_sequence_degenerate_tower_grows():
    t = fitting_degenerate_tower((2, 3, 2), 3)
    assert tower_fitting_sequence(t) == [1, 2, 18]


# ---------------------------------------------------------------------------
# ji certificates


def test_ji_certificate_examples():
    t = cyclic_tower(2, 5)
    assert ji_certificate(t, [(5, 4)]) == [True] * 5
    assert ji_certificate(t, [(5, 2)]) == [True, False, False, False, False]
    assert ji_certificate(t, [(1, 1), (5, 4)]) == [True] * 5
    assert ji_certificate(t, []) == [True] * 5
