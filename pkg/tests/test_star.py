import pytest

from taylortower.chain import is_quasi_iso, random_complex, zero_map
from taylortower.fincat import linear_order
from taylortower.star import (star, star_h, star_h_comparison, star_h_inclusion, star_h_on_map,
                              star_h_unit, star_inclusion, star_on_map, star_set, star_unit)


def test_small_sets(rng):
    for _ in range(5):
        X = random_complex(rng)
        assert is_quasi_iso(star_unit((), X))
        assert star_set((1,), X).complex.is_acyclic()
        assert star_set((1, 2), X).complex.homology() == X.homology().shifted(1)


def test_three_points_double_suspension_rank(rng):
    X = random_complex(rng)
    H = star_set((1, 2, 3), X).complex.homology()
    # a wedge of two suspensions
    assert H.euler() == -2 * X.euler()


def test_star_over_linear_order_is_acyclic(rng):
    assert star(linear_order(2), random_complex(rng)).complex.is_acyclic()


@pytest.mark.parametrize("S", [(1,), (1, 2), (1, 2, 3)])
def test_spider_comparison(rng, S):
    X = random_complex(rng)
    c = star_h_comparison(S, X)
    assert not c.check() and is_quasi_iso(c)
    assert star_h_unit(S, X).then(c).equals(star_unit(S, X))


def test_naturality_in_the_set(rng):
    X = random_complex(rng)
    ih, i = star_h_inclusion((1,), (1, 2), X), star_inclusion((1,), (1, 2), X)
    assert not ih.check() and not i.check()
    assert ih.then(star_h_comparison((1, 2), X)).equals(star_h_comparison((1,), X).then(i))


def test_functoriality_in_the_complex(rng):
    X, Y = random_complex(rng), random_complex(rng)
    g = zero_map(X, Y)
    assert not star_on_map((1, 2), g).check()
    assert not star_h_on_map((1, 2), g).check()


def test_empty_set_rejected_for_spider(rng):
    with pytest.raises(ValueError):
        star_h((), random_complex(rng))
