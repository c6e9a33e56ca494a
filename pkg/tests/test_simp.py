import pytest

from taylortower.chain import free_module
from taylortower.fincat import arrow_category, pb
from taylortower.groth import PUNCTURED, powerset
from taylortower.simp import (FinSimpSet, boundary_simplex, circle, nerve, nerve_iso_product,
                              normalized_chains, sset_product, standard_simplex)

POINT = free_module(1, 0).homology()


@pytest.mark.parametrize("n", range(1, 5))
def test_punctured_cube_nerve_contractible(n):
    N = nerve(powerset(n, PUNCTURED))
    assert not N.check()
    assert normalized_chains(N).homology() == POINT


def test_circle_and_boundary():
    for K in (circle(), boundary_simplex(2)):
        H = normalized_chains(K).homology()
        assert H.betti(0) == 1 and H.betti(1) == 1


def test_sphere():
    H = normalized_chains(boundary_simplex(3)).homology()
    assert H.betti(0) == 1 and H.betti(1) == 0 and H.betti(2) == 1


def test_products():
    P = sset_product(standard_simplex(1), standard_simplex(1))
    assert P.f_vector() == (4, 5, 2) and not P.check()
    T = sset_product(circle(), circle())
    H = normalized_chains(T).homology()
    assert (H.betti(0), H.betti(1), H.betti(2)) == (1, 2, 1)


def test_nerve_of_product():
    m, NP, PP = nerve_iso_product(arrow_category(), pb())
    assert len(set(m.values())) == sum(NP.f_vector())


def test_json_round_trip():
    K = circle()
    K2 = FinSimpSet.from_json(K.to_json())
    assert K2.f_vector() == K.f_vector()


def test_nerve_rejects_loops():
    from taylortower.fincat import FinCat
    C = FinCat.build([0], [("e", 0, 0)], {("e", "e"): ("id", 0)})
    with pytest.raises(ValueError):
        nerve(C)
