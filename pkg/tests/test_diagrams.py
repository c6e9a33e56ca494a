import numpy as np
import pytest

from taylortower.chain import (ChainMap, free_module, identity_map, is_quasi_iso,
                               random_complex, scalar_map, zero_complex)
from taylortower.diagrams import (Diagram, chf, cocone_from_hocolim, cone_into_holim,
                                  fiber_projection, hocolim, hocolim_inclusion, hocolim_map,
                                  holim, holim_map, holim_projection)
from taylortower.fincat import CatFunctor, FinCat, linear_order, pb, po
from taylortower.generators import random_diagram
from taylortower.groth import PUNCTURED, powerset

Z = free_module(1, 0)
O = zero_complex()


def test_suspension_and_loop():
    S = hocolim(Diagram(po(), {0: O, 1: Z, 2: O}, {"l": ChainMap(Z, O), "r": ChainMap(Z, O)}))
    assert S.complex.homology() == Z.homology().shifted(1)
    L = holim(Diagram(pb(), {0: O, 1: Z, 2: O}, {"l": ChainMap(O, Z), "r": ChainMap(O, Z)}))
    assert L.complex.homology() == Z.homology().shifted(-1)


def test_product_over_discrete_shape(rng):
    A, B = random_complex(rng), random_complex(rng)
    H = holim(Diagram(FinCat.discrete(["a", "b"]), {"a": A, "b": B})).complex.homology()
    assert H.euler() == A.euler() + B.euler()


@pytest.fixture
def chain_of_scalars(rng):
    A = random_complex(rng, max_rank=3)
    C = linear_order(2)
    X = Diagram(C, {0: A, 1: A, 2: A},
                {(0, 1): scalar_map(A, 2), (1, 2): scalar_map(A, 3), (0, 2): scalar_map(A, 6)},
                check=True)
    return A, C, X


def test_terminal_and_initial_objects_are_cofinal(chain_of_scalars):
    A, C, X = chain_of_scalars
    H, L = hocolim(X), holim(X)
    assert not H.complex.check() and not L.complex.check()
    assert is_quasi_iso(hocolim_inclusion(H, 2))
    assert is_quasi_iso(holim_projection(L, 0))


def test_maps_along_functors(chain_of_scalars):
    A, C, X = chain_of_scalars
    I = linear_order(1)
    u = CatFunctor(I, C, {0: 0, 1: 2}, {("id", 0): ("id", 0), ("id", 1): ("id", 2), (0, 1): (0, 2)})
    Y = X.restrict(u)
    ids = {0: identity_map(A), 1: identity_map(A)}
    m = holim_map(u, holim(X), holim(Y), ids)
    assert not m.check() and is_quasi_iso(m)
    m2 = hocolim_map(u, hocolim(Y), hocolim(X), ids)
    assert not m2.check() and is_quasi_iso(m2)


def test_cones_and_cocones(chain_of_scalars):
    A, C, X = chain_of_scalars
    cn = cone_into_holim(A, holim(X), {0: identity_map(A), 1: scalar_map(A, 2),
                                       2: scalar_map(A, 6)})
    assert not cn.check() and is_quasi_iso(cn)
    cc = cocone_from_hocolim(hocolim(X), A, {0: scalar_map(A, 6), 1: scalar_map(A, 3),
                                             2: identity_map(A)})
    assert not cc.check() and is_quasi_iso(cc)


def test_homotopy_fiber(rng):
    A = random_complex(rng)
    assert chf(identity_map(A)).complex.is_acyclic()
    pr = fiber_projection(chf(ChainMap(A, O)))
    assert not pr.check() and is_quasi_iso(pr)


def test_random_diagrams_are_functorial(rng):
    for J in (powerset(2, PUNCTURED), linear_order(2), powerset(2)):
        X = random_diagram(J, rng)
        assert not X.check()
        assert not holim(X).complex.check() and not hocolim(X).complex.check()


def test_diagram_check_reports_non_functoriality():
    C = linear_order(2)
    X = Diagram(C, {0: Z, 1: Z, 2: Z},
                {(0, 1): scalar_map(Z, 2), (1, 2): scalar_map(Z, 3), (0, 2): scalar_map(Z, 5)})
    assert X.check()
