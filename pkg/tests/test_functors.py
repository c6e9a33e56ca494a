import numpy as np

from taylortower.chain import (ChainMap, free_module, identity_map, is_quasi_iso,
                               random_complex, scalar_map, zero_complex)
from taylortower.diagrams import holim
from taylortower.functors import (constant_functor, double_functor, identity_functor,
                                  shift_functor, square_functor, tensor_functor,
                                  unit_into_tensor)
from taylortower.generators import random_diagram
from taylortower.groth import PUNCTURED, powerset
from taylortower.simp import normalized_chains, standard_simplex

BUILTINS = [identity_functor, double_functor, lambda: shift_functor(1), square_functor,
            lambda: constant_functor(free_module(1, 0))]


def test_functoriality(rng):
    X = random_complex(rng, max_rank=2)
    pairs = [(scalar_map(X, 2), scalar_map(X, 3)), (identity_map(X), scalar_map(X, -1))]
    for make in BUILTINS:
        assert make().check_functorial(pairs) == []


def test_homology_of_builtins():
    Z = free_module(1, 0)
    assert double_functor().obj(Z).homology().betti(0) == 2
    assert shift_functor(2).obj(Z).homology().betti(2) == 1
    assert square_functor().obj(free_module(1, 1)).homology().betti(2) == 1
    assert constant_functor(Z).obj(zero_complex()).homology() == Z.homology()


def test_flags():
    assert identity_functor().preserves_zero and not square_functor().exact_on_fiber_squares
    assert not constant_functor(free_module(1, 0)).preserves_zero
    assert constant_functor(zero_complex()).preserves_zero


def test_cache_reuses_values(rng):
    F = double_functor()
    X = random_complex(rng)
    assert F.obj(X) is F.obj(X)


def test_holim_comparison_for_weighted_functor(rng):
    D = random_diagram(powerset(2, PUNCTURED), rng, max_rank=1)
    F = tensor_functor(free_module(2, 1))
    H = holim(D)
    HF = holim(D.apply(F))
    c = F.holim_comparison(H, HF)
    assert not c.check() and is_quasi_iso(c)


def test_unit_into_contractible_tensor(rng):
    eta = unit_into_tensor(normalized_chains(standard_simplex(1)), 0)
    X = random_complex(rng)
    assert is_quasi_iso(eta.at(X))
    assert eta.check_natural(scalar_map(X, 2))
