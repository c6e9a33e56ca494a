import pytest

from taylortower.chain import (cotensor, free_module, is_quasi_iso, random_complex,
                               zero_complex)
from taylortower.fincat import GuardError, terminal
from taylortower.functors import (constant_functor, double_functor, identity_functor,
                                  square_functor, tensor_functor, unit_into_tensor)
from taylortower.groth import PUNCTURED, powerset
from taylortower.simp import circle, nerve, normalized_chains, standard_simplex
from taylortower.tower import Tower, apply_tn, aux_tower, p_n, t_n, tower_map

Z = free_module(1, 0)


def test_identity_tower():
    assert t_n(identity_functor(), 0).obj(Z).is_acyclic()
    u = t_n(identity_functor(), 1).unit(Z)
    assert not u.check() and is_quasi_iso(u)
    tw = Tower(identity_functor(), Z)
    assert tw.stage(0).value.is_acyclic()
    assert tw.stage(1).stabilized and tw.stage(1).iterates == 1
    assert tw.stage(1).value.homology() == Z.homology()
    assert tower_map(tw, 0).quasi_iso is False
    r = tower_map(tw, 1)
    assert r.quasi_iso and r.commutes_on_homology


def test_quadratic_tower():
    tw = Tower(square_functor(), Z, max_iter=2)
    assert not tw.stage(1).stabilized
    assert tw.stage(2).stabilized and tw.stage(3).stabilized
    assert tower_map(tw, 2).quasi_iso is True
    q1 = tower_map(tw, 1)
    assert q1.quasi_iso is False and q1.witness


def test_constant_tower():
    tw = Tower(constant_functor(Z), normalized_chains(circle()))
    for n in range(3):
        assert tw.stage(n).value.homology() == Z.homology()


@pytest.mark.parametrize("n", [0, 1, 2])
def test_value_at_zero_is_cotensor(n):
    for F in (identity_functor(), constant_functor(Z), double_functor()):
        lhs = t_n(F, n).obj(zero_complex()).homology()
        rhs = cotensor(F.obj(zero_complex()), nerve(powerset(n + 1, PUNCTURED))).homology()
        assert lhs == rhs


def test_tn_of_quasi_iso(rng):
    eta = unit_into_tensor(normalized_chains(standard_simplex(1)), 0)
    T, G = t_n(eta.source, 1), t_n(eta.target, 1)
    m = apply_tn(T, eta, G).at(random_complex(rng, max_rank=2, span=2))
    assert not m.check() and is_quasi_iso(m)


@pytest.mark.parametrize("make", [identity_functor, double_functor,
                                  lambda: constant_functor(Z),
                                  lambda: tensor_functor(free_module(2, 1))])
def test_aux_comparison(make, rng):
    X = random_complex(rng, max_rank=2)
    for n in (0, 1):
        assert aux_tower(make(), X, n).quasi_iso


def test_aux_comparison_unstabilized_level():
    r = aux_tower(square_functor(), Z, 1, max_iter=2)
    assert r.method == "iterate-wise" and r.quasi_iso


def test_general_index_point():
    T = t_n(identity_functor(), 1, index=terminal())
    assert is_quasi_iso(T.unit(Z))


def test_stage_json():
    s = p_n(identity_functor(), Z, 1)
    j = s.to_json()
    assert j["stabilized"] and j["iterates"] == 1


def test_max_iter_validated():
    with pytest.raises(ValueError):
        p_n(identity_functor(), Z, 1, max_iter=0)
