import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from taylortower.chain import (ChainComplex, ChainMap, cone, cone_inclusion, cone_projection,
                               dsum, free_module, hom_complex, identity_map, is_quasi_iso,
                               random_complex, same_on_homology, scalar_map, shift, tensor,
                               tensor_maps, zero_complex, zero_map)
from taylortower.fincat import GuardError
from taylortower.snf import image_basis, invariant_factors, kernel_basis, solve_rational

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_moore_complex_has_torsion():
    H = ChainComplex({0: 1, 1: 1}, {1: [[2]]}).homology()
    assert H.torsion(0) == (2,) and H.betti(0) == 0 and H.betti(1) == 0
    assert str(H) == "H0=Z/2"


def test_bad_differential_rejected():
    with pytest.raises(ValueError):
        ChainComplex({0: 1, 1: 1, 2: 1}, {1: [[1]], 2: [[1]]}, check=True)


def test_invariant_factors_diagonal():
    assert invariant_factors(np.array([[2, 0], [0, 3]])) == [1, 6]
    assert invariant_factors(np.array([[0, 0], [0, 0]])) == []


def test_kernel_and_image_bases():
    M = np.array([[1, 2, 3], [2, 4, 6]])
    K = kernel_basis(M)
    assert len(K) == 2 and all(not (M @ np.array(v)).any() for v in K)
    assert len(image_basis(M)) == 1
    assert solve_rational([[1, 0], [0, 2]], [3, 4]) is not None
    assert solve_rational([[1, 1]], [1, 0]) is None


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_random_complexes_are_complexes(seed):
    C = random_complex(np.random.default_rng(seed))
    assert not C.check()
    assert C.homology().euler() == C.euler()


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_cone_of_identity_acyclic(seed):
    C = random_complex(np.random.default_rng(seed))
    assert cone(identity_map(C)).is_acyclic()


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_cone_maps_are_chain_maps(seed):
    rng = np.random.default_rng(seed)
    C = random_complex(rng)
    f = scalar_map(C, 2)
    assert not cone_inclusion(f).check() and not cone_projection(f).check()


@settings(max_examples=15, deadline=None)
@given(seeds, seeds)
def test_tensor_kunneth_euler(a, b):
    A = random_complex(np.random.default_rng(a), max_rank=2)
    B = random_complex(np.random.default_rng(b), max_rank=2)
    T = tensor(A, B)
    assert not T.check()
    assert T.euler() == A.euler() * B.euler()


def test_tensor_with_unit_is_identity(rng):
    C = random_complex(rng)
    assert tensor(C, free_module(1, 0)).homology() == C.homology()


def test_shift_moves_homology(rng):
    C = random_complex(rng)
    assert shift(C, 2).homology() == C.homology().shifted(2)
    assert not shift(C, 1).check()


def test_hom_complex_is_complex(rng):
    A, B = random_complex(rng), random_complex(rng)
    H, _ = hom_complex(A, B)
    assert not H.check()


def test_quasi_iso_verdicts(rng):
    C = random_complex(rng)
    assert is_quasi_iso(identity_map(C))
    Z = free_module(1, 0)
    assert not is_quasi_iso(scalar_map(Z, 2))
    assert is_quasi_iso(scalar_map(Z, -1))
    assert not is_quasi_iso(zero_map(Z, zero_complex()))


def test_same_on_homology_sees_boundaries():
    C = ChainComplex({0: 1, 1: 1}, {1: [[1]]})
    assert same_on_homology(identity_map(C), zero_map(C, C))
    Z = free_module(1, 0)
    assert not same_on_homology(identity_map(Z), zero_map(Z, Z))


def test_tensor_maps_functorial(rng):
    A, B = random_complex(rng, max_rank=2), random_complex(rng, max_rank=2)
    f, g = scalar_map(A, 2), scalar_map(B, 3)
    assert tensor_maps(f, g).equals(scalar_map(tensor(A, B), 6))


def test_direct_sum_adds_homology():
    Z0, Z1 = free_module(1, 0), free_module(1, 1)
    H = dsum(Z0, Z1).homology()
    assert H.betti(0) == 1 and H.betti(1) == 1


def test_json_round_trip(rng):
    C = random_complex(rng)
    D = ChainComplex.from_json(C.to_json())
    assert D.fingerprint == C.fingerprint


def test_tensor_size_guard():
    with pytest.raises(GuardError):
        tensor(free_module(1000, 0), free_module(1000, 0))
