import numpy as np
import pytest

from taylortower import cocartesian as cc
from taylortower.chain import ChainMap, free_module, is_quasi_iso, random_complex, zero_complex
from taylortower.diagrams import Diagram
from taylortower.fincat import GuardError
from taylortower.generators import cofibration_cube, constant_cube, random_diagram
from taylortower.groth import powerset


def _square(vals, mats):
    P = powerset(2)
    return Diagram(P, vals, {f: ChainMap(vals[P.src(f)], vals[P.dst(f)],
                                         {0: np.array(mats[f])} if f in mats else {})
                             for f in P.non_identity}, check=True)


def test_strict_pushout_is_cocartesian():
    Z1, Z2, Z3 = (free_module(r, 0) for r in (1, 2, 3))
    mats = {((), (1,)): [[1], [0]], ((), (2,)): [[1], [0]], ((), (1, 2)): [[1], [0], [0]],
            ((1,), (1, 2)): [[1, 0], [0, 1], [0, 0]], ((2,), (1, 2)): [[1, 0], [0, 0], [0, 1]]}
    c = cc.cube_classify(_square({(): Z1, (1,): Z2, (2,): Z2, (1, 2): Z3}, mats))
    assert c.ho_cocartesian and c.cofibration_cube


def test_zero_square_is_not_cocartesian():
    O = zero_complex()
    c = cc.cube_classify(_square({(): O, (1,): O, (2,): O, (1, 2): free_module(1, 0)}, {}))
    assert not c.ho_cocartesian


@pytest.mark.parametrize("n", [1, 2, 3])
def test_constant_cubes(n, rng):
    c = cc.cube_classify(constant_cube(powerset(n), random_complex(rng)))
    assert c.ho_cocartesian and c.strongly_ho_cocartesian and c.cofibration_cube


def test_nerve_path_agrees(rng):
    for k in range(8):
        X = random_diagram(powerset(2 + k % 2), rng, max_rank=1)
        c, b = cc.cube_classify(X), cc.brute_classify(X)
        assert c.ho_cocartesian == b["ho_cocartesian"]
        assert c.strongly_ho_cocartesian == b["strongly_ho_cocartesian"] == cc.strongly_by_faces(X)


def test_latching_maps_are_chain_maps(rng):
    X = random_diagram(powerset(3), rng, max_rank=1)
    for S in [(1, 2), (1, 3), (1, 2, 3)]:
        assert not cc.latching_map(X, S).check()
        assert not cc.latching_map_by_nerve(X, S).check()


def test_cofibration_cubes(rng):
    for k in range(8):
        X, births = cofibration_cube(2 + k % 2, rng)
        e = cc.cofibration_equivalence(X)
        assert e.cofibration_cube and e.holds


def test_non_split_latching_is_not_cofibration():
    Z = free_module(1, 0)
    # X(∅) -> X(1) is multiplication by 2
    c = cc.cube_classify(_square({(): Z, (1,): Z, (2,): Z, (1, 2): Z},
                                 {((), (1,)): [[2]], ((), (2,)): [[1]], ((), (1, 2)): [[2]],
                                  ((1,), (1, 2)): [[1]], ((2,), (1, 2)): [[2]]}))
    assert not c.cofibration_cube


def test_rezk_objects(rng):
    for k in range(4):
        n = 1 + k % 2
        X = random_diagram(powerset(n + 1), rng, max_rank=1)
        R = cc.rezk_objects(X, (1,) if k < 2 else (1, 2), ())
        assert not R.XU_to_X2.check() and not R.X2_to_star_h.check()
        assert is_quasi_iso(R.XU_to_X2)


def test_rezk_constant_and_single_leg(rng):
    C = random_complex(rng, max_rank=2)
    R = cc.rezk_objects(constant_cube(powerset(3), C), (1, 2), (3,))
    assert R.X2.complex.homology() == C.homology()
    X = random_diagram(powerset(2), rng, max_rank=1)
    assert cc.rezk_objects(X, (1,), ()).XU.complex.homology() == X.value[(1,)].homology()
    with pytest.raises(ValueError):
        cc.rezk_objects(X, (), ())


def test_dimension_guard():
    with pytest.raises(GuardError):
        cc.cube_classify(constant_cube(powerset(5), free_module(1, 0)))
