import numpy as np
import pytest

from taylortower.chain import ChainMap, free_module, is_quasi_iso, zero_complex
from taylortower.cubes import (Cube, cartesian_gap, cartesian_replacement, check_flags, del_,
                               del_holim_identity, face_data, fiber_commutation,
                               is_homotopy_cartesian, left_face, right_face, splitting_check,
                               total_cube)
from taylortower.diagrams import Diagram
from taylortower.fincat import FinCat, arrow_category, linear_order, terminal
from taylortower.functors import (double_functor, identity_functor, shift_functor,
                                  square_functor)
from taylortower.generators import constant_cube, random_diagram
from taylortower.groth import EMPTY, INIT, PUNCTURED, int_pb, plus, powerset
from taylortower.serialize import powerset_cube_to_plus

SHAPES = [terminal(), FinCat.discrete([1, 2]), powerset(2, PUNCTURED), linear_order(1)]


@pytest.mark.parametrize("J", SHAPES, ids=lambda J: J.name or "discrete")
def test_replacement_is_cartesian(J, rng):
    for _ in range(3):
        R = cartesian_replacement(random_diagram(J, rng))
        assert not R.cube.check()
        assert is_homotopy_cartesian(R.cube)
        assert all(is_quasi_iso(R.unit[j]) for j in J.objects)


def test_zero_square_with_top_is_not_cartesian():
    O, Z = zero_complex(), free_module(1, 0)
    vals = {(): O, (1,): O, (2,): O, (1, 2): Z}
    P = powerset(2)
    X = Diagram(P, vals, {f: ChainMap(vals[P.src(f)], vals[P.dst(f)]) for f in P.non_identity})
    J, Y = powerset_cube_to_plus(X)
    v = cartesian_gap(Cube(J, Y.shape, Y.value, Y.action))
    assert not v.cartesian
    assert v.holim.complex.homology().betti(-1) == 1


def test_constant_cube_is_cartesian():
    J = powerset(2, PUNCTURED)
    P, _ = plus(J)
    C = constant_cube(P, free_module(2, 1))
    assert is_homotopy_cartesian(Cube(J, P, C.value, C.action))


@pytest.mark.parametrize("J", [terminal(), FinCat.discrete([1, 2])], ids=["point", "two"])
def test_face_implications(J, rng):
    fd = face_data(J)
    for _ in range(6):
        X = random_diagram(fd.total, rng, pieces=3)
        c = is_homotopy_cartesian(total_cube(X, fd))
        cl = is_homotopy_cartesian(left_face(X, fd))
        cr = is_homotopy_cartesian(right_face(X, fd))
        if cl and cr:
            assert c
        if c and cr:
            assert cl
        assert c == is_homotopy_cartesian(del_(X, J, fd).cube)
        assert del_holim_identity(X, J, fd)


def test_fiber_commutation(rng):
    J = FinCat.discrete([1, 2])
    X = random_diagram(face_data(J).total, rng, pieces=3)
    for F in (identity_functor(), shift_functor(1), double_functor()):
        assert fiber_commutation(F, X, J).commutes
    assert not check_flags(square_functor()).exact_on_fiber_squares
    with pytest.raises(ValueError):
        fiber_commutation(square_functor(), X, J)


@pytest.mark.parametrize("J", [terminal(), arrow_category()], ids=["point", "arrow"])
def test_splitting(J, rng):
    Y = random_diagram(int_pb(J).total, rng)
    s = splitting_check(Y, J)
    assert s.total_to_iterated and all(s.fiberwise.values())
