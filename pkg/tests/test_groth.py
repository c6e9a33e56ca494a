import random

import pytest

from taylortower.fincat import (GuardError, arrow_category, find_isomorphism, product, terminal,
                                validate_category)
from taylortower.groth import (COPUNCTURED, PUNCTURED, coend_agrees, discrete_set, int_pb,
                               int_po, jn, pb_plus_iso, pb_pushout_presentation, plus,
                               plus_as_groth, powerset, random_bifunctor, star_cube_subsets,
                               twisted_arrow, xi)


@pytest.mark.parametrize("n,count", [(1, 1), (2, 3), (3, 7), (4, 15), (5, 31)])
def test_iterated_pb_of_point(n, count):
    C = jn(terminal(), n)[0][-1]
    assert len(C.objects) == count
    assert not validate_category(C)
    assert find_isomorphism(C, powerset(n, PUNCTURED)) is not None


def test_star_cube_labels_are_subsets():
    labels = star_cube_subsets(3)
    assert sorted(labels.values()) == sorted(powerset(3, PUNCTURED).objects)


def test_jn_guard():
    with pytest.raises(GuardError):
        jn(terminal(), 8, max_objects=100)


@pytest.mark.parametrize("J", [terminal(), arrow_category(), powerset(2, PUNCTURED)])
def test_pb_plus_iso(J):
    F = pb_plus_iso(J)
    assert not F.check()
    assert find_isomorphism(F.target, product(plus(J)[0], arrow_category())) is not None
    assert find_isomorphism(pb_pushout_presentation(J), int_pb(J).total) is not None


def test_plus_as_groth():
    J = arrow_category()
    assert find_isomorphism(plus_as_groth(J).total, plus(J)[0]) is not None


@pytest.mark.parametrize("k", range(1, 7))
def test_xi(k):
    x = xi(discrete_set(k))
    assert not x.check()
    assert find_isomorphism(x.source, x.target) is not None


def test_spider_shape():
    S = int_po(discrete_set(4)).total
    assert len(S.objects) == 9 and len(S.non_identity) == 8


def test_twisted_arrow_counts_arrows():
    J = arrow_category()
    assert len(twisted_arrow(J).objects) == len(J.morphisms)


def test_coends_agree():
    r = random.Random(5)
    for C in (discrete_set(2), arrow_category(), discrete_set(3)):
        for _ in range(10):
            assert coend_agrees(random_bifunctor(C, r), C)


def test_powerset_variants():
    assert len(powerset(3).objects) == 8
    assert len(powerset(3, PUNCTURED).objects) == 7
    assert () not in powerset(3, PUNCTURED).objects
    assert (1, 2, 3) not in powerset(3, COPUNCTURED).objects
    with pytest.raises(GuardError):
        powerset(20)
