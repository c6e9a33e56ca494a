import random

import pytest

from taylortower.fincat import find_isomorphism
from taylortower.groth import COPUNCTURED, discrete_set, int_po, plus, powerset, subset_poset
from taylortower.reedy import (ReedyStructure, check_reedy, constants_criterion, cube_structure,
                               filtration, latching_category, latching_set,
                               latching_set_direct, matching_category,
                               punctured_cube_structure, spider_structure)
from taylortower.fincat import random_set_diagram


@pytest.mark.parametrize("n", range(1, 5))
def test_punctured_cube_structure(n):
    R = punctured_cube_structure(n)
    assert not check_reedy(R)
    assert constants_criterion(R, "cofibrant")


@pytest.mark.parametrize("n", range(1, 5))
def test_cube_latching(n):
    R = cube_structure(n)
    assert not check_reedy(R)
    for S in R.category.objects:
        assert find_isomorphism(latching_category(R, S), subset_poset(S, COPUNCTURED)) is not None


@pytest.mark.parametrize("n", range(2, 5))
def test_filtration_levels(n):
    R = cube_structure(n)
    assert find_isomorphism(filtration(R, 1)[0], plus(discrete_set(n))[0]) is not None
    assert find_isomorphism(filtration(R, n - 1)[0], powerset(n, COPUNCTURED)) is not None


def test_constants_fail_with_witness():
    # all-inverse structure on the full cube: matching category at ∅ is 𝒫₀(n), connected,
    # but a discrete direct part over a cospan gives two components
    R = spider_structure(int_po(discrete_set(2)).total)
    v = constants_criterion(R, "cofibrant")
    assert not v.holds and v.witnesses
    assert "components" in v.witnesses[0]


def test_bad_degree_function_detected():
    R = cube_structure(2)
    bad = ReedyStructure(R.category, {S: 0 for S in R.category.objects}, R.direct, R.inverse)
    assert check_reedy(bad)


def test_matching_dual():
    R = cube_structure(2)
    D = R.dual()
    assert len(matching_category(D, ()).objects) == len(latching_category(R, ()).objects)


def test_latching_sets_match_direct_computation():
    r = random.Random(2)
    R = cube_structure(3)
    for _ in range(5):
        X = random_set_diagram(R.category, r, 2, merges=3)
        for S in R.category.objects:
            assert len(latching_set(R, X, S)) == latching_set_direct(R, X, S)
