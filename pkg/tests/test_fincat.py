import random

import pytest

from taylortower.fincat import (FinCat, FinSetDiagram, GuardError, arrow_category,
                                check_cocone_universal, comma, find_isomorphism, is_loop_free,
                                linear_order, opposite, pb, po, product, random_set_diagram,
                                set_colimit, set_limit, terminal, validate_category)
from taylortower.groth import powerset


def test_linear_order_tables():
    L = linear_order(3)
    assert len(L.objects) == 4 and len(L.non_identity) == 6
    assert not validate_category(L)
    assert L.comp((1, 2), (0, 1)) == (0, 2)


def test_validator_catches_missing_composite():
    C = FinCat.build([0, 1, 2], [("f", 0, 1), ("g", 1, 2)])
    assert validate_category(C)


def test_validator_accepts_involution_and_rejects_bad_monoid():
    C = FinCat.build([0], [("e", 0, 0)], {("e", "e"): ("id", 0)})
    assert not validate_category(C)
    C2 = FinCat.build([0], [("e", 0, 0), ("f", 0, 0)],
                      {("e", "e"): "f", ("e", "f"): "e", ("f", "e"): ("id", 0),
                       ("f", "f"): "f"})
    assert validate_category(C2)


def test_loop_freeness():
    assert is_loop_free(powerset(3))
    iso = FinCat.build([0, 1], [("f", 0, 1), ("g", 1, 0)],
                       {("g", "f"): ("id", 0), ("f", "g"): ("id", 1)})
    assert not is_loop_free(iso)


def test_isomorphism_search():
    assert find_isomorphism(pb(), opposite(po())) is not None
    assert find_isomorphism(pb(), po()) is None
    assert find_isomorphism(product(arrow_category(), arrow_category()), powerset(2)) is not None


def test_isomorphism_guard():
    big = FinCat.discrete(range(100))
    with pytest.raises(GuardError):
        find_isomorphism(big, big)


def test_comma_over_top_of_cube_is_cube():
    P = powerset(2)
    K, proj = comma(P, (1, 2), "over")
    assert len(K.objects) == 4 and not validate_category(K)
    K0, _ = comma(P, (), "under")
    assert find_isomorphism(K0, P) is not None


def test_set_colimit_of_span_is_pushout():
    X = FinSetDiagram(po(), {0: ["a"], 1: ["x", "y"], 2: ["p", "q"]},
                      {"l": {"x": "a", "y": "a"}, "r": {"x": "p", "y": "q"}})
    assert not X.check()
    C = set_colimit(X)
    assert len(C) == 1
    assert check_cocone_universal(X, C, random.Random(0))


def test_set_limit_of_cospan_is_pullback():
    X = FinSetDiagram(pb(), {0: [1, 2], 1: ["u", "v"], 2: [3]},
                      {"l": {1: "u", 2: "v"}, "r": {3: "u"}})
    assert len(set_limit(X)) == 1


def test_random_set_diagrams_are_functors():
    r = random.Random(3)
    for C in (powerset(2), linear_order(2), terminal()):
        assert not random_set_diagram(C, r, merges=2).check()
