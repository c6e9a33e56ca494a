"""Acceptance criteria 1-10, one printed pass/fail line each.

Every criterion runs the named properties from the verification battery at
full size with seed 1 and checks both the verdicts and the time budget.
"""
import time

import pytest

from taylortower.verify import SUITES, VerifyConfig, run_property

CFG = VerifyConfig(seed=1)

CRITERIA = [
    (1, "combinatorial isomorphisms", 5,
     [("iso", "iterated_pb_of_point_is_punctured_cube"), ("iso", "pb_plus_splits_as_product"),
      ("iso", "xi_is_isomorphism")]),
    (2, "coend via twisted arrows", 5, [("coend", "coend_twisted_matches_direct")]),
    (3, "Reedy structures and latching categories", 10,
     [("reedy", "punctured_cubes_are_reedy_with_cofibrant_constants"),
      ("reedy", "cubes_are_reedy"), ("reedy", "latching_categories_are_copunctured"),
      ("reedy", "filtration_ends")]),
    (4, "homology engine", 5,
     [("homology", "doubling_complex_has_z2"), ("homology", "circle_homology"),
      ("homology", "punctured_cube_nerves_contractible")]),
    (5, "star construction", 30,
     [("star", "star_of_empty_is_identity"), ("star", "star_of_point_is_acyclic"),
      ("star", "star_of_two_points_suspends")]),
    (6, "spider comparison and auxiliary tower", 120,
     [("aux", "spider_comparison_quasi_iso"), ("aux", "aux_tower_comparison_quasi_iso")]),
    (7, "Taylor tower sanity", 120,
     [("tower", "p0_of_identity_acyclic"), ("tower", "t1_of_identity_is_identity"),
      ("tower", "quadratic_tower_maps")]),
    (8, "homotopy Cartesian cubes", 180,
     [("cubes", "replacement_is_cartesian"), ("cubes", "faces_and_total_cartesian"),
      ("cubes", "cartesian_iff_fibers_cartesian")]),
    (9, "holim splitting over the pullback Grothendieck construction", 60,
     [("splitting", "holim_over_pb_total_splits")]),
    (10, "co-Cartesian cubes", 180,
     [("cocartesian", "classification_matches_nerve_path"),
      ("cocartesian", "constant_cubes_strongly_cocartesian"),
      ("cocartesian", "cofibration_cubes_equivalence")]),
]


def _lookup(suite, name):
    return dict(SUITES[suite])[name]


@pytest.mark.parametrize("number,title,budget,props", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, budget, props, capsys):
    t = time.perf_counter()
    results = [run_property(s, n, _lookup(s, n), CFG) for s, n in props]
    elapsed = time.perf_counter() - t
    failed = [r for r in results if not r.passed]
    ok = not failed and elapsed < budget
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {elapsed:7.2f}s / {budget}s  {title}"
    if failed:
        line += "  failing: " + ", ".join(f"{r.name} {r.error or r.detail}" for r in failed)
    with capsys.disabled():
        print("\n" + line)
    assert not failed, line
    assert elapsed < budget, line
