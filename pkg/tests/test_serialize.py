import json

import pytest

from taylortower.chain import free_module
from taylortower.fincat import GuardError
from taylortower.generators import random_diagram
from taylortower.groth import powerset
from taylortower.serialize import (ParseError, diagram_from_json, diagram_to_json,
                                   parse_complex, parse_functor, parse_levels, parse_shape)


@pytest.mark.parametrize("name,objects", [("*", 1), ("[2]", 3), ("p:3", 8), ("p0:3", 7),
                                          ("p1:3", 7), ("pb", 3), ("po", 3), ("spider:4", 9),
                                          ("jn:*:3", 7), ("plus:p0:2", 4), ("d:3", 3),
                                          ("pbint:*", 3)])
def test_shape_grammar(name, objects):
    assert len(parse_shape(name).objects) == objects


def test_parse_errors_point_at_column():
    with pytest.raises(ParseError) as e:
        parse_shape("jn:*:x")
    assert e.value.pos == 5
    with pytest.raises(ParseError):
        parse_shape("cube:3")
    with pytest.raises(GuardError):
        parse_shape("p:40")


def test_complex_grammar():
    assert parse_complex("Z0").homology() == free_module(1, 0).homology()
    assert parse_complex("Z-2").homology().betti(-2) == 1
    assert parse_complex("Z/3").homology().torsion(0) == (3,)
    assert parse_complex("S1").homology().betti(1) == 1
    assert parse_complex("S2").homology().betti(2) == 1
    assert parse_complex("0").homology().is_zero()


def test_functor_grammar():
    assert parse_functor("shift:2").name == "shift:2"
    assert parse_functor("sq").name == "sq"
    assert parse_functor("const:Z0").obj(free_module(1, 3)).homology().betti(0) == 1
    with pytest.raises(ParseError) as e:
        parse_functor("const:Q")
    assert e.value.pos == 6


def test_levels():
    assert parse_levels("0..2") == [0, 1, 2]
    assert parse_levels("3") == [3]
    with pytest.raises(ParseError):
        parse_levels("2..1")


def test_diagram_round_trip(rng, tmp_path):
    X = random_diagram(powerset(2), rng)
    data = json.loads(json.dumps(diagram_to_json(X, "p:2")))
    Y = diagram_from_json(data)
    for o in X.shape.objects:
        assert X.value[o].fingerprint == Y.value[o].fingerprint
    for f in X.shape.non_identity:
        assert X.map(f).equals(Y.map(f))
    path = tmp_path / "cube.json"
    path.write_text(json.dumps(data))
    assert diagram_from_json(str(path)).shape.objects == X.shape.objects


def test_composites_filled_from_listed_arrows():
    one = {"lo": 0, "hi": 0, "ranks": [1], "d": {}}
    data = {"shape": "[2]", "vertices": [{"at": k, "complex": one} for k in range(3)],
            "maps": [{"from": 0, "to": 1, "matrices": {"0": [[2]]}},
                     {"from": 1, "to": 2, "matrices": {"0": [[3]]}}]}
    X = diagram_from_json(data)
    assert X.map((0, 2)).at(0).toarray().tolist() == [[6]]


def test_bad_vertex_named():
    with pytest.raises(ValueError, match="vertex"):
        diagram_from_json({"shape": "p:1", "vertices": [{"at": [7], "complex": {"lo": 0,
                                                                               "hi": -1,
                                                                               "ranks": []}}]})
