"""Builtin names and JSON files for shapes, complexes, functors and diagrams.

Shapes::

    *  pt  [n]  d:n  p:n  p0:n  p1:n  pb  po  spider:n  plus:<shape>
    pbint:<shape>  jn:<shape>:n  <file>.json

Complexes: ``0``, ``Zk`` (ℤ in degree k), ``Z/m`` or ``Z/mk`` (ℤ --m--> ℤ
with homology ℤ/m in degree k), ``S1`` (simplicial circle), ``Sn``
(boundary of the (n+1)-simplex) or a JSON file.

Functors: ``id``, ``sum``, ``sq``, ``shift:k``, ``const:<complex>``,
``tensor:<complex>``.
"""
from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from .chain import ChainComplex, ChainMap, free_module, zero_complex
from .diagrams import Diagram
from .fincat import FinCat, GuardError, linear_order, pb, po, terminal
from .functors import (FunctorSpec, constant_functor, double_functor, identity_functor,
                       shift_functor, square_functor, tensor_functor)
from .groth import (COPUNCTURED, EMPTY, FULL, INIT, PUNCTURED, discrete_set, int_pb, int_po, jn,
                    plus, powerset)
from .simp import boundary_simplex, circle, normalized_chains


class ParseError(ValueError):
    """A builtin name that does not parse; ``pos`` is the offending column."""

    def __init__(self, text: str, pos: int, why: str):
        self.text, self.pos, self.why = text, pos, why
        super().__init__(f"{why} at column {pos + 1} of {text!r}\n  {text}\n  {' ' * pos}^")


def _int(text: str, token: str, pos: int) -> int:
    if not re.fullmatch(r"-?\d+", token):
        raise ParseError(text, pos, f"expected an integer, got {token!r}")
    return int(token)


# ---------------------------------------------------------------------------
# shapes

def parse_shape(text: str) -> FinCat:
    return _shape(text, text, 0)


def _shape(full: str, s: str, pos: int) -> FinCat:
    if s.endswith(".json"):
        return FinCat.from_json(_read_json(s))
    if s in ("*", "pt"):
        return terminal()
    if s == "pb":
        return pb()
    if s == "po":
        return po()
    m = re.fullmatch(r"\[(\d+)\]", s)
    if m:
        return linear_order(int(m.group(1)))
    head, sep, rest = s.partition(":")
    if not sep:
        raise ParseError(full, pos, f"unknown shape {s!r}")
    rpos = pos + len(head) + 1
    if head in ("p", "p0", "p1"):
        variant = {"p": FULL, "p0": PUNCTURED, "p1": COPUNCTURED}[head]
        return powerset(_int(full, rest, rpos), variant)
    if head in ("d", "discrete"):
        return discrete_set(_int(full, rest, rpos))
    if head == "spider":
        return int_po(discrete_set(_int(full, rest, rpos))).total
    if head == "plus":
        return plus(_shape(full, rest, rpos))[0]
    if head == "pbint":
        return int_pb(_shape(full, rest, rpos)).total
    if head == "jn":
        inner, sep2, n = rest.rpartition(":")
        if not sep2:
            raise ParseError(full, rpos, "jn needs a shape and a level, as in jn:*:3")
        return jn(_shape(full, inner, rpos), _int(full, n, rpos + len(inner) + 1))[0][-1]
    raise ParseError(full, pos, f"unknown shape constructor {head!r}")


# ---------------------------------------------------------------------------
# complexes

def parse_complex(text: str) -> ChainComplex:
    s = text.strip()
    if s.endswith(".json"):
        return ChainComplex.from_json(_read_json(s))
    if s == "0":
        return zero_complex()
    m = re.fullmatch(r"Z(-?\d+)", s)
    if m:
        return free_module(1, int(m.group(1)))
    m = re.fullmatch(r"Z/(\d+)(?:_?(-?\d+))?", s)
    if m:
        mod, k = int(m.group(1)), int(m.group(2) or 0)
        return ChainComplex({k: 1, k + 1: 1}, {k + 1: [[mod]]})
    if s == "S1":
        return normalized_chains(circle())
    m = re.fullmatch(r"S(\d+)", s)
    if m:
        return normalized_chains(boundary_simplex(int(m.group(1)) + 1))
    raise ParseError(text, 0, f"unknown complex {text!r}")


# ---------------------------------------------------------------------------
# functors

def parse_functor(text: str) -> FunctorSpec:
    if text == "id":
        return identity_functor()
    if text == "sum":
        return double_functor()
    if text == "sq":
        return square_functor()
    head, sep, rest = text.partition(":")
    if sep and head == "shift":
        return shift_functor(_int(text, rest, len(head) + 1))
    if sep and head == "const":
        return constant_functor(_sub_complex(text, rest, len(head) + 1))
    if sep and head == "tensor":
        return tensor_functor(_sub_complex(text, rest, len(head) + 1))
    raise ParseError(text, 0, f"unknown functor {text!r}; try id, sum, sq, shift:k, "
                              "const:<complex>, tensor:<complex>")


def _sub_complex(full: str, s: str, pos: int) -> ChainComplex:
    try:
        return parse_complex(s)
    except ParseError as e:
        raise ParseError(full, pos, e.why) from None


def parse_levels(text: str) -> list[int]:
    m = re.fullmatch(r"(\d+)(?:\.\.(\d+))?", text.strip())
    if not m:
        raise ParseError(text, 0, "levels look like 2 or 0..3")
    a = int(m.group(1))
    b = int(m.group(2)) if m.group(2) else a
    if b < a:
        raise ParseError(text, len(m.group(1)) + 2, "empty level range")
    return list(range(a, b + 1))


# ---------------------------------------------------------------------------
# labels and diagrams

def _read_json(path: str):
    p = Path(path)
    if not p.exists():
        raise FileNotFoundError(f"no such file: {path}")
    return json.loads(p.read_text())


def label_to_json(x):
    if isinstance(x, tuple):
        return [label_to_json(v) for v in x]
    return x


def label_from_json(x):
    if isinstance(x, list):
        return tuple(label_from_json(v) for v in x)
    return x


def diagram_to_json(X: Diagram, shape_name: str | None = None) -> dict:
    P = X.shape
    return {
        "shape": shape_name or P.to_json(),
        "vertices": [{"at": label_to_json(o), "complex": X.value[o].to_json()}
                     for o in P.objects],
        "maps": [{"from": label_to_json(P.src(f)), "to": label_to_json(P.dst(f)),
                  "id": label_to_json(f), "matrices": X.map(f).to_json()["maps"]}
                 for f in P.non_identity],
    }


def diagram_from_json(data) -> Diagram:
    """Read a diagram; arrows are matched by ``id`` or, on thin shapes, by endpoints."""
    if isinstance(data, str):
        data = _read_json(data)
    shape = data["shape"]
    P = parse_shape(shape) if isinstance(shape, str) else FinCat.from_json(shape)
    value = {}
    for v in data.get("vertices", []):
        o = label_from_json(v["at"])
        if o not in P.object_index:
            raise ValueError(f"vertex {o!r} is not an object of {P.name or 'the shape'}")
        value[o] = ChainComplex.from_json(v["complex"])
    for o in P.objects:
        value.setdefault(o, zero_complex())
    action = {}
    for m in data.get("maps", []):
        a, b = label_from_json(m["from"]), label_from_json(m["to"])
        if "id" in m and label_from_json(m["id"]) in P.morphisms:
            f = label_from_json(m["id"])
        else:
            homs = [h for h in P.hom(a, b) if not P.is_identity(h)] if a in P.object_index \
                and b in P.object_index else []
            if len(homs) != 1:
                raise ValueError(f"cannot identify the arrow {a!r} -> {b!r}")
            f = homs[0]
        mats = {int(k): np.array(M, dtype=np.int64).reshape(value[b].rank(int(k)),
                                                            value[a].rank(int(k)))
                for k, M in m.get("matrices", {}).items()}
        action[f] = ChainMap(value[a], value[b], mats)
    for f in P.non_identity:
        if f not in action:
            action[f] = _composite_or_zero(P, f, action, value)
    X = Diagram(P, value, action)
    bad = X.check()
    if bad:
        raise ValueError(f"malformed diagram: {bad[0]}")
    return X


def _composite_or_zero(P: FinCat, f, action: dict, value: dict) -> ChainMap:
    """Fill an unlisted arrow by composing listed ones along some factorization."""
    a, b = P.src(f), P.dst(f)
    for g in P.non_identity:
        if g in action and P.src(g) == a and P.dst(g) != b:
            for h in P.hom(P.dst(g), b):
                if P.comp(h, g) == f and h in action:
                    return action[g].then(action[h])
    return ChainMap(value[a], value[b])


def powerset_cube_to_plus(X: Diagram):
    """A cube on ``𝒫(n)`` as a diagram on ``(𝒫₀(n))₊`` together with ``J = 𝒫₀(n)``."""
    n = max(len(S) for S in X.shape.objects)
    J = powerset(n, PUNCTURED)
    P, _ = plus(J)
    value = {o: X.value[() if o == EMPTY else o] for o in P.objects}
    action = {}
    for f in P.non_identity:
        a, b = P.src(f), P.dst(f)
        action[f] = X.map((() if a == EMPTY else a, b))
    return J, Diagram(P, value, action)
