"""Reedy structures on finite categories, filtrations and latching categories."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping

from .fincat import (CatFunctor, FinCat, FinSetDiagram, GuardError, Morphism,
                     comma, full_subcategory, inclusion_functor, opposite,
                     set_colimit, subcategory)
from .groth import EMPTY, INIT, int_pb, plus, powerset

MAX_DEGREE = 64


@dataclass
class ReedyStructure:
    category: FinCat
    degree: Mapping
    direct: frozenset
    inverse: frozenset
    name: str = ""

    def __post_init__(self):
        self.degree = dict(self.degree)
        self.direct = frozenset(self.direct) | frozenset(self.category.identity.values())
        self.inverse = frozenset(self.inverse) | frozenset(self.category.identity.values())

    @property
    def max_degree(self) -> int:
        return max(self.degree.values(), default=-1)

    def direct_part(self) -> FinCat:
        return subcategory(self.category, self.direct)

    def inverse_part(self) -> FinCat:
        return subcategory(self.category, self.inverse)

    def dual(self) -> "ReedyStructure":
        """The structure on the opposite category (direct and inverse swap)."""
        return ReedyStructure(opposite(self.category), self.degree, self.inverse,
                              self.direct, f"{self.name}^op" if self.name else "")

    def to_json(self) -> dict:
        def lab(x):
            return x if isinstance(x, str) else repr(x)
        return {"degree": {lab(o): d for o, d in self.degree.items()},
                "direct": sorted(lab(f) for f in self.direct if not self.category.is_identity(f)),
                "inverse": sorted(lab(f) for f in self.inverse
                                  if not self.category.is_identity(f))}

    @classmethod
    def from_json(cls, C: FinCat, data) -> "ReedyStructure":
        if isinstance(data, str):
            data = json.loads(data)
        labels = {(o if isinstance(o, str) else repr(o)): o for o in C.objects}
        mlabels = {(f if isinstance(f, str) else repr(f)): f for f in C.morphisms}
        try:
            degree = {labels[k]: int(v) for k, v in data["degree"].items()}
            direct = {mlabels[k] for k in data.get("direct", [])}
            inverse = {mlabels[k] for k in data.get("inverse", [])}
        except KeyError as exc:
            raise ValueError(f"Reedy structure refers to unknown label {exc}") from None
        return cls(C, degree, direct, inverse)


def check_reedy(R: ReedyStructure) -> list[str]:
    """All violated Reedy axioms, each with a witness."""
    C = R.category
    bad = []
    for o in C.objects:
        d = R.degree.get(o)
        if d is None or d < 0:
            bad.append(f"degree: object {o!r} has no nonnegative degree")
        elif d > MAX_DEGREE:
            bad.append(f"degree: object {o!r} has degree {d} above guard {MAX_DEGREE}")
    if bad:
        return bad
    for f in R.direct | R.inverse:
        if f not in C.morphisms:
            bad.append(f"marking: {f!r} is not a morphism")
    if bad:
        return bad
    for f in C.non_identity:
        a, b = R.degree[C.src(f)], R.degree[C.dst(f)]
        if f in R.direct and not b > a:
            bad.append(f"degree monotonicity: direct {f!r} goes from degree {a} to {b}")
        if f in R.inverse and not b < a:
            bad.append(f"degree monotonicity: inverse {f!r} goes from degree {a} to {b}")
    for part, marks in (("direct", R.direct), ("inverse", R.inverse)):
        for (g, f), h in C.compose.items():
            if g in marks and f in marks and h not in marks:
                bad.append(f"closure: {part} part not closed under {g!r}∘{f!r}")
    for f in C.morphisms:
        a, b = C.src(f), C.dst(f)
        facts = [(i, d) for i in R.inverse if C.src(i) == a
                 for d in R.direct if C.src(d) == C.dst(i) and C.dst(d) == b
                 and C.comp(d, i) == f]
        if len(facts) != 1:
            bad.append(f"factorization: {f!r} has {len(facts)} inverse-then-direct factorizations")
    return bad


def _components(C: FinCat) -> list[list]:
    parent = {o: o for o in C.objects}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a
    for f in C.non_identity:
        ra, rb = find(C.src(f)), find(C.dst(f))
        if ra != rb:
            parent[ra] = rb
    comps = {}
    for o in C.objects:
        comps.setdefault(find(o), []).append(o)
    return list(comps.values())


def latching_category(R: ReedyStructure, alpha) -> FinCat:
    """Non-identity direct arrows into ``alpha``, as a full subcategory of the over-comma."""
    if alpha not in R.category.object_index:
        raise ValueError(f"{alpha!r} is not an object of the category")
    K, _ = comma(R.direct_part(), alpha, "over")
    top = (alpha, R.category.identity[alpha])
    return full_subcategory(K, [o for o in K.objects if o != top])


def matching_category(R: ReedyStructure, alpha) -> FinCat:
    """Non-identity inverse arrows out of ``alpha``, as a full subcategory of the under-comma."""
    if alpha not in R.category.object_index:
        raise ValueError(f"{alpha!r} is not an object of the category")
    K, _ = comma(R.inverse_part(), alpha, "under")
    bottom = (alpha, R.category.identity[alpha])
    return full_subcategory(K, [o for o in K.objects if o != bottom])


@dataclass
class ConstantsVerdict:
    holds: bool
    witnesses: list = field(default_factory=list)

    def __bool__(self):
        return self.holds


def constants_criterion(R: ReedyStructure, side: str = "cofibrant") -> ConstantsVerdict:
    """Constant diagrams are Reedy cofibrant (fibrant) iff every latching
    (matching) category is empty or connected."""
    if side not in ("cofibrant", "fibrant"):
        raise ValueError("side must be 'cofibrant' or 'fibrant'")
    witnesses = []
    for o in R.category.objects:
        L = latching_category(R, o) if side == "cofibrant" else matching_category(R, o)
        comps = _components(L)
        if len(comps) > 1:
            witnesses.append({"object": o, "components": [[c[0] for c in comp] for comp in comps]})
    return ConstantsVerdict(not witnesses, witnesses)


def filtration(R: ReedyStructure, n: int) -> tuple[FinCat, CatFunctor]:
    """Full subcategory on objects of degree at most ``n``, with its inclusion."""
    F = full_subcategory(R.category, [o for o in R.category.objects if R.degree[o] <= n])
    return F, inclusion_functor(F, R.category, f"F^{n}")


def restricted(R: ReedyStructure, objects) -> ReedyStructure:
    F = full_subcategory(R.category, objects)
    return ReedyStructure(F, {o: R.degree[o] for o in F.objects},
                          {f for f in R.direct if f in F.morphisms},
                          {f for f in R.inverse if f in F.morphisms})


# ---------------------------------------------------------------------------
# the structures used in the examples

def punctured_cube_structure(m: int) -> ReedyStructure:
    """``𝒫₀(m̲)`` with every arrow inverse and ``deg S = m - |S|``."""
    C = powerset(m, "punctured")
    return ReedyStructure(C, {S: m - len(S) for S in C.objects}, (), C.non_identity,
                          f"P0({m}) inverse")


def cube_structure(n: int) -> ReedyStructure:
    """``𝒫(n̲)`` with every arrow direct and ``deg S = |S|``."""
    C = powerset(n, "full")
    return ReedyStructure(C, {S: len(S) for S in C.objects}, C.non_identity, (),
                          f"P({n}) direct")


def spider_structure(spider: FinCat) -> ReedyStructure:
    """All-direct structure on a spider: legs in degree 0, feet and body in degree 1."""
    deg = {o: 0 if o[0] == 1 else 1 for o in spider.objects}
    return ReedyStructure(spider, deg, spider.non_identity, (), "spider")


def _direct_is_discrete(R: ReedyStructure) -> bool:
    return not any(f for f in R.direct if not R.category.is_identity(f))


def plus_candidate(R: ReedyStructure) -> ReedyStructure:
    """Candidate structure on ``J₊``.

    If the direct part of ``J`` is discrete, ``∅`` sits one degree above
    everything and the arrows out of it are inverse.  Otherwise ``∅`` sits
    in degree 0, the arrows out of it are direct and the degrees of ``J``
    shift up by one.
    """
    J = R.category
    P, _ = plus(J)
    inits = {(INIT, j) for j in J.objects}
    if _direct_is_discrete(R):
        deg = dict(R.degree)
        deg[EMPTY] = R.max_degree + 1
        return ReedyStructure(P, deg, R.direct, R.inverse | inits, "J+")
    deg = {o: d + 1 for o, d in R.degree.items()}
    deg[EMPTY] = 0
    return ReedyStructure(P, deg, R.direct | inits, R.inverse, "J+")


def int_pb_candidate(R: ReedyStructure) -> ReedyStructure:
    """Candidate structure on ``∫_pb J``.

    Arrows inside a fiber keep their marking; ``(0,x) -> (1,y)`` is inverse
    when its fiber arrow is.  With discrete direct part (the punctured-cube
    convention) ``(2,*)`` sits on top with inverse arrows out of it;
    otherwise it sits in degree 0 with direct arrows out of it.
    """
    J = R.category
    T = int_pb(J).total
    discrete = _direct_is_discrete(R)
    top = R.max_degree + 1
    shift = 0 if discrete else 1
    deg = {}
    for (b, x) in T.objects:
        if b == 2:
            deg[(b, x)] = top if discrete else 0
        else:
            deg[(b, x)] = R.degree[x] + shift + (1 if b == 0 else 0)
    direct, inverse = set(), set()
    for m in T.non_identity:
        u, f, _ = m
        if u == "r":
            (inverse if discrete else direct).add(m)
        elif u == "l":
            if f in R.inverse:
                inverse.add(m)
            elif J.is_identity(f):
                inverse.add(m)
        else:
            if f in R.direct:
                direct.add(m)
            if f in R.inverse:
                inverse.add(m)
    return ReedyStructure(T, deg, direct, inverse, "int_pb J")


@dataclass
class InheritedResult:
    structure: ReedyStructure
    reedy_report: list
    constants: ConstantsVerdict

    @property
    def valid(self) -> bool:
        return not self.reedy_report and self.constants.holds


class InheritanceError(ValueError):
    pass


def inherited_structures(R: ReedyStructure, strict: bool = True) -> dict:
    """Validated Reedy structures on ``J₊`` and ``∫_pb J``.

    Each candidate is checked for the Reedy axioms and cofibrant constants;
    with ``strict`` a failing candidate raises, otherwise it is returned
    with its report.
    """
    out = {}
    for key, build in (("plus", plus_candidate), ("int_pb", int_pb_candidate)):
        S = build(R)
        res = InheritedResult(S, check_reedy(S), constants_criterion(S, "cofibrant"))
        if strict and not res.valid:
            raise InheritanceError(f"candidate on {key} fails: {res.reedy_report} "
                                   f"{res.constants.witnesses}")
        out[key] = res
    return out


# ---------------------------------------------------------------------------
# latching objects in Set

def latching_set(R: ReedyStructure, X: FinSetDiagram, alpha):
    """``colim`` of ``X`` restricted along the latching category at ``alpha``."""
    L = latching_category(R, alpha)
    proj = CatFunctor(L, R.category, {o: o[0] for o in L.objects},
                      {m: m[0] for m in L.morphisms})
    return set_colimit(X.pullback(proj))


def latching_set_direct(R: ReedyStructure, X: FinSetDiagram, alpha):
    """The same colimit computed straight from the list of direct arrows into
    ``alpha``: the disjoint union of ``X(src f)`` over those arrows, glued
    along every direct ``d`` with ``f' ∘ d = f``."""
    C = R.category
    arrows = [f for f in R.direct if C.dst(f) == alpha and not C.is_identity(f)]
    parent = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a
    for f in arrows:
        for x in X.value[C.src(f)]:
            parent[(f, x)] = (f, x)
    for f in arrows:
        for g in arrows:
            for d in R.direct:
                if C.src(d) == C.src(f) and C.dst(d) == C.src(g) and C.comp(g, d) == f:
                    for x in X.value[C.src(f)]:
                        a, b = find((f, x)), find((g, X.apply(d, x)))
                        if a != b:
                            parent[a] = b
    return len({find(k) for k in parent})
