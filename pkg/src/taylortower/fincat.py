"""Finite categories given by explicit composition tables.

Objects are arbitrary hashable labels.  Morphisms carry hashable ids and
composition is a dense dictionary ``(g, f) -> g∘f`` defined on every
composable pair, identities included.  Everything here is immutable once
built; derived data (hom-sets, chains) is cached lazily.
"""
from __future__ import annotations

import itertools
import json
import random
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence

Label = Hashable


class GuardError(ValueError):
    """A size guard of some construction was exceeded."""


@dataclass(frozen=True)
class Morphism:
    id: Label
    src: Label
    dst: Label
    name: str = ""


def identity_id(obj: Label) -> tuple:
    return ("id", obj)


class FinCat:
    """A finite category.

    ``compose`` maps ``(g, f)`` to the id of ``g∘f`` where ``f: a -> b`` and
    ``g: b -> c``.  The constructor does not validate; use
    :func:`validate_category` for that (broken tables are legitimate input
    to the validator).
    """

    def __init__(self, objects: Sequence[Label], morphisms: Iterable[Morphism],
                 identity: Mapping[Label, Label], compose: Mapping[tuple, Label],
                 name: str = ""):
        self.objects = tuple(objects)
        self.morphisms = {m.id: m for m in morphisms}
        self.identity = dict(identity)
        self.compose = dict(compose)
        self.name = name

    # -- construction -----------------------------------------------------
    @classmethod
    def build(cls, objects: Sequence[Label],
              arrows: Iterable[tuple] = (),
              composites: Mapping[tuple, Label] | None = None,
              name: str = "") -> "FinCat":
        """Build a category from non-identity arrows ``(id, src, dst[, name])``.

        Identity morphisms get ids ``("id", obj)``; composites with an
        identity are filled in.  ``composites`` lists every non-identity
        composable pair.
        """
        objects = tuple(objects)
        morphisms = [Morphism(identity_id(o), o, o, f"id_{o}") for o in objects]
        ident = {o: identity_id(o) for o in objects}
        for a in arrows:
            mid, src, dst = a[0], a[1], a[2]
            nm = a[3] if len(a) > 3 else str(mid)
            morphisms.append(Morphism(mid, src, dst, nm))
        comp = {}
        for m in morphisms:
            comp[(ident[m.dst], m.id)] = m.id
            comp[(m.id, ident[m.src])] = m.id
        comp.update(composites or {})
        return cls(objects, morphisms, ident, comp, name)

    @classmethod
    def from_preorder(cls, objects: Sequence[Label],
                      leq: Callable[[Label, Label], bool], name: str = "") -> "FinCat":
        """Thin category with a unique arrow ``a -> b`` whenever ``leq(a, b)``."""
        objects = tuple(objects)
        arrows = []
        for a in objects:
            for b in objects:
                if a != b and leq(a, b):
                    arrows.append(((a, b), a, b, f"{a}->{b}"))
        pairs = {(x[1], x[2]) for x in arrows}
        comp = {}
        for (a, b) in pairs:
            for c in objects:
                if (b, c) in pairs:
                    comp[((b, c), (a, b))] = identity_id(a) if a == c else (a, c)
        return cls.build(objects, arrows, comp, name)

    @classmethod
    def discrete(cls, objects: Iterable[Label], name: str = "") -> "FinCat":
        return cls.build(tuple(objects), (), {}, name)

    # -- basic queries ----------------------------------------------------
    def __repr__(self) -> str:
        nm = f" {self.name}" if self.name else ""
        return f"<FinCat{nm}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    def __len__(self) -> int:
        return len(self.objects)

    def src(self, f: Label) -> Label:
        return self.morphisms[f].src

    def dst(self, f: Label) -> Label:
        return self.morphisms[f].dst

    def comp(self, g: Label, f: Label) -> Label:
        return self.compose[(g, f)]

    def is_identity(self, f: Label) -> bool:
        m = self.morphisms[f]
        return self.identity.get(m.src) == f

    @cached_property
    def object_index(self) -> dict:
        return {o: i for i, o in enumerate(self.objects)}

    @cached_property
    def homs(self) -> dict:
        h = defaultdict(list)
        for m in self.morphisms.values():
            h[(m.src, m.dst)].append(m.id)
        return {k: tuple(v) for k, v in h.items()}

    def hom(self, a: Label, b: Label) -> tuple:
        return self.homs.get((a, b), ())

    @cached_property
    def non_identity(self) -> tuple:
        return tuple(m for m in self.morphisms if not self.is_identity(m))

    def out_arrows(self, a: Label) -> list:
        return [m for m in self.non_identity if self.src(m) == a]

    def in_arrows(self, a: Label) -> list:
        return [m for m in self.non_identity if self.dst(m) == a]

    @cached_property
    def chains(self) -> tuple:
        """Nondegenerate chains ``(objects, morphisms)`` grouped by length.

        ``chains[p]`` lists composable strings ``o0 -> o1 -> ... -> op`` of
        non-identity arrows.  Only meaningful for loop-free categories,
        where composites of non-identities are never identities.
        """
        if not is_loop_free(self):
            raise ValueError(f"{self!r} is not loop-free; its nerve is infinite")
        out = defaultdict(list)
        for m in self.non_identity:
            out[self.src(m)].append(m)
        level = [((o,), ()) for o in self.objects]
        result = [tuple(level)]
        while level:
            nxt = []
            for objs, mors in level:
                for m in out[objs[-1]]:
                    nxt.append((objs + (self.dst(m),), mors + (m,)))
            if nxt:
                result.append(tuple(nxt))
            level = nxt
        return tuple(result)

    # -- JSON ---------------------------------------------------------------
    def to_json(self) -> dict:
        def lab(x):
            return x if isinstance(x, str) else repr(x)
        morphs = [{"id": lab(m), "src": lab(self.src(m)), "dst": lab(self.dst(m)),
                   "name": self.morphisms[m].name} for m in self.non_identity]
        comp = []
        nonid = set(self.non_identity)
        for (g, f), h in self.compose.items():
            if g in nonid and f in nonid:
                hh = f"id:{lab(self.src(h))}" if self.is_identity(h) else lab(h)
                comp.append([lab(g), lab(f), hh])
        return {"objects": [lab(o) for o in self.objects], "morphisms": morphs,
                "compose": sorted(comp)}

    @classmethod
    def from_json(cls, data: Mapping[str, Any] | str) -> "FinCat":
        if isinstance(data, str):
            data = json.loads(data)
        objects = list(data["objects"])
        known = set(objects)
        arrows = []
        for i, m in enumerate(data.get("morphisms", [])):
            for key in ("id", "src", "dst"):
                if key not in m:
                    raise ValueError(f"morphisms[{i}]: missing key {key!r}")
            if m["src"] not in known or m["dst"] not in known:
                raise ValueError(f"morphisms[{i}] ({m['id']}): unknown endpoint")
            arrows.append((m["id"], m["src"], m["dst"], m.get("name", m["id"])))

        def ref(x):
            if isinstance(x, str) and x.startswith("id:") and x[3:] in known:
                return identity_id(x[3:])
            return x
        comp = {}
        for i, row in enumerate(data.get("compose", [])):
            if len(row) != 3:
                raise ValueError(f"compose[{i}]: expected [g, f, gf]")
            comp[(row[0], row[1])] = ref(row[2])
        return cls.build(objects, arrows, comp)


class CatFunctor:
    def __init__(self, source: FinCat, target: FinCat,
                 on_objects: Mapping, on_morphisms: Mapping, name: str = ""):
        self.source = source
        self.target = target
        self.on_objects = dict(on_objects)
        self.on_morphisms = dict(on_morphisms)
        self.name = name

    def __repr__(self) -> str:
        return f"<CatFunctor {self.name or ''}: {self.source!r} -> {self.target!r}>"

    def __call__(self, x):
        if x in self.on_objects:
            return self.on_objects[x]
        return self.on_morphisms[x]

    def obj(self, x):
        return self.on_objects[x]

    def mor(self, f):
        return self.on_morphisms[f]

    def check(self) -> list[str]:
        """Exhaustive functoriality check; returns violations."""
        S, T = self.source, self.target
        bad = []
        for o in S.objects:
            if o not in self.on_objects:
                bad.append(f"object {o!r} unmapped")
            elif self.on_objects[o] not in T.object_index:
                bad.append(f"object {o!r} maps outside target")
        if bad:
            return bad
        for f, m in S.morphisms.items():
            if f not in self.on_morphisms:
                bad.append(f"morphism {f!r} unmapped")
                continue
            g = self.on_morphisms[f]
            if g not in T.morphisms:
                bad.append(f"morphism {f!r} maps outside target")
                continue
            if T.src(g) != self.obj(m.src) or T.dst(g) != self.obj(m.dst):
                bad.append(f"morphism {f!r}: endpoints not preserved")
        if bad:
            return bad
        for o in S.objects:
            if self.mor(S.identity[o]) != T.identity[self.obj(o)]:
                bad.append(f"identity of {o!r} not preserved")
        for (g, f), h in S.compose.items():
            if T.compose.get((self.mor(g), self.mor(f))) != self.mor(h):
                bad.append(f"composite {g!r}∘{f!r} not preserved")
        return bad

    def then(self, other: "CatFunctor") -> "CatFunctor":
        """``other ∘ self``."""
        return CatFunctor(self.source, other.target,
                          {o: other.obj(self.obj(o)) for o in self.source.objects},
                          {f: other.mor(self.mor(f)) for f in self.source.morphisms})

    def inverse(self) -> "CatFunctor":
        return CatFunctor(self.target, self.source,
                          {v: k for k, v in self.on_objects.items()},
                          {v: k for k, v in self.on_morphisms.items()})

    def is_identity(self) -> bool:
        return (self.source is self.target or _same_tables(self.source, self.target)) and \
            all(k == v for k, v in self.on_objects.items()) and \
            all(k == v for k, v in self.on_morphisms.items())


def identity_functor(C: FinCat) -> CatFunctor:
    return CatFunctor(C, C, {o: o for o in C.objects}, {f: f for f in C.morphisms}, "id")


def inclusion_functor(sub: FinCat, C: FinCat, name: str = "") -> CatFunctor:
    """Inclusion of a category whose labels already live in ``C``."""
    return CatFunctor(sub, C, {o: o for o in sub.objects},
                      {f: f for f in sub.morphisms}, name)


def _same_tables(C: FinCat, D: FinCat) -> bool:
    return (C.objects == D.objects and C.morphisms == D.morphisms
            and C.identity == D.identity and C.compose == D.compose)


# ---------------------------------------------------------------------------
# validation

def validate_category(C: FinCat) -> list[str]:
    """Every violated category axiom, as human-readable strings."""
    report = []
    objs = set(C.objects)
    for f, m in C.morphisms.items():
        if m.src not in objs or m.dst not in objs:
            report.append(f"typing: morphism {f!r} has unknown endpoint")
    if report:
        return report
    for o in C.objects:
        i = C.identity.get(o)
        if i not in C.morphisms or C.src(i) != o or C.dst(i) != o:
            report.append(f"identity: object {o!r} lacks an identity endomorphism")
    mors = list(C.morphisms)
    for g in mors:
        for f in mors:
            composable = C.dst(f) == C.src(g)
            key = (g, f)
            if composable and key not in C.compose:
                report.append(f"typing: composite {g!r}∘{f!r} undefined")
            elif not composable and key in C.compose:
                report.append(f"typing: composite {g!r}∘{f!r} defined on a non-composable pair")
            elif composable:
                h = C.compose[key]
                if h not in C.morphisms or C.src(h) != C.src(f) or C.dst(h) != C.dst(g):
                    report.append(f"typing: composite {g!r}∘{f!r} has wrong source/target")
    if report:
        return report
    for f in mors:
        i_src = C.identity[C.src(f)]
        i_dst = C.identity[C.dst(f)]
        if C.compose[(f, i_src)] != f or C.compose[(i_dst, f)] != f:
            report.append(f"identity: identity law fails for {f!r}")
    by_src = defaultdict(list)
    for f in mors:
        by_src[C.src(f)].append(f)
    for f in mors:
        for g in by_src[C.dst(f)]:
            gf = C.compose[(g, f)]
            for h in by_src[C.dst(g)]:
                if C.compose[(h, gf)] != C.compose[(C.compose[(h, g)], f)]:
                    report.append(f"associativity: ({h!r}, {g!r}, {f!r})")
    return report


def is_loop_free(C: FinCat) -> bool:
    """Only identity endomorphisms and an antisymmetric reachability preorder."""
    for m in C.morphisms.values():
        if m.src == m.dst and not C.is_identity(m.id):
            return False
    succ = defaultdict(set)
    for m in C.morphisms.values():
        if m.src != m.dst:
            succ[m.src].add(m.dst)
    # cycle detection on the object graph
    state = {}

    def visit(o):
        state[o] = 1
        for p in succ[o]:
            s = state.get(p, 0)
            if s == 1:
                return False
            if s == 0 and not visit(p):
                return False
        state[o] = 2
        return True
    return all(state.get(o, 0) == 2 or visit(o) for o in C.objects)


# ---------------------------------------------------------------------------
# standard constructions

def terminal() -> FinCat:
    return FinCat.build(["*"], name="*")


def arrow_category() -> FinCat:
    """``[1]``: the free category on ``0 -> 1``."""
    return FinCat.build([0, 1], [("a", 0, 1, "0->1")], name="[1]")


def pb() -> FinCat:
    """The cospan ``0 -> 1 <- 2``."""
    return FinCat.build([0, 1, 2], [("l", 0, 1), ("r", 2, 1)], name="pb")


def po() -> FinCat:
    """The span ``0 <- 1 -> 2``."""
    return FinCat.build([0, 1, 2], [("l", 1, 0), ("r", 1, 2)], name="po")


def linear_order(n: int) -> FinCat:
    """``[n] = 0 -> 1 -> ... -> n``."""
    return FinCat.from_preorder(range(n + 1), lambda a, b: a <= b, name=f"[{n}]")


def opposite(C: FinCat) -> FinCat:
    morphs = [Morphism(m.id, m.dst, m.src, m.name) for m in C.morphisms.values()]
    comp = {(f, g): h for (g, f), h in C.compose.items()}
    return FinCat(C.objects, morphs, C.identity, comp, name=f"{C.name}^op" if C.name else "")


def product(C: FinCat, D: FinCat) -> FinCat:
    objs = [(c, d) for c in C.objects for d in D.objects]
    morphs = [Morphism((f, g), (C.src(f), D.src(g)), (C.dst(f), D.dst(g)),
                       f"({C.morphisms[f].name},{D.morphisms[g].name})")
              for f in C.morphisms for g in D.morphisms]
    ident = {(c, d): (C.identity[c], D.identity[d]) for c, d in objs}
    comp = {}
    for (g1, f1), h1 in C.compose.items():
        for (g2, f2), h2 in D.compose.items():
            comp[((g1, g2), (f1, f2))] = (h1, h2)
    nm = f"{C.name}x{D.name}" if C.name and D.name else ""
    return FinCat(objs, morphs, ident, comp, nm)


def projection(C: FinCat, D: FinCat, P: FinCat, which: int) -> CatFunctor:
    """Projection ``C x D -> C`` (which=0) or ``-> D`` (which=1)."""
    tgt = C if which == 0 else D
    return CatFunctor(P, tgt, {o: o[which] for o in P.objects},
                      {f: f[which] for f in P.morphisms})


def full_subcategory(C: FinCat, objects: Iterable[Label], name: str = "") -> FinCat:
    keep = [o for o in C.objects if o in set(objects)]
    ks = set(keep)
    morphs = [m for m in C.morphisms.values() if m.src in ks and m.dst in ks]
    mids = {m.id for m in morphs}
    comp = {k: v for k, v in C.compose.items() if k[0] in mids and k[1] in mids}
    return FinCat(keep, morphs, {o: C.identity[o] for o in keep}, comp, name)


def subcategory(C: FinCat, morphism_ids: Iterable[Label], name: str = "") -> FinCat:
    """Wide subcategory on the given morphisms (identities always included)."""
    mids = set(morphism_ids) | set(C.identity.values())
    morphs = [C.morphisms[f] for f in C.morphisms if f in mids]
    comp = {k: v for k, v in C.compose.items() if k[0] in mids and k[1] in mids}
    return FinCat(C.objects, morphs, C.identity, comp, name)


def coproduct_with_point(C: FinCat, point: Label = "pt") -> FinCat:
    """``C ⊔ *`` with the new object labelled ``point``."""
    if point in C.object_index:
        raise ValueError(f"label {point!r} already used")
    morphs = list(C.morphisms.values()) + [Morphism(identity_id(point), point, point)]
    ident = dict(C.identity)
    ident[point] = identity_id(point)
    comp = dict(C.compose)
    comp[(identity_id(point), identity_id(point))] = identity_id(point)
    return FinCat(C.objects + (point,), morphs, ident, comp)


def comma(C: FinCat, anchor, side: str = "over", base: FinCat | None = None):
    """Comma categories with their projection functor.

    ``anchor`` is an object ``a`` of ``C`` (``side='over'`` gives ``(C↓a)``,
    ``side='under'`` gives ``(a↓C)``), or a pair ``(p, b)`` with ``p: C -> B``
    a :class:`CatFunctor` and ``b`` an object of ``B`` for ``(p↓b)`` /
    ``(b↓p)``.
    """
    if isinstance(anchor, tuple) and len(anchor) == 2 and isinstance(anchor[0], CatFunctor):
        p, b = anchor
        B = p.target
    else:
        p = identity_functor(C)
        b = anchor
        B = C
    if b not in B.object_index:
        raise ValueError(f"anchor {b!r} is not an object of {B!r}")
    if side not in ("over", "under"):
        raise ValueError("side must be 'over' or 'under'")
    objs = []
    for e in C.objects:
        pe = p.obj(e)
        homs = B.hom(pe, b) if side == "over" else B.hom(b, pe)
        objs.extend((e, u) for u in homs)
    morphs = []
    comp = {}
    ident = {}
    for (e, u) in objs:
        for (e2, u2) in objs:
            for h in C.hom(e, e2):
                ph = p.mor(h)
                ok = B.comp(u2, ph) == u if side == "over" else B.comp(ph, u) == u2
                if ok:
                    mid = (h, (e, u), (e2, u2))
                    morphs.append(Morphism(mid, (e, u), (e2, u2), C.morphisms[h].name))
                    if C.is_identity(h) and u == u2:
                        ident[(e, u)] = mid
    by_src = defaultdict(list)
    for m in morphs:
        by_src[m.src].append(m)
    for f in morphs:
        for g in by_src[f.dst]:
            h = C.comp(g.id[0], f.id[0])
            comp[(g.id, f.id)] = (h, f.src, g.dst)
    K = FinCat(objs, morphs, ident, comp)
    proj = CatFunctor(K, C, {o: o[0] for o in objs}, {m.id: m.id[0] for m in morphs},
                      "projection")
    return K, proj


# ---------------------------------------------------------------------------
# isomorphism search

def _profile(C: FinCat, o) -> tuple:
    n_in = sum(len(C.hom(x, o)) for x in C.objects if x != o)
    n_out = sum(len(C.hom(o, x)) for x in C.objects if x != o)
    return (n_in, n_out, len(C.hom(o, o)))


def find_isomorphism(C: FinCat, D: FinCat, max_objects: int = 64) -> CatFunctor | None:
    """Exhaustive search for an isomorphism of categories ``C -> D``.

    Objects are matched by (in-degree, out-degree, endomorphism count)
    profile and partial assignments are pruned on hom-set sizes; morphisms
    are then matched hom-set by hom-set subject to composition.
    """
    if len(C.objects) > max_objects or len(D.objects) > max_objects:
        raise GuardError(f"find_isomorphism: more than {max_objects} objects")
    if len(C.objects) != len(D.objects) or len(C.morphisms) != len(D.morphisms):
        return None
    pc = {o: _profile(C, o) for o in C.objects}
    pd = {o: _profile(D, o) for o in D.objects}
    if sorted(pc.values()) != sorted(pd.values()):
        return None
    by_prof = defaultdict(list)
    for o in D.objects:
        by_prof[pd[o]].append(o)
    # most constrained objects first
    order = sorted(C.objects, key=lambda o: (len(by_prof[pc[o]]), -sum(pc[o])))
    assign: dict = {}
    used: set = set()

    def obj_ok(a, a2):
        for b, b2 in assign.items():
            if len(C.hom(a, b)) != len(D.hom(a2, b2)) or len(C.hom(b, a)) != len(D.hom(b2, a2)):
                return False
        return len(C.hom(a, a)) == len(D.hom(a2, a2))

    def search_objects(i):
        if i == len(order):
            mm = _match_morphisms(C, D, assign)
            if mm is not None:
                return CatFunctor(C, D, dict(assign), mm, "iso")
            return None
        a = order[i]
        for a2 in by_prof[pc[a]]:
            if a2 in used or not obj_ok(a, a2):
                continue
            assign[a] = a2
            used.add(a2)
            r = search_objects(i + 1)
            if r is not None:
                return r
            del assign[a]
            used.discard(a2)
        return None

    return search_objects(0)


def _match_morphisms(C: FinCat, D: FinCat, objmap: dict) -> dict | None:
    mm = {C.identity[o]: D.identity[objmap[o]] for o in C.objects}
    todo = [f for f in C.non_identity]
    # forced assignments for singleton hom-sets
    free = []
    for f in todo:
        cands = [g for g in D.hom(objmap[C.src(f)], objmap[C.dst(f)]) if not D.is_identity(g)]
        if len(C.hom(C.src(f), C.dst(f))) == 1 and len(cands) == 1:
            mm[f] = cands[0]
        else:
            free.append(f)
    pairs_by = defaultdict(list)
    for (g, f), h in C.compose.items():
        pairs_by[g].append((g, f, h))
        pairs_by[f].append((g, f, h))
        pairs_by[h].append((g, f, h))

    def consistent(f):
        for g, k, h in pairs_by[f]:
            if g in mm and k in mm and h in mm and D.compose.get((mm[g], mm[k])) != mm[h]:
                return False
        return True

    for f in list(mm):
        if not consistent(f):
            return None
    used = set(mm.values())

    def rec(i):
        if i == len(free):
            return True
        f = free[i]
        for g in D.hom(objmap[C.src(f)], objmap[C.dst(f)]):
            if g in used or D.is_identity(g) != C.is_identity(f):
                continue
            mm[f] = g
            used.add(g)
            if consistent(f) and rec(i + 1):
                return True
            del mm[f]
            used.discard(g)
        return False
    return dict(mm) if rec(0) else None


def relabel(C: FinCat, obj_map: Mapping, mor_map: Mapping | None = None) -> FinCat:
    """Copy of ``C`` with objects (and optionally morphism ids) renamed."""
    mor_map = dict(mor_map or {})

    def mm(f):
        if f in mor_map:
            return mor_map[f]
        if C.is_identity(f):
            return identity_id(obj_map[C.src(f)])
        return f
    morphs = [Morphism(mm(m.id), obj_map[m.src], obj_map[m.dst], m.name)
              for m in C.morphisms.values()]
    comp = {(mm(g), mm(f)): mm(h) for (g, f), h in C.compose.items()}
    ident = {obj_map[o]: mm(i) for o, i in C.identity.items()}
    return FinCat([obj_map[o] for o in C.objects], morphs, ident, comp, C.name)


# ---------------------------------------------------------------------------
# Set-valued diagrams

class FinSetDiagram:
    """A functor from a finite category to finite sets.

    ``action[f]`` is a dict ``element -> element``; identities may be omitted.
    """

    def __init__(self, shape: FinCat, value: Mapping, action: Mapping):
        self.shape = shape
        self.value = {o: tuple(value[o]) for o in shape.objects}
        self.action = dict(action)

    def apply(self, f, x):
        if self.shape.is_identity(f) and f not in self.action:
            return x
        return self.action[f][x]

    def check(self) -> list[str]:
        S = self.shape
        bad = []
        for f in S.morphisms:
            tgt = set(self.value[S.dst(f)])
            for x in self.value[S.src(f)]:
                try:
                    y = self.apply(f, x)
                except KeyError:
                    bad.append(f"{f!r} undefined on {x!r}")
                    continue
                if y not in tgt:
                    bad.append(f"{f!r} sends {x!r} outside its target")
        if bad:
            return bad
        for o in S.objects:
            i = S.identity[o]
            if any(self.apply(i, x) != x for x in self.value[o]):
                bad.append(f"identity of {o!r} acts nontrivially")
        for (g, f), h in S.compose.items():
            for x in self.value[S.src(f)]:
                if self.apply(g, self.apply(f, x)) != self.apply(h, x):
                    bad.append(f"composite {g!r}∘{f!r} not preserved at {x!r}")
                    break
        return bad

    def pullback(self, F: CatFunctor) -> "FinSetDiagram":
        """Precompose with ``F: I -> shape``."""
        I = F.source
        return FinSetDiagram(I, {o: self.value[F.obj(o)] for o in I.objects},
                             {f: {x: self.apply(F.mor(f), x) for x in self.value[F.obj(I.src(f))]}
                              for f in I.morphisms})


@dataclass
class SetColimit:
    elements: list          # one representative (obj, x) per class
    cocone: dict            # obj -> {x: class index}

    def __len__(self):
        return len(self.elements)


@dataclass
class SetLimit:
    elements: list          # compatible families, each a dict obj -> x
    cone: dict              # obj -> {family index: x}

    def __len__(self):
        return len(self.elements)


def set_colimit(X: FinSetDiagram) -> SetColimit:
    """Quotient of the disjoint union by ``x ~ X(f)(x)``."""
    parent = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a
    for o in X.shape.objects:
        for x in X.value[o]:
            parent[(o, x)] = (o, x)
    for f in X.shape.non_identity:
        a, b = X.shape.src(f), X.shape.dst(f)
        for x in X.value[a]:
            ra, rb = find((a, x)), find((b, X.apply(f, x)))
            if ra != rb:
                parent[ra] = rb
    reps = {}
    elements = []
    cocone = {o: {} for o in X.shape.objects}
    for o in X.shape.objects:
        for x in X.value[o]:
            r = find((o, x))
            if r not in reps:
                reps[r] = len(elements)
                elements.append(r)
            cocone[o][x] = reps[r]
    return SetColimit(elements, cocone)


def set_limit(X: FinSetDiagram) -> SetLimit:
    """Compatible families, enumerated by backtracking with propagation."""
    S = X.shape
    objs = list(S.objects)
    arrows = [f for f in S.non_identity]
    families = []
    fam: dict = {}

    def ok(o):
        for f in arrows:
            a, b = S.src(f), S.dst(f)
            if (a == o or b == o) and a in fam and b in fam:
                if X.apply(f, fam[a]) != fam[b]:
                    return False
        return True

    def rec(i):
        if i == len(objs):
            families.append(dict(fam))
            return
        o = objs[i]
        for x in X.value[o]:
            fam[o] = x
            if ok(o):
                rec(i + 1)
            del fam[o]
    rec(0)
    cone = {o: {k: fm[o] for k, fm in enumerate(families)} for o in objs}
    return SetLimit(families, cone)


def check_cocone_universal(X: FinSetDiagram, colim: SetColimit, rng: random.Random,
                           size: int = 3) -> bool:
    """Spot-check the universal property against one random cocone.

    A random cocone is produced by choosing a random function out of the
    colimit and composing; the test is that a cocone built independently
    on the disjoint union factors uniquely through ``colim``.
    """
    target = list(range(size))
    phi = [rng.choice(target) for _ in colim.elements]
    cocone = {o: {x: phi[colim.cocone[o][x]] for x in X.value[o]} for o in X.shape.objects}
    # cocone condition holds, and the factorisation is unique
    for f in X.shape.non_identity:
        a, b = X.shape.src(f), X.shape.dst(f)
        if any(cocone[a][x] != cocone[b][X.apply(f, x)] for x in X.value[a]):
            return False
    induced = {}
    for o in X.shape.objects:
        for x in X.value[o]:
            k = colim.cocone[o][x]
            if induced.setdefault(k, cocone[o][x]) != cocone[o][x]:
                return False
    # surjectivity of the cocone maps onto the colimit ensures uniqueness
    return len(induced) == len(colim.elements)


def hom_diagram(C: FinCat) -> FinSetDiagram:
    """``Hom: C^op x C -> Set`` as a diagram on ``product(opposite(C), C)``."""
    P = product(opposite(C), C)
    value = {(a, b): C.hom(a, b) for (a, b) in P.objects}
    action = {}
    for (u, v) in P.morphisms:
        # u: a' -> a in C (an arrow a -> a' in C^op), v: b -> b'
        a_src = C.dst(u)
        b_src = C.src(v)
        action[(u, v)] = {h: C.comp(v, C.comp(h, u)) for h in C.hom(a_src, b_src)}
    return FinSetDiagram(P, value, action)


def constant_set_diagram(C: FinCat, elements: Sequence) -> FinSetDiagram:
    return FinSetDiagram(C, {o: elements for o in C.objects},
                         {f: {x: x for x in elements} for f in C.morphisms})


def random_set_diagram(C: FinCat, rng: random.Random, max_size: int = 3,
                       merges: int = 0) -> FinSetDiagram:
    """Random functor ``C -> FinSet``.

    Generators are attached at random objects and pushed forward along all
    arrows (a sum of representables), then ``merges`` random pairs of
    elements at a common object are identified and the identification is
    closed under the action, which keeps the result functorial.
    """
    gens = {o: [f"{o}.{i}" for i in range(rng.randint(0, max_size))] for o in C.objects}
    value = {o: [] for o in C.objects}
    for o in C.objects:
        for g in gens[o]:
            for b in C.objects:
                for h in C.hom(o, b):
                    value[b].append((g, h))
    action = {}
    for f in C.morphisms:
        a = C.src(f)
        action[f] = {(g, h): (g, C.comp(f, h)) for (g, h) in value[a]}
    if merges:
        parent = {(o, x): (o, x) for o in C.objects for x in value[o]}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a
        pending = []
        for _ in range(merges):
            o = rng.choice(C.objects)
            if len(value[o]) >= 2:
                x, y = rng.sample(value[o], 2)
                pending.append(((o, x), (o, y)))
        while pending:
            a, b = pending.pop()
            ra, rb = find(a), find(b)
            if ra == rb:
                continue
            parent[ra] = rb
            o = a[0]
            for f in C.out_arrows(o):
                t = C.dst(f)
                pending.append(((t, action[f][a[1]]), (t, action[f][b[1]])))
        rep = {k: find(k) for k in parent}
        value = {o: sorted({rep[(o, x)][1] for x in value[o]}, key=repr) for o in C.objects}
        action = {f: {rep[(C.src(f), x)][1]: rep[(C.dst(f), y)][1] for x, y in act.items()}
                  for f, act in action.items()}
    return FinSetDiagram(C, value, action)


def all_subsets(items: Sequence) -> list:
    return [frozenset(c) for r in range(len(items) + 1)
            for c in itertools.combinations(items, r)]
