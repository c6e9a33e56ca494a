"""Grothendieck constructions and the index shapes built from them.

Totals use literal ``(b, x)`` pairs as object labels.  Morphism ids are
triples ``(u, f, e)``: the base arrow, the fiber arrow, and the endpoint
that ``f`` alone does not determine (the target for the contravariant
construction, the source for the covariant one).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .fincat import (CatFunctor, FinCat, FinSetDiagram, GuardError, Morphism,
                     arrow_category, find_isomorphism, identity_id, opposite,
                     pb, po, product, set_colimit, terminal)

EMPTY = "∅"
INIT = "init"

CONTRAVARIANT = "contravariant"
COVARIANT = "covariant"


@dataclass
class CatDiagram:
    """A functor ``base -> Cat`` (covariant) or ``base^op -> Cat``.

    For a base arrow ``u: b -> b'`` the transition functor goes
    ``fiber[b'] -> fiber[b]`` in the contravariant case and
    ``fiber[b] -> fiber[b']`` in the covariant case.  Identity transitions
    may be omitted.
    """
    base: FinCat
    fiber: Mapping
    transition: Mapping
    variance: str = CONTRAVARIANT

    def __post_init__(self):
        if self.variance not in (CONTRAVARIANT, COVARIANT):
            raise ValueError(f"unknown variance {self.variance!r}")

    def functor(self, u) -> CatFunctor:
        B = self.base
        if u in self.transition:
            return self.transition[u]
        if B.is_identity(u):
            C = self.fiber[B.src(u)]
            return CatFunctor(C, C, {o: o for o in C.objects}, {f: f for f in C.morphisms})
        raise KeyError(f"no transition functor for base arrow {u!r}")

    def check(self) -> list[str]:
        B = self.base
        bad = []
        for u in B.morphisms:
            F = self.functor(u)
            a, b = B.src(u), B.dst(u)
            src, dst = (b, a) if self.variance == CONTRAVARIANT else (a, b)
            if F.source is not self.fiber[src] or F.target is not self.fiber[dst]:
                if (F.source.objects != self.fiber[src].objects
                        or F.target.objects != self.fiber[dst].objects):
                    bad.append(f"transition {u!r}: wrong source or target fiber")
                    continue
            bad.extend(f"transition {u!r}: {msg}" for msg in F.check())
            if B.is_identity(u) and not all(k == v for k, v in F.on_morphisms.items()):
                bad.append(f"transition of identity {u!r} is not the identity")
        if bad:
            return bad
        for (v, u), w in B.compose.items():
            Fu, Fv, Fw = self.functor(u), self.functor(v), self.functor(w)
            first, second = (Fv, Fu) if self.variance == CONTRAVARIANT else (Fu, Fv)
            for f in first.source.morphisms:
                if second.mor(first.mor(f)) != Fw.mor(f):
                    bad.append(f"transitions not functorial on {v!r}∘{u!r}")
                    break
        return bad


@dataclass
class GrothResult:
    total: FinCat
    projection: CatFunctor
    fiber_inclusions: dict
    extras: dict = field(default_factory=dict)

    def fiber(self, b) -> FinCat:
        return self.fiber_inclusions[b].source


def groth(psi: CatDiagram) -> GrothResult:
    """Total category of ``psi`` with its split (op)fibration to the base."""
    B = psi.base
    objects = [(b, x) for b in B.objects for x in psi.fiber[b].objects]
    morphs = []
    for u in B.morphisms:
        a, b = B.src(u), B.dst(u)
        F = psi.functor(u)
        if psi.variance == CONTRAVARIANT:
            # (u, f): (a, x) -> (b, y) with f: x -> F(y) in fiber[a]
            Fa = psi.fiber[a]
            for y in psi.fiber[b].objects:
                Fy = F.obj(y)
                for x in Fa.objects:
                    for f in Fa.hom(x, Fy):
                        morphs.append(Morphism((u, f, y), (a, x), (b, y),
                                               _mname(B, u, Fa, f)))
        else:
            # (u, f): (a, x) -> (b, y) with f: F(x) -> y in fiber[b]
            Fb = psi.fiber[b]
            for x in psi.fiber[a].objects:
                Fx = F.obj(x)
                for y in Fb.objects:
                    for f in Fb.hom(Fx, y):
                        morphs.append(Morphism((u, f, x), (a, x), (b, y),
                                               _mname(B, u, Fb, f)))
    ident = {(b, x): (B.identity[b], psi.fiber[b].identity[x], x) for (b, x) in objects}
    by_src = {}
    for m in morphs:
        by_src.setdefault(m.src, []).append(m)
    comp = {}
    for m1 in morphs:
        u, f, e1 = m1.id
        for m2 in by_src.get(m1.dst, ()):
            v, g, e2 = m2.id
            vu = B.comp(v, u)
            if psi.variance == CONTRAVARIANT:
                # Psi(u)(g) ∘ f in fiber[src u]
                h = psi.fiber[B.src(u)].comp(psi.functor(u).mor(g), f)
                comp[(m2.id, m1.id)] = (vu, h, e2)
            else:
                # g ∘ Psi(v)(f) in fiber[dst v]
                h = psi.fiber[B.dst(v)].comp(g, psi.functor(v).mor(f))
                comp[(m2.id, m1.id)] = (vu, h, e1)
    total = FinCat(objects, morphs, ident, comp)
    proj = CatFunctor(total, B, {o: o[0] for o in objects}, {m.id: m.id[0] for m in morphs},
                      "projection")
    incl = {}
    for b in B.objects:
        Fb = psi.fiber[b]
        end = Fb.dst if psi.variance == CONTRAVARIANT else Fb.src
        incl[b] = CatFunctor(Fb, total, {x: (b, x) for x in Fb.objects},
                             {f: (B.identity[b], f, end(f)) for f in Fb.morphisms},
                             f"fiber {b}")
    return GrothResult(total, proj, incl)


def _mname(B, u, F, f):
    nu, nf = B.morphisms[u].name, F.morphisms[f].name
    return f"({nu},{nf})"


def _to_terminal(C: FinCat, T: FinCat) -> CatFunctor:
    t = T.objects[0]
    return CatFunctor(C, T, {o: t for o in C.objects},
                      {f: T.identity[t] for f in C.morphisms})


def _identity(C: FinCat) -> CatFunctor:
    return CatFunctor(C, C, {o: o for o in C.objects}, {f: f for f in C.morphisms})


# ---------------------------------------------------------------------------
# J₊

def plus(J: FinCat) -> tuple[FinCat, CatFunctor]:
    """``J`` with a freely added initial object ``∅``, and the inclusion."""
    if EMPTY in J.object_index:
        raise ValueError(f"{EMPTY!r} is already an object of {J!r}")
    objs = (EMPTY,) + J.objects
    morphs = list(J.morphisms.values())
    morphs.append(Morphism(identity_id(EMPTY), EMPTY, EMPTY, f"id_{EMPTY}"))
    morphs.extend(Morphism((INIT, j), EMPTY, j, f"{EMPTY}->{j}") for j in J.objects)
    ident = dict(J.identity)
    ident[EMPTY] = identity_id(EMPTY)
    comp = dict(J.compose)
    e = identity_id(EMPTY)
    comp[(e, e)] = e
    for j in J.objects:
        comp[((INIT, j), e)] = (INIT, j)
    for f in J.morphisms:
        comp[(f, (INIT, J.src(f)))] = (INIT, J.dst(f))
    name = f"{J.name}+" if J.name else ""
    P = FinCat(objs, morphs, ident, comp, name)
    incl = CatFunctor(J, P, {o: o for o in J.objects}, {f: f for f in J.morphisms}, "tau1")
    return P, incl


def plus_as_groth(J: FinCat) -> GrothResult:
    """``J₊`` as the contravariant construction over ``[1]`` with fibers ``*``, ``J``."""
    B = arrow_category()
    T = terminal()
    psi = CatDiagram(B, {0: T, 1: J}, {"a": _to_terminal(J, T)}, CONTRAVARIANT)
    return groth(psi)


def plus_functor(F: CatFunctor, source_plus: FinCat, target_plus: FinCat) -> CatFunctor:
    """``F₊``: extend a functor by ``∅ ↦ ∅``."""
    om = dict(F.on_objects)
    om[EMPTY] = EMPTY
    mm = dict(F.on_morphisms)
    mm[identity_id(EMPTY)] = identity_id(EMPTY)
    for j in F.source.objects:
        mm[(INIT, j)] = (INIT, F.obj(j))
    return CatFunctor(source_plus, target_plus, om, mm)


# ---------------------------------------------------------------------------
# ∫_pb J and the J(n) sequence

def int_pb(J: FinCat) -> GrothResult:
    """Contravariant construction over ``0 -> 1 <- 2`` with fibers ``J, J, *``.

    ``extras['tau0']`` and ``extras['tau1']`` are the inclusions of the
    fibers over 0 and 1.
    """
    if not J.objects:
        raise ValueError("int_pb: the index category must be nonempty")
    B = pb()
    T = terminal()
    psi = CatDiagram(B, {0: J, 1: J, 2: T},
                     {"l": _identity(J), "r": _to_terminal(J, T)}, CONTRAVARIANT)
    res = groth(psi)
    res.extras["tau0"] = res.fiber_inclusions[0]
    res.extras["tau1"] = res.fiber_inclusions[1]
    return res


def jn(J: FinCat, n: int, max_objects: int = 10_000) -> tuple[list[FinCat], list[tuple]]:
    """``[J(1), ..., J(n)]`` and the pairs ``(tau0, tau1): J(k) -> J(k+1)``."""
    if n < 1:
        raise ValueError("jn: n must be positive")
    if not J.objects:
        raise ValueError("jn: the index category must be nonempty")
    seq = [J]
    taus = []
    size = len(J.objects)
    for _ in range(n - 1):
        size = 2 * size + 1
        if size > max_objects:
            raise GuardError(f"jn: J({len(seq) + 1}) would have {size} objects "
                             f"(guard {max_objects})")
        r = int_pb(seq[-1])
        seq.append(r.total)
        taus.append((r.extras["tau0"], r.extras["tau1"]))
    return seq, taus


def star_cube_subsets(n: int) -> dict:
    """Object labels of ``J(n)`` for ``J = *`` mapped to subsets of ``{1..n}``."""
    labels = {"*": (1,)}
    for k in range(1, n):
        new = {}
        for x, S in labels.items():
            new[(0, x)] = S
            new[(1, x)] = tuple(sorted(S + (k + 1,)))
        new[(2, "*")] = (k + 1,)
        labels = new
    return labels


def pb_plus_iso(J: FinCat) -> CatFunctor:
    """The explicit isomorphism ``(∫_pb J)₊ -> J₊ x [1]``.

    ``∅ ↦ (∅,0)``, ``(0,j) ↦ (j,0)``, ``(1,j) ↦ (j,1)``, ``(2,*) ↦ (∅,1)``.
    """
    r = int_pb(J)
    src, _ = plus(r.total)
    Jp, _ = plus(J)
    I = arrow_category()
    tgt = product(Jp, I)
    i0, i1, a = identity_id(0), identity_id(1), "a"
    e = identity_id(EMPTY)

    def obj(o):
        if o == EMPTY:
            return (EMPTY, 0)
        b, x = o
        return {0: (x, 0), 1: (x, 1), 2: (EMPTY, 1)}[b]
    om = {o: obj(o) for o in src.objects}
    mm = {}
    for f in src.morphisms:
        if f == e:
            mm[f] = (e, i0)
        elif isinstance(f, tuple) and f[0] == INIT:
            b, x = f[1]
            mm[f] = {0: ((INIT, x), i0), 1: ((INIT, x), a), 2: (e, a)}[b]
        else:
            u, g, _ = f
            if u == identity_id(0):
                mm[f] = (g, i0)
            elif u == identity_id(1):
                mm[f] = (g, i1)
            elif u == identity_id(2):
                mm[f] = (e, i1)
            elif u == "l":
                mm[f] = (g, a)
            else:  # "r": (2,*) -> (1,j)
                mm[f] = ((INIT, r.total.dst(f)[1]), i1)
    return CatFunctor(src, tgt, om, mm, "pb_plus_iso")


def pb_pushout_presentation(J: FinCat) -> FinCat:
    """``J x [1]`` glued to ``J₊`` along ``j ↦ (j,1)``, built directly."""
    I = arrow_category()
    JI = product(J, I)
    objs = JI.objects + (EMPTY,)
    morphs = list(JI.morphisms.values())
    e = identity_id(EMPTY)
    morphs.append(Morphism(e, EMPTY, EMPTY))
    morphs.extend(Morphism((INIT, j), EMPTY, (j, 1)) for j in J.objects)
    ident = dict(JI.identity)
    ident[EMPTY] = e
    comp = dict(JI.compose)
    comp[(e, e)] = e
    for j in J.objects:
        comp[((INIT, j), e)] = (INIT, j)
    for f in JI.morphisms:
        s, t = JI.src(f), JI.dst(f)
        if s[1] == 1:
            comp[(f, (INIT, s[0]))] = (INIT, t[0])
    return FinCat(objs, morphs, ident, comp)


# ---------------------------------------------------------------------------
# power sets

FULL, PUNCTURED, COPUNCTURED = "full", "punctured", "copunctured"


def subsets(elements: Sequence) -> list[tuple]:
    elements = sorted(elements)
    return [tuple(c) for r in range(len(elements) + 1)
            for c in itertools.combinations(elements, r)]


def subset_poset(elements: Sequence, variant: str = FULL, max_size: int = 12) -> FinCat:
    """Subsets of ``elements`` (sorted tuples) ordered by inclusion."""
    elements = tuple(sorted(elements))
    if len(elements) > max_size:
        raise GuardError(f"powerset: {len(elements)} elements (guard {max_size})")
    objs = subsets(elements)
    if variant == PUNCTURED:
        objs = [S for S in objs if S]
    elif variant == COPUNCTURED:
        objs = [S for S in objs if S != elements]
    elif variant != FULL:
        raise ValueError(f"unknown powerset variant {variant!r}")
    return FinCat.from_preorder(objs, lambda a, b: set(a) <= set(b))


def powerset(n: int, variant: str = FULL, max_n: int = 12) -> FinCat:
    """``𝒫(n̲)``, ``𝒫₀(n̲)`` (no ∅) or ``𝒫₁(n̲)`` (no top set)."""
    if n < 0:
        raise ValueError("powerset: n must be nonnegative")
    if n > max_n:
        raise GuardError(f"powerset: n = {n} exceeds guard {max_n}")
    C = subset_poset(range(1, n + 1), variant, max_n)
    C.name = {FULL: "P", PUNCTURED: "P0", COPUNCTURED: "P1"}[variant] + f"({n})"
    return C


def _poset_functor(src: FinCat, tgt: FinCat, fn) -> CatFunctor:
    om = {S: fn(S) for S in src.objects}
    mm = {}
    for f in src.morphisms:
        a, b = om[src.src(f)], om[src.dst(f)]
        mm[f] = identity_id(a) if a == b else (a, b)
    return CatFunctor(src, tgt, om, mm)


def tau0(n: int) -> CatFunctor:
    """``𝒫₀(n̲) -> 𝒫₀(n+1̲)``, ``S ↦ S``."""
    return _poset_functor(powerset(n, PUNCTURED), powerset(n + 1, PUNCTURED), lambda S: S)


def tau1(n: int) -> CatFunctor:
    """``𝒫₀(n̲) -> 𝒫₀(n+1̲)``, ``S ↦ S ∪ {n+1}``."""
    return _poset_functor(powerset(n, PUNCTURED), powerset(n + 1, PUNCTURED),
                          lambda S: S + (n + 1,))


def poset_map(src: FinCat, tgt: FinCat, fn) -> CatFunctor:
    """Functor between thin categories induced by an object map."""
    return _poset_functor(src, tgt, fn)


# ---------------------------------------------------------------------------
# spiders, twisted arrows, coends

def discrete_set(n_or_elements) -> FinCat:
    if isinstance(n_or_elements, int):
        return FinCat.discrete(range(1, n_or_elements + 1))
    return FinCat.discrete(n_or_elements)


def int_po(S: FinCat) -> GrothResult:
    """Covariant construction over ``0 <- 1 -> 2`` with fibers ``S, S, *``.

    Feet are ``(0, s)``, legs ``(1, s)`` and the body is ``(2, '*')``
    (``extras['body']``).
    """
    if not S.objects:
        raise ValueError("int_po: S must be nonempty")
    B = po()
    T = terminal()
    psi = CatDiagram(B, {0: S, 1: S, 2: T},
                     {"l": _identity(S), "r": _to_terminal(S, T)}, COVARIANT)
    res = groth(psi)
    res.extras["body"] = (2, "*")
    return res


def twisted_arrow(J: FinCat) -> FinCat:
    """Objects are arrows of ``J``; ``(a, b): f -> f'`` whenever ``f = b∘f'∘a``."""
    objs = list(J.morphisms)
    morphs = []
    for f in objs:
        j, k = J.src(f), J.dst(f)
        for g in objs:
            j2, k2 = J.src(g), J.dst(g)
            for a in J.hom(j, j2):
                for b in J.hom(k2, k):
                    if J.comp(b, J.comp(g, a)) == f:
                        morphs.append(Morphism((a, b, f, g), f, g))
    ident = {f: (J.identity[J.src(f)], J.identity[J.dst(f)], f, f) for f in objs}
    by_src = {}
    for m in morphs:
        by_src.setdefault(m.src, []).append(m)
    comp = {}
    for m1 in morphs:
        a, b, f, g = m1.id
        for m2 in by_src[g]:
            a2, b2, _, h = m2.id
            comp[(m2.id, m1.id)] = (J.comp(a2, a), J.comp(b, b2), f, h)
    name = f"{J.name}_tw" if J.name else ""
    return FinCat(objs, morphs, ident, comp, name)


def twisted_projection(J: FinCat, Jt: FinCat | None = None,
                       P: FinCat | None = None) -> CatFunctor:
    """``K: J_τ -> J^op x J``, ``(j -> k) ↦ (k, j)``."""
    Jt = Jt or twisted_arrow(J)
    P = P or product(opposite(J), J)
    om = {f: (J.dst(f), J.src(f)) for f in Jt.objects}
    mm = {m: (m[1], m[0]) for m in Jt.morphisms}
    return CatFunctor(Jt, P, om, mm, "K")


def xi(S: FinCat) -> CatFunctor:
    """The isomorphism ``∫_po S -> (S₊)_τ`` for a discrete ``S``."""
    if S.non_identity:
        raise ValueError("xi: S must be discrete")
    spider = int_po(S).total
    Sp, _ = plus(S)
    tw = twisted_arrow(Sp)
    e = identity_id(EMPTY)

    def obj(o):
        b, x = o
        if b == 0:
            return identity_id(x)
        if b == 1:
            return (INIT, x)
        return e
    om = {o: obj(o) for o in spider.objects}
    mm = {}
    for f in spider.morphisms:
        s, t = spider.src(f), spider.dst(f)
        fs, ft = om[s], om[t]
        cands = [m for m in tw.hom(fs, ft)]
        if len(cands) != 1:
            raise AssertionError("xi: twisted hom-set is not a singleton")
        mm[f] = cands[0]
    return CatFunctor(spider, tw, om, mm, "xi")


def coend_via_twisted(Z: FinSetDiagram, C: FinCat):
    """Coend of ``Z: C^op x C -> Set`` as the colimit of ``Z∘K`` over ``C_τ``."""
    Ct = twisted_arrow(C)
    K = twisted_projection(C, Ct, Z.shape)
    return set_colimit(Z.pullback(K))


def coend_direct(Z: FinSetDiagram, C: FinCat) -> tuple[list, dict]:
    """Coequalizer of ``⊔_{f: j->k} Z(k,j) ⇉ ⊔_j Z(j,j)``.

    Returns the classes (lists of ``(j, z)``) and the quotient map.
    """
    parent = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a
    for j in C.objects:
        for z in Z.value[(j, j)]:
            parent[(j, z)] = (j, z)
    for f in C.morphisms:
        j, k = C.src(f), C.dst(f)
        left = (f, C.identity[j])    # (k, j) -> (j, j)
        right = (C.identity[k], f)   # (k, j) -> (k, k)
        for z in Z.value[(k, j)]:
            a = find((j, Z.apply(left, z)))
            b = find((k, Z.apply(right, z)))
            if a != b:
                parent[a] = b
    classes = {}
    for key in parent:
        classes.setdefault(find(key), []).append(key)
    quotient = {key: find(key) for key in parent}
    return list(classes.values()), quotient


def coend_agrees(Z: FinSetDiagram, C: FinCat) -> bool:
    """Exact bijection between the two coend computations.

    The diagonal inclusion ``Z(j,j) -> colim`` (via the identity objects of
    ``C_τ``) must induce a well-defined bijection from the coequalizer.
    """
    colim = coend_via_twisted(Z, C)
    classes, quotient = coend_direct(Z, C)
    if len(classes) != len(colim):
        return False
    induced = {}
    for (j, z), cls in quotient.items():
        k = colim.cocone[C.identity[j]][z]
        if induced.setdefault(cls, k) != k:
            return False
    # every colimit class is hit by a diagonal element
    return len(set(induced.values())) == len(colim)


def random_bifunctor(C: FinCat, rng: random.Random, max_size: int = 2,
                     merges: int = 2) -> FinSetDiagram:
    """Random ``C^op x C -> Set``: a quotient of a sum of representables."""
    from .fincat import random_set_diagram
    P = product(opposite(C), C)
    return random_set_diagram(P, rng, max_size=max_size, merges=merges)
