"""The join-like constructions ``J ⋆ X`` and the spider variant ``S ⋆ʰ X``.

``J ⋆ X`` is the homotopy colimit over ``J₊`` of the diagram with ``X`` at
``∅`` and ``0`` elsewhere.  ``S ⋆ʰ X`` is the homotopy colimit over the
spider of ``S``: zero on the feet, ``X`` on the legs and
``X ⊗ C(N(S₊)^op)`` on the body.
"""
from __future__ import annotations

import threading

import numpy as np
import scipy.sparse as sp

from .chain import ChainComplex, ChainMap, identity_map, tensor, tensor_layout, tensor_maps, \
    zero_complex
from .diagrams import (Diagram, TotalComplex, _Triplets, _assemble_map, hocolim, hocolim_map,
                       nat_hocolim_map)
from .fincat import CatFunctor, FinCat, identity_id
from .groth import EMPTY, INIT, int_po, plus
from .simp import nerve, normalized_chains

_lock = threading.Lock()
_STAR_CACHE: dict = {}
_STARH_CACHE: dict = {}
_SHAPES: dict = {}


def clear_caches():
    with _lock:
        _STAR_CACHE.clear()
        _STARH_CACHE.clear()


def r_diagram(J: FinCat, X: ChainComplex, Jplus: FinCat | None = None) -> Diagram:
    """``X`` at ``∅``, zero elsewhere, on ``J₊``."""
    P = Jplus or plus(J)[0]
    Z = zero_complex()
    value = {o: (X if o == EMPTY else Z) for o in P.objects}
    action = {}
    for f in P.non_identity:
        action[f] = ChainMap(value[P.src(f)], value[P.dst(f)])
    return Diagram(P, value, action, name="R")


def star(J: FinCat, X: ChainComplex) -> TotalComplex:
    """``J ⋆ X`` for a loop-free ``J`` (possibly empty)."""
    return hocolim(r_diagram(J, X))


def _set_shape(S: tuple):
    with _lock:
        hit = _SHAPES.get(S)
    if hit is None:
        J = FinCat.discrete(S)
        hit = (J, plus(J)[0])
        with _lock:
            hit = _SHAPES.setdefault(S, hit)
    return hit


def star_set(S, X: ChainComplex) -> TotalComplex:
    """``S ⋆ X`` for a finite set ``S`` viewed as a discrete category (cached)."""
    S = tuple(sorted(S))
    key = (S, X.fingerprint)
    with _lock:
        hit = _STAR_CACHE.get(key)
    if hit is None:
        J, P = _set_shape(S)
        hit = hocolim(r_diagram(J, X, P))
        with _lock:
            hit = _STAR_CACHE.setdefault(key, hit)
    return hit


def _inclusion(P: FinCat, Q: FinCat) -> CatFunctor:
    return CatFunctor(P, Q, {o: o for o in P.objects}, {f: f for f in P.morphisms})


def star_unit(S, X: ChainComplex) -> ChainMap:
    """``X = ∅ ⋆ X -> S ⋆ X``."""
    H = star_set(S, X)
    return _block_inclusion(X, H, ((EMPTY,), ()))


def _block_inclusion(X: ChainComplex, H: TotalComplex, chain) -> ChainMap:
    T = _Triplets()
    for q in X.degrees:
        n, o = H.offset[(chain, q)]
        T.add(q, o, 0, sp.identity(X.rank(q), dtype=np.int64, format="csr"))
    return _assemble_map(X, H.complex, T)


def star_inclusion(S, S2, X: ChainComplex) -> ChainMap:
    """``S ⋆ X -> S2 ⋆ X`` for ``S ⊆ S2``."""
    S, S2 = tuple(sorted(S)), tuple(sorted(S2))
    if not set(S) <= set(S2):
        raise ValueError(f"{S} is not contained in {S2}")
    H1, H2 = star_set(S, X), star_set(S2, X)
    u = _inclusion(H1.diagram.shape, H2.diagram.shape)
    Z = zero_complex()
    alpha = {o: (identity_map(X) if o == EMPTY else ChainMap(Z, Z))
             for o in H1.diagram.shape.objects}
    return hocolim_map(u, H1, H2, alpha)


def star_on_map(S, g: ChainMap) -> ChainMap:
    """``S ⋆ g``."""
    H1, H2 = star_set(S, g.source), star_set(S, g.target)
    Z = zero_complex()
    alpha = {o: (g if o == EMPTY else ChainMap(Z, Z)) for o in H1.diagram.shape.objects}
    return nat_hocolim_map(H1, H2, alpha)


# ---------------------------------------------------------------------------
# spiders

class _SpiderData:
    def __init__(self, S: tuple):
        J, P = _set_shape(S)
        self.S = S
        self.spider = int_po(J).total
        self.body = (2, "*")
        self.nerve = nerve(_op(P))
        self.weight = normalized_chains(self.nerve)
        self.index = {k: {x: i for i, x in enumerate(xs)}
                      for k, xs in self.nerve.simplices.items()}

    def vertex(self, o) -> int:
        return self.index[0][((o,), ())]

    def edge(self, j) -> int:
        return self.index[1][((j, EMPTY), ((INIT, j),))]


def _op(P: FinCat) -> FinCat:
    from .fincat import opposite
    return opposite(P)


_SPIDERS: dict = {}


def spider_data(S) -> _SpiderData:
    S = tuple(sorted(S))
    with _lock:
        hit = _SPIDERS.get(S)
    if hit is None:
        hit = _SpiderData(S)
        with _lock:
            hit = _SPIDERS.setdefault(S, hit)
    return hit


def _vertex_map(X: ChainComplex, B: ChainComplex, N: ChainComplex, v: int) -> ChainMap:
    """``x ↦ x ⊗ [v]``."""
    Z = ChainComplex({0: 1})
    inc = ChainMap(Z, N, {0: sp.csr_matrix(([1], ([v], [0])), shape=(N.rank(0), 1),
                                           dtype=np.int64)})
    return tensor_maps(identity_map(X), inc, X, B)


def spider_diagram(S, X: ChainComplex) -> Diagram:
    """Zero feet, ``X`` legs, ``X ⊗ C(N(S₊)^op)`` body; leg ``s`` hits the vertex ``s``."""
    D = spider_data(S)
    Z = zero_complex()
    B = tensor(X, D.weight)
    value = {}
    for o in D.spider.objects:
        value[o] = {0: Z, 1: X, 2: B}[o[0]]
    action = {}
    for f in D.spider.non_identity:
        a, b = D.spider.src(f), D.spider.dst(f)
        if b[0] == 2:
            action[f] = _vertex_map(X, B, D.weight, D.vertex(a[1]))
        else:
            action[f] = ChainMap(value[a], value[b])
    return Diagram(D.spider, value, action, name="spider")


def star_h(S, X: ChainComplex) -> TotalComplex:
    """``S ⋆ʰ X`` (cached); ``S`` must be nonempty."""
    S = tuple(sorted(S))
    if not S:
        raise ValueError("star_h: S must be nonempty")
    key = (S, X.fingerprint)
    with _lock:
        hit = _STARH_CACHE.get(key)
    if hit is None:
        hit = hocolim(spider_diagram(S, X))
        with _lock:
            hit = _STARH_CACHE.setdefault(key, hit)
    return hit


def star_h_unit(S, X: ChainComplex) -> ChainMap:
    """``X -> S ⋆ʰ X``, ``x ↦ x ⊗ [∅]`` on the body."""
    D = spider_data(S)
    H = star_h(S, X)
    B = H.diagram.value[D.body]
    v = _vertex_map(X, B, D.weight, D.vertex(EMPTY))
    T = _Triplets()
    chain = ((D.body,), ())
    for q in X.degrees:
        n, o = H.offset[(chain, q)]
        T.add(q, o, 0, v.at(q))
    return _assemble_map(X, H.complex, T)


def star_h_comparison(S, X: ChainComplex) -> ChainMap:
    """``S ⋆ʰ X -> S ⋆ X``.

    On the degree-zero body block: ``x ⊗ [∅] ↦ x`` at ``∅``,
    ``x ⊗ e_j ↦ (-1)^{|x|+1} x`` at the chain ``∅ -> j``; all else to zero.
    """
    S = tuple(sorted(S))
    D = spider_data(S)
    Hh, H = star_h(S, X), star_set(S, X)
    N = D.weight
    lay = tensor_layout(X, N)
    body = ((D.body,), ())
    T = _Triplets()
    v0 = D.vertex(EMPTY)
    for q in X.degrees:
        a = X.rank(q)
        if (q, 0) in lay:
            n, o = Hh.offset[(body, q)]
            tn, to = H.offset[(((EMPTY,), ()), q)]
            rows = to + np.arange(a)
            cols = o + lay[(q, 0)] + np.arange(a) * N.rank(0) + v0
            T.add(q, 0, 0, sp.csr_matrix((np.ones(a, dtype=np.int64), (rows, cols)),
                                         shape=(H.complex.rank(q), Hh.complex.rank(q))))
        if (q, 1) in lay:
            n, o = Hh.offset[(body, q + 1)]
            sign = -1 if (q + 1) % 2 else 1
            for j in S:
                chain = ((EMPTY, j), ((INIT, j),))
                tn, to = H.offset[(chain, q)]
                rows = to + np.arange(a)
                cols = o + lay[(q, 1)] + np.arange(a) * N.rank(1) + D.edge(j)
                T.add(q + 1, 0, 0, sp.csr_matrix(
                    (np.full(a, sign, dtype=np.int64), (rows, cols)),
                    shape=(H.complex.rank(q + 1), Hh.complex.rank(q + 1))))
    return _assemble_map(Hh.complex, H.complex, T)


def _nerve_inclusion(D1: _SpiderData, D2: _SpiderData) -> ChainMap:
    T = {}
    for k, xs in D1.nerve.simplices.items():
        rows = [D2.index[k][x] for x in xs]
        T[k] = sp.csr_matrix((np.ones(len(xs), dtype=np.int64), (rows, list(range(len(xs))))),
                             shape=(D2.weight.rank(k), D1.weight.rank(k)))
    return ChainMap(D1.weight, D2.weight, T)


def star_h_inclusion(S, S2, X: ChainComplex) -> ChainMap:
    """``S ⋆ʰ X -> S2 ⋆ʰ X`` for ``S ⊆ S2``."""
    S, S2 = tuple(sorted(S)), tuple(sorted(S2))
    if not set(S) <= set(S2):
        raise ValueError(f"{S} is not contained in {S2}")
    D1, D2 = spider_data(S), spider_data(S2)
    H1, H2 = star_h(S, X), star_h(S2, X)
    u = _inclusion(D1.spider, D2.spider)
    Z = zero_complex()
    nv = tensor_maps(identity_map(X), _nerve_inclusion(D1, D2),
                     H1.diagram.value[D1.body], H2.diagram.value[D2.body])
    alpha = {}
    for o in D1.spider.objects:
        alpha[o] = {0: ChainMap(Z, Z), 1: identity_map(X), 2: nv}[o[0]]
    return hocolim_map(u, H1, H2, alpha)


def star_h_on_map(S, g: ChainMap) -> ChainMap:
    D = spider_data(S)
    H1, H2 = star_h(S, g.source), star_h(S, g.target)
    Z = zero_complex()
    gb = tensor_maps(g, identity_map(D.weight), H1.diagram.value[D.body],
                     H2.diagram.value[D.body])
    alpha = {o: {0: ChainMap(Z, Z), 1: g, 2: gb}[o[0]] for o in D.spider.objects}
    return nat_hocolim_map(H1, H2, alpha)
