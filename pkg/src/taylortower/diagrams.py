"""Diagrams of chain complexes and their homotopy (co)limits.

Homotopy colimits are total complexes of the normalized simplicial
replacement and homotopy limits of the normalized cosimplicial
replacement, both indexed by chains ``o0 -> o1 -> ... -> op`` of
non-identity arrows of a loop-free shape.

* hocolim: the block of ``(σ, q)`` is ``X(o0)_q`` in total degree ``p + q``
  with ``D = ∂ + (-1)^p d_X``, where ``d_0`` applies ``X(o0 -> o1)``.
* holim: the block of ``(σ, q)`` is ``X(op)_q`` in total degree ``q - p``
  with ``D = δ + (-1)^p d_X``, where the last coface applies
  ``X(o_{p} -> o_{p+1})``.

Every bounded free complex is both fibrant and cofibrant in the
projective model structure, so the corrected variants coincide with the
plain ones; :func:`corrected` keeps the hook.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np
import scipy.sparse as sp

from .chain import (MAX_TOTAL_RANK, ChainComplex, ChainMap, as_matrix, eye, identity_map, matmul,
                    same_matrix, zero_complex)
from .fincat import CatFunctor, FinCat, GuardError, is_loop_free, terminal


class Diagram:
    """A functor from a loop-free finite category into chain complexes.

    ``action`` may omit identities.  Composites are not filled in: every
    non-identity arrow needs its own map.
    """

    def __init__(self, shape: FinCat, value: Mapping, action: Mapping | None = None,
                 check: bool = False, name: str = ""):
        self.shape = shape
        self.value = {o: value[o] for o in shape.objects}
        self.action = dict(action or {})
        self.name = name
        if check:
            bad = self.check()
            if bad:
                raise ValueError(f"not a diagram: {bad[0]}")

    def __repr__(self):
        return f"<Diagram {self.name} on {self.shape!r}>"

    def __call__(self, o) -> ChainComplex:
        return self.value[o]

    def map(self, f) -> ChainMap:
        m = self.action.get(f)
        if m is None:
            if self.shape.is_identity(f):
                return identity_map(self.value[self.shape.src(f)])
            raise KeyError(f"diagram has no map for arrow {f!r}")
        return m

    def check(self) -> list[str]:
        S = self.shape
        bad = []
        for f in S.morphisms:
            try:
                m = self.map(f)
            except KeyError as exc:
                bad.append(str(exc))
                continue
            a, b = self.value[S.src(f)], self.value[S.dst(f)]
            if m.source.ranks != a.ranks or m.target.ranks != b.ranks:
                bad.append(f"map for {f!r} has the wrong source or target")
                continue
            if m.check():
                bad.append(f"map for {f!r} is not a chain map")
            if S.is_identity(f) and not m.equals(identity_map(a)):
                bad.append(f"identity {f!r} does not act as the identity")
        if bad:
            return bad
        for (g, f), h in S.compose.items():
            if S.is_identity(g) or S.is_identity(f):
                continue
            if not self.map(f).then(self.map(g)).equals(self.map(h)):
                bad.append(f"composite {g!r}∘{f!r} not preserved")
        return bad

    def restrict(self, F: CatFunctor, name: str = "") -> "Diagram":
        """``X ∘ F``."""
        I = F.source
        return Diagram(I, {o: self.value[F.obj(o)] for o in I.objects},
                       {f: self.map(F.mor(f)) for f in I.non_identity}, name=name)

    def apply(self, F, name: str = "") -> "Diagram":
        """Post-compose with a :class:`FunctorSpec`-like object (``obj``/``mor``)."""
        return Diagram(self.shape, {o: F.obj(v) for o, v in self.value.items()},
                       {f: F.mor(self.map(f)) for f in self.shape.non_identity}, name=name)


def constant_diagram(shape: FinCat, C: ChainComplex) -> Diagram:
    idc = identity_map(C)
    return Diagram(shape, {o: C for o in shape.objects}, {f: idc for f in shape.non_identity})


def check_natural(X: Diagram, Y: Diagram, alpha: Mapping) -> list[str]:
    bad = []
    for f in X.shape.non_identity:
        a, b = X.shape.src(f), X.shape.dst(f)
        if not X.map(f).then(alpha[b]).equals(alpha[a].then(Y.map(f))):
            bad.append(f"not natural at {f!r}")
    return bad


# ---------------------------------------------------------------------------
# chains

def chain_face(C: FinCat, chain: tuple, i: int) -> tuple:
    objs, mors = chain
    p = len(mors)
    if i == 0:
        return (objs[1:], mors[1:])
    if i == p:
        return (objs[:-1], mors[:-1])
    return (objs[:i] + objs[i + 1:], mors[:i - 1] + (C.comp(mors[i], mors[i - 1]),) + mors[i + 1:])


def image_chain(u: CatFunctor, chain: tuple):
    """``u`` applied to a chain; ``None`` when the image is degenerate."""
    objs, mors = chain
    J = u.target
    im = tuple(u.mor(f) for f in mors)
    if any(J.is_identity(f) for f in im):
        return None
    return (tuple(u.obj(o) for o in objs), im)


class _Triplets:
    def __init__(self):
        self.data = {}

    def add(self, key, r0: int, c0: int, M, sign: int = 1):
        if M is None or not M.nnz:
            return
        M = M.tocoo()
        t = self.data.setdefault(key, ([], [], []))
        t[0].append(M.row + r0)
        t[1].append(M.col + c0)
        t[2].append(M.data * sign if sign != 1 else M.data)

    def build(self, key, shape):
        t = self.data.get(key)
        if t is None:
            return sp.csr_matrix(shape, dtype=np.int64)
        M = sp.csr_matrix((np.concatenate(t[2]), (np.concatenate(t[0]), np.concatenate(t[1]))),
                          shape=shape, dtype=np.int64)
        M.sum_duplicates()
        M.eliminate_zeros()
        return M


@dataclass
class TotalComplex:
    """A homotopy (co)limit together with its block layout.

    ``offset[(chain, q)] = (total degree, offset in that degree)``.
    """
    complex: ChainComplex
    diagram: Diagram
    kind: str
    offset: dict
    chains: list = field(default_factory=list)

    def block(self, chain, q):
        return self.offset.get((chain, q))


def _layout(X: Diagram, kind: str):
    shape = X.shape
    if not is_loop_free(shape):
        raise ValueError(f"{kind}: shape {shape!r} is not loop-free")
    chains = [(p, c) for p, level in enumerate(shape.chains) for c in level]
    ranks = {}
    offset = {}
    for p, c in chains:
        objs = c[0]
        V = X.value[objs[0] if kind == "hocolim" else objs[-1]]
        for q in V.degrees:
            n = p + q if kind == "hocolim" else q - p
            offset[(c, q)] = (n, ranks.get(n, 0))
            ranks[n] = ranks.get(n, 0) + V.rank(q)
    if sum(ranks.values()) > MAX_TOTAL_RANK:
        raise GuardError(f"{kind} over {shape.name or 'the shape'} would have total rank "
                         f"{sum(ranks.values())} (guard {MAX_TOTAL_RANK})")
    return chains, ranks, offset


def hocolim(X: Diagram) -> TotalComplex:
    """Total complex of the normalized simplicial replacement."""
    chains, ranks, offset = _layout(X, "hocolim")
    shape = X.shape
    T = _Triplets()
    for p, c in chains:
        objs, mors = c
        V = X.value[objs[0]]
        sgn = -1 if p % 2 else 1
        for q in V.degrees:
            n, o = offset[(c, q)]
            if q in V.d:
                n2, o2 = offset[(c, q - 1)]
                T.add(n, o2, o, V.d[q], sgn)
            if p == 0:
                continue
            for i in range(p + 1):
                face = chain_face(shape, c, i)
                tgt = offset.get((face, q))
                if i == 0:
                    M = X.map(mors[0]).at(q)
                    if tgt is None:
                        continue
                    T.add(n, tgt[1], o, M, 1)
                else:
                    T.add(n, tgt[1], o, eye(V.rank(q)), -1 if i % 2 else 1)
    d = {n: T.build(n, (ranks.get(n - 1, 0), ranks[n])) for n in ranks}
    C = ChainComplex(ranks, d, name="hocolim")
    return TotalComplex(C, X, "hocolim", offset, chains)


def holim(X: Diagram) -> TotalComplex:
    """Total complex of the normalized cosimplicial replacement."""
    chains, ranks, offset = _layout(X, "holim")
    shape = X.shape
    T = _Triplets()
    for p, c in chains:
        objs, mors = c
        V = X.value[objs[-1]]
        sgn = -1 if p % 2 else 1
        for q in V.degrees:
            n, o = offset[(c, q)]
            if q in V.d:
                n2, o2 = offset[(c, q - 1)]
                T.add(n, o2, o, V.d[q], sgn)
    # coface contributions, organised by the longer chain τ
    for p1, tau in chains:
        if p1 == 0:
            continue
        objs, mors = tau
        V = X.value[objs[-1]]
        for i in range(p1 + 1):
            sigma = chain_face(shape, tau, i)
            W = X.value[sigma[0][-1]]
            sign = -1 if i % 2 else 1
            for q in W.degrees:
                src = offset[(sigma, q)]
                tgt = offset.get((tau, q))
                if tgt is None:
                    continue
                if i == p1:
                    M = X.map(mors[-1]).at(q)
                else:
                    M = eye(W.rank(q))
                T.add(src[0], tgt[1], src[1], M, sign)
    d = {n: T.build(n, (ranks.get(n - 1, 0), ranks[n])) for n in ranks}
    C = ChainComplex(ranks, d, name="holim")
    return TotalComplex(C, X, "holim", offset, chains)


def corrected(X: Diagram, which: str) -> TotalComplex:
    """Corrected homotopy (co)limit.

    Fibrant and cofibrant replacement are identities on bounded free
    complexes, so this is the plain construction.
    """
    if which == "cholim":
        return holim(X)
    if which == "chocolim":
        return hocolim(X)
    raise ValueError("which must be 'cholim' or 'chocolim'")


# ---------------------------------------------------------------------------
# maps

def _assemble_map(src: ChainComplex, tgt: ChainComplex, T: _Triplets) -> ChainMap:
    maps = {n: T.build(n, (tgt.rank(n), src.rank(n))) for n in src.degrees}
    return ChainMap(src, tgt, maps)


def holim_map(u: CatFunctor, HX: TotalComplex, HY: TotalComplex, alpha: Mapping,
              ) -> ChainMap:
    """``holim_J X -> holim_I Y`` for ``u: I -> J`` and ``alpha_i: X(u i) -> Y(i)``.

    The block of an ``I``-chain ``σ`` is ``alpha_{end σ}`` applied to the
    block of ``u σ``, and zero when ``u σ`` is degenerate.
    """
    T = _Triplets()
    for p, c in HY.chains:
        img = image_chain(u, c)
        if img is None:
            continue
        a = alpha[c[0][-1]]
        for q in HX.diagram.value[img[0][-1]].degrees:
            s = HX.offset[(img, q)]
            t = HY.offset.get((c, q))
            if t is None:
                continue
            T.add(s[0], t[1], s[1], a.at(q))
    return _assemble_map(HX.complex, HY.complex, T)


def hocolim_map(u: CatFunctor, HY: TotalComplex, HX: TotalComplex, alpha: Mapping,
                source: ChainComplex | None = None) -> ChainMap:
    """``hocolim_I Y -> hocolim_J X`` for ``u: I -> J`` and ``alpha_i: Y(i) -> X(u i)``."""
    T = _Triplets()
    for p, c in HY.chains:
        img = image_chain(u, c)
        if img is None:
            continue
        a = alpha[c[0][0]]
        for q in HY.diagram.value[c[0][0]].degrees:
            s = HY.offset[(c, q)]
            t = HX.offset.get((img, q))
            if t is None:
                continue
            T.add(s[0], t[1], s[1], a.at(q))
    return _assemble_map(source or HY.complex, HX.complex, T)


def nat_holim_map(HX: TotalComplex, HY: TotalComplex, alpha: Mapping) -> ChainMap:
    """Map of homotopy limits induced by a natural transformation on one shape."""
    shape = HX.diagram.shape
    u = CatFunctor(shape, shape, {o: o for o in shape.objects},
                   {f: f for f in shape.morphisms})
    return holim_map(u, HX, HY, alpha)


def nat_hocolim_map(HY: TotalComplex, HX: TotalComplex, alpha: Mapping) -> ChainMap:
    shape = HX.diagram.shape
    u = CatFunctor(shape, shape, {o: o for o in shape.objects},
                   {f: f for f in shape.morphisms})
    return hocolim_map(u, HY, HX, alpha)


def cone_into_holim(A: ChainComplex, HX: TotalComplex, comps: Mapping) -> ChainMap:
    """``A -> holim X`` from a strict cone ``comps[j]: A -> X(j)`` (degree-0 blocks only)."""
    T = _Triplets()
    for p, c in HX.chains:
        if p:
            continue
        j = c[0][0]
        f = comps[j]
        for q in HX.diagram.value[j].degrees:
            t = HX.offset[(c, q)]
            if A.rank(q):
                T.add(q, t[1], 0, f.at(q))
    return _assemble_map(A, HX.complex, T)


def cocone_from_hocolim(HX: TotalComplex, B: ChainComplex, comps: Mapping) -> ChainMap:
    """``hocolim X -> B`` from a strict cocone ``comps[j]: X(j) -> B``."""
    T = _Triplets()
    for p, c in HX.chains:
        if p:
            continue
        j = c[0][0]
        f = comps[j]
        for q in HX.diagram.value[j].degrees:
            s = HX.offset[(c, q)]
            T.add(q, 0, s[1], f.at(q))
    return _assemble_map(HX.complex, B, T)


def holim_projection(HX: TotalComplex, j) -> ChainMap:
    """The degree-zero projection ``holim X -> X(j)``."""
    V = HX.diagram.value[j]
    c = ((j,), ())
    T = _Triplets()
    for q in V.degrees:
        s = HX.offset[(c, q)]
        T.add(q, 0, s[1], eye(V.rank(q)))
    return _assemble_map(HX.complex, V, T)


def hocolim_inclusion(HX: TotalComplex, j) -> ChainMap:
    """The degree-zero inclusion ``X(j) -> hocolim X``."""
    V = HX.diagram.value[j]
    c = ((j,), ())
    T = _Triplets()
    for q in V.degrees:
        t = HX.offset[(c, q)]
        T.add(q, t[1], 0, eye(V.rank(q)))
    return _assemble_map(V, HX.complex, T)


# ---------------------------------------------------------------------------
# homotopy fibers

def _cospan_shape() -> FinCat:
    from .fincat import pb
    return pb()


def fiber_diagram(g: ChainMap) -> Diagram:
    """``X -g-> Y <- 0`` on ``pb``."""
    Z = zero_complex()
    return Diagram(_cospan_shape(), {0: g.source, 1: g.target, 2: Z},
                   {"l": g, "r": ChainMap(Z, g.target)})


def chf(g: ChainMap) -> TotalComplex:
    """Corrected homotopy limit of ``X -g-> Y <- 0``."""
    return corrected(fiber_diagram(g), "cholim")


def chf_map(g1: ChainMap, g2: ChainMap, a: ChainMap, b: ChainMap,
            H1: TotalComplex | None = None, H2: TotalComplex | None = None) -> ChainMap:
    """``chf(g1) -> chf(g2)`` from a square ``b∘g1 = g2∘a``."""
    H1 = H1 or chf(g1)
    H2 = H2 or chf(g2)
    Z = zero_complex()
    return nat_holim_map(H1, H2, {0: a, 1: b, 2: ChainMap(Z, Z)})


def fiber_projection(H: TotalComplex) -> ChainMap:
    """``chf(g) -> X``."""
    return holim_projection(H, 0)


def diagram_homology(X: Diagram) -> dict:
    return {o: X.value[o].homology() for o in X.shape.objects}
