"""Co-Cartesian cubes on ``𝒫(n)``, latching maps and Rezk's comparison objects."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

from .chain import (ChainComplex, ChainMap, dsum_with_layout, identity_map, is_quasi_iso,
                    tensor_layout, zero_complex)
from .diagrams import (Diagram, TotalComplex, _Triplets, _assemble_map, cocone_from_hocolim,
                       hocolim)
from .fincat import CatFunctor, FinCat, GuardError, identity_id, po
from .groth import COPUNCTURED, EMPTY, INIT, int_po, powerset, subset_poset
from .simp import is_identity_surjection, nerve
from .snf import image_basis, invariant_factors, solve_rational, to_int_lists
from . import star as _star

MAX_CUBE_DIM = 4


def _subset_shape(S: tuple, variant: str) -> FinCat:
    return subset_poset(S, variant)


def restrict_to(X: Diagram, sub: FinCat) -> Diagram:
    return Diagram(sub, {o: X.value[o] for o in sub.objects},
                   {f: X.map(f) for f in sub.non_identity})


def _check_cube(X: Diagram) -> int:
    n = max((len(S) for S in X.shape.objects), default=0)
    if n > MAX_CUBE_DIM:
        raise GuardError(f"cube dimension {n} exceeds guard {MAX_CUBE_DIM}")
    return n


# ---------------------------------------------------------------------------
# homotopy latching maps

def latching_map(X: Diagram, S) -> ChainMap:
    """``hocolim_{𝒫₁(S)} X -> X(S)``."""
    _check_cube(X)
    S = tuple(sorted(S))
    sub = _subset_shape(S, COPUNCTURED)
    H = hocolim(restrict_to(X, sub))
    comps = {T: X.map((T, S)) if T != S else identity_map(X.value[S]) for T in sub.objects}
    return cocone_from_hocolim(H, X.value[S], comps)


def hocolim_by_nerve(X: Diagram) -> ChainComplex:
    """Homotopy colimit assembled from the nerve's face table.

    Independent of :func:`hocolim`: simplices, faces and composites come
    from :func:`simp.nerve`, and each face contributes ``(-1)^i`` times
    either ``X`` of the first arrow (``i = 0``) or the identity.
    """
    K = nerve(X.shape)
    blocks = {}
    ranks = {}
    for p, xs in K.simplices.items():
        for x in xs:
            V = X.value[x[0][0]]
            for q in V.degrees:
                blocks[(x, q)] = ranks.get(p + q, 0)
                ranks[p + q] = ranks.get(p + q, 0) + V.rank(q)
    trip = {}
    for p, xs in K.simplices.items():
        for x in xs:
            objs, mors = x
            V = X.value[objs[0]]
            for q in V.degrees:
                o = blocks[(x, q)]
                n = p + q
                ent = trip.setdefault(n, [])
                if q in V.d and (x, q - 1) in blocks:
                    ent.append((blocks[(x, q - 1)], o, (-1) ** p * V.d[q]))
                for i in range(p + 1 if p else 0):
                    y, s = K.faces[(x, i)]
                    if not (is_identity_surjection(s) and len(s) == p):
                        continue
                    M = X.map(mors[0]).at(q) if i == 0 else sp.identity(V.rank(q), dtype=np.int64)
                    if (y, q) in blocks and M.nnz:
                        ent.append((blocks[(y, q)], o, (-1) ** i * M))
    d = {}
    for n, ent in trip.items():
        rows, cols, vals = [], [], []
        for r0, c0, M in ent:
            M = sp.coo_matrix(M)
            rows.append(M.row + r0)
            cols.append(M.col + c0)
            vals.append(M.data)
        if rows:
            d[n] = sp.csr_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                                 shape=(ranks.get(n - 1, 0), ranks[n]), dtype=np.int64)
    return ChainComplex(ranks, d, check=True), blocks


def latching_map_by_nerve(X: Diagram, S) -> ChainMap:
    """Second construction of the homotopy latching map, through the nerve."""
    S = tuple(sorted(S))
    sub = _subset_shape(S, COPUNCTURED)
    C, blocks = hocolim_by_nerve(restrict_to(X, sub))
    target = X.value[S]
    T = _Triplets()
    for (x, q), o in blocks.items():
        if len(x[1]):
            continue
        U = x[0][0]
        T.add(q, 0, o, X.map((U, S)).at(q))
    return _assemble_map(C, target, T)


def face_is_cocartesian(X: Diagram, base: tuple, extra: tuple) -> bool:
    """Whether the face ``{base ∪ A : A ⊆ extra}`` is homotopy co-Cartesian (nerve path)."""
    faces = [tuple(sorted(set(base) | set(A))) for A in _subsets(extra)]
    top = tuple(sorted(set(base) | set(extra)))
    objs = [F for F in faces if F != top]
    sub = FinCat.from_preorder(objs, lambda a, b: set(a) <= set(b))
    Y = restrict_to(X, sub)
    C, blocks = hocolim_by_nerve(Y)
    T = _Triplets()
    for (x, q), o in blocks.items():
        if len(x[1]):
            continue
        T.add(q, 0, o, X.map((x[0][0], top)).at(q))
    return is_quasi_iso(_assemble_map(C, X.value[top], T))


def _subsets(items):
    from itertools import combinations
    items = tuple(items)
    return [c for r in range(len(items) + 1) for c in combinations(items, r)]


# ---------------------------------------------------------------------------
# strict latching maps and cofibrations

@dataclass
class StrictLatching:
    subset: tuple
    cofibration: bool
    quasi_iso: bool | None
    details: dict = field(default_factory=dict)


def strict_latching(X: Diagram, S) -> StrictLatching:
    """Decide whether ``colim_{𝒫₁(S)} X -> X(S)`` is a cofibration, and if so a quasi-iso.

    Per degree, with ``Φ: ⊕_T X(T) -> X(S)`` and ``R`` the relation
    lattice spanned by ``x@T - X(T⊂T')x@T'``: the latching map is a
    split injection with free cokernel iff ``rank R = dim - rank Φ`` and
    all invariant factors of ``R`` and of ``Φ`` equal 1.
    """
    S = tuple(sorted(S))
    sub = _subset_shape(S, COPUNCTURED)
    target = X.value[S]
    objs = list(sub.objects)
    cof = True
    images = {}
    for k in sorted(set().union(*[set(X.value[T].degrees) for T in objs]) | set(target.degrees)):
        sizes = [X.value[T].rank(k) for T in objs]
        dim = sum(sizes)
        off = np.cumsum([0] + sizes)
        pos = {T: off[i] for i, T in enumerate(objs)}
        if dim == 0:
            images[k] = []
            continue
        Phi = sp.hstack([X.map((T, S)).at(k) if T != S else sp.identity(target.rank(k))
                         for T in objs], format="csr")
        rel_cols = []
        for f in sub.non_identity:
            a, b = sub.src(f), sub.dst(f)
            A = X.map(f).at(k).toarray()
            for c in range(X.value[a].rank(k)):
                col = np.zeros(dim, dtype=np.int64)
                col[pos[a] + c] = 1
                col[pos[b]:pos[b] + A.shape[0]] -= A[:, c]
                rel_cols.append(col)
        inv_phi = invariant_factors(Phi) if target.rank(k) else []
        rank_phi = len(inv_phi)
        if rel_cols:
            R = np.array(rel_cols, dtype=np.int64).T
            inv_r = invariant_factors(R)
        else:
            inv_r = []
        if len(inv_r) != dim - rank_phi or any(t != 1 for t in inv_r) or \
                any(t != 1 for t in inv_phi):
            cof = False
        images[k] = image_basis(Phi) if target.rank(k) else []
    if not cof:
        return StrictLatching(S, False, None)
    inc = _subcomplex_inclusion(target, images)
    return StrictLatching(S, True, is_quasi_iso(inc))


def _subcomplex_inclusion(C: ChainComplex, bases: dict) -> ChainMap:
    """Inclusion of the subcomplex with degreewise bases ``bases[k]`` (pure, d-closed)."""
    ranks = {k: len(B) for k, B in bases.items() if B}
    d = {}
    for k, B in bases.items():
        if not B or not ranks.get(k - 1):
            continue
        D = C.diff(k).toarray()
        M = np.zeros((ranks[k - 1], ranks[k]), dtype=np.int64)
        for c, v in enumerate(B):
            img = [int(x) for x in D @ np.array(v, dtype=np.int64)]
            y = solve_rational(bases[k - 1], img)
            if y is None or any(t.denominator != 1 for t in y):
                raise ValueError("image is not a subcomplex")
            M[:, c] = [int(t) for t in y]
        d[k] = M
    Sub = ChainComplex(ranks, d, check=True)
    maps = {k: np.array(B, dtype=np.int64).T for k, B in bases.items() if B}
    return ChainMap(Sub, C, maps, check=True)


# ---------------------------------------------------------------------------
# classification

@dataclass
class Classification:
    cofibration_cube: bool
    ho_cocartesian: bool
    strongly_ho_cocartesian: bool
    latching: dict = field(default_factory=dict)
    strict: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"cofibration_cube": self.cofibration_cube,
                "ho_cocartesian": self.ho_cocartesian,
                "strongly_ho_cocartesian": self.strongly_ho_cocartesian,
                "latching_quasi_iso": {",".join(map(str, S)) or "∅": v
                                       for S, v in self.latching.items()}}


def cube_classify(X: Diagram) -> Classification:
    n = _check_cube(X)
    top = tuple(range(1, n + 1))
    strict = {S: strict_latching(X, S) for S in X.shape.objects if S}
    latch = {S: is_quasi_iso(latching_map(X, S)) for S in X.shape.objects if len(S) >= 2}
    if n >= 2:
        ho = latch[top]
    elif n == 1:
        ho = is_quasi_iso(latching_map(X, top))
    else:
        ho = X.value[()].is_acyclic
    return Classification(all(s.cofibration for s in strict.values()), ho,
                          all(latch.values()), latch, strict)


def brute_classify(X: Diagram) -> dict:
    """Homotopy verdicts recomputed through the nerve path."""
    n = max(len(S) for S in X.shape.objects)
    top = tuple(range(1, n + 1))
    latch = {S: is_quasi_iso(latching_map_by_nerve(X, S))
             for S in X.shape.objects if len(S) >= 2}
    return {"ho_cocartesian": latch.get(top, False),
            "strongly_ho_cocartesian": all(latch.values()),
            "latching": latch}


def strongly_by_faces(X: Diagram) -> bool:
    """Every 2-dimensional face homotopy co-Cartesian (nerve path)."""
    n = max(len(S) for S in X.shape.objects)
    items = tuple(range(1, n + 1))
    for T in _subsets(items):
        rest = [i for i in items if i not in T]
        for a in range(len(rest)):
            for b in range(a + 1, len(rest)):
                if not face_is_cocartesian(X, T, (rest[a], rest[b])):
                    return False
    return True


@dataclass
class CofibrationEquivalence:
    cofibration_cube: bool
    strict_latching_quasi_iso: bool
    strongly_ho_cocartesian: bool

    @property
    def holds(self) -> bool:
        return not self.cofibration_cube or \
            self.strict_latching_quasi_iso == self.strongly_ho_cocartesian


def cofibration_equivalence(X: Diagram) -> CofibrationEquivalence:
    """For a cofibration cube: strict latching quasi-isos for ``|S| ≥ 2`` versus strongly co-Cartesian.

    The right side is recomputed face by face through the nerve path.
    """
    c = cube_classify(X)
    strict_ok = all(r.quasi_iso for S, r in c.strict.items() if len(S) >= 2 and r.cofibration)
    return CofibrationEquivalence(c.cofibration_cube, strict_ok, strongly_by_faces(X))


# ---------------------------------------------------------------------------
# Rezk's objects

@dataclass
class RezkObjects:
    X2: TotalComplex
    XU: TotalComplex
    XU_to_X2: ChainMap
    X2_to_star_h: ChainMap
    star_h: TotalComplex


def rezk_objects(X: Diagram, U, T) -> RezkObjects:
    """``𝒳²(U,T)``, ``𝒳_U(T)`` and the maps ``𝒳_U(T) -> 𝒳²(U,T) -> U ⋆ʰ 𝒳(T)``."""
    U, T = tuple(sorted(U)), tuple(sorted(T))
    if not U:
        raise ValueError("rezk_objects: U must be nonempty")
    D = _star.spider_data(U)
    XT = X.value[T]
    up = {s: tuple(sorted(set(T) | {s})) for s in U}

    def arrow(a, b):
        return identity_map(X.value[a]) if a == b else X.map((a, b))
    # 𝒳² over the spider
    value = {}
    for o in D.spider.objects:
        value[o] = {0: lambda s: X.value[up[s]], 1: lambda s: XT, 2: lambda s: XT}[o[0]](o[1])
    action = {}
    for f in D.spider.non_identity:
        a, b = D.spider.src(f), D.spider.dst(f)
        action[f] = arrow(T, up[a[1]]) if b[0] == 0 else identity_map(XT)
    X2 = hocolim(Diagram(D.spider, value, action))
    # 𝒳_U(T) over po: 0 = 𝒳(T), 1 = ∐ 𝒳(T), 2 = ∐ 𝒳(T ∪ s)
    legs, llay = dsum_with_layout([XT] * len(U))
    feet, flay = dsum_with_layout([X.value[up[s]] for s in U])
    fold = {}
    push = {}
    for q in legs.degrees:
        r = XT.rank(q)
        fold[q] = sp.hstack([sp.identity(r, dtype=np.int64)] * len(U), format="csr")
        push[q] = sp.block_diag([arrow(T, up[s]).at(q) for s in U], format="csr")
    P = po()
    XU = hocolim(Diagram(P, {0: XT, 1: legs, 2: feet},
                         {"l": ChainMap(legs, XT, fold), "r": ChainMap(legs, feet, push)}))
    # block isomorphism 𝒳_U(T) -> 𝒳²(U,T)
    Tr = _Triplets()
    body = (D.body,)
    i_l = next(f for f in P.non_identity if f == "l")

    def spider_arrow(a, b):
        return next(f for f in D.spider.hom(a, b))
    for (c, q), (n, o) in XU.offset.items():
        objs, mors = c
        r = XT.rank(q)
        if objs == (0,):
            t = X2.offset[((D.body,), ()), q]
            Tr.add(n, t[1], o, sp.identity(r, dtype=np.int64))
            continue
        for i, s in enumerate(U):
            if objs == (2,):
                rr = X.value[up[s]].rank(q)
                if not rr:
                    continue
                t = X2.offset[(((0, s),), ()), q]
                Tr.add(n, t[1], o + flay.block(i, q), sp.identity(rr, dtype=np.int64))
                continue
            if not r:
                continue
            src = o + llay.block(i, q)
            if objs == (1,):
                t = X2.offset[(((1, s),), ()), q]
            elif objs == (1, 0):
                t = X2.offset[(((1, s), D.body), (spider_arrow((1, s), D.body),)), q]
            else:
                t = X2.offset[(((1, s), (0, s)), (spider_arrow((1, s), (0, s)),)), q]
            Tr.add(n, t[1], src, sp.identity(r, dtype=np.int64))
    iso = _assemble_map(XU.complex, X2.complex, Tr)
    # 𝒳²(U,T) -> U ⋆ʰ 𝒳(T)
    Hh = _star.star_h(U, XT)
    B = Hh.diagram.value[D.body]
    N = D.weight
    lay = tensor_layout(XT, N)
    v0 = D.vertex(EMPTY)
    Tr = _Triplets()
    for (c, q), (n, o) in X2.offset.items():
        objs, mors = c
        head = objs[0]
        r = X2.diagram.value[head].rank(q)
        if head[0] == 0:
            continue
        if head == D.body and len(objs) == 1:
            t = Hh.offset[(c, q)]
            rows = t[1] + lay[(q, 0)] + np.arange(r) * N.rank(0) + v0
            Tr.add(n, 0, o, sp.csr_matrix((np.ones(r, dtype=np.int64), (rows, np.arange(r))),
                                          shape=(Hh.complex.rank(n), r)))
            continue
        if len(objs) == 1 or objs[1][0] == 0:
            t = Hh.offset[(c, q)]
            Tr.add(n, t[1], o, sp.identity(r, dtype=np.int64))
            continue
        # leg s -> body: identity onto the same chain plus (-1)^q x ⊗ e_s on the body
        s = head[1]
        t = Hh.offset[(c, q)]
        Tr.add(n, t[1], o, sp.identity(r, dtype=np.int64))
        tb = Hh.offset[(((D.body,), ()), q + 1)]
        rows = tb[1] + lay[(q, 1)] + np.arange(r) * N.rank(1) + D.edge(s)
        sign = -1 if q % 2 else 1
        Tr.add(n, 0, o, sp.csr_matrix((np.full(r, sign, dtype=np.int64), (rows, np.arange(r))),
                                      shape=(Hh.complex.rank(n), r)))
    to_h = _assemble_map(X2.complex, Hh.complex, Tr)
    return RezkObjects(X2, XU, iso, to_h, Hh)
