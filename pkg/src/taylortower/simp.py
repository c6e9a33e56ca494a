"""Finite simplicial sets presented by their nondegenerate simplices.

A possibly degenerate simplex is a pair ``(x, s)`` with ``x`` nondegenerate
of dimension ``m`` and ``s`` a monotone surjection ``[k] -> [m]`` written
as the tuple ``(s(0), ..., s(k))``.  The stored face table gives
``d_i x`` for every nondegenerate ``x``; faces of degenerate simplices are
derived through the simplicial identities.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from .chain import ChainComplex
from .fincat import FinCat, is_loop_free


def identity_surjection(k: int) -> tuple:
    return tuple(range(k + 1))


def is_identity_surjection(s: tuple) -> bool:
    return all(v == i for i, v in enumerate(s))


class FinSimpSet:
    """``simplices[k]`` lists nondegenerate k-simplices; ``faces[(x, i)] = (y, s)``."""

    def __init__(self, simplices: dict, faces: dict, name: str = ""):
        self.simplices = {k: tuple(v) for k, v in simplices.items() if v}
        self.faces = dict(faces)
        self.name = name
        self.dim_of = {x: k for k, xs in self.simplices.items() for x in xs}

    @property
    def dimension(self) -> int:
        return max(self.simplices, default=-1)

    def f_vector(self) -> tuple:
        return tuple(len(self.simplices.get(k, ())) for k in range(self.dimension + 1))

    def euler(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def __repr__(self) -> str:
        return f"<FinSimpSet {self.name} f={self.f_vector()}>"

    def face(self, simplex: tuple, i: int) -> tuple:
        """``d_i`` of a possibly degenerate simplex ``(x, s)``."""
        x, s = simplex
        k = len(s) - 1
        t = s[:i] + s[i + 1:]  # s ∘ δ_i
        m = self.dim_of[x]
        hit = set(t)
        if len(hit) == m + 1:
            return (x, t)
        # exactly one value j is missed: s∘δ_i = δ_j ∘ u
        j = next(v for v in range(m + 1) if v not in hit)
        u = tuple(v if v < j else v - 1 for v in t)
        y, w = self.faces[(x, j)]
        return (y, tuple(w[v] for v in u))

    def check(self) -> list[str]:
        """Simplicial identities ``d_i d_j = d_{j-1} d_i`` (i < j) and honest dimension."""
        bad = []
        for (x, i), (y, s) in self.faces.items():
            k = self.dim_of.get(x)
            if k is None or y not in self.dim_of:
                bad.append(f"face ({x!r}, {i}) refers to an unknown simplex")
                continue
            if len(s) != k or max(s, default=-1) != self.dim_of[y] or \
                    any(b < a for a, b in zip(s, s[1:])) or len(set(s)) != self.dim_of[y] + 1:
                bad.append(f"face ({x!r}, {i}) has a malformed degeneracy")
        if bad:
            return bad
        for k, xs in self.simplices.items():
            for x in xs:
                for i in range(k + 1):
                    if (x, i) not in self.faces and k > 0:
                        bad.append(f"missing face ({x!r}, {i})")
        if bad:
            return bad
        for k, xs in self.simplices.items():
            if k < 2:
                continue
            for x in xs:
                top = (x, identity_surjection(k))
                for j in range(k + 1):
                    for i in range(j):
                        a = self.face(self.face(top, j), i)
                        b = self.face(self.face(top, i), j - 1)
                        if a != b:
                            bad.append(f"simplicial identity d_{i}d_{j} fails on {x!r}")
        return bad

    def to_json(self) -> dict:
        def lab(x):
            return x if isinstance(x, str) else repr(x)
        return {"simplices": {str(k): [lab(x) for x in xs] for k, xs in self.simplices.items()},
                "faces": [[lab(x), i, lab(y), list(s)] for (x, i), (y, s) in self.faces.items()]}

    @classmethod
    def from_json(cls, data) -> "FinSimpSet":
        if isinstance(data, str):
            data = json.loads(data)
        simp = {int(k): list(v) for k, v in data["simplices"].items()}
        faces = {(x, int(i)): (y, tuple(s)) for x, i, y, s in data.get("faces", [])}
        return cls(simp, faces)


def nerve(C: FinCat) -> FinSimpSet:
    """Nerve of a loop-free finite category: chains of non-identity arrows."""
    if not is_loop_free(C):
        raise ValueError(f"nerve: {C!r} is not loop-free")
    simplices = {}
    faces = {}
    for p, level in enumerate(C.chains):
        labels = []
        for objs, mors in level:
            x = (objs, mors)
            labels.append(x)
            if p == 0:
                continue
            for i in range(p + 1):
                if i == 0:
                    y = (objs[1:], mors[1:])
                elif i == p:
                    y = (objs[:-1], mors[:-1])
                else:
                    y = (objs[:i] + objs[i + 1:],
                         mors[:i - 1] + (C.comp(mors[i], mors[i - 1]),) + mors[i + 1:])
                faces[(x, i)] = (y, identity_surjection(p - 1))
        simplices[p] = labels
    return FinSimpSet(simplices, faces, name=f"N({C.name})" if C.name else "N")


def from_simplicial_complex(facets, name: str = "") -> FinSimpSet:
    """Ordered simplicial complex generated by ``facets`` (vertex tuples)."""
    faces_all = set()
    for F in facets:
        F = tuple(sorted(F))
        for r in range(1, len(F) + 1):
            faces_all.update(itertools.combinations(F, r))
    simplices = {}
    for x in sorted(faces_all, key=lambda t: (len(t), t)):
        simplices.setdefault(len(x) - 1, []).append(x)
    faces = {}
    for k, xs in simplices.items():
        if k == 0:
            continue
        for x in xs:
            for i in range(k + 1):
                faces[(x, i)] = (x[:i] + x[i + 1:], identity_surjection(k - 1))
    return FinSimpSet(simplices, faces, name)


def point() -> FinSimpSet:
    return FinSimpSet({0: [(0,)]}, {}, "pt")


def empty_sset() -> FinSimpSet:
    return FinSimpSet({}, {}, "empty")


def standard_simplex(n: int) -> FinSimpSet:
    return from_simplicial_complex([tuple(range(n + 1))], f"Delta{n}")


def boundary_simplex(n: int) -> FinSimpSet:
    facets = list(itertools.combinations(range(n + 1), n))
    return from_simplicial_complex(facets, f"dDelta{n}")


def circle() -> FinSimpSet:
    """One vertex and one edge."""
    return FinSimpSet({0: ["v"], 1: ["e"]}, {("e", 0): ("v", (0,)), ("e", 1): ("v", (0,))},
                      "S1")


def _paths(p: int, q: int):
    """Strictly increasing lattice paths from (0,0) to (p,q) (unit or diagonal steps)."""
    def rec(i, j):
        if (i, j) == (p, q):
            yield ((i, j),)
            return
        for di, dj in ((1, 0), (0, 1), (1, 1)):
            a, b = i + di, j + dj
            if a <= p and b <= q:
                for rest in rec(a, b):
                    yield ((i, j),) + rest
    yield from rec(0, 0)


def sset_product(A: FinSimpSet, B: FinSimpSet) -> FinSimpSet:
    """Product via nondegenerate pairs ``(s^* x, t^* y)`` with jointly injective ``(s, t)``."""
    simplices = {}
    for p, xs in A.simplices.items():
        for q, ys in B.simplices.items():
            paths = list(_paths(p, q))
            for x in xs:
                for y in ys:
                    for path in paths:
                        s = tuple(a for a, _ in path)
                        t = tuple(b for _, b in path)
                        simplices.setdefault(len(path) - 1, []).append((x, y, s, t))
    P = FinSimpSet(simplices, {}, f"{A.name}x{B.name}")
    faces = {}
    for k, zs in simplices.items():
        if k == 0:
            continue
        for z in zs:
            x, y, s, t = z
            for i in range(k + 1):
                xa, sa = A.face((x, s), i)
                yb, tb = B.face((y, t), i)
                # collapse repeated consecutive pairs (a common degeneracy)
                pairs = list(zip(sa, tb))
                uniq = []
                w = []
                for pr in pairs:
                    if not uniq or uniq[-1] != pr:
                        uniq.append(pr)
                    w.append(len(uniq) - 1)
                label = (xa, yb, tuple(a for a, _ in uniq), tuple(b for _, b in uniq))
                faces[(z, i)] = (label, tuple(w))
    P.faces = faces
    return P


def normalized_chains(K: FinSimpSet) -> ChainComplex:
    """Free on nondegenerate simplices, ``d = Σ (-1)^i d_i`` with degenerate faces dropped."""
    index = {k: {x: n for n, x in enumerate(xs)} for k, xs in K.simplices.items()}
    ranks = {k: len(xs) for k, xs in K.simplices.items()}
    d = {}
    for k, xs in K.simplices.items():
        if k == 0:
            continue
        rows, cols, vals = [], [], []
        for c, x in enumerate(xs):
            for i in range(k + 1):
                y, s = K.faces[(x, i)]
                if is_identity_surjection(s) and len(s) == k:
                    rows.append(index[k - 1][y])
                    cols.append(c)
                    vals.append(-1 if i % 2 else 1)
        M = sp.csr_matrix((np.array(vals, dtype=np.int64), (rows, cols)),
                          shape=(ranks.get(k - 1, 0), ranks[k]), dtype=np.int64)
        M.sum_duplicates()
        d[k] = M
    return ChainComplex(ranks, d, name=f"C({K.name})", check=True)


def nerve_iso_product(C: FinCat, D: FinCat, ND: FinSimpSet | None = None):
    """Simplex-level bijection ``N(C x D) -> N(C) x N(D)``.

    A chain in ``C x D`` splits into a pair of possibly degenerate chains;
    the returned dict maps each nondegenerate simplex of ``N(C x D)`` to the
    label of the corresponding nondegenerate simplex of the product.
    """
    from .fincat import product
    P = product(C, D)
    NP = nerve(P)
    NC, NDD = nerve(C), ND or nerve(D)

    def split(objs, mors, which, cat):
        o = tuple(ob[which] for ob in objs)
        m = tuple(f[which] for f in mors)
        # collapse identities
        keep_o = [o[0]]
        keep_m = []
        s = [0]
        for ob, f in zip(o[1:], m):
            if cat.is_identity(f):
                s.append(s[-1])
            else:
                keep_o.append(ob)
                keep_m.append(f)
                s.append(s[-1] + 1)
        return (tuple(keep_o), tuple(keep_m)), tuple(s)
    out = {}
    for k, xs in NP.simplices.items():
        for (objs, mors) in xs:
            x, s = split(objs, mors, 0, C)
            y, t = split(objs, mors, 1, D)
            out[(objs, mors)] = (x, y, s, t)
    return out, NP, sset_product(NC, NDD)
