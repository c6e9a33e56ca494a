"""Functors between complexes and natural transformations.

Evaluations are cached per functor by the fingerprint of the argument, so
repeated ``F(X)`` calls return the same object and induced maps compose.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.sparse as sp

from .chain import (ChainComplex, ChainMap, free_module, identity_map, tensor, tensor_layout,
                    tensor_maps)
from .diagrams import Diagram, TotalComplex, _Triplets, _assemble_map


class FunctorSpec:
    """``on_objects(X)`` and ``on_morphisms(f, FX, FY)``.

    ``weight`` is set when ``F(X) = X ⊗ weight`` on the nose; such functors
    commute with homotopy limits through an explicit block permutation
    (:meth:`holim_comparison`).
    """

    def __init__(self, name: str, on_objects: Callable, on_morphisms: Callable,
                 preserves_zero: bool = False, exact_on_fiber_squares: bool = False,
                 weight: ChainComplex | None = None, cache: bool = True):
        self.name = name
        self._on_objects = on_objects
        self._on_morphisms = on_morphisms
        self.preserves_zero = preserves_zero
        self.exact_on_fiber_squares = exact_on_fiber_squares
        self.weight = weight
        self._cache = {} if cache else None
        self._lock = threading.Lock()

    def __repr__(self):
        return f"<FunctorSpec {self.name}>"

    def obj(self, X: ChainComplex) -> ChainComplex:
        if self._cache is None:
            return self._on_objects(X)
        key = X.fingerprint
        with self._lock:
            hit = self._cache.get(key)
        if hit is not None:
            return hit
        val = self._on_objects(X)
        with self._lock:
            return self._cache.setdefault(key, val)

    def mor(self, f: ChainMap) -> ChainMap:
        return self._on_morphisms(f, self.obj(f.source), self.obj(f.target))

    def __call__(self, X):
        return self.mor(X) if isinstance(X, ChainMap) else self.obj(X)

    def check_functorial(self, pairs) -> list[str]:
        """Check ``F(g∘f) = F(g)∘F(f)`` and ``F(id) = id`` on sample composable pairs."""
        bad = []
        for f, g in pairs:
            if not self.mor(f.then(g)).equals(self.mor(f).then(self.mor(g))):
                bad.append(f"{self.name}: composition not preserved")
            FX = self.obj(f.source)
            if not self.mor(identity_map(f.source)).equals(identity_map(FX)):
                bad.append(f"{self.name}: identity not preserved")
        return bad

    def holim_comparison(self, HD: TotalComplex, HFD: TotalComplex) -> ChainMap:
        """``F(holim D) -> holim (F∘D)`` for tensor-weighted functors.

        ``HFD`` must be the holim of ``D.apply(self)``.  The map is an
        isomorphism: ``(σ, x) ⊗ m ↦ (σ, x ⊗ m)``.
        """
        if self.weight is None:
            raise ValueError(f"{self.name}: no canonical comparison with homotopy limits")
        M = self.weight
        src = self.obj(HD.complex)
        src_lay = tensor_layout(HD.complex, M)
        T = _Triplets()
        for (c, q), (n, o) in HD.offset.items():
            V = HD.diagram.value[c[0][-1]]
            inner = tensor_layout(V, M)
            a = V.rank(q)
            for r in M.degrees:
                b = M.rank(r)
                tgt = HFD.offset.get((c, q + r))
                if tgt is None:
                    continue
                # x_i ⊗ m_j sits at i*b + j on both sides
                rows = tgt[1] + inner[(q, r)] + np.arange(a * b)
                cols = src_lay[(n, r)] + o * b + np.arange(a * b)
                T.add(n + r, 0, 0, sp.csr_matrix(
                    (np.ones(a * b, dtype=np.int64), (rows, cols)),
                    shape=(HFD.complex.rank(n + r), src.rank(n + r))))
        return _assemble_map(src, HFD.complex, T)


@dataclass
class NatTrans:
    """``component(X)``: ``source(X) -> target(X)``."""
    source: FunctorSpec
    target: FunctorSpec
    component: Callable
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def at(self, X: ChainComplex) -> ChainMap:
        key = X.fingerprint
        hit = self._cache.get(key)
        if hit is None:
            hit = self._cache.setdefault(key, self.component(X))
        return hit

    def check_natural(self, f: ChainMap) -> bool:
        lhs = self.source.mor(f).then(self.at(f.target))
        rhs = self.at(f.source).then(self.target.mor(f))
        return lhs.equals(rhs)


# ---------------------------------------------------------------------------
# builtins

def identity_functor() -> FunctorSpec:
    return FunctorSpec("id", lambda X: X, lambda f, a, b: ChainMap(a, b, f.maps, f.degree),
                       preserves_zero=True, exact_on_fiber_squares=True,
                       weight=free_module(1, 0), cache=False)


def tensor_functor(M: ChainComplex, name: str | None = None) -> FunctorSpec:
    """``X ↦ X ⊗ M``; exact, so it carries both fiber-square flags when ``M`` is nonzero."""
    idM = identity_map(M)
    return FunctorSpec(name or f"tensor:{M.fingerprint[:8]}",
                       lambda X: tensor(X, M),
                       lambda f, a, b: tensor_maps(f, idM, a, b),
                       preserves_zero=True, exact_on_fiber_squares=True, weight=M)


def double_functor() -> FunctorSpec:
    """``X ↦ X ⊕ X``, realized as ``X ⊗ ℤ²`` (summands interleaved per generator)."""
    return tensor_functor(free_module(2, 0), "sum")


def shift_functor(k: int = 1) -> FunctorSpec:
    """``X ↦ X ⊗ ℤ[k]``: homology moves up by ``k``."""
    return tensor_functor(free_module(1, k), f"shift:{k}")


def constant_functor(C0: ChainComplex, name: str | None = None) -> FunctorSpec:
    idc = identity_map(C0)
    return FunctorSpec(name or f"const:{C0.fingerprint[:8]}", lambda X: C0,
                       lambda f, a, b: idc, preserves_zero=C0.is_acyclic(),
                       exact_on_fiber_squares=True, cache=False)


def square_functor() -> FunctorSpec:
    """``X ↦ X ⊗ X``; quadratic, so it fails the fiber-square condition."""
    return FunctorSpec("sq", lambda X: tensor(X, X),
                       lambda f, a, b: tensor_maps(f, f, a, b),
                       preserves_zero=True, exact_on_fiber_squares=False)


def identity_nat(F: FunctorSpec) -> NatTrans:
    return NatTrans(F, F, lambda X: identity_map(F.obj(X)), "id")


def unit_into_tensor(M: ChainComplex, vertex: int = 0, name: str = "") -> NatTrans:
    """``X -> X ⊗ M``, ``x ↦ x ⊗ e`` for the degree-0 generator ``e = vertex`` of ``M``.

    An objectwise quasi-isomorphism whenever ``e`` generates ``H(M) = ℤ[0]``.
    """
    F = identity_functor()
    G = tensor_functor(M, name or None)
    Z = free_module(1, 0)
    inc = ChainMap(Z, M, {0: sp.csr_matrix(([1], ([vertex], [0])), shape=(M.rank(0), 1),
                                           dtype=np.int64)}, check=True)

    def comp(X):
        return tensor_maps(identity_map(X), inc, X, G.obj(X))
    return NatTrans(F, G, comp, f"unit:{G.name}")
