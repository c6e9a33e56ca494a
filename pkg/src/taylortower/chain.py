"""Bounded complexes of finitely generated free abelian groups.

Grading is homological: ``d_k: C_k -> C_{k-1}``.  Differentials and chain
map components are stored as scipy CSR matrices of dtype int64; products
are guarded against overflow, and homology goes through exact integer
Smith normal form.

Sign conventions:

* ``shift(C, k)_n = C_{n-k}`` with differential ``(-1)^k d``;
* ``cone(f)_n = X_{n-1} ⊕ Y_n`` with ``d(x, y) = (-dx, f x + dy)``;
* ``d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy``.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from .fincat import GuardError
from .snf import invariant_factors

INT_LIMIT = 2 ** 62
MAX_TOTAL_RANK = 200_000


def zeros(m: int, n: int) -> sp.csr_matrix:
    return sp.csr_matrix((m, n), dtype=np.int64)


def eye(n: int) -> sp.csr_matrix:
    return sp.identity(n, dtype=np.int64, format="csr")


def as_matrix(M, shape: tuple | None = None) -> sp.csr_matrix:
    if sp.issparse(M):
        out = sp.csr_matrix(M, dtype=np.int64)
    else:
        arr = np.asarray(M, dtype=np.int64)
        if shape is not None and arr.size == 0:
            arr = arr.reshape(shape)
        out = sp.csr_matrix(arr, dtype=np.int64)
    if shape is not None and out.shape != tuple(shape):
        raise ValueError(f"matrix has shape {out.shape}, expected {tuple(shape)}")
    out.eliminate_zeros()
    return out


def _maxabs(M: sp.csr_matrix) -> int:
    return int(abs(M.data).max()) if M.nnz else 0


def matmul(A: sp.csr_matrix, B: sp.csr_matrix) -> sp.csr_matrix:
    """``A @ B`` with an int64 overflow guard."""
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    if A.nnz and B.nnz:
        bound = _maxabs(A) * _maxabs(B) * max(1, A.shape[1])
        if bound >= INT_LIMIT:
            raise GuardError("integer overflow guard: matrix product entries may exceed int64")
    C = (A @ B).tocsr()
    C.eliminate_zeros()
    return C


def same_matrix(A, B) -> bool:
    if A.shape != B.shape:
        return False
    D = (A - B)
    return D.count_nonzero() == 0


class ChainComplex:
    """``ranks[k]`` generators in degree ``k``; ``d[k]: C_k -> C_{k-1}``."""

    def __init__(self, ranks: Mapping[int, int], d: Mapping[int, object] | None = None,
                 name: str = "", check: bool = False):
        self.ranks = {int(k): int(r) for k, r in ranks.items() if r}
        self.d = {}
        for k, M in (d or {}).items():
            k = int(k)
            M = as_matrix(M, (self.rank(k - 1), self.rank(k)))
            if M.nnz:
                self.d[k] = M
        self.name = name
        if check:
            bad = self.check()
            if bad:
                raise ValueError(f"not a chain complex: {bad[0]}")

    # -- basic data --------------------------------------------------------
    def rank(self, k: int) -> int:
        return self.ranks.get(k, 0)

    def diff(self, k: int) -> sp.csr_matrix:
        M = self.d.get(k)
        return M if M is not None else zeros(self.rank(k - 1), self.rank(k))

    @property
    def degrees(self) -> list[int]:
        return sorted(self.ranks)

    @property
    def lo(self) -> int:
        return min(self.ranks) if self.ranks else 0

    @property
    def hi(self) -> int:
        return max(self.ranks) if self.ranks else -1

    @property
    def total_rank(self) -> int:
        return sum(self.ranks.values())

    def euler(self) -> int:
        return sum((-1) ** k * r for k, r in self.ranks.items())

    def is_zero(self) -> bool:
        return not self.ranks

    def __repr__(self) -> str:
        nm = f" {self.name}" if self.name else ""
        body = ", ".join(f"{k}:{r}" for k, r in sorted(self.ranks.items()))
        return f"<ChainComplex{nm} ranks {{{body}}}>"

    def check(self) -> list[str]:
        bad = []
        for k, M in self.d.items():
            if M.shape != (self.rank(k - 1), self.rank(k)):
                bad.append(f"d_{k} has shape {M.shape}")
        for k in self.d:
            if k - 1 in self.d:
                if matmul(self.d[k - 1], self.d[k]).nnz:
                    bad.append(f"d_{k - 1} d_{k} != 0")
        return bad

    @cached_property
    def fingerprint(self) -> str:
        h = hashlib.sha1()
        for k in self.degrees:
            h.update(f"r{k}:{self.ranks[k]};".encode())
        for k in sorted(self.d):
            M = self.d[k].tocsr()
            M.sort_indices()
            h.update(f"d{k}".encode())
            h.update(M.indptr.tobytes())
            h.update(M.indices.tobytes())
            h.update(M.data.astype(np.int64).tobytes())
        return h.hexdigest()

    # -- homology ----------------------------------------------------------
    def homology(self) -> "HomologySummary":
        inv = {k: invariant_factors(M) for k, M in self.d.items()}
        out = {}
        for k in self.degrees:
            rk_out = len(inv.get(k, ()))
            into = inv.get(k + 1, [])
            betti = self.rank(k) - rk_out - len(into)
            torsion = [t for t in into if t != 1]
            if betti or torsion:
                out[k] = (betti, tuple(torsion))
        return HomologySummary(out)

    def is_acyclic(self) -> bool:
        total = 0
        for k, M in self.d.items():
            inv = invariant_factors(M)
            if any(t != 1 for t in inv):
                return False
            total += 2 * len(inv)
        return total == self.total_rank

    # -- JSON --------------------------------------------------------------
    def to_json(self) -> dict:
        lo, hi = (self.lo, self.hi) if self.ranks else (0, -1)
        return {"lo": lo, "hi": hi,
                "ranks": [self.rank(k) for k in range(lo, hi + 1)],
                "d": {str(k): self.diff(k).toarray().tolist() for k in sorted(self.d)}}

    @classmethod
    def from_json(cls, data) -> "ChainComplex":
        if isinstance(data, str):
            data = json.loads(data)
        lo = int(data["lo"])
        ranks = {lo + i: int(r) for i, r in enumerate(data["ranks"])}
        d = {}
        for k, M in data.get("d", {}).items():
            k = int(k)
            shape = (ranks.get(k - 1, 0), ranks.get(k, 0))
            arr = np.array(M, dtype=np.int64).reshape(shape) if shape[0] * shape[1] else zeros(*shape)
            d[k] = arr
        return cls(ranks, d, check=True)


@dataclass(frozen=True)
class HomologySummary:
    """``groups[k] = (betti, torsion invariant factors)`` for nonzero ``H_k``."""
    groups: Mapping[int, tuple]

    def __eq__(self, other):
        return isinstance(other, HomologySummary) and dict(self.groups) == dict(other.groups)

    def __hash__(self):
        return hash(tuple(sorted(self.groups.items())))

    def is_zero(self) -> bool:
        return not self.groups

    def betti(self, k: int) -> int:
        return self.groups.get(k, (0, ()))[0]

    def torsion(self, k: int) -> tuple:
        return self.groups.get(k, (0, ()))[1]

    def shifted(self, k: int) -> "HomologySummary":
        return HomologySummary({d + k: v for d, v in self.groups.items()})

    def euler(self) -> int:
        return sum((-1) ** k * b for k, (b, _) in self.groups.items())

    def to_json(self) -> dict:
        return {str(k): {"betti": b, "torsion": list(t)} for k, (b, t) in sorted(self.groups.items())}

    def __str__(self) -> str:
        if not self.groups:
            return "0"
        parts = []
        for k, (b, t) in sorted(self.groups.items()):
            terms = ([f"Z^{b}" if b > 1 else "Z"] if b else []) + [f"Z/{x}" for x in t]
            parts.append(f"H{k}=" + "+".join(terms))
        return " ".join(parts)


class ChainMap:
    """A graded map ``source -> target`` of degree ``degree``.

    ``maps[k]`` has shape ``(target.rank(k + degree), source.rank(k))``.
    """

    def __init__(self, source: ChainComplex, target: ChainComplex,
                 maps: Mapping[int, object] | None = None, degree: int = 0,
                 check: bool = False, name: str = ""):
        self.source = source
        self.target = target
        self.degree = degree
        self.maps = {}
        for k, M in (maps or {}).items():
            k = int(k)
            M = as_matrix(M, (target.rank(k + degree), source.rank(k)))
            if M.nnz:
                self.maps[k] = M
        self.name = name
        if check:
            bad = self.check()
            if bad:
                raise ValueError(f"not a chain map: {bad[0]}")

    def __repr__(self):
        return f"<ChainMap {self.name} deg {self.degree}: {self.source!r} -> {self.target!r}>"

    def at(self, k: int) -> sp.csr_matrix:
        M = self.maps.get(k)
        return M if M is not None else zeros(self.target.rank(k + self.degree), self.source.rank(k))

    def check(self) -> list[str]:
        """Graded commutation ``d f = (-1)^deg f d``."""
        bad = []
        e = self.degree
        sign = -1 if e % 2 else 1
        for k in set(self.source.degrees) | {k + 1 for k in self.source.degrees}:
            lhs = matmul(self.target.diff(k + e), self.at(k))
            rhs = matmul(self.at(k - 1), self.source.diff(k))
            if not same_matrix(lhs, sign * rhs):
                bad.append(f"does not commute with d in degree {k}")
        return bad

    def then(self, other: "ChainMap") -> "ChainMap":
        """``other ∘ self``."""
        if other.source is not self.target and other.source.fingerprint != self.target.fingerprint:
            raise ValueError("composition of non-matching chain maps")
        maps = {k: matmul(other.at(k + self.degree), M) for k, M in self.maps.items()}
        return ChainMap(self.source, other.target, maps, self.degree + other.degree)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        keys = set(self.maps) | set(other.maps)
        return ChainMap(self.source, self.target,
                        {k: self.at(k) + other.at(k) for k in keys}, self.degree)

    def __neg__(self) -> "ChainMap":
        return ChainMap(self.source, self.target, {k: -M for k, M in self.maps.items()},
                        self.degree)

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return self + (-other)

    def scaled(self, c: int) -> "ChainMap":
        return ChainMap(self.source, self.target, {k: c * M for k, M in self.maps.items()},
                        self.degree)

    def equals(self, other: "ChainMap") -> bool:
        keys = set(self.maps) | set(other.maps)
        return self.degree == other.degree and all(
            same_matrix(self.at(k), other.at(k)) for k in keys)

    def is_zero(self) -> bool:
        return not self.maps

    def to_json(self) -> dict:
        return {"degree": self.degree,
                "maps": {str(k): M.toarray().tolist() for k, M in sorted(self.maps.items())}}


# ---------------------------------------------------------------------------
# basic complexes and maps

def zero_complex() -> ChainComplex:
    return ChainComplex({})


def free_module(rank: int, degree: int = 0) -> ChainComplex:
    """``ℤ^rank`` concentrated in one degree."""
    return ChainComplex({degree: rank}, name=f"Z{degree}" if rank == 1 else "")


def identity_map(C: ChainComplex) -> ChainMap:
    return ChainMap(C, C, {k: eye(r) for k, r in C.ranks.items()}, name="id")


def zero_map(X: ChainComplex, Y: ChainComplex, degree: int = 0) -> ChainMap:
    return ChainMap(X, Y, {}, degree)


def scalar_map(C: ChainComplex, c: int) -> ChainMap:
    return ChainMap(C, C, {k: c * eye(r) for k, r in C.ranks.items()})


def shift(C: ChainComplex, k: int) -> ChainComplex:
    """``shift(C, k)_n = C_{n-k}`` with differential ``(-1)^k d``."""
    s = -1 if k % 2 else 1
    return ChainComplex({n + k: r for n, r in C.ranks.items()},
                        {n + k: s * M for n, M in C.d.items()})


def shift_map(f: ChainMap, k: int, source: ChainComplex | None = None,
              target: ChainComplex | None = None) -> ChainMap:
    """``shift(f, k)``: a degree-``e`` map picks up the sign ``(-1)^{k e}``."""
    s = -1 if (k * f.degree) % 2 else 1
    src = source or shift(f.source, k)
    tgt = target or shift(f.target, k)
    return ChainMap(src, tgt, {n + k: s * M for n, M in f.maps.items()}, f.degree)


@dataclass
class SumLayout:
    """Offsets of the summands of a direct sum, per degree."""
    offsets: list  # list of dicts degree -> offset, one per summand

    def block(self, i: int, k: int) -> int:
        return self.offsets[i].get(k, 0)


def dsum(*Cs: ChainComplex) -> ChainComplex:
    return dsum_with_layout(Cs)[0]


def dsum_with_layout(Cs: Sequence[ChainComplex]) -> tuple[ChainComplex, SumLayout]:
    degs = sorted(set().union(*[set(C.degrees) for C in Cs])) if Cs else []
    offsets = [dict() for _ in Cs]
    ranks = {}
    for k in degs:
        off = 0
        for i, C in enumerate(Cs):
            offsets[i][k] = off
            off += C.rank(k)
        ranks[k] = off
    d = {}
    for k in degs:
        blocks = [C.diff(k) for C in Cs]
        if any(b.nnz for b in blocks):
            d[k] = sp.block_diag(blocks, format="csr", dtype=np.int64) if blocks else None
            d[k] = as_matrix(d[k], (ranks.get(k - 1, 0), ranks[k]))
    return ChainComplex(ranks, d), SumLayout(offsets)


def _block_diag(mats, shape):
    if not mats:
        return zeros(*shape)
    M = sp.block_diag(mats, format="csr", dtype=np.int64)
    return as_matrix(M, shape)


def dsum_map(fs: Sequence[ChainMap], source: ChainComplex | None = None,
             target: ChainComplex | None = None) -> ChainMap:
    src = source or dsum(*[f.source for f in fs])
    tgt = target or dsum(*[f.target for f in fs])
    e = fs[0].degree if fs else 0
    maps = {}
    for k in src.degrees:
        maps[k] = _block_diag([f.at(k) for f in fs], (tgt.rank(k + e), src.rank(k)))
    return ChainMap(src, tgt, maps, e)


def tensor_layout(X: ChainComplex, Y: ChainComplex) -> dict:
    """``(i, j) -> offset`` inside degree ``i + j``; pairs ordered by ``i``."""
    off = {}
    ranks = {}
    for i in X.degrees:
        for j in Y.degrees:
            k = i + j
            off[(i, j)] = ranks.get(k, 0)
            ranks[k] = ranks.get(k, 0) + X.rank(i) * Y.rank(j)
    return off


def tensor(X: ChainComplex, Y: ChainComplex) -> ChainComplex:
    """Tensor product with ``d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy``."""
    if X.total_rank * Y.total_rank > MAX_TOTAL_RANK:
        raise GuardError(f"tensor product of ranks {X.total_rank} and {Y.total_rank} exceeds "
                         f"the size guard {MAX_TOTAL_RANK}")
    off = tensor_layout(X, Y)
    ranks = {}
    for (i, j) in off:
        ranks[i + j] = ranks.get(i + j, 0) + X.rank(i) * Y.rank(j)
    rows, cols, vals = {}, {}, {}
    trip = {}

    def add(k, r0, c0, M):
        if not M.nnz:
            return
        M = M.tocoo()
        t = trip.setdefault(k, ([], [], []))
        t[0].append(M.row + r0)
        t[1].append(M.col + c0)
        t[2].append(M.data)
    for (i, j), o in off.items():
        k = i + j
        if X.rank(i - 1) and i in X.d:
            add(k, off[(i - 1, j)], o, sp.kron(X.d[i], eye(Y.rank(j)), format="csr"))
        if Y.rank(j - 1) and j in Y.d:
            s = -1 if i % 2 else 1
            add(k, off[(i, j - 1)], o, s * sp.kron(eye(X.rank(i)), Y.d[j], format="csr"))
    d = {}
    for k, (r, c, v) in trip.items():
        d[k] = sp.csr_matrix((np.concatenate(v), (np.concatenate(r), np.concatenate(c))),
                             shape=(ranks.get(k - 1, 0), ranks[k]), dtype=np.int64)
    return ChainComplex(ranks, d)


def tensor_maps(f: ChainMap, g: ChainMap, source: ChainComplex | None = None,
                target: ChainComplex | None = None) -> ChainMap:
    """``f⊗g`` with ``(f⊗g)(x⊗y) = (-1)^{|g||x|} f x ⊗ g y``."""
    src = source or tensor(f.source, g.source)
    tgt = target or tensor(f.target, g.target)
    so = tensor_layout(f.source, g.source)
    to = tensor_layout(f.target, g.target)
    e = f.degree + g.degree
    trip = {}
    for (i, j), o in so.items():
        Fi = f.at(i)
        Gj = g.at(j)
        if not (Fi.nnz and Gj.nnz):
            continue
        tkey = (i + f.degree, j + g.degree)
        if tkey not in to:
            continue
        s = -1 if (g.degree * i) % 2 else 1
        M = (s * sp.kron(Fi, Gj, format="csr")).tocoo()
        t = trip.setdefault(i + j, ([], [], []))
        t[0].append(M.row + to[tkey])
        t[1].append(M.col + o)
        t[2].append(M.data)
    maps = {}
    for k, (r, c, v) in trip.items():
        maps[k] = sp.csr_matrix((np.concatenate(v), (np.concatenate(r), np.concatenate(c))),
                                shape=(tgt.rank(k + e), src.rank(k)), dtype=np.int64)
    return ChainMap(src, tgt, maps, e)


def cone(f: ChainMap) -> ChainComplex:
    """``cone(f)_n = X_{n-1} ⊕ Y_n``, ``d(x, y) = (-dx, f x + dy)``."""
    if f.degree:
        raise ValueError("cone of a map of nonzero degree")
    X, Y = f.source, f.target
    degs = set(k + 1 for k in X.degrees) | set(Y.degrees)
    ranks = {n: X.rank(n - 1) + Y.rank(n) for n in degs}
    d = {}
    for n in degs:
        top = sp.hstack([-X.diff(n - 1), zeros(X.rank(n - 2), Y.rank(n))])
        bot = sp.hstack([f.at(n - 1), Y.diff(n)])
        M = sp.vstack([top, bot], format="csr", dtype=np.int64)
        d[n] = as_matrix(M, (ranks.get(n - 1, 0), ranks[n]))
    return ChainComplex(ranks, d)


def cone_inclusion(f: ChainMap, C: ChainComplex | None = None) -> ChainMap:
    """``Y -> cone(f)``."""
    C = C or cone(f)
    X, Y = f.source, f.target
    maps = {n: sp.vstack([zeros(X.rank(n - 1), Y.rank(n)), eye(Y.rank(n))], format="csr")
            for n in Y.degrees}
    return ChainMap(Y, C, maps)


def cone_projection(f: ChainMap, C: ChainComplex | None = None) -> ChainMap:
    """``cone(f) -> shift(X, 1)``; ``(x, y) ↦ x`` up to the shift sign."""
    C = C or cone(f)
    X, Y = f.source, f.target
    SX = shift(X, 1)
    maps = {n: sp.hstack([eye(X.rank(n - 1)), zeros(X.rank(n - 1), Y.rank(n))], format="csr")
            for n in C.degrees if X.rank(n - 1)}
    return ChainMap(C, SX, maps)


def cone_map(f: ChainMap, f2: ChainMap, a: ChainMap, b: ChainMap) -> ChainMap:
    """Induced ``cone(f) -> cone(f2)`` from a strictly commuting square
    ``b∘f = f2∘a``."""
    C1, C2 = cone(f), cone(f2)
    maps = {}
    for n in C1.degrees:
        maps[n] = sp.block_diag([a.at(n - 1), b.at(n)], format="csr", dtype=np.int64)
        maps[n] = as_matrix(maps[n], (C2.rank(n), C1.rank(n)))
    return ChainMap(C1, C2, maps)


def is_quasi_iso(f: ChainMap) -> bool:
    """Exact test: the mapping cone is acyclic."""
    return cone(f).is_acyclic()


def homology_of_map_is_zero(f: ChainMap) -> bool:
    """Whether ``f`` induces the zero map on homology (dense, small inputs)."""
    from .snf import in_integer_span, kernel_basis, to_int_lists
    for k in f.source.degrees:
        if not f.source.rank(k):
            continue
        Z = kernel_basis(f.source.diff(k)) if f.source.rank(k - 1) else \
            [[1 if i == j else 0 for i in range(f.source.rank(k))] for j in range(f.source.rank(k))]
        F = to_int_lists(f.at(k)) if f.target.rank(k + f.degree) else []
        if not F:
            continue
        B = f.target.diff(k + f.degree + 1)
        cols = [list(c) for c in np.asarray(B.toarray(), dtype=object).T.tolist()] if B.shape[1] else []
        for z in Z:
            v = [sum(F[i][j] * z[j] for j in range(len(z))) for i in range(len(F))]
            if not in_integer_span(cols, v):
                return False
    return True


def same_on_homology(f: ChainMap, g: ChainMap) -> bool:
    if f.equals(g):
        return True
    return homology_of_map_is_zero(f - g)


def euler_characteristic(C: ChainComplex) -> int:
    return C.euler()


# ---------------------------------------------------------------------------
# hom complexes, tensors and cotensors with simplicial sets

def hom_complex(A: ChainComplex, B: ChainComplex) -> tuple[ChainComplex, dict]:
    """``Hom(A, B)_n = ⊕_k Hom(A_k, B_{k+n})`` with ``D f = d f - (-1)^n f d``.

    Returns the complex and the layout ``(n, k) -> offset``; entries of a
    block are the row-major flattening of a ``rank B_{k+n} x rank A_k``
    matrix.
    """
    layout = {}
    ranks = {}
    for k in A.degrees:
        for m in B.degrees:
            n = m - k
            layout[(n, k)] = ranks.get(n, 0)
            ranks[n] = ranks.get(n, 0) + A.rank(k) * B.rank(m)
    trip = {}

    def add(n, r0, c0, M):
        M = M.tocoo()
        if not M.nnz:
            return
        t = trip.setdefault(n, ([], [], []))
        t[0].append(M.row + r0)
        t[1].append(M.col + c0)
        t[2].append(M.data)
    for (n, k), o in layout.items():
        a, b = A.rank(k), B.rank(k + n)
        # d_B ∘ f  lands in (n-1, k)
        if (n - 1, k) in layout and (k + n) in B.d:
            add(n, layout[(n - 1, k)], o, sp.kron(B.d[k + n], eye(a), format="csr"))
        # f ∘ d_A lands in (n-1, k+1): g = f∘d_{k+1}
        if (n - 1, k + 1) in layout and (k + 1) in A.d:
            s = 1 if n % 2 else -1  # -(-1)^n
            add(n, layout[(n - 1, k + 1)], o,
                s * sp.kron(eye(b), A.d[k + 1].T.tocsr(), format="csr"))
    d = {}
    for n, (r, c, v) in trip.items():
        d[n] = sp.csr_matrix((np.concatenate(v), (np.concatenate(r), np.concatenate(c))),
                             shape=(ranks.get(n - 1, 0), ranks[n]), dtype=np.int64)
    return ChainComplex(ranks, d), layout


def tensor_sset(C: ChainComplex, K) -> ChainComplex:
    """``C ⊗ N(K)`` for a finite simplicial set ``K``."""
    from .simp import normalized_chains
    return tensor(C, normalized_chains(K))


def cotensor(C: ChainComplex, K) -> ChainComplex:
    """``Hom(N(K), C)``."""
    from .simp import normalized_chains
    return hom_complex(normalized_chains(K), C)[0]


def random_complex(rng, max_rank: int = 3, span: int = 3, lo: int = 0,
                   max_entry: int = 2, min_rank: int = 1) -> ChainComplex:
    """Random bounded free complex of total rank at most ``max_rank``.

    Generators get random degrees in ``[lo, lo + span)``; each ``d_{k+1}``
    is a random integer combination of a kernel basis of ``d_k``.
    """
    from .snf import kernel_basis
    total = int(rng.integers(min_rank, max_rank + 1))
    degs = list(range(lo, lo + span))
    ranks = {k: 0 for k in degs}
    for _ in range(total):
        ranks[degs[int(rng.integers(0, len(degs)))]] += 1
    d = {}
    for k in degs[1:]:
        m, n = ranks[k - 1], ranks[k]
        if not m or not n:
            continue
        if k - 1 in d:
            K = kernel_basis(d[k - 1])
            if not K:
                continue
            coef = rng.integers(-max_entry, max_entry + 1, size=(len(K), n))
            M = np.array(K, dtype=np.int64).T @ coef
        else:
            M = rng.integers(-max_entry, max_entry + 1, size=(m, n))
        d[k] = np.asarray(M, dtype=np.int64)
    return ChainComplex(ranks, d, check=True)
