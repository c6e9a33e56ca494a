"""Random diagrams and cubes for property tests.

Diagrams are direct sums of free pieces ``k ↦ ⊕_{Hom(j,k)} C`` and cofree
pieces ``k ↦ ⊕_{Hom(k,j)} C``, optionally followed by the objectwise cone
of a natural map out of a free piece, which mixes in torsion and
non-split behaviour.  Cofibration cubes are built by attaching cells.
"""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .chain import (ChainComplex, ChainMap, cone, cone_map, dsum_map, dsum_with_layout,
                    identity_map, random_complex, zero_complex)
from .diagrams import Diagram
from .fincat import FinCat
from .groth import powerset
from .snf import kernel_basis


def _blocks(rows: list, cols: list, entries: dict, k: int, shape) -> sp.csr_matrix:
    """Assemble a block matrix from ``entries[(i, j)]`` (sizes per degree ``k``)."""
    r, c, v = [], [], []
    roff = np.cumsum([0] + rows)
    coff = np.cumsum([0] + cols)
    for (i, j), M in entries.items():
        M = sp.coo_matrix(M)
        r.append(M.row + roff[i])
        c.append(M.col + coff[j])
        v.append(M.data)
    if not r:
        return sp.csr_matrix(shape, dtype=np.int64)
    return sp.csr_matrix((np.concatenate(v), (np.concatenate(r), np.concatenate(c))),
                         shape=shape, dtype=np.int64)


def _sum_of_copies(C: ChainComplex, n: int):
    return dsum_with_layout([C] * n)[0] if n else zero_complex()


def free_piece(shape: FinCat, j, C: ChainComplex) -> Diagram:
    homs = {k: shape.hom(j, k) for k in shape.objects}
    value = {k: _sum_of_copies(C, len(homs[k])) for k in shape.objects}
    action = {}
    for f in shape.non_identity:
        a, b = shape.src(f), shape.dst(f)
        idx = {h: i for i, h in enumerate(homs[b])}
        maps = {}
        for q in C.degrees:
            r = C.rank(q)
            ent = {(idx[shape.comp(f, h)], i): sp.identity(r, dtype=np.int64)
                   for i, h in enumerate(homs[a])}
            maps[q] = _blocks([r] * len(homs[b]), [r] * len(homs[a]), ent, q,
                              (value[b].rank(q), value[a].rank(q)))
        action[f] = ChainMap(value[a], value[b], maps)
    return Diagram(shape, value, action, name=f"free@{j}")


def cofree_piece(shape: FinCat, j, C: ChainComplex) -> Diagram:
    homs = {k: shape.hom(k, j) for k in shape.objects}
    value = {k: _sum_of_copies(C, len(homs[k])) for k in shape.objects}
    action = {}
    for f in shape.non_identity:
        a, b = shape.src(f), shape.dst(f)
        idx = {h: i for i, h in enumerate(homs[a])}
        maps = {}
        for q in C.degrees:
            r = C.rank(q)
            ent = {(i, idx[shape.comp(h, f)]): sp.identity(r, dtype=np.int64)
                   for i, h in enumerate(homs[b])}
            maps[q] = _blocks([r] * len(homs[b]), [r] * len(homs[a]), ent, q,
                              (value[b].rank(q), value[a].rank(q)))
        action[f] = ChainMap(value[a], value[b], maps)
    return Diagram(shape, value, action, name=f"cofree@{j}")


def diagram_sum(parts: list, shape: FinCat) -> Diagram:
    if not parts:
        Z = zero_complex()
        return Diagram(shape, {o: Z for o in shape.objects},
                       {f: ChainMap(Z, Z) for f in shape.non_identity})
    value, layouts = {}, {}
    for o in shape.objects:
        value[o] = dsum_with_layout([P.value[o] for P in parts])[0]
    action = {f: dsum_map([P.map(f) for P in parts], value[shape.src(f)], value[shape.dst(f)])
              for f in shape.non_identity}
    return Diagram(shape, value, action)


def free_map(shape: FinCat, j, D: Diagram, c: int) -> tuple[Diagram, dict]:
    """``F_j(D(j)) -> D`` adjoint to ``c·id``."""
    C = D.value[j]
    Fr = free_piece(shape, j, C)
    alpha = {}
    for k in shape.objects:
        homs = shape.hom(j, k)
        maps = {}
        for q in C.degrees:
            r = C.rank(q)
            blocks = [c * D.map(h).at(q) for h in homs]
            if blocks:
                maps[q] = sp.hstack(blocks, format="csr", dtype=np.int64)
        alpha[k] = ChainMap(Fr.value[k], D.value[k], maps)
    return Fr, alpha


def objectwise_cone(A: Diagram, B: Diagram, alpha: dict) -> Diagram:
    shape = A.shape
    value = {o: cone(alpha[o]) for o in shape.objects}
    action = {}
    for f in shape.non_identity:
        a, b = shape.src(f), shape.dst(f)
        m = cone_map(alpha[a], alpha[b], A.map(f), B.map(f))
        action[f] = ChainMap(value[a], value[b], m.maps)
    return Diagram(shape, value, action)


def random_diagram(shape: FinCat, rng, max_rank: int = 2, pieces: int = 2,
                   cone_prob: float = 0.5, span: int = 2) -> Diagram:
    """A random strictly functorial diagram of free complexes on ``shape``."""
    objs = list(shape.objects)
    parts = []
    for _ in range(int(rng.integers(1, pieces + 1))):
        j = objs[int(rng.integers(0, len(objs)))]
        C = random_complex(rng, max_rank=max_rank, span=span, max_entry=2)
        parts.append((free_piece if rng.random() < 0.5 else cofree_piece)(shape, j, C))
    D = diagram_sum(parts, shape)
    if rng.random() < cone_prob:
        j = objs[int(rng.integers(0, len(objs)))]
        if D.value[j].total_rank:
            c = int(rng.choice([1, 2, -1, 3]))
            Fr, alpha = free_map(shape, j, D, c)
            D = objectwise_cone(Fr, D, alpha)
    return D


def constant_cube(shape: FinCat, C: ChainComplex) -> Diagram:
    idc = identity_map(C)
    return Diagram(shape, {o: C for o in shape.objects}, {f: idc for f in shape.non_identity})


# ---------------------------------------------------------------------------
# cofibration cubes

def cofibration_cube(n: int, rng, cells: int = 2, span: int = 2, acyclic_prob: float = 0.5,
                     max_entry: int = 2) -> tuple[Diagram, dict]:
    """A cube on ``𝒫(n)`` whose vertices are spanned by cells born at subsets.

    ``X(S)`` is spanned by the cells born at subsets of ``S``; every arrow
    is the inclusion of cells, so each strict latching map is a split
    injection with free cokernel.  With probability ``acyclic_prob`` the
    cells born at ``S`` (``|S| ≥ 2``) come in pairs ``(a, b)`` with
    ``db = a + w`` and ``da = -dw``, making the strict latching map a
    quasi-isomorphism.  Returns the cube and the birth set of each cell.
    """
    P = powerset(n)
    born = []      # (subset, degree)
    dcols = []     # boundary of each cell as {cell index: coefficient}
    for S in P.objects:
        older = [i for i, (T, _) in enumerate(born) if set(T) <= set(S)]
        if len(S) >= 2 and rng.random() < acyclic_prob:
            for _ in range(int(rng.integers(0, cells + 1))):
                k = int(rng.integers(0, span)) + 1
                w = _random_chain(rng, born, older, k - 1, max_entry)
                dw = _boundary(dcols, w)
                ia = len(born)
                born.append((S, k - 1))
                dcols.append({c: -v for c, v in dw.items() if v})
                born.append((S, k))
                col = dict(w)
                col[ia] = col.get(ia, 0) + 1
                dcols.append({c: v for c, v in col.items() if v})
        else:
            for _ in range(int(rng.integers(0 if S else 1, cells + 1))):
                k = int(rng.integers(0, span))
                z = _random_cycle(rng, born, dcols, older, k - 1, max_entry)
                born.append((S, k))
                dcols.append(z)
    return _cells_to_cube(P, born, dcols), {i: b for i, b in enumerate(born)}


def _random_chain(rng, born, pool, k, max_entry):
    cand = [i for i in pool if born[i][1] == k]
    return {i: int(rng.integers(-max_entry, max_entry + 1)) for i in cand if rng.random() < 0.6}


def _boundary(dcols, chain):
    out = {}
    for i, c in chain.items():
        for j, v in dcols[i].items():
            out[j] = out.get(j, 0) + c * v
    return out


def _random_cycle(rng, born, dcols, pool, k, max_entry):
    """A random integer cycle of degree ``k`` among the cells in ``pool``."""
    cand = [i for i in pool if born[i][1] == k]
    if not cand:
        return {}
    lower = sorted({j for i in cand for j in dcols[i]})
    if lower:
        M = np.zeros((len(lower), len(cand)), dtype=np.int64)
        li = {j: r for r, j in enumerate(lower)}
        for c, i in enumerate(cand):
            for j, v in dcols[i].items():
                M[li[j], c] = v
        basis = kernel_basis(M)
    else:
        basis = [[1 if r == c else 0 for r in range(len(cand))] for c in range(len(cand))]
    z = {}
    for vec in basis:
        coef = int(rng.integers(-max_entry, max_entry + 1))
        for c, v in enumerate(vec):
            if v and coef:
                z[cand[c]] = z.get(cand[c], 0) + coef * int(v)
    return {i: v for i, v in z.items() if v}


def _cells_to_cube(P: FinCat, born: list, dcols: list) -> Diagram:
    value, index = {}, {}
    for S in P.objects:
        cells = [i for i, (T, _) in enumerate(born) if set(T) <= set(S)]
        by_deg = {}
        for i in cells:
            by_deg.setdefault(born[i][1], []).append(i)
        idx = {i: (k, pos) for k, lst in by_deg.items() for pos, i in enumerate(lst)}
        ranks = {k: len(v) for k, v in by_deg.items()}
        d = {}
        for k, lst in by_deg.items():
            if not ranks.get(k - 1):
                continue
            M = np.zeros((ranks[k - 1], ranks[k]), dtype=np.int64)
            for c, i in enumerate(lst):
                for j, v in dcols[i].items():
                    M[idx[j][1], c] = v
            d[k] = M
        value[S] = ChainComplex(ranks, d, check=True)
        index[S] = idx
    action = {}
    for f in P.non_identity:
        a, b = P.src(f), P.dst(f)
        maps = {}
        for i, (k, pos) in index[a].items():
            maps.setdefault(k, []).append((index[b][i][1], pos))
        mats = {}
        for k, pairs in maps.items():
            r, c = zip(*pairs)
            mats[k] = sp.csr_matrix((np.ones(len(r), dtype=np.int64), (r, c)),
                                    shape=(value[b].rank(k), value[a].rank(k)))
        action[f] = ChainMap(value[a], value[b], mats)
    return Diagram(P, value, action, name="cofibration-cube")
