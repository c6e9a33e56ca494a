"""Homotopy Cartesian cubes over ``J₊`` and the fiber construction ``∂``.

A cube is a diagram on ``J₊``; it is homotopy Cartesian when
``X(∅) -> holim_J X`` is a quasi-isomorphism.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .chain import ChainComplex, ChainMap, identity_map, is_quasi_iso, zero_complex
from .diagrams import (Diagram, TotalComplex, chf, chf_map, cone_into_holim, fiber_diagram,
                       holim, holim_map, nat_holim_map)
from .fincat import CatFunctor, FinCat, comma, identity_id, is_loop_free
from .functors import FunctorSpec
from .groth import EMPTY, INIT, int_pb, pb_plus_iso, plus
from .fincat import GuardError


class Cube(Diagram):
    """A diagram on ``J₊`` that remembers ``J``."""

    def __init__(self, J: FinCat, Jplus: FinCat, value, action=None, check: bool = False,
                 name: str = ""):
        self.J = J
        super().__init__(Jplus, value, action, check, name)

    @property
    def initial(self):
        return EMPTY

    def restricted(self) -> Diagram:
        """The diagram on ``J`` with ``∅`` dropped."""
        J = self.J
        return Diagram(J, {o: self.value[o] for o in J.objects},
                       {f: self.map(f) for f in J.non_identity})


def cube_from_diagram(X: Diagram, J: FinCat) -> Cube:
    """View a diagram on ``J₊`` as a cube; the shape must match ``plus(J)``."""
    P = X.shape
    if EMPTY not in P.object_index:
        raise ValueError(f"shape {P!r} has no {EMPTY} vertex")
    missing = [o for o in J.objects if o not in P.object_index]
    if missing:
        raise ValueError(f"cube shape mismatch: vertex {missing[0]!r} of J is absent")
    return Cube(J, P, X.value, X.action, name=X.name)


@dataclass
class CartesianVerdict:
    cartesian: bool
    gap: ChainMap
    holim: TotalComplex
    source_homology: object = None
    holim_homology: object = None

    def to_json(self) -> dict:
        return {"cartesian": self.cartesian,
                "initial": self.gap.source.homology().to_json(),
                "holim": self.holim.complex.homology().to_json()}


def cartesian_gap(X: Cube) -> CartesianVerdict:
    """``X(∅) -> holim_J X`` built from the strict cone of initial arrows."""
    if not is_loop_free(X.J):
        raise GuardError(f"{X.J!r} is not loop-free")
    H = holim(X.restricted())
    comps = {j: X.map((INIT, j)) for j in X.J.objects}
    g = cone_into_holim(X.value[EMPTY], H, comps)
    return CartesianVerdict(is_quasi_iso(g), g, H)


def is_homotopy_cartesian(X: Cube) -> bool:
    return cartesian_gap(X).cartesian


# ---------------------------------------------------------------------------
# replacement

def under_restriction(J: FinCat, f, unders: dict) -> CatFunctor:
    """``(k↓J) -> (j↓J)`` for ``f: j -> k``, precomposing with ``f``."""
    j, k = J.src(f), J.dst(f)
    Kk, Kj = unders[k][0], unders[j][0]
    om = {(e, u): (e, J.comp(u, f)) for (e, u) in Kk.objects}
    mm = {}
    for m in Kk.morphisms:
        h, a, b = m
        mm[m] = (h, om[a], om[b])
    return CatFunctor(Kk, Kj, om, mm)


@dataclass
class Replacement:
    cube: Cube
    unit: dict  # j -> X(j) -> Z(j)
    unders: dict


def cartesian_replacement(X: Diagram) -> Replacement:
    """``Z(∅) = holim_J X`` and ``Z(j) = holim_{(j↓J)} X``, with restriction maps.

    ``(j↓J)`` has an initial object, so ``X(j) -> Z(j)`` is a
    quasi-isomorphism; ``Z`` is strictly functorial because restrictions
    compose on the nose.
    """
    J = X.shape
    if not is_loop_free(J):
        raise GuardError(f"{J!r} is not loop-free")
    P, _ = plus(J)
    HJ = holim(X)
    unders = {}
    totals = {}
    for j in J.objects:
        K, proj = comma(J, j, "under")
        unders[j] = (K, proj)
        totals[j] = holim(X.restrict(proj))
    value = {EMPTY: HJ.complex}
    value.update({j: totals[j].complex for j in J.objects})
    action = {}
    for j in J.objects:
        K, proj = unders[j]
        action[(INIT, j)] = holim_map(proj, HJ, totals[j],
                                      {o: identity_map(X.value[o[0]]) for o in K.objects})
    for f in J.non_identity:
        u = under_restriction(J, f, unders)
        j, k = J.src(f), J.dst(f)
        Kk = unders[k][0]
        action[f] = holim_map(u, totals[j], totals[k],
                              {o: identity_map(X.value[o[0]]) for o in Kk.objects})
    # composite initial arrows are recorded by J₊'s table; fill them in
    for g in P.non_identity:
        if g not in action:
            raise ValueError(f"missing map for {g!r}")
    unit = {}
    for j in J.objects:
        K, proj = unders[j]
        comps = {o: X.map(o[1]) for o in K.objects}
        unit[j] = cone_into_holim(X.value[j], totals[j], comps)
    return Replacement(Cube(J, P, value, action, name="R"), unit, unders)


# ---------------------------------------------------------------------------
# faces of cubes over (∫_pb J)₊ and ∂

@dataclass
class FaceData:
    J: FinCat
    Jplus: FinCat
    total: FinCat          # (∫_pb J)₊
    left_obj: dict
    right_obj: dict
    left_mor: dict
    right_mor: dict
    arrow: dict            # a in J₊ -> arrow left(a) -> right(a)


def face_data(J: FinCat) -> FaceData:
    iso = pb_plus_iso(J)
    inv = iso.inverse()
    Jp, _ = plus(J)
    i0, i1 = identity_id(0), identity_id(1)
    lo = {a: inv.obj((a, 0)) for a in Jp.objects}
    ro = {a: inv.obj((a, 1)) for a in Jp.objects}
    lm = {f: inv.mor((f, i0)) for f in Jp.morphisms}
    rm = {f: inv.mor((f, i1)) for f in Jp.morphisms}
    ar = {a: inv.mor((Jp.identity[a], "a")) for a in Jp.objects}
    return FaceData(J, Jp, iso.source, lo, ro, lm, rm, ar)


def _face(X: Diagram, fd: FaceData, objs: dict, mors: dict) -> Cube:
    value = {a: X.value[objs[a]] for a in fd.Jplus.objects}
    action = {f: X.map(mors[f]) for f in fd.Jplus.non_identity}
    return Cube(fd.J, fd.Jplus, value, action)


def left_face(X: Diagram, fd: FaceData) -> Cube:
    return _face(X, fd, fd.left_obj, fd.left_mor)


def right_face(X: Diagram, fd: FaceData) -> Cube:
    return _face(X, fd, fd.right_obj, fd.right_mor)


def face_arrow(X: Diagram, fd: FaceData, a) -> ChainMap:
    return X.map(fd.arrow[a])


def total_cube(X: Diagram, fd: FaceData) -> Cube:
    """``X`` as a cube over ``∫_pb J`` (initial vertex ``∅``)."""
    T = fd.total
    J2 = int_pb(fd.J).total
    return Cube(J2, T, X.value, X.action)


@dataclass
class DelResult:
    cube: Cube
    fibers: dict  # a -> TotalComplex of chf


def del_(X: Diagram, J: FinCat, fd: FaceData | None = None) -> DelResult:
    """``∂X(a) = chf(X_left(a) -> X_right(a))`` on ``J₊``."""
    fd = fd or face_data(J)
    if set(X.shape.objects) != set(fd.total.objects):
        extra = [o for o in fd.total.objects if o not in X.shape.object_index]
        raise ValueError(f"shape mismatch: vertex {extra[0] if extra else '?'!r}")
    fibers = {a: chf(face_arrow(X, fd, a)) for a in fd.Jplus.objects}
    value = {a: fibers[a].complex for a in fd.Jplus.objects}
    action = {}
    for f in fd.Jplus.non_identity:
        a, b = fd.Jplus.src(f), fd.Jplus.dst(f)
        action[f] = chf_map(face_arrow(X, fd, a), face_arrow(X, fd, b),
                            X.map(fd.left_mor[f]), X.map(fd.right_mor[f]),
                            fibers[a], fibers[b])
    return DelResult(Cube(J, fd.Jplus, value, action, name="del"), fibers)


def del_holim_identity(X: Diagram, J: FinCat, fd: FaceData | None = None) -> bool:
    """``holim_J ∂X`` and ``hf(holim_J X_left -> holim_J X_right)`` have equal homology."""
    fd = fd or face_data(J)
    D = del_(X, J, fd).cube
    lhs = holim(D.restricted()).complex.homology()
    L, R = left_face(X, fd), right_face(X, fd)
    HL, HR = holim(L.restricted()), holim(R.restricted())
    g = nat_holim_map(HL, HR, {j: face_arrow(X, fd, j) for j in J.objects})
    return lhs == chf(g).complex.homology()


# ---------------------------------------------------------------------------
# functors and fibers

@dataclass
class FlagCheck:
    preserves_zero: bool
    exact_on_fiber_squares: bool
    details: list = field(default_factory=list)


def _sample_fiber_maps():
    from .chain import free_module, scalar_map, zero_map
    Z = free_module(1, 0)
    O = zero_complex()
    return [zero_map(O, Z), zero_map(Z, O), identity_map(Z), scalar_map(Z, 2)]


def check_flags(F: FunctorSpec) -> FlagCheck:
    """Re-check the two claims on sample fiber squares ``chf(g) -> B -> C <- 0``."""
    pz = F.obj(zero_complex()).is_acyclic()
    ok = True
    details = []
    for g in _sample_fiber_maps():
        H = chf(g)
        FD = fiber_diagram(g).apply(F)
        HF = holim(FD)
        if F.weight is not None:
            good = is_quasi_iso(F.holim_comparison(H, HF))
        else:
            good = F.obj(H.complex).homology() == HF.complex.homology()
        details.append({"map": repr(g), "preserved": good})
        ok &= good
    return FlagCheck(pz, ok, details)


@dataclass
class FiberCommutation:
    commutes: bool
    left_qiso: dict
    right_qiso: dict

    def to_json(self) -> dict:
        return {"commutes": self.commutes,
                "F_del_to_H": {repr(k): v for k, v in self.left_qiso.items()},
                "del_F_to_H": {repr(k): v for k, v in self.right_qiso.items()}}


def fiber_commutation(F: FunctorSpec, X: Diagram, J: FinCat) -> FiberCommutation:
    """Compare ``F∂X`` and ``∂FX`` through ``H(a) = holim(FX_l(a) -> FX_r(a) <- F0)``."""
    if not (F.preserves_zero and F.exact_on_fiber_squares):
        raise ValueError(f"{F.name}: flags preserves_zero and exact_on_fiber_squares required")
    flags = check_flags(F)
    if not (flags.preserves_zero and flags.exact_on_fiber_squares):
        raise ValueError(f"{F.name}: flag claims fail on sample fiber squares")
    fd = face_data(J)
    FX = X.apply(F)
    d = del_(X, J, fd)
    dF = del_(FX, J, fd)
    left, right = {}, {}
    O = zero_complex()
    F0 = F.obj(O)
    for a in fd.Jplus.objects:
        g = face_arrow(X, fd, a)
        HD = d.fibers[a]
        H = holim(fiber_diagram(g).apply(F))
        left[a] = is_quasi_iso(F.holim_comparison(HD, H))
        zero_in = ChainMap(O, F0)
        right[a] = is_quasi_iso(nat_holim_map(
            dF.fibers[a], H, {0: identity_map(FX.value[fd.left_obj[a]]),
                              1: identity_map(FX.value[fd.right_obj[a]]), 2: zero_in}))
    return FiberCommutation(all(left.values()) and all(right.values()), left, right)


# ---------------------------------------------------------------------------
# split fibrations

@dataclass
class SplittingReport:
    total_to_iterated: bool
    fiberwise: dict
    homology: tuple


def splitting_check(Y: Diagram, J: FinCat) -> SplittingReport:
    """``holim_E Y -> holim_pb G`` with ``G(b) = holim_{(b↓p)} Y`` for ``E = ∫_pb J``.

    Also checks that each ``G(b)`` restricts by a quasi-isomorphism to the
    homotopy limit over the fiber ``E_b``.
    """
    r = int_pb(J)
    E, p = r.total, r.projection
    B = p.target
    HE = holim(Y)
    comma_data = {b: comma(E, (p, b), "under") for b in B.objects}
    Gt = {b: holim(Y.restrict(comma_data[b][1])) for b in B.objects}
    action = {}
    for u in B.non_identity:
        b, b2 = B.src(u), B.dst(u)
        K2, _ = comma_data[b2]
        K1, _ = comma_data[b]
        om = {(e, w): (e, B.comp(w, u)) for (e, w) in K2.objects}
        mm = {m: (m[0], om[m[1]], om[m[2]]) for m in K2.morphisms}
        F = CatFunctor(K2, K1, om, mm)
        action[u] = holim_map(F, Gt[b], Gt[b2], {o: identity_map(Y.value[o[0]])
                                                 for o in K2.objects})
    G = Diagram(B, {b: Gt[b].complex for b in B.objects}, action)
    HG = holim(G)
    comps = {}
    for b in B.objects:
        K, proj = comma_data[b]
        comps[b] = holim_map(proj, HE, Gt[b], {o: identity_map(Y.value[o[0]])
                                               for o in K.objects})
    m = cone_into_holim(HE.complex, HG, comps)
    fiberwise = {}
    for b in B.objects:
        inc = r.fiber_inclusions[b]
        K, proj = comma_data[b]
        # the fiber sits in (b↓p) as objects (x, id_b)
        ib = B.identity[b]
        om = {x: (inc.obj(x), ib) for x in inc.source.objects}
        mm = {f: (inc.mor(f), om[inc.source.src(f)], om[inc.source.dst(f)])
              for f in inc.source.morphisms}
        emb = CatFunctor(inc.source, K, om, mm)
        Hb = holim(Y.restrict(inc))
        res = holim_map(emb, Gt[b], Hb, {x: identity_map(Y.value[inc.obj(x)])
                                         for x in inc.source.objects})
        fiberwise[b] = is_quasi_iso(res)
    return SplittingReport(is_quasi_iso(m), fiberwise,
                           (HE.complex.homology(), HG.complex.homology()))
