"""Taylor towers: ``T_n``, its iterates, ``P_n`` and the auxiliary tower.

``T_nF(X)`` is the homotopy limit over an index category of
``o ↦ F(ρ(o) ⋆ X)``.  The default index is ``𝒫₀(n+1)`` with ``ρ(S) = S``;
:class:`GeneralIndex` realizes ``J(n+1)`` for a loop-free ``J``;
:class:`AuxIndex` swaps ``⋆`` for ``⋆ʰ``.

``P_nF(X)`` is approximated by iterating ``T_n`` until the structure map
``T^{i-1} -> T^i`` is a quasi-isomorphism.  When that never happens within
``max_iter`` iterates, the value is the truncated mapping telescope and
the stage is flagged as not stabilized.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .chain import ChainComplex, ChainMap, identity_map, is_quasi_iso, same_on_homology
from .diagrams import (Diagram, TotalComplex, cone_into_holim, hocolim, holim, holim_map,
                       hocolim_map, nat_holim_map)
from .fincat import (CatFunctor, FinCat, GuardError, coproduct_with_point, identity_id,
                     is_loop_free, linear_order, terminal)
from .functors import FunctorSpec, NatTrans
from .groth import EMPTY, INIT, PUNCTURED, jn, plus, plus_functor, powerset, tau0
from . import star as _star


# ---------------------------------------------------------------------------
# index categories

class CubeIndex:
    """``𝒫₀(n+1)`` with ``S ↦ S ⋆ X``."""
    kind = "star"

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("n must be nonnegative")
        self.n = n
        self.shape = powerset(n + 1, PUNCTURED)
        self.name = f"P0({n + 1})"

    def value(self, o, X):
        return _star.star_set(o, X)

    def arrow_map(self, f, X):
        return _star.star_inclusion(self.shape.src(f), self.shape.dst(f), X)

    def unit(self, o, X):
        return _star.star_unit(o, X)

    def on_map(self, o, g):
        return _star.star_on_map(o, g)

    def next(self) -> "CubeIndex":
        return CubeIndex(self.n + 1)

    def restriction(self, nxt) -> CatFunctor:
        """``τ₀``: this index into the next one."""
        return tau0(self.n + 1)


class AuxIndex(CubeIndex):
    """``𝒫₀(n+1)`` with ``S ↦ S ⋆ʰ X``."""
    kind = "star_h"

    def value(self, o, X):
        return _star.star_h(o, X)

    def arrow_map(self, f, X):
        return _star.star_h_inclusion(self.shape.src(f), self.shape.dst(f), X)

    def unit(self, o, X):
        return _star.star_h_unit(o, X)

    def on_map(self, o, g):
        return _star.star_h_on_map(o, g)

    def next(self) -> "AuxIndex":
        return AuxIndex(self.n + 1)

    def comparison(self, o, X):
        return _star.star_h_comparison(o, X)


class GeneralIndex:
    """``J(n+1)`` with each object realized as a finite category.

    Objects of ``J`` are realized by ``realize_obj`` (default: the terminal
    category) and arrows by ``realize_mor`` (default: identities).  One
    level up, ``(0,x) ↦ ρ(x)``, ``(1,x) ↦ ρ(x) ⊔ pt`` and ``(2,*) ↦ pt``.
    """
    kind = "general"

    def __init__(self, J: FinCat, n: int, realize_obj=None, realize_mor=None,
                 max_objects: int = 2000):
        if not is_loop_free(J):
            raise GuardError(f"index {J!r} is not loop-free")
        self.J, self.n = J, n
        self._realize = (realize_obj, realize_mor)
        self.max_objects = max_objects
        seq, taus = jn(J, n + 1, max_objects)
        self.shape = seq[-1]
        self._seq, self._taus = seq, taus
        self.name = f"{J.name or 'J'}({n + 1})"
        self._rho_obj, self._rho_mor = self._realizations()
        self._plus = {}
        self._cache = {}
        self._lock = threading.Lock()

    def _realizations(self):
        J = self.J
        ro, rm = self._realize
        T = terminal()
        obj = {j: (ro(j) if ro else T) for j in J.objects}
        mor = {}
        for f in J.morphisms:
            if rm:
                mor[f] = rm(f)
            else:
                C = obj[J.src(f)]
                mor[f] = CatFunctor(C, obj[J.dst(f)], {o: o for o in C.objects},
                                    {m: m for m in C.morphisms})
        for k, C in enumerate(self._seq[1:], start=2):
            pt = ("pt", k)
            P = FinCat.discrete([pt])
            new_obj, new_mor = {}, {}
            for (b, x) in C.objects:
                if b == 0:
                    new_obj[(b, x)] = obj[x]
                elif b == 1:
                    new_obj[(b, x)] = coproduct_with_point(obj[x], pt)
                else:
                    new_obj[(b, x)] = P
            for m in C.morphisms:
                u, g, _ = m
                a, d = C.src(m), C.dst(m)
                A, D = new_obj[a], new_obj[d]
                om, mm = {}, {}
                if a[0] == 2:
                    om = {pt: pt}
                    mm = {identity_id(pt): identity_id(pt)}
                else:
                    base = mor[g]
                    om = dict(base.on_objects)
                    mm = dict(base.on_morphisms)
                    if a[0] == 1:
                        om[pt] = pt
                        mm[identity_id(pt)] = identity_id(pt)
                new_mor[m] = CatFunctor(A, D, om, mm)
            obj, mor = new_obj, new_mor
        return obj, mor

    def realization(self, o) -> FinCat:
        return self._rho_obj[o]

    def _plus_of(self, o):
        hit = self._plus.get(o)
        if hit is None:
            hit = self._plus.setdefault(o, plus(self._rho_obj[o])[0])
        return hit

    def value(self, o, X):
        key = (o, X.fingerprint)
        with self._lock:
            hit = self._cache.get(key)
        if hit is None:
            hit = hocolim(_star.r_diagram(self._rho_obj[o], X, self._plus_of(o)))
            with self._lock:
                hit = self._cache.setdefault(key, hit)
        return hit

    def arrow_map(self, f, X):
        a, b = self.shape.src(f), self.shape.dst(f)
        H1, H2 = self.value(a, X), self.value(b, X)
        u = plus_functor(self._rho_mor[f], self._plus_of(a), self._plus_of(b))
        return hocolim_map(u, H1, H2, _r_alpha(H1, identity_map(X)))

    def unit(self, o, X):
        return _star._block_inclusion(X, self.value(o, X), ((EMPTY,), ()))

    def on_map(self, o, g):
        H1, H2 = self.value(o, g.source), self.value(o, g.target)
        from .diagrams import nat_hocolim_map
        return nat_hocolim_map(H1, H2, _r_alpha(H1, g))

    def next(self) -> "GeneralIndex":
        return GeneralIndex(self.J, self.n + 1, *self._realize, max_objects=self.max_objects)

    def restriction(self, nxt: "GeneralIndex") -> CatFunctor:
        return nxt._taus[-1][0]


def _r_alpha(H, g):
    from .chain import zero_complex
    Z = zero_complex()
    return {o: (g if o == EMPTY else ChainMap(Z, Z)) for o in H.diagram.shape.objects}


# ---------------------------------------------------------------------------
# T_n

class TnFunctor(FunctorSpec):
    """``X ↦ holim_o F(ρ(o) ⋆ X)`` with its unit ``t: F ⇒ T_nF``."""

    def __init__(self, F: FunctorSpec, index):
        self.F = F
        self.index = index
        self._totals = {}
        super().__init__(f"T[{index.name},{index.kind}]({F.name})", self._obj, self._mor)

    def diagram(self, X: ChainComplex) -> Diagram:
        I, F = self.index, self.F
        S = I.shape
        value = {o: F.obj(I.value(o, X).complex) for o in S.objects}
        action = {f: F.mor(I.arrow_map(f, X)) for f in S.non_identity}
        return Diagram(S, value, action)

    def total(self, X: ChainComplex) -> TotalComplex:
        key = X.fingerprint
        with self._lock:
            hit = self._totals.get(key)
        if hit is None:
            hit = holim(self.diagram(X))
            with self._lock:
                hit = self._totals.setdefault(key, hit)
        return hit

    def _obj(self, X):
        return self.total(X).complex

    def _mor(self, g, a, b):
        I, F = self.index, self.F
        alpha = {o: F.mor(I.on_map(o, g)) for o in I.shape.objects}
        return nat_holim_map(self.total(g.source), self.total(g.target), alpha)

    def unit(self, X: ChainComplex) -> ChainMap:
        """``t_n: F(X) -> T_nF(X)``."""
        I, F = self.index, self.F
        comps = {o: F.mor(I.unit(o, X)) for o in I.shape.objects}
        return cone_into_holim(F.obj(X), self.total(X), comps)

    def unit_nat(self) -> NatTrans:
        return NatTrans(self.F, self, self.unit, f"t[{self.name}]")


def t_n(F: FunctorSpec, n: int, index=None) -> TnFunctor:
    """``T_nF``; ``index`` is ``None`` (the punctured cube), ``'aux'`` or a ``FinCat`` J."""
    if index is None:
        return TnFunctor(F, CubeIndex(n))
    if index == "aux":
        return TnFunctor(F, AuxIndex(n))
    if isinstance(index, FinCat):
        return TnFunctor(F, GeneralIndex(index, n))
    return TnFunctor(F, index)


def apply_tn(T: TnFunctor, eta: NatTrans, G_target: TnFunctor) -> NatTrans:
    """``T_n η``: ``T_nF ⇒ T_nG`` for ``η: F ⇒ G`` (``T``, ``G_target`` share the index)."""
    I = T.index

    def comp(X):
        alpha = {o: eta.at(I.value(o, X).complex) for o in I.shape.objects}
        return nat_holim_map(T.total(X), G_target.total(X), alpha)
    return NatTrans(T, G_target, comp, f"T({eta.name})")


def restriction_nat(T_big: TnFunctor, T_small: TnFunctor) -> NatTrans:
    """``q_{n+1,1}: T_{n+1}F ⇒ T_nF`` by restricting along ``τ₀``."""
    if T_big.F is not T_small.F:
        raise ValueError("restriction needs the same underlying functor")
    u = T_small.index.restriction(T_big.index)
    F = T_small.F

    def comp(X):
        Hb, Hs = T_big.total(X), T_small.total(X)
        alpha = {o: identity_map(Hs.diagram.value[o]) for o in T_small.index.shape.objects}
        return holim_map(u, Hb, Hs, alpha)
    return NatTrans(T_big, T_small, comp, "q")


def aux_comparison_nat(Taux: TnFunctor, T: TnFunctor) -> NatTrans:
    """``T̃_nF ⇒ T_nF`` induced by ``S ⋆ʰ X -> S ⋆ X``."""
    if Taux.F is not T.F:
        raise ValueError("comparison needs the same underlying functor")
    F = T.F

    def comp(X):
        alpha = {S: F.mor(Taux.index.comparison(S, X)) for S in T.index.shape.objects}
        return nat_holim_map(Taux.total(X), T.total(X), alpha)
    return NatTrans(Taux, T, comp, "aux-comparison")


def compose_nat(a: NatTrans, b: NatTrans) -> NatTrans:
    """``b ∘ a``."""
    return NatTrans(a.source, b.target, lambda X: a.at(X).then(b.at(X)), f"{b.name}∘{a.name}")


# ---------------------------------------------------------------------------
# iterates and stabilization

class Iterates:
    """``F, T F, T² F, …`` for one index family, built lazily."""

    def __init__(self, F: FunctorSpec, index):
        self.F = F
        self.index = index
        self.functors: list = [F]

    def __getitem__(self, i: int) -> FunctorSpec:
        while len(self.functors) <= i:
            self.functors.append(TnFunctor(self.functors[-1], self.index))
        return self.functors[i]

    def step(self, i: int, X: ChainComplex) -> ChainMap:
        """Structure map ``T^{i-1}F(X) -> T^iF(X)`` (the unit of ``T`` at ``T^{i-1}F``)."""
        return self[i].unit(X)


@dataclass
class TowerStage:
    level: int
    value: ChainComplex
    structure_map: ChainMap | None
    iterates: int
    stabilized: bool
    homology: list = field(default_factory=list)
    unit: ChainMap | None = None
    kind: str = "star"

    def to_json(self) -> dict:
        return {"level": self.level, "kind": self.kind, "iterates": self.iterates,
                "stabilized": self.stabilized,
                "homology": [h.to_json() for h in self.homology],
                "value": self.value.homology().to_json()}


def _telescope(chain_maps: list, values: list) -> ChainComplex:
    """Homotopy colimit of ``V0 -> V1 -> … -> Vm``."""
    m = len(values) - 1
    L = linear_order(m)
    action = {}
    for i in range(m + 1):
        acc = None
        for j in range(i + 1, m + 1):
            acc = chain_maps[j - 1] if acc is None else acc.then(chain_maps[j - 1])
            action[(i, j)] = acc
    return hocolim(Diagram(L, dict(enumerate(values)), action)).complex


def p_n(F: FunctorSpec, X: ChainComplex, n: int, max_iter: int = 3, index=None,
        iterates: Iterates | None = None) -> TowerStage:
    """Iterate ``T_n`` until the structure map is a quasi-isomorphism."""
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    if iterates is None:
        idx = CubeIndex(n) if index is None else (AuxIndex(n) if index == "aux" else index)
        iterates = Iterates(F, idx)
    values = [F.obj(X)]
    maps = []
    homs = [values[0].homology()]
    unit = identity_map(values[0])
    for i in range(1, max_iter + 1):
        try:
            s = iterates.step(i, X)
        except GuardError:
            if i == 1:
                raise
            break
        maps.append(s)
        values.append(s.target)
        homs.append(s.target.homology())
        unit = unit.then(s)
        if homs[-1] == homs[-2] and is_quasi_iso(s):
            return TowerStage(n, s.target, s, i, True, homs, unit, iterates.index.kind)
    tele = _telescope(maps, values)
    return TowerStage(n, tele, None, len(maps), False, homs, None, iterates.index.kind)


class Tower:
    """All ``P_n`` stages of one functor at one complex, sharing iterate caches."""

    def __init__(self, F: FunctorSpec, X: ChainComplex, max_iter: int = 3, aux: bool = False):
        self.F, self.X, self.max_iter, self.aux = F, X, max_iter, aux
        self._iterates = {}
        self._stages = {}

    def iterates(self, n: int) -> Iterates:
        if n not in self._iterates:
            self._iterates[n] = Iterates(self.F, AuxIndex(n) if self.aux else CubeIndex(n))
        return self._iterates[n]

    def stage(self, n: int) -> TowerStage:
        if n not in self._stages:
            self._stages[n] = p_n(self.F, self.X, n, self.max_iter, iterates=self.iterates(n))
        return self._stages[n]

    def q_iterate(self, n: int, i: int) -> NatTrans:
        """``q^{(i)}: T^i_{n+1}F ⇒ T^i_nF``."""
        big, small = self.iterates(n + 1), self.iterates(n)
        if i == 0:
            return NatTrans(self.F, self.F, lambda X: identity_map(self.F.obj(X)), "id")
        first = restriction_nat(big[i], _tn_of(big[i - 1], small.index))
        if i == 1:
            return first
        inner = self.q_iterate(n, i - 1)
        return compose_nat(first, apply_tn(_tn_of(big[i - 1], small.index), inner, small[i]))

    def unit_to(self, n: int, i: int) -> ChainMap:
        """``F(X) -> T^i_nF(X)``, the composite of structure maps."""
        it = self.iterates(n)
        m = identity_map(self.F.obj(self.X))
        for k in range(1, i + 1):
            m = m.then(it.step(k, self.X))
        return m

    def steps_between(self, n: int, a: int, b: int) -> ChainMap:
        it = self.iterates(n)
        m = identity_map(it[a].obj(self.X))
        for k in range(a + 1, b + 1):
            m = m.then(it.step(k, self.X))
        return m


_TN_CACHE: dict = {}


def _tn_of(G: FunctorSpec, index) -> TnFunctor:
    """``T_n G`` for the given index, memoized per (functor, index) pair."""
    key = (id(G), type(index).__name__, index.n)
    hit = _TN_CACHE.get(key)
    if hit is None or hit[0] is not G:
        hit = (G, TnFunctor(G, index))
        _TN_CACHE[key] = hit
    return hit[1]


@dataclass
class TowerMapReport:
    level: int
    quasi_iso: bool | None
    method: str
    map: ChainMap | None = None
    commutes_on_homology: bool | None = None
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"level": self.level, "quasi_iso": self.quasi_iso, "method": self.method,
                "commutes_on_homology": self.commutes_on_homology, "witness": self.witness}


def tower_map(tower: Tower, n: int) -> TowerMapReport:
    """``q_{n+1}: P_{n+1}F(X) -> P_nF(X)`` at stabilization.

    When both stages stabilized (at iterates ``a`` and ``b``) the map is
    ``q^{(i)}`` at ``i = max(a, b)`` preceded by the structure maps
    ``T^a_{n+1} -> T^i_{n+1}``.  When only the upper stage stabilized, a
    homology degree in which ``T^a_{n+1}F(X)`` is nonzero but every computed
    ``T^j_nF(X)`` (``j ≥ a``) vanishes certifies that no quasi-isomorphism
    exists; otherwise the verdict is left open.
    """
    up, down = tower.stage(n + 1), tower.stage(n)
    if up.stabilized and down.stabilized:
        a, b = up.iterates, down.iterates
        i = max(a, b)
        q = tower.q_iterate(n, i)
        # lands in T^i_n, which is T^b_n itself or quasi-isomorphic to it
        m = tower.steps_between(n + 1, a, i).then(q.at(tower.X))
        ok = is_quasi_iso(m)
        comm = same_on_homology(tower.unit_to(n + 1, i).then(q.at(tower.X)),
                                tower.unit_to(n, i))
        return TowerMapReport(n + 1, ok, "map", m, comm)
    if up.stabilized:
        H = up.value.homology()
        later = down.homology[up.iterates:]
        for k in H.groups:
            if later and all(k not in h.groups for h in later):
                return TowerMapReport(n + 1, False, "degree-witness",
                                      witness={"degree": k, "upper": str(H),
                                               "lower_iterates": [str(h) for h in later]})
        return TowerMapReport(n + 1, None, "undecided")
    raise ValueError(f"P_{n + 1} did not stabilize within {tower.max_iter} iterates")


@dataclass
class AuxReport:
    level: int
    iterate: int
    quasi_iso: bool
    aux_stage: TowerStage
    stage: TowerStage
    method: str = "stabilized"

    def to_json(self) -> dict:
        return {"level": self.level, "iterate": self.iterate, "quasi_iso": self.quasi_iso,
                "method": self.method, "aux": self.aux_stage.to_json(),
                "plain": self.stage.to_json()}


def aux_iterate_comparison(aux: Tower, plain: Tower, n: int, i: int) -> NatTrans:
    """``c^{(i)}: T̃^i_nF ⇒ T^i_nF``."""
    A, P = aux.iterates(n), plain.iterates(n)
    if i == 0:
        return NatTrans(aux.F, plain.F, lambda X: identity_map(aux.F.obj(X)), "id")
    first = aux_comparison_nat(A[i], _tn_of(A[i - 1], P.index))
    if i == 1:
        return first
    inner = aux_iterate_comparison(aux, plain, n, i - 1)
    return compose_nat(first, apply_tn(_tn_of(A[i - 1], P.index), inner, P[i]))


def aux_tower(F: FunctorSpec, X: ChainComplex, n: int, max_iter: int = 3,
              aux: Tower | None = None, plain: Tower | None = None) -> AuxReport:
    """``P̃_nF(X)`` with its comparison to ``P_nF(X)``.

    The comparison is taken at the later of the two stabilization iterates,
    preceded by structure maps on the auxiliary side.
    """
    aux = aux or Tower(F, X, max_iter, aux=True)
    plain = plain or Tower(F, X, max_iter)
    sa, sp_ = aux.stage(n), plain.stage(n)
    if sa.stabilized and sp_.stabilized:
        i = max(sa.iterates, sp_.iterates)
        c = aux_iterate_comparison(aux, plain, n, i).at(X)
        m = aux.steps_between(n, sa.iterates, i).then(c)
        return AuxReport(n, i, is_quasi_iso(m), sa, sp_)
    # telescopes: a levelwise quasi-iso of the two sequences suffices
    done, ok = 0, True
    for j in range(1, min(sa.iterates, sp_.iterates) + 1):
        try:
            c = aux_iterate_comparison(aux, plain, n, j).at(X)
        except GuardError:
            break
        done, ok = j, ok and is_quasi_iso(c)
    if done == 0:
        raise GuardError(f"aux comparison at level {n} exceeds the size guard")
    return AuxReport(n, done, ok, sa, sp_, "iterate-wise")
