"""The property battery behind ``taylortower verify``.

Each property is a function ``(rng, cfg) -> (passed, detail)`` registered
under a suite.  Every property draws from its own generator, seeded from
the run seed and the property name, so suites can run in any order or in
parallel and still produce identical reports.
"""
from __future__ import annotations

import random
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import cocartesian as cc
from .chain import (ChainComplex, ChainMap, cotensor, free_module, identity_map, is_quasi_iso,
                    random_complex, scalar_map, zero_complex)
from .cubes import (Cube, cartesian_replacement, check_flags, del_, del_holim_identity,
                    face_data, fiber_commutation, is_homotopy_cartesian, left_face, right_face,
                    splitting_check, total_cube)
from .diagrams import Diagram, hocolim, nat_hocolim_map
from .fincat import (FinCat, GuardError, arrow_category, find_isomorphism, linear_order, product,
                     random_set_diagram, terminal, validate_category)
from .functors import (constant_functor, double_functor, identity_functor, shift_functor,
                       square_functor, tensor_functor, unit_into_tensor)
from .generators import cofibration_cube, constant_cube, random_diagram
from .groth import (COPUNCTURED, PUNCTURED, coend_agrees, discrete_set, int_pb, int_po, jn, plus,
                    pb_plus_iso, pb_pushout_presentation, powerset, random_bifunctor,
                    subset_poset, xi)
from .reedy import (check_reedy, constants_criterion, cube_structure, filtration,
                    latching_category, latching_set, latching_set_direct,
                    punctured_cube_structure, spider_structure)
from .simp import (boundary_simplex, circle, nerve, normalized_chains, sset_product,
                   standard_simplex)
from .star import (star_h_comparison, star_h_inclusion, star_h_unit, star_inclusion, star_set,
                   star_unit)
from .tower import Tower, apply_tn, aux_tower, t_n, tower_map

MAX_RANK_GUARD = 6
MAX_SPAN_GUARD = 4


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 1
    max_rank: int = 3
    span: int = 3
    scale: float = 1.0   # multiplies the number of random cases
    threads: int = 1

    def __post_init__(self):
        if not 1 <= self.max_rank <= MAX_RANK_GUARD:
            raise GuardError(f"max_rank {self.max_rank} outside 1..{MAX_RANK_GUARD}")
        if not 1 <= self.span <= MAX_SPAN_GUARD:
            raise GuardError(f"span {self.span} outside 1..{MAX_SPAN_GUARD}")

    def count(self, n: int) -> int:
        return max(1, round(n * self.scale))


@dataclass
class PropertyResult:
    suite: str
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0
    error: str | None = None

    def to_json(self, timings: bool = False) -> dict:
        out = {"suite": self.suite, "name": self.name, "passed": self.passed,
               "detail": self.detail}
        if self.error:
            out["error"] = self.error
        if timings:
            out["seconds"] = round(self.seconds, 3)
        return out


SUITES: dict[str, list[tuple[str, Callable]]] = {}


def prop(suite: str):
    def deco(fn):
        SUITES.setdefault(suite, []).append((fn.__name__, fn))
        return fn
    return deco


def _seed(cfg: VerifyConfig, name: str) -> int:
    return zlib.crc32(f"{cfg.seed}:{name}".encode())


def _complex(rng, cfg: VerifyConfig) -> ChainComplex:
    return random_complex(rng, max_rank=cfg.max_rank, span=cfg.span)


# ---------------------------------------------------------------------------
# combinatorial isomorphisms

@prop("iso")
def iterated_pb_of_point_is_punctured_cube(rng, cfg):
    counts = {}
    for n in range(2, 6):
        C = jn(terminal(), n)[0][-1]
        counts[n - 1] = len(C.objects)
        if validate_category(C) or find_isomorphism(C, powerset(n, PUNCTURED)) is None:
            return False, {"failed_at": n - 1}
    return counts == {1: 3, 2: 7, 3: 15, 4: 31}, {"objects": counts}


@prop("iso")
def pb_plus_splits_as_product(rng, cfg):
    names = []
    for J in (terminal(), arrow_category(), powerset(2, PUNCTURED)):
        F = pb_plus_iso(J)
        if F.check():
            return False, {"shape": J.name, "problem": F.check()[0]}
        target = product(plus(J)[0], arrow_category())
        if find_isomorphism(F.source, target) is None:
            return False, {"shape": J.name}
        names.append(J.name)
    return True, {"shapes": names}


@prop("iso")
def xi_is_isomorphism(rng, cfg):
    for k in range(1, 7):
        x = xi(discrete_set(k))
        if x.check() or find_isomorphism(x.source, x.target) is None:
            return False, {"size": k}
    return True, {"sizes": "1..6"}


@prop("iso")
def pb_total_is_pushout(rng, cfg):
    for J in (terminal(), arrow_category(), powerset(2, PUNCTURED)):
        if find_isomorphism(pb_pushout_presentation(J), int_pb(J).total) is None:
            return False, {"shape": J.name}
    return True, {}


@prop("iso")
def spider_object_count(rng, cfg):
    sizes = {k: len(int_po(discrete_set(k)).total.objects) for k in range(1, 5)}
    return sizes == {k: 2 * k + 1 for k in range(1, 5)}, {"objects": sizes}


# ---------------------------------------------------------------------------
# coends

@prop("coend")
def coend_twisted_matches_direct(rng, cfg):
    r = random.Random(_seed(cfg, "coend"))
    shapes = [discrete_set(1), discrete_set(2), discrete_set(3), arrow_category()]
    n = cfg.count(50)
    for i in range(n):
        C = shapes[i % len(shapes)]
        Z = random_bifunctor(C, r)
        if not coend_agrees(Z, C):
            return False, {"case": i, "shape": C.name}
    return True, {"cases": n}


# ---------------------------------------------------------------------------
# Reedy structures

@prop("reedy")
def punctured_cubes_are_reedy_with_cofibrant_constants(rng, cfg):
    for n in range(1, 5):
        R = punctured_cube_structure(n)
        if check_reedy(R) or not constants_criterion(R, "cofibrant"):
            return False, {"n": n}
    return True, {"n": "1..4"}


@prop("reedy")
def cubes_are_reedy(rng, cfg):
    for n in range(1, 5):
        if check_reedy(cube_structure(n)):
            return False, {"n": n}
    return True, {"n": "1..4"}


@prop("reedy")
def latching_categories_are_copunctured(rng, cfg):
    for n in range(1, 5):
        R = cube_structure(n)
        for S in R.category.objects:
            if find_isomorphism(latching_category(R, S), subset_poset(S, COPUNCTURED)) is None:
                return False, {"n": n, "subset": list(S)}
    return True, {"n": "1..4"}


@prop("reedy")
def filtration_ends(rng, cfg):
    for n in range(2, 5):
        R = cube_structure(n)
        F1, _ = filtration(R, 1)
        Fn, _ = filtration(R, n - 1)
        if find_isomorphism(F1, plus(discrete_set(n))[0]) is None:
            return False, {"n": n, "level": 1}
        if find_isomorphism(Fn, powerset(n, COPUNCTURED)) is None:
            return False, {"n": n, "level": n - 1}
    return True, {"n": "2..4"}


@prop("reedy")
def latching_sets_match_oracle(rng, cfg):
    r = random.Random(_seed(cfg, "latching-sets"))
    R = cube_structure(3)
    for i in range(cfg.count(5)):
        X = random_set_diagram(R.category, r, 2, merges=3)
        for S in R.category.objects:
            if len(latching_set(R, X, S)) != latching_set_direct(R, X, S):
                return False, {"case": i, "subset": list(S)}
    return True, {}


@prop("reedy")
def spiders_are_reedy(rng, cfg):
    for k in range(1, 5):
        R = spider_structure(int_po(discrete_set(k)).total)
        if check_reedy(R):
            return False, {"size": k}
    return True, {"sizes": "1..4"}


# ---------------------------------------------------------------------------
# homology engine

@prop("homology")
def doubling_complex_has_z2(rng, cfg):
    H = ChainComplex({0: 1, 1: 1}, {1: [[2]]}).homology()
    return H.torsion(0) == (2,) and H.betti(0) == 0 and H.betti(1) == 0, {"homology": str(H)}


@prop("homology")
def circle_homology(rng, cfg):
    H = normalized_chains(circle()).homology()
    H2 = normalized_chains(boundary_simplex(2)).homology()
    ok = all(h.betti(0) == 1 and h.betti(1) == 1 and not h.torsion(0) and not h.torsion(1)
             for h in (H, H2))
    return ok, {"circle": str(H), "boundary_of_simplex": str(H2)}


@prop("homology")
def punctured_cube_nerves_contractible(rng, cfg):
    out = {}
    for n in range(1, 5):
        H = normalized_chains(nerve(powerset(n, PUNCTURED))).homology()
        out[n] = str(H)
        if H != free_module(1, 0).homology():
            return False, out
    return True, out


@prop("homology")
def product_of_simplices_contractible(rng, cfg):
    P = sset_product(standard_simplex(2), standard_simplex(1))
    H = normalized_chains(P).homology()
    return not P.check() and H == free_module(1, 0).homology(), {"f_vector": list(P.f_vector())}


# ---------------------------------------------------------------------------
# the ⋆ construction

@prop("star")
def star_of_empty_is_identity(rng, cfg):
    n = cfg.count(20)
    for i in range(n):
        if not is_quasi_iso(star_unit((), _complex(rng, cfg))):
            return False, {"case": i}
    return True, {"cases": n}


@prop("star")
def star_of_point_is_acyclic(rng, cfg):
    n = cfg.count(20)
    for i in range(n):
        if not star_set((1,), _complex(rng, cfg)).complex.is_acyclic():
            return False, {"case": i}
    return True, {"cases": n}


@prop("star")
def star_of_two_points_suspends(rng, cfg):
    n = cfg.count(20)
    for i in range(n):
        X = _complex(rng, cfg)
        if star_set((1, 2), X).complex.homology() != X.homology().shifted(1):
            return False, {"case": i}
    return True, {"cases": n}


@prop("star")
def star_commutes_with_star(rng, cfg):
    """``I ⋆ (J ⋆ X)`` and ``J ⋆ (I ⋆ X)`` have equal homology."""
    n = cfg.count(6)
    for i in range(n):
        X = random_complex(rng, max_rank=2, span=2)
        I = tuple(range(1, int(rng.integers(0, 4)) + 1))
        J = tuple(range(1, int(rng.integers(0, 3)) + 1))
        a = star_set(I, star_set(J, X).complex).complex.homology()
        b = star_set(J, star_set(I, X).complex).complex.homology()
        if a != b:
            return False, {"case": i, "I": len(I), "J": len(J)}
    return True, {"cases": n}


@prop("star")
def spider_comparison_is_natural(rng, cfg):
    X = _complex(rng, cfg)
    ih = star_h_inclusion((1,), (1, 2), X)
    i = star_inclusion((1,), (1, 2), X)
    ok = ih.then(star_h_comparison((1, 2), X)).equals(star_h_comparison((1,), X).then(i))
    ok &= star_h_unit((1, 2), X).then(star_h_comparison((1, 2), X)).equals(star_unit((1, 2), X))
    return ok, {}


# ---------------------------------------------------------------------------
# auxiliary tower

def _builtins_for_aux():
    C0 = ChainComplex({0: 1, 1: 1}, {1: [[2]]})
    return [identity_functor(), constant_functor(free_module(1, 0)), double_functor(),
            tensor_functor(C0)]


@prop("aux")
def spider_comparison_quasi_iso(rng, cfg):
    n = cfg.count(10)
    for i in range(n):
        X = _complex(rng, cfg)
        for S in ((1,), (1, 2), (1, 2, 3)):
            c = star_h_comparison(S, X)
            if c.check() or not is_quasi_iso(c):
                return False, {"case": i, "size": len(S)}
    return True, {"cases": n}


@prop("aux")
def aux_tower_comparison_quasi_iso(rng, cfg):
    n = cfg.count(10)
    Fs = _builtins_for_aux()
    for i in range(n):
        X = _complex(rng, cfg)
        for F in Fs:
            for level in (0, 1):
                r = aux_tower(F, X, level)
                if not r.quasi_iso:
                    return False, {"case": i, "functor": F.name, "level": level}
    return True, {"cases": n, "functors": [F.name for F in Fs]}


# ---------------------------------------------------------------------------
# Taylor tower

@prop("tower")
def p0_of_identity_acyclic(rng, cfg):
    Xs = [free_module(1, 0)] + [_complex(rng, cfg) for _ in range(cfg.count(3))]
    for i, X in enumerate(Xs):
        if not Tower(identity_functor(), X).stage(0).value.is_acyclic():
            return False, {"case": i}
    return True, {"cases": len(Xs)}


@prop("tower")
def t1_of_identity_is_identity(rng, cfg):
    Xs = [free_module(1, 0)] + [_complex(rng, cfg) for _ in range(cfg.count(3))]
    T1 = t_n(identity_functor(), 1)
    for i, X in enumerate(Xs):
        s = Tower(identity_functor(), X).stage(1)
        if not is_quasi_iso(T1.unit(X)) or not s.stabilized or s.iterates != 1 \
                or s.value.homology() != X.homology():
            return False, {"case": i}
    return True, {"cases": len(Xs)}


@prop("tower")
def quadratic_tower_maps(rng, cfg):
    tw = Tower(square_functor(), free_module(1, 0), max_iter=2)
    q2, q1 = tower_map(tw, 2), tower_map(tw, 1)
    ok = q2.quasi_iso is True and q2.commutes_on_homology is not False and q1.quasi_iso is False
    return ok, {"q2": q2.to_json(), "q1": q1.to_json()}


@prop("tower")
def constant_tower_is_constant(rng, cfg):
    C = free_module(1, 0)
    S1 = normalized_chains(circle())
    tw = Tower(constant_functor(C), S1)
    out = {n: str(tw.stage(n).value.homology()) for n in range(3)}
    return all(tw.stage(n).value.homology() == C.homology() for n in range(3)), out


@prop("tower")
def tn_at_zero_is_cotensor(rng, cfg):
    Fs = [identity_functor(), constant_functor(random_complex(rng, max_rank=2, span=2)),
          double_functor(), square_functor()]
    for F in Fs:
        for n in (0, 1, 2):
            lhs = t_n(F, n).obj(zero_complex()).homology()
            rhs = cotensor(F.obj(zero_complex()), nerve(powerset(n + 1, PUNCTURED))).homology()
            if lhs != rhs:
                return False, {"functor": F.name, "n": n}
    return True, {}


@prop("tower")
def tn_preserves_objectwise_quasi_isos(rng, cfg):
    M = normalized_chains(standard_simplex(1))
    eta = unit_into_tensor(M, 0)
    for n in (0, 1):
        T = t_n(eta.source, n)
        G = t_n(eta.target, n)
        Tn_eta = apply_tn(T, eta, G)
        for i in range(cfg.count(3)):
            X = random_complex(rng, max_rank=2, span=2)
            m = Tn_eta.at(X)
            if m.check() or not is_quasi_iso(m):
                return False, {"n": n, "case": i}
    return True, {}


# ---------------------------------------------------------------------------
# homotopy Cartesian cubes

@prop("cubes")
def replacement_is_cartesian(rng, cfg):
    shapes = [terminal(), FinCat.discrete([1, 2]), powerset(2, PUNCTURED), linear_order(1)]
    n = cfg.count(20)
    for i in range(n):
        X = random_diagram(shapes[i % len(shapes)], rng)
        R = cartesian_replacement(X)
        if not is_homotopy_cartesian(R.cube):
            return False, {"case": i}
    return True, {"cases": n}


@prop("cubes")
def replacement_units_are_quasi_isos(rng, cfg):
    for m in (2, 3):
        J = powerset(m, PUNCTURED)
        for i in range(cfg.count(2)):
            R = cartesian_replacement(random_diagram(J, rng, max_rank=1))
            if not is_homotopy_cartesian(R.cube) or \
                    not all(is_quasi_iso(R.unit[j]) for j in J.objects):
                return False, {"m": m, "case": i}
    return True, {}


def _face_cases(rng, cfg, n):
    shapes = [terminal(), FinCat.discrete([1, 2])]
    for i in range(n):
        J = shapes[i % 2]
        fd = face_data(J)
        yield J, fd, random_diagram(fd.total, rng, pieces=3)


@prop("cubes")
def faces_and_total_cartesian(rng, cfg):
    """Left and right faces Cartesian ⇒ total; total and right ⇒ left."""
    n = cfg.count(30)
    fired = {"i": 0, "ii": 0}
    for i, (J, fd, X) in enumerate(_face_cases(rng, cfg, n)):
        c = is_homotopy_cartesian(total_cube(X, fd))
        cl = is_homotopy_cartesian(left_face(X, fd))
        cr = is_homotopy_cartesian(right_face(X, fd))
        if cl and cr:
            fired["i"] += 1
            if not c:
                return False, {"case": i, "part": "i"}
        if c and cr:
            fired["ii"] += 1
            if not cl:
                return False, {"case": i, "part": "ii"}
    return True, {"cases": n, "hypotheses_met": fired}


@prop("cubes")
def cartesian_iff_fibers_cartesian(rng, cfg):
    n = cfg.count(30)
    seen = {True: 0, False: 0}
    for i, (J, fd, X) in enumerate(_face_cases(rng, cfg, n)):
        c = is_homotopy_cartesian(total_cube(X, fd))
        d = is_homotopy_cartesian(del_(X, J, fd).cube)
        seen[c] += 1
        if c != d:
            return False, {"case": i, "total": c, "fibers": d}
    return True, {"cases": n, "cartesian": seen[True], "not_cartesian": seen[False]}


@prop("cubes")
def fibers_holim_identity(rng, cfg):
    for i, (J, fd, X) in enumerate(_face_cases(rng, cfg, cfg.count(6))):
        if not del_holim_identity(X, J, fd):
            return False, {"case": i}
    return True, {}


@prop("cubes")
def cartesian_invariant_under_quasi_iso(rng, cfg):
    M = normalized_chains(standard_simplex(1))
    F = tensor_functor(M)
    J = FinCat.discrete([1, 2])
    fd = face_data(J)
    for i in range(cfg.count(6)):
        X = random_diagram(fd.total, rng, pieces=3)
        A, B = total_cube(X, fd), total_cube(X.apply(F), fd)
        if is_homotopy_cartesian(A) != is_homotopy_cartesian(B):
            return False, {"case": i}
    return True, {}


@prop("cubes")
def sequential_colimit_of_cartesian(rng, cfg):
    """A stabilizing sequence ``Z --2--> Z --1--> Z`` of Cartesian cubes has a Cartesian telescope."""
    L = linear_order(2)
    arrows = {f: (L.src(f), L.dst(f)) for f in L.non_identity}
    for i in range(cfg.count(4)):
        Zc = cartesian_replacement(random_diagram(powerset(2, PUNCTURED), rng, max_rank=1)).cube
        P = Zc.shape
        tel = {}
        for o in P.objects:
            C = Zc.value[o]
            step = {0: scalar_map(C, 2), 1: identity_map(C)}
            acts = {f: _compose_steps(step, a, b, C) for f, (a, b) in arrows.items()}
            tel[o] = hocolim(Diagram(L, {k: C for k in L.objects}, acts))
        action = {}
        for f in P.non_identity:
            a, b = P.src(f), P.dst(f)
            g = Zc.map(f)
            action[f] = nat_hocolim_map(tel[a], tel[b], {k: g for k in L.objects})
        T = Cube(Zc.J, P, {o: tel[o].complex for o in P.objects}, action)
        if not is_homotopy_cartesian(T):
            return False, {"case": i}
    return True, {}


def _compose_steps(step, a, b, C):
    m = identity_map(C)
    for k in range(a, b):
        m = m.then(step[k])
    return m


@prop("cubes")
def fiber_commutation_for_exact_functors(rng, cfg):
    names = []
    for J, fd, X in _face_cases(rng, cfg, 2):
        for F in (identity_functor(), shift_functor(1), double_functor()):
            if not fiber_commutation(F, X, J).commutes:
                return False, {"functor": F.name}
            names.append(F.name)
    try:
        fiber_commutation(square_functor(), X, J)
        return False, {"square_functor": "accepted"}
    except ValueError:
        pass
    return not check_flags(square_functor()).exact_on_fiber_squares, {"functors": sorted(set(names))}


# ---------------------------------------------------------------------------
# holim splitting over ∫_pb J

@prop("splitting")
def holim_over_pb_total_splits(rng, cfg):
    n = cfg.count(10)
    shapes = [terminal(), arrow_category()]
    for i in range(n):
        J = shapes[i % 2]
        Y = random_diagram(int_pb(J).total, rng)
        s = splitting_check(Y, J)
        if not (s.total_to_iterated and all(s.fiberwise.values())):
            return False, {"case": i, "shape": J.name}
    return True, {"cases": n}


# ---------------------------------------------------------------------------
# co-Cartesian cubes

@prop("cocartesian")
def classification_matches_nerve_path(rng, cfg):
    n = cfg.count(30)
    tally = {}
    for i in range(n):
        X = random_diagram(powerset(2 if i % 3 else 3), rng, max_rank=1)
        c = cc.cube_classify(X)
        b = cc.brute_classify(X)
        if c.ho_cocartesian != b["ho_cocartesian"] or \
                c.strongly_ho_cocartesian != b["strongly_ho_cocartesian"] or \
                c.strongly_ho_cocartesian != cc.strongly_by_faces(X):
            return False, {"case": i}
        key = f"cof={c.cofibration_cube},ho={c.ho_cocartesian},strong={c.strongly_ho_cocartesian}"
        tally[key] = tally.get(key, 0) + 1
    return True, {"cases": n, "verdicts": dict(sorted(tally.items()))}


@prop("cocartesian")
def constant_cubes_strongly_cocartesian(rng, cfg):
    for n in (1, 2, 3):
        c = cc.cube_classify(constant_cube(powerset(n), _complex(rng, cfg)))
        if not (c.ho_cocartesian and c.strongly_ho_cocartesian and c.cofibration_cube):
            return False, {"n": n}
    return True, {}


@prop("cocartesian")
def cofibration_cubes_equivalence(rng, cfg):
    n = cfg.count(30)
    tally = {True: 0, False: 0}
    for i in range(n):
        X, _ = cofibration_cube(2 + i % 2, rng)
        e = cc.cofibration_equivalence(X)
        if not e.cofibration_cube or not e.holds:
            return False, {"case": i}
        tally[e.strongly_ho_cocartesian] += 1
    return True, {"cases": n, "strongly": tally[True], "not_strongly": tally[False]}


@prop("cocartesian")
def pushout_and_zero_squares(rng, cfg):
    P = powerset(2)
    Z1, Z2, Z3 = (free_module(r, 0) for r in (1, 2, 3))
    vals = {(): Z1, (1,): Z2, (2,): Z2, (1, 2): Z3}
    mats = {((), (1,)): [[1], [0]], ((), (2,)): [[1], [0]], ((), (1, 2)): [[1], [0], [0]],
            ((1,), (1, 2)): [[1, 0], [0, 1], [0, 0]], ((2,), (1, 2)): [[1, 0], [0, 0], [0, 1]]}
    X = Diagram(P, vals, {f: ChainMap(vals[P.src(f)], vals[P.dst(f)], {0: np.array(mats[f])})
                          for f in P.non_identity}, check=True)
    po_ok = cc.cube_classify(X).ho_cocartesian
    O = zero_complex()
    vals = {(): O, (1,): O, (2,): O, (1, 2): Z1}
    Y = Diagram(P, vals, {f: ChainMap(vals[P.src(f)], vals[P.dst(f)]) for f in P.non_identity})
    zero_ok = not cc.cube_classify(Y).ho_cocartesian
    return po_ok and zero_ok, {"pushout": po_ok, "zero_square_rejected": zero_ok}


@prop("cocartesian")
def rezk_comparison_quasi_iso(rng, cfg):
    n_cases = cfg.count(6)
    for i in range(n_cases):
        n = 1 + i % 2
        X = random_diagram(powerset(n + 1), rng, max_rank=1)
        U = (1,) if i % 3 == 0 else (1, 2)
        T = (n + 1,) if i >= 3 and n + 1 not in U else ()
        R = cc.rezk_objects(X, U, T)
        if R.XU_to_X2.check() or R.X2_to_star_h.check() or not is_quasi_iso(R.XU_to_X2):
            return False, {"case": i}
    C = _complex(rng, cfg)
    R = cc.rezk_objects(constant_cube(powerset(3), C), (1, 2), (3,))
    if R.X2.complex.homology() != C.homology():
        return False, {"constant": False}
    X = random_diagram(powerset(2), rng, max_rank=1)
    R = cc.rezk_objects(X, (1,), ())
    return R.XU.complex.homology() == X.value[(1,)].homology(), {"cases": n_cases}


# ---------------------------------------------------------------------------

def suite_names() -> list[str]:
    return list(SUITES)


def run_property(suite: str, name: str, fn, cfg: VerifyConfig) -> PropertyResult:
    rng = np.random.default_rng(_seed(cfg, name))
    t = time.perf_counter()
    try:
        ok, detail = fn(rng, cfg)
        err = None
    except GuardError:
        raise
    except Exception as e:  # a crash is a failed property, reported with its message
        ok, detail, err = False, {}, f"{type(e).__name__}: {e}"
    return PropertyResult(suite, name, bool(ok), detail, time.perf_counter() - t, err)


def run(suites: list[str] | None = None, cfg: VerifyConfig | None = None) -> list[PropertyResult]:
    cfg = cfg or VerifyConfig()
    chosen = suite_names() if not suites or "all" in suites else suites
    unknown = [s for s in chosen if s not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite {unknown[0]!r}; choose from {', '.join(SUITES)}")
    jobs = [(s, name, fn) for s in chosen for name, fn in SUITES[s]]
    if cfg.threads > 1:
        with ThreadPoolExecutor(cfg.threads) as ex:
            return list(ex.map(lambda j: run_property(*j, cfg), jobs))
    return [run_property(*j, cfg) for j in jobs]
