"""Acceptance criteria.

Each test prints one line ``[PASS|FAIL] ACn title: detail (elapsed, limit)``
and fails if the check fails or the time limit is exceeded.  Run with

    pytest tests/test_acceptance.py -v
    python3 tests/test_acceptance.py
"""

import itertools
import random
import sys
import time

import pytest

from colaxreedy import fincat
from colaxreedy.axioms import model_family, rebase, verify_model_axioms
from colaxreedy.base import FinSet, FinVect, weakened
from colaxreedy.classical import agreement
from colaxreedy.colax import (
    ConsistencyError,
    Icon,
    canonical_map_iz,
    colax_latching_object,
    colax_matching_object,
    compose_icons,
    identity_icon,
    truncate,
    validate_colax,
    validate_icon,
)
from colaxreedy.examples import monoid_diagram, xor_monoid
from colaxreedy.generate import exhaustive_diagrams, exhaustive_icons, random_diagram, random_icon
from colaxreedy.homotopy import (
    LiftObstruction,
    classify,
    colimit_colax,
    factor_icon,
    icons_equal,
    in_left,
    in_right,
    lift_icon,
    limit_colax,
)
from colaxreedy.reedy2 import (
    build_delta_plus,
    build_PX,
    check_direct_divisibility,
    drop_cells,
    reclassify,
    validate_simple_lr,
)
from colaxreedy.runner import diagrams_equal
from colaxreedy.segal import (
    build_delta_X,
    check_delta_X,
    check_joyal,
    check_presheaf_map,
    check_segal_conditions,
    from_presheaf,
    iso_J,
    joyal_T,
    presheaf_reedy,
    presheaf_verdicts,
    to_presheaf,
    transport_icon,
    validate_presheaf,
)
from colaxreedy.universal import check_colimit_universal, check_limit_universal

FS, FV = FinSet(), FinVect(2)


def _emit(line):
    sys.stdout.write(line + "\n")
    sys.stdout.flush()


def run_criterion(n, title, limit, body, emit=_emit):
    t0 = time.perf_counter()
    try:
        ok, detail = body()
    except Exception as e:  # an exception is a failure with its message as witness
        ok, detail = False, f"{type(e).__name__}: {e}"
    dt = time.perf_counter() - t0
    if dt >= limit:
        ok, detail = False, f"{detail}; over time"
    emit(f"[{'PASS' if ok else 'FAIL'}] AC{n} {title}: {detail} ({dt:.1f}s, limit {limit:g}s)")
    return ok


@pytest.fixture
def criterion(capsys):
    def go(n, title, limit, body):
        with capsys.disabled():
            ok = run_criterion(n, title, limit, body)
        assert ok, f"AC{n} failed"
    return go


# ---- 1 --------------------------------------------------------------------------

def ac1_delta_plus():
    C = build_delta_plus(4)
    rep = check_direct_divisibility(C)
    return rep.ok, f"delta+<=4 {len(C.cells2)} 2-cells"


def ac1_px(X):
    def body():
        C = build_PX(X, 3)
        rep = check_direct_divisibility(C)
        return rep.ok, f"P_X<=3 |X|={len(X)} {len(C.cells2)} 2-cells"
    return body


def ac1_mutated():
    C = drop_cells(build_delta_plus(3), [(1, 2, (1,))])
    rep = check_direct_divisibility(C)
    if rep.ok:
        return False, "mutation not detected"
    rule, w = rep.first()
    return rule == "lift-count" and w["lifts"] == [], f"witness {rule} at {w['cell']} split {w['split']}"


@pytest.mark.parametrize("name,body", [
    ("delta+<=4", ac1_delta_plus),
    ("P_X<=3 |X|=2", ac1_px("ab")),
    ("P_X<=3 |X|=3", ac1_px("abc")),
    ("mutated delta+<=3", ac1_mutated),
])
def test_ac1_direct_divisibility(criterion, name, body):
    criterion(1, f"direct-divisibility {name}", 10, body)


# ---- 2 --------------------------------------------------------------------------

def ac2_body():
    D3, P3 = build_delta_plus(3), build_PX("ab", 3)
    rng = random.Random(2024)
    cells = 0
    for C, B, sizes in ((D3, FS, (1, 2)), (D3, FV, (1, 2)), (P3, FS, (0, 1)), (P3, FV, (0, 1))):
        diagrams = [random_diagram(C, B, rng, sizes=sizes, name=f"R{n}") for n in range(3)]
        if C is D3:
            diagrams.append(monoid_diagram(C, B, *xor_monoid(B)))
        for F in diagrams:
            for z in F.cells1():
                if C.is_unit(z):
                    continue
                L, M = colax_latching_object(F, z), colax_matching_object(F, z)
                i = canonical_map_iz(F, z, L, M)  # raises on a failed triangle
                if i != B.comp(M.from_z, L.to_z):
                    return False, f"i_z differs from the composite at {C.fmt1(z)} on {F.name}"
                # built from F below z only: the truncation gives the same table
                d = C.deg(z)
                if d >= 2:
                    low = truncate(F, d - 1)
                    if canonical_map_iz(low, z) != i:
                        return False, f"i_z depends on F at {C.fmt1(z)}"
                cells += 1
    return True, f"{cells} cells on delta+<=3 and P_X<=3 over finset and finvect"


def test_ac2_canonical_map(criterion):
    criterion(2, "canonical map i_z", 30, ac2_body)


# ---- 3 --------------------------------------------------------------------------

def ac3_body():
    parts = []
    for name, R in (("walking arrow", fincat.walking_arrow()),
                    ("retraction", fincat.walking_retraction()),
                    ("delta<=1", fincat.delta_le1())):
        rep = agreement(R, FS, (0, 1, 2, 3), (0, 1, 2), extra_pairs=40)
        if not rep.ok:
            return False, f"{name}: {rep.first()}"
        parts.append(f"{name} {rep.info['diagrams']}d/{rep.info['nats']}n")
    return True, "; ".join(parts)


def test_ac3_classical_agreement(criterion):
    criterion(3, "classical agreement", 60, ac3_body)


# ---- 4 --------------------------------------------------------------------------

def _some_icon(F, G, seed):
    return random_icon(F, G, random.Random(seed)) or next(iter(exhaustive_icons(F, G, limit=1)), None)


def limit_instances():
    """(label, J, objs, arrs) with J of at most 3 objects, values <= 2, bound <= 2."""
    D2, P2 = build_delta_plus(2), build_PX("ab", 2)
    out = []
    for seed, (C, B) in enumerate(((D2, FV), (P2, FS), (D2, FS), (P2, FV))):
        rng = random.Random(100 + seed)
        X = random_diagram(C, B, rng, sizes=(0, 1), name="X")
        Y = random_diagram(C, B, rng, sizes=(0, 1), name="Y")
        out.append((f"pair {C.name}/{B.kind}", fincat.discrete_shape(2), {"j0": X, "j1": Y}, {}))
    rng = random.Random(7)
    X = random_diagram(D2, FV, rng, sizes=(1,), name="X")
    out.append(("point delta+/finvect", fincat.point_shape(), {"*": X}, {}))
    Z = random_diagram(D2, FV, rng, sizes=(1, 2), name="Z")
    s, t = _some_icon(X, Z, 1), _some_icon(X, Z, 2)
    out.append(("cospan delta+/finvect", fincat.cospan_shape(), {"j0": X, "j1": X, "j2": Z}, {"u": s, "v": t}))
    rng = random.Random(8)
    A = random_diagram(P2, FS, rng, sizes=(1, 2), name="A")
    Bd = random_diagram(P2, FS, rng, sizes=(1, 2), name="B")
    u, v = _some_icon(A, Bd, 3), _some_icon(A, A, 4)
    out.append(("span P_X/finset", fincat.span_shape(), {"j0": A, "j1": Bd, "j2": A}, {"u": u, "v": v}))
    return out


def _truncation_commutes(J, objs, arrs, E):
    k = E.level - 1
    low = limit_colax(J, {j: truncate(X, k) for j, X in objs.items()},
                      {a: Icon(truncate(s.src, k), truncate(s.dst, k),
                               {z: c for z, c in s.comp.items() if E.C.deg(z) <= k}) for a, s in arrs.items()})
    return diagrams_equal(truncate(E, k), low.diagram)


def ac4_body():
    cones = 0
    insts = limit_instances()
    for label, J, objs, arrs in insts:
        res = limit_colax(J, objs, arrs)
        E = res.diagram
        if not validate_colax(E).ok:
            return False, f"{label}: invalid limit"
        tests = list(exhaustive_diagrams(E.C, E.base, (0, 1), limit=6))
        rep = check_limit_universal(J, objs, arrs, res, tests)
        if not rep.ok:
            return False, f"{label}: {rep.first()}"
        cones += rep.info["cones"]
        if not _truncation_commutes(J, objs, arrs, E):
            return False, f"{label}: truncation does not commute"
    return cones > 0, f"{len(insts)} instances, {cones} competitor cones, truncation commutes"


def test_ac4_limit_creation(criterion):
    criterion(4, "limit creation", 300, ac4_body)


# ---- 5 --------------------------------------------------------------------------

def ac5_body(n_icons=50):
    P2 = build_PX("ab", 2)
    rng = random.Random(5)
    icons = []
    while len(icons) < n_icons:
        F = random_diagram(P2, FV, rng, sizes=(0, 1, 2))
        G = random_diagram(P2, FV, rng, sizes=(0, 1, 2))
        s = random_icon(F, G, rng)
        if s is not None:
            icons.append(s)
    squares = 0
    for n, s in enumerate(icons):
        fa = {}
        for system in ("acof_fib", "cof_afib"):
            f = factor_icon(s, system)
            if not icons_equal(compose_icons(f.rho, f.lam), s):
                return False, f"icon {n} {system}: rho o lam != sigma"
            if not (validate_icon(f.lam).ok and validate_icon(f.rho).ok):
                return False, f"icon {n} {system}: invalid factor"
            if not (in_left(f.lam, system) and in_right(f.rho, system)):
                return False, f"icon {n} {system}: factor outside its class"
            fa[system] = f
        a, c = fa["acof_fib"], fa["cof_afib"]
        # rho_a o lam_a = sigma = rho_c o lam_c gives two commuting squares:
        # (lam_a, rho_c) is acof against afib, (lam_c, rho_a) is cof against fib;
        # every map is a weak equivalence in finvect, so fib = afib
        for system, lam, rho, top, bottom in (("acof_fib", a.lam, c.rho, c.lam, a.rho),
                                              ("cof_afib", c.lam, a.rho, a.lam, c.rho)):
            if not (in_left(lam, system) and in_right(rho, system)):
                return False, f"icon {n}: square outside ({system})"
            try:
                h = lift_icon(lam, rho, top, bottom)
            except LiftObstruction as e:
                return False, f"icon {n} {system}: obstruction at {e.z} degree {e.degree}"
            if not (icons_equal(compose_icons(h, lam), top) and icons_equal(compose_icons(rho, h), bottom)):
                return False, f"icon {n} {system}: diagonal does not fill"
            squares += 1
    # plus every enumerated square between small factors
    small = [s for s in icons if all(s.src.obj(z).size <= 1 and s.dst.obj(z).size <= 1 for z in s.src.cells1())][:6]
    for s, t in itertools.product(small, repeat=2):
        for system in ("acof_fib", "cof_afib"):
            lam, rho = factor_icon(s, system).lam, factor_icon(t, system).rho
            for top in exhaustive_icons(lam.src, rho.src, limit=8):
                for bottom in exhaustive_icons(lam.dst, rho.dst, limit=8):
                    if not icons_equal(compose_icons(rho, top), compose_icons(bottom, lam)):
                        continue
                    h = lift_icon(lam, rho, top, bottom)
                    if not (icons_equal(compose_icons(h, lam), top) and icons_equal(compose_icons(rho, h), bottom)):
                        return False, "enumerated square not filled"
                    squares += 1
    return True, f"{len(icons)} icons x 2 systems factored, {squares} squares lifted"


def test_ac5_factorization_and_lifting(criterion):
    criterion(5, "factorization system", 300, ac5_body)


# ---- 6 --------------------------------------------------------------------------

def ac6_body():
    D2, P2 = build_delta_plus(2), build_PX("ab", 2)
    parts = []
    for label, (C, B, kw) in (
        ("delta+<=2/finvect", (D2, FV, dict(sizes=(0, 1, 2)))),
        ("P_X<=2/finset", (P2, FS, dict(sizes=(0, 1, 2), diagram_limit=600, sample=12, base_sizes=(0, 1)))),
    ):
        diagrams, icons = model_family(C, B, **kw)
        rep = verify_model_axioms(icons)
        if not rep.ok:
            return False, f"{label}: {rep.first()}"
        parts.append(f"{label} {len(diagrams)}d/{len(icons)}i/{rep.info['squares']}sq")
    return True, "; ".join(parts)


def test_ac6_model_axioms(criterion):
    criterion(6, "model axioms", 600, ac6_body)


# ---- 7 --------------------------------------------------------------------------

def ac7_body():
    J = joyal_T(4)
    rep = check_joyal(J)
    if not rep.ok:
        return False, f"joyal: {rep.first()}"
    if J.forward[(2, 1, (0, 0))] != (0, 2) or J.forward[(0, 1, ())] != (0, 0):
        return False, "generator images"
    P3 = build_PX("ab", 3)
    D = build_delta_X("ab", 3)
    if not check_delta_X(D).ok:
        return False, "delta_X"
    for x, y in itertools.product("ab", repeat=2):
        _, r = iso_J(P3, x, y, D)
        if not r.ok:
            return False, f"J({x},{y}): {r.first()}"
    from colaxreedy.examples import category_diagram

    homs = {(x, y): 2 for x in "ab" for y in "ab"}
    comp = {k: [(f + g) % 2 for f in range(2) for g in range(2)] for k in itertools.product("ab", repeat=3)}
    diagrams = [category_diagram(P3, FS, homs, comp, {"a": 0, "b": 0})]
    rng = random.Random(7)
    diagrams += [random_diagram(P3, FS, rng, sizes=(0, 1)) for _ in range(3)]
    for F in diagrams:
        P = to_presheaf(F, D)
        r = validate_presheaf(P)
        if not r.ok:
            return False, f"presheaf of {F.name}: {r.first()}"
        if not diagrams_equal(from_presheaf(P, P3), F):
            return False, f"round trip of {F.name}"
    # transported verdicts against the classical presheaf Reedy structure
    P2 = build_PX("ab", 2)
    D2 = build_delta_X("ab", 2)
    R = presheaf_reedy(D2)
    _, icons = model_family(P2, FS, (0, 1, 2), diagram_limit=120, sample=4, base_sizes=(0, 1))
    W = weakened(FS, cof=FS.is_mono, fib=FS.is_epi)
    n = 0
    for s in icons + rebase(icons, W):
        if not check_presheaf_map(*transport_icon(s, to_presheaf(s.src, D2), to_presheaf(s.dst, D2))).ok:
            return False, "transported icon not natural"
        if tuple(presheaf_verdicts(s, R, D2)) != classify(s).flags:
            return False, "verdicts disagree"
        n += 1
    return True, f"joyal m<=4, {len(D.morphisms)} Delta_X morphisms, {len(diagrams)} round trips, {n} verdicts agree"


def test_ac7_joyal_and_bridge(criterion):
    criterion(7, "joyal duality and bridge", 120, ac7_body)


# ---- 8 --------------------------------------------------------------------------

def _mutations():
    """(verifier, thunk returning a witness or None when the mutation went unnoticed)."""
    D2, D3, P2 = build_delta_plus(2), build_delta_plus(3), build_PX("ab", 2)
    M = monoid_diagram(D2, FS, *xor_monoid(FS))
    MV = monoid_diagram(D2, FV, *xor_monoid(FV))

    def failed(rep):
        return None if rep.ok else rep.first()

    def divisibility():
        return failed(check_direct_divisibility(drop_cells(D3, [(1, 2, (1,))])))

    def simple_lr():
        return failed(validate_simple_lr(reclassify(D3, (2, 1, (0, 0)), "direct")))

    def colax():
        mult = M.arr((2, 1, (0, 0)))
        t = list(mult.data)
        t[0], t[1] = t[1], t[0]
        return failed(validate_colax(M.replace(val2={**M.val2, (2, 1, (0, 0)): FS.arrow(mult.src, mult.dst, t)})))

    def icon():
        swap = FV.arrow(MV.obj(1), MV.obj(1), [[0, 1], [1, 0]])
        return failed(validate_icon(Icon(MV, MV, {0: FV.identity(FV.unit), 1: swap, 2: FV.tensor(swap, swap)})))

    def canonical_map():
        # F known below degree 3 only, with the colaxity map at 1.1 zeroed:
        # some i_3 triangle must fail and name its cells
        F = truncate(monoid_diagram(D3, FV, *xor_monoid(FV)), 2)
        bad = dict(F.colax)
        bad[(1, 1)] = FV.zero(F.obj(2), FV.tensor_obj(F.obj(1), F.obj(1)))
        try:
            canonical_map_iz(F.replace(colax=bad), 3)
        except ConsistencyError as e:
            return str(e)
        return None

    def factor_classes():
        rng = random.Random(1)
        F = random_diagram(P2, FV, rng, sizes=(1, 2))
        s = next(x for x in exhaustive_icons(F, F) if not classify(x).is_fib)
        return None if in_right(s, "acof_fib") else f"relative matching map not a fibration ({classify(s).witnesses['fib']})"

    def lifting():
        _, icons = model_family(D2, FV, (0, 1))
        W = weakened(FV, fib=lambda f: True)
        rep = verify_model_axioms(rebase(icons, W), square_pairs=200)
        w = next(((r, w) for r, w in rep.violations if r.startswith("lifting")), None)
        return w

    def limit_universal():
        rng = random.Random(1)
        X, Y = random_diagram(D2, FV, rng, sizes=(0, 1)), random_diagram(D2, FV, rng, sizes=(0, 1))
        J = fincat.discrete_shape(2)
        res = limit_colax(J, {"j0": X, "j1": Y}, {})
        res.cone["j0"] = res.cone["j1"] if res.diagram is not X else identity_icon(X)
        tests = list(exhaustive_diagrams(D2, FV, (0, 1), limit=4))
        return failed(check_limit_universal(J, {"j0": X, "j1": Y}, {}, res, tests))

    def colimit_universal():
        rng = random.Random(2)
        X, Y = random_diagram(D2, FV, rng, sizes=(0, 1)), random_diagram(D2, FV, rng, sizes=(0, 1))
        J = fincat.discrete_shape(2)
        res = colimit_colax(J, {"j0": X, "j1": Y}, {})
        res.cocone["j0"], res.cocone["j1"] = res.cocone["j1"], res.cocone["j0"]
        tests = list(exhaustive_diagrams(D2, FV, (1, 2), limit=6))
        return failed(check_colimit_universal(J, {"j0": X, "j1": Y}, {}, res, tests))

    def joyal():
        J = joyal_T(2)
        J.forward[(2, 1, (0, 0))] = (0, 1)
        return failed(check_joyal(J))

    def delta_x():
        D = build_delta_X("ab", 2)
        D.morphisms = D.morphisms[1:]
        return failed(check_delta_X(D))

    def presheaf():
        P = to_presheaf(random_diagram(P2, FS, random.Random(0), sizes=(1, 2)))
        mor = next(m for m in P.D.morphisms if P.act(m).src.size == 2 and P.act(m).dst.size == 2
                   and P.act(m).data == (0, 1) and m[1] != m[2])
        a = P.act(mor)
        P.action[mor] = FS.arrow(a.src, a.dst, [1, 0])
        return failed(validate_presheaf(P))

    def presheaf_map():
        F = random_diagram(P2, FS, random.Random(3), sizes=(1, 2))
        P, Q, comps = transport_icon(identity_icon(F))
        z = next(c for c in comps if comps[c].src.size == 2)
        comps[z] = FS.arrow(comps[z].src, comps[z].dst, [1, 0])
        return failed(check_presheaf_map(P, Q, comps))

    def segal():
        F = random_diagram(P2, FS, random.Random(0), sizes=(0, 1, 2))
        return failed(check_segal_conditions(F))

    return [
        ("divisibility", divisibility), ("simple-locally-reedy", simple_lr), ("colax-diagram", colax),
        ("icon", icon), ("canonical-map", canonical_map), ("reedy-classes", factor_classes),
        ("model-axioms", lifting), ("limit-universal", limit_universal),
        ("colimit-universal", colimit_universal), ("joyal", joyal), ("delta-x", delta_x),
        ("presheaf", presheaf), ("presheaf-map", presheaf_map), ("segal", segal),
    ]


def ac8_body():
    caught = []
    for name, thunk in _mutations():
        w = thunk()
        if not w:
            return False, f"{name}: mutation not detected"
        caught.append(name)
    return True, f"{len(caught)} verifiers caught their mutation with a witness"


def test_ac8_mutation_sensitivity(criterion):
    criterion(8, "mutation sensitivity", 60, ac8_body)


CRITERIA = [
    (1, "direct-divisibility delta+<=4", 10, ac1_delta_plus),
    (1, "direct-divisibility P_X<=3 |X|=2", 10, ac1_px("ab")),
    (1, "direct-divisibility P_X<=3 |X|=3", 10, ac1_px("abc")),
    (1, "direct-divisibility mutated delta+<=3", 10, ac1_mutated),
    (2, "canonical map i_z", 30, ac2_body),
    (3, "classical agreement", 60, ac3_body),
    (4, "limit creation", 300, ac4_body),
    (5, "factorization system", 300, ac5_body),
    (6, "model axioms", 600, ac6_body),
    (7, "joyal duality and bridge", 120, ac7_body),
    (8, "mutation sensitivity", 60, ac8_body),
]


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
