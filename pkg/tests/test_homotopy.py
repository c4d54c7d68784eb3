import itertools
import random

import pytest

from colaxreedy import fincat
from colaxreedy.axioms import model_family, rebase, verify_model_axioms
from colaxreedy.base import FinSet, FinVect, weakened
from colaxreedy.classical import agreement
from colaxreedy.colax import Icon, compose_icons, constant_unit, identity_icon, lat, truncate, validate_colax
from colaxreedy.examples import monoid_diagram, xor_monoid
from colaxreedy.generate import exhaustive_diagrams, exhaustive_icons, random_diagram, random_icon
from colaxreedy.homotopy import (
    DivisibilityError,
    LiftObstruction,
    classify,
    colimit_colax,
    factor_icon,
    icons_equal,
    in_left,
    in_right,
    lift_icon,
    limit_colax,
    relative_maps,
    require_divisible,
)
from colaxreedy.reedy2 import build_delta_plus, build_PX, drop_cells
from colaxreedy.universal import check_colimit_universal, check_limit_universal

FS, FV = FinSet(), FinVect(2)
D2 = build_delta_plus(2)
P2 = build_PX("ab", 2)


def unit_to_monoid(B):
    """The icon I -> S picking the unit at every degree."""
    F = constant_unit(D2, B)
    G = monoid_diagram(D2, B, *xor_monoid(B))
    e = G.arr((0, 1, ()))
    return Icon(F, G, {0: B.identity(B.unit), 1: e, 2: B.tensor(e, e)})


# ---- relative maps and classification -----------------------------------------

@pytest.mark.parametrize("B", [FS, FV], ids=["finset", "finvect"])
def test_identity_icon_in_every_class(B):
    F = monoid_diagram(D2, B, *xor_monoid(B))
    assert classify(identity_icon(F)).flags == (True, True, True)
    for system in ("acof_fib", "cof_afib", "ofs"):
        assert in_left(identity_icon(F), system) and in_right(identity_icon(F), system)


def test_relative_latching_from_constant_unit():
    s = unit_to_monoid(FS)
    rel = relative_maps(s).at[2]
    # L(G, 2) is the two copies of S glued at the unit; its image in
    # S x S is every pair with a unit coordinate
    e = 0
    image = {e * 2 + x for x in range(2)} | {x * 2 + e for x in range(2)}
    assert rel.latch_rel.src.size == len(image)
    assert set(rel.latch_rel.data) == image
    assert rel.latch_rel.data == lat(s.dst, 2).to_z.data


def test_non_surjective_component_is_not_a_fibration():
    cl = classify(unit_to_monoid(FV))
    assert not cl.is_fib
    assert cl.witnesses["fib"] == "1"


def test_finvect_every_icon_is_a_weak_equivalence():
    _, icons = model_family(D2, FV, (0, 1))
    assert all(classify(s).is_we for s in icons)


def test_finset_weak_equivalences_are_levelwise_bijections():
    _, icons = model_family(P2, FS, (0, 1), level=1)
    for s in icons:
        assert classify(s).is_we == all(FS.is_iso(s.at(z)) for z in s.src.cells1())


# ---- factorization -----------------------------------------------------------

def test_factor_identity():
    F = monoid_diagram(D2, FV, *xor_monoid(FV))
    for system in ("acof_fib", "cof_afib"):
        fa = factor_icon(identity_icon(F), system)
        assert icons_equal(compose_icons(fa.rho, fa.lam), identity_icon(F))
        assert in_left(fa.lam, system) and in_right(fa.rho, system)


@pytest.mark.parametrize("seed", range(6))
def test_factor_random_px_finvect(seed):
    rng = random.Random(seed)
    F = random_diagram(P2, FV, rng, sizes=(0, 1, 2))
    G = random_diagram(P2, FV, rng, sizes=(0, 1, 2))
    s = random_icon(F, G, rng) or random_icon(F, F, rng)
    for system in ("acof_fib", "cof_afib"):
        fa = factor_icon(s, system)
        assert validate_colax(fa.K).ok
        assert icons_equal(compose_icons(fa.rho, fa.lam), s)
        assert in_left(fa.lam, system) and in_right(fa.rho, system)


def test_ofs_factorization_is_image_in_lowest_degree():
    rng = random.Random(3)
    for _ in range(5):
        F = random_diagram(P2, FS, rng, sizes=(1, 2))
        s = random_icon(F, F, rng)
        fa = factor_icon(s, "ofs")
        for z in P2.cells_of_degree(1):
            assert fa.K.obj(z).size == len(set(s.at(z).data))


def test_factor_refuses_non_divisible_groupement():
    C = drop_cells(build_delta_plus(3), [(1, 2, (1,))])
    with pytest.raises(DivisibilityError):
        require_divisible(C)


# ---- lifting -----------------------------------------------------------------

def test_lift_against_identity_left_map():
    s = unit_to_monoid(FV)
    A = s.src
    h = lift_icon(identity_icon(A), s, identity_icon(A), s)
    assert icons_equal(h, identity_icon(A))


def _squares(lam, rho):
    for t in exhaustive_icons(lam.src, rho.src):
        for b in exhaustive_icons(lam.dst, rho.dst):
            if icons_equal(compose_icons(rho, t), compose_icons(b, lam)):
                yield t, b


def test_lifts_for_every_enumerated_square():
    _, icons = model_family(D2, FV, (0, 1))
    flags = {id(s): classify(s).flags for s in icons}
    for lname, rname, lw, rw in (("acof", "fib", (True, True, None), (None, None, True)),
                                 ("cof", "afib", (None, True, None), (True, None, True))):
        lefts = [s for s in icons if all(w is None or f == w for f, w in zip(flags[id(s)], lw))]
        rights = [s for s in icons if all(w is None or f == w for f, w in zip(flags[id(s)], rw))]
        n = 0
        for lam, rho in itertools.product(lefts, rights):
            for t, b in _squares(lam, rho):
                h = lift_icon(lam, rho, t, b)
                assert icons_equal(compose_icons(h, lam), t) and icons_equal(compose_icons(rho, h), b)
                n += 1
        assert n > 0


def test_obstruction_when_right_map_is_not_a_fibration():
    _, icons = model_family(D2, FV, (0, 1))
    flags = {id(s): classify(s).flags for s in icons}
    lefts = [s for s in icons if flags[id(s)][1]]
    rights = [s for s in icons if not flags[id(s)][2]]
    seen = []
    for lam, rho in itertools.product(lefts, rights):
        for t, b in _squares(lam, rho):
            try:
                lift_icon(lam, rho, t, b)
            except LiftObstruction as e:
                seen.append(e)
                # brute force agrees that no diagonal exists
                assert not any(icons_equal(compose_icons(h, lam), t) and icons_equal(compose_icons(rho, h), b)
                               for h in exhaustive_icons(lam.dst, rho.src))
    assert seen
    assert {(e.z, e.degree) for e in seen} == {(2, 2)}


# ---- limits and colimits -------------------------------------------------------

def test_point_limit_is_the_diagram():
    F = monoid_diagram(D2, FS, *xor_monoid(FS))
    E = limit_colax(fincat.point_shape(), {"*": F}, {}).diagram
    assert all(E.obj(z) == F.obj(z) for z in F.cells1())


def test_empty_limit_and_colimit():
    J = fincat.discrete_shape(0)
    lim = limit_colax(J, {}, {}, C=D2, base=FV)
    col = colimit_colax(J, {}, {}, C=D2, base=FV)
    assert validate_colax(lim.diagram).ok and validate_colax(col.diagram).ok
    assert all(lim.diagram.obj(z).size == 0 for z in (1, 2))


def test_binary_coproduct_is_amalgamated_over_the_unit():
    # icon components at units are identities, so both legs must respect
    # the unit maps I -> X(1), I -> Y(1): the coproduct is X(1) +_I Y(1)
    rng = random.Random(4)
    for B in (FS, FV):
        X = random_diagram(D2, B, rng, sizes=(1, 2))
        Y = random_diagram(D2, B, rng, sizes=(1, 2))
        E = colimit_colax(fincat.discrete_shape(2), {"j0": X, "j1": Y}, {}).diagram
        assert E.obj(1) == B.pushout(X.arr((0, 1, ())), Y.arr((0, 1, ()))).apex
        assert validate_colax(E).ok


def _pair(C, B, seed, sizes):
    rng = random.Random(seed)
    return random_diagram(C, B, rng, sizes=sizes, name="X"), random_diagram(C, B, rng, sizes=sizes, name="Y")


@pytest.mark.parametrize("C,B", [(D2, FV), (P2, FS)], ids=["delta+/finvect", "px/finset"])
def test_pair_limit_universal(C, B):
    X, Y = _pair(C, B, 1, (0, 1))
    J = fincat.discrete_shape(2)
    objs = {"j0": X, "j1": Y}
    res = limit_colax(J, objs, {})
    tests = list(exhaustive_diagrams(C, B, (0, 1), limit=6))
    rep = check_limit_universal(J, objs, {}, res, tests)
    assert rep.ok and rep.info["cones"] > 0


def test_cospan_limit_universal():
    rng = random.Random(2)
    X = random_diagram(D2, FV, rng, sizes=(1,))
    s = random_icon(X, X, rng)
    J = fincat.cospan_shape()
    objs = {"j0": X, "j1": X, "j2": X}
    arrs = {"u": s, "v": identity_icon(X)}
    res = limit_colax(J, objs, arrs)
    rep = check_limit_universal(J, objs, arrs, res, list(exhaustive_diagrams(D2, FV, (0, 1), limit=4)))
    assert rep.ok


@pytest.mark.parametrize("C,B", [(D2, FV), (P2, FS)], ids=["delta+/finvect", "px/finset"])
def test_pair_colimit_universal(C, B):
    X, Y = _pair(C, B, 2, (0, 1))
    J = fincat.discrete_shape(2)
    objs = {"j0": X, "j1": Y}
    res = colimit_colax(J, objs, {})
    tests = list(exhaustive_diagrams(C, B, (1, 2), limit=6))
    rep = check_colimit_universal(J, objs, {}, res, tests)
    assert rep.ok and rep.info["cones"] > 0


def test_limit_commutes_with_truncation():
    X, Y = _pair(D2, FV, 3, (1,))
    J = fincat.discrete_shape(2)
    E = limit_colax(J, {"j0": X, "j1": Y}, {}).diagram
    low = limit_colax(J, {"j0": truncate(X, 1), "j1": truncate(Y, 1)}, {}).diagram
    assert all(truncate(E, 1).obj(z) == low.obj(z) for z in low.cells1())
    assert all(truncate(E, 1).arr(a) == low.arr(a) for a in low.cells2())


def test_wrong_mediator_is_caught():
    X, Y = _pair(D2, FV, 1, (0, 1))
    J = fincat.discrete_shape(2)
    objs = {"j0": X, "j1": Y}
    res = limit_colax(J, objs, {})
    res.cone["j0"] = identity_icon(res.diagram) if res.diagram is X else res.cone["j1"]
    rep = check_limit_universal(J, objs, {}, res, list(exhaustive_diagrams(D2, FV, (0, 1), limit=4)))
    assert not rep.ok


# ---- model axioms and the classical case -------------------------------------------

def test_model_axioms_small_family():
    _, icons = model_family(D2, FV, (0, 1))
    rep = verify_model_axioms(icons)
    assert rep.ok, rep.violations[:3]
    assert rep.info["squares"] > 0


def test_weakened_fibrations_break_lifting():
    _, icons = model_family(D2, FV, (0, 1))
    W = weakened(FV, fib=lambda f: True)
    rep = verify_model_axioms(rebase(icons, W), square_pairs=200)
    assert not rep.ok
    rule, w = next((r, w) for r, w in rep.violations if r.startswith("lifting"))
    assert w["lift_exists"] is False and w["z"] == "2"


def test_walking_arrow_agrees_with_classical():
    rep = agreement(fincat.walking_arrow(), FS, (0, 1, 2), (0, 1))
    assert rep.ok and rep.info["nats"] > 0
