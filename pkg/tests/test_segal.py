import itertools
import random

import pytest

from colaxreedy.axioms import model_family, rebase
from colaxreedy.base import FinSet, FinVect, weakened
from colaxreedy.colax import identity_icon
from colaxreedy.examples import category_diagram
from colaxreedy.generate import random_diagram, random_icon
from colaxreedy.homotopy import classify
from colaxreedy.reedy2 import build_PX, monotone_maps
from colaxreedy.runner import diagrams_equal
from colaxreedy.segal import (
    SegalError,
    build_delta_X,
    check_delta_X,
    check_joyal,
    check_presheaf_map,
    check_segal_conditions,
    from_presheaf,
    iso_J,
    joyal_T,
    omega_maps,
    presheaf_reedy,
    presheaf_verdicts,
    to_presheaf,
    transport_icon,
    validate_presheaf,
)

FS = FinSet()
P2, P3 = build_PX("ab", 2), build_PX("ab", 3)


def cyclic_nerve(C, n=2):
    X = C.objects
    homs = {(x, y): n for x in X for y in X}
    comp = {(x, y, z): [(f + g) % n for f in range(n) for g in range(n)] for x in X for y in X for z in X}
    return category_diagram(C, FS, homs, comp, {x: 0 for x in X})


# ---- Joyal duality -------------------------------------------------------------

def test_generator_images():
    T = joyal_T(2).forward
    assert T[(2, 1, (0, 0))] == (0, 2)  # mu: {0,1} -> {0,1,2}, 0 -> 0, 1 -> 2
    assert T[(0, 1, ())] == (0, 0)  # eta: constant {0,1} -> {0}


def test_face_and_degeneracy_images_by_hand():
    T = joyal_T(3).forward
    # the coface 1 -> 2 missing 1 becomes the codegeneracy {0,1,2} -> {0,1} hitting 1 twice
    assert T[(1, 2, (0,))] == (0, 1, 1)
    assert T[(1, 2, (1,))] == (0, 0, 1)
    # the codegeneracy 2 -> 1 becomes the inner coface {0,1} -> {0,1,2}
    assert T[(3, 2, (0, 0, 1))] == (0, 2, 3)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_joyal_is_an_isomorphism(m):
    rep = check_joyal(joyal_T(m))
    assert rep.ok, rep.violations[:3]


def test_omega_hom_counts():
    # |Omega(k, n)| = C(n + k - 1, k - 1) = |Delta+(n, k)|
    for n, k in itertools.product(range(5), range(1, 5)):
        assert len(omega_maps(k, n)) == len(monotone_maps(n, k))


def test_corrupted_table_is_caught():
    J = joyal_T(2)
    J.forward[(2, 1, (0, 0))] = (0, 1)
    rep = check_joyal(J)
    assert not rep.ok
    assert {r for r, _ in rep.violations} >= {"closed-formula", "bijective"}


# ---- Delta_X and J ---------------------------------------------------------------

def test_delta_X_sizes():
    D = build_delta_X("ab", 1)
    assert len(D.objects) == 6
    assert check_delta_X(D).ok


def test_delta_X_over_a_point_is_delta():
    D = build_delta_X("a", 3)
    assert check_delta_X(D).ok
    assert len(D.objects) == 4
    for s, t in itertools.product(D.objects, repeat=2):
        assert len(D.hom(s, t)) == len(monotone_maps(len(s), len(t)))


@pytest.mark.parametrize("x,y", [("a", "a"), ("a", "b")])
def test_iso_J(x, y):
    _, rep = iso_J(P3, x, y)
    assert rep.ok, rep.violations[:3]


# ---- presheaf bridge ---------------------------------------------------------------

def test_nerve_round_trip_at_n_max_3():
    N = cyclic_nerve(P3)
    P = to_presheaf(N)
    assert len(P.D.objects) == 30
    assert validate_presheaf(P).ok
    assert diagrams_equal(from_presheaf(P, P3), N)


@pytest.mark.parametrize("seed", range(4))
def test_random_round_trip(seed):
    F = random_diagram(P2, FS, random.Random(seed), sizes=(0, 1, 2))
    P = to_presheaf(F)
    assert validate_presheaf(P).ok
    assert diagrams_equal(from_presheaf(P, P2), F)


def test_broken_action_fails_functoriality():
    P = to_presheaf(cyclic_nerve(P2))
    mor = next(m for m in P.D.morphisms if m[0] == (0, 0) and m[2] == ("a", "b"))
    a = P.act(mor)
    P.action[mor] = FS.arrow(a.src, a.dst, [1 - v for v in a.data])
    rep = validate_presheaf(P)
    assert not rep.ok and rep.first()[0] == "functorial"


def test_finvect_is_not_cartesian():
    with pytest.raises(SegalError):
        to_presheaf(random_diagram(P2, FinVect(2), random.Random(0), sizes=(0, 1)))


def test_icons_transport_to_natural_maps():
    rng = random.Random(3)
    for _ in range(4):
        F = random_diagram(P2, FS, rng, sizes=(1, 2))
        s = random_icon(F, F, rng)
        assert check_presheaf_map(*transport_icon(s)).ok


# ---- Segal conditions --------------------------------------------------------------

def test_nerve_satisfies_segal():
    rep = check_segal_conditions(cyclic_nerve(P3))
    assert rep.ok and len(rep.info["chains"]) == 8 + 16


def test_segal_verdicts_respect_cardinality():
    # in finite sets a bijection F(x0..xn) -> F(x0x1) x ... needs matching sizes
    failures = 0
    for seed in range(8):
        F = random_diagram(P2, FS, random.Random(seed), sizes=(0, 1, 2))
        rep = check_segal_conditions(F)
        for c, ok in rep.info["chains"].items():
            z = P2.parse1(c)
            edges = F.obj(z[:2]).size * F.obj(z[1:]).size
            if F.obj(z).size != edges:
                assert ok is False
        failures += not rep.ok
    assert failures > 0


def test_finvect_segal_is_vacuous():
    F = random_diagram(P2, FinVect(2), random.Random(1), sizes=(0, 1, 2))
    assert check_segal_conditions(F).ok


# ---- transported Reedy verdicts ------------------------------------------------------

def test_presheaf_verdicts_agree_with_colax_classification():
    D = build_delta_X("ab", 2)
    R = presheaf_reedy(D)
    _, icons = model_family(P2, FS, (0, 1, 2), diagram_limit=120, sample=4, base_sizes=(0, 1))
    # injective cofibrations and surjective fibrations make all three verdicts vary
    W = weakened(FS, cof=FS.is_mono, fib=FS.is_epi)
    seen = set()
    for s in icons + rebase(icons, W):
        flags = classify(s).flags
        assert tuple(presheaf_verdicts(s, R, D)) == flags
        seen.add(flags)
    assert len(seen) >= 3


def test_identity_icon_is_classically_trivial():
    F = cyclic_nerve(P2)
    assert tuple(presheaf_verdicts(identity_icon(F))) == (True, True, True)
