import itertools

import pytest

from colaxreedy import fincat
from colaxreedy.reedy2 import (
    GroupementError,
    TruncationError,
    build_delta_plus,
    build_from_reedy1,
    build_PX,
    check_direct_divisibility,
    drop_cells,
    joyal_dual,
    monotone_maps,
    reclassify,
    validate_simple_lr,
)


def brute_lifts(C, alpha, s2, t2):
    """Every pair of direct (or identity) 2-cells into s2, t2 whose
    horizontal composite is alpha, found by scanning all pairs."""
    into_s = [a for a in C.in2[s2] if C.kind2(a) in ("direct", "identity")]
    into_t = [b for b in C.in2[t2] if C.kind2(b) in ("direct", "identity")]
    return [(a, b) for a in into_s for b in into_t if C.hcomp2_table.get((a, b)) == alpha]


def divisible_by_brute_force(C):
    for alpha in C.cells2:
        if C.kind2(alpha) not in ("direct", "identity"):
            continue
        for s2, t2 in C.splits[C.dst2(alpha)]:
            if len(brute_lifts(C, alpha, s2, t2)) != 1:
                return False, (alpha, s2, t2)
    return True, None


# ---- Delta+ ----------------------------------------------------------------

def test_unit_map_present_at_bound_1():
    C = build_delta_plus(1)
    assert C.kind2((0, 1, ())) == "direct"
    assert sorted(a for a in C.cells2 if not C.is_identity2(a)) == [(0, 1, ())]


def test_monotone_counts():
    assert monotone_maps(2, 1) == [(0, 0)]
    assert len(monotone_maps(2, 2)) == 3
    # C(n + k - 1, n) monotone maps n -> k
    for n, k in itertools.product(range(5), range(1, 5)):
        assert len(monotone_maps(n, k)) == len(list(itertools.combinations_with_replacement(range(k), n)))


def test_reedy_factorization_of_constant_map():
    C = build_delta_plus(3)
    inv, dire = C.reedy_factorize((2, 2, (1, 1)))
    assert inv == (2, 1, (0, 0)) and dire == (1, 2, (1,))


def test_reedy_factorization_of_pure_maps():
    C = build_delta_plus(3)
    d = (1, 3, (2,))
    s = (3, 1, (0, 0, 0))
    assert C.reedy_factorize(d) == (C.identity(1), d)
    assert C.reedy_factorize(s) == (s, C.identity(1))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_delta_plus_is_simple_locally_reedy(m):
    assert validate_simple_lr(build_delta_plus(m)).ok


def test_reclassified_surjection_is_caught():
    C = build_delta_plus(3)
    bad = reclassify(C, (2, 1, (0, 0)), "direct")
    rep = validate_simple_lr(bad)
    assert not rep.ok
    assert any((2, 1, (0, 0)) in _flatten(w) for _, w in rep.violations)


def _flatten(w):
    if isinstance(w, (tuple, list)):
        out = [w]
        for x in w:
            out.extend(_flatten(x))
        return out
    return [w]


@pytest.mark.parametrize("m", [2, 3, 4])
def test_delta_plus_divisible(m):
    C = build_delta_plus(m)
    assert check_direct_divisibility(C).ok
    assert divisible_by_brute_force(C) == (True, None)


def test_divisibility_mutation_has_witness():
    C = drop_cells(build_delta_plus(3), [(1, 2, (1,))])
    rep = check_direct_divisibility(C)
    assert not rep.ok
    rule, w = rep.first()
    assert rule == "lift-count" and w["lifts"] == []
    ok, site = divisible_by_brute_force(C)
    assert not ok


def test_truncation_error_outside_bound():
    C = build_delta_plus(2)
    with pytest.raises(TruncationError):
        C.hcomp_strict(2, 1)
    assert C.hcomp(2, 1) is None


def test_unknown_names():
    C = build_delta_plus(2)
    with pytest.raises(GroupementError):
        C.parse1("7")
    with pytest.raises(GroupementError):
        C.parse2("2->1:[1,1]")
    assert C.parse2("id(2)") == C.identity(2)
    assert C.parse2(" 2 -> 1 : [0, 0] ") == (2, 1, (0, 0))


# ---- P_X -------------------------------------------------------------------

def test_px_collapse_cell_over_surjection():
    C = build_PX("xyz", 2)
    a = (("x", "y", "z"), ("x", "z"), (0, 0))
    assert a in C.cells2 and C.kind2(a) == "inverse"


def test_px_unit_cell_needs_equal_endpoints():
    C = build_PX("ab", 2)
    assert (("a",), ("a", "a"), ()) in C.cells2
    assert not any(C.src2(a) == ("a",) and C.dst2(a) == ("a", "b") for a in C.cells2)


def test_px_hom_count():
    C = build_PX("ab", 2)
    assert sorted(C.hom1[("a", "b")]) == [("a", "a", "b"), ("a", "b"), ("a", "b", "b")]


@pytest.mark.parametrize("X", ["ab", "abc"])
def test_px_is_simple_and_divisible(X):
    C = build_PX(X, 3 if len(X) == 2 else 2)
    assert validate_simple_lr(C).ok
    assert check_direct_divisibility(C).ok
    assert divisible_by_brute_force(C)[0]


def test_px_targets_follow_joyal_dual():
    C = build_PX("ab", 3)
    for c, d, f in C.cells2:
        psi = joyal_dual(f, len(d) - 1)
        assert d == tuple(c[j] for j in psi)


# ---- Reedy 1-categories ------------------------------------------------------

@pytest.mark.parametrize("B", [fincat.walking_arrow, fincat.walking_span, fincat.walking_retraction,
                               fincat.delta_le1, fincat.single_object])
def test_reedy1_categories_and_their_groupements(B):
    R = B()
    assert R.validate() == []
    C = build_from_reedy1(R)
    assert validate_simple_lr(C).ok
    assert check_direct_divisibility(C).ok


def test_single_object_hom_is_a_singleton():
    C = build_from_reedy1(fincat.single_object())
    assert C.hom1[("0", "1")] == ["a"]


def test_walking_arrow_has_no_decompositions():
    C = build_from_reedy1(fincat.walking_arrow())
    assert C.decompositions("c") == [("c",)]
