import itertools

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from colaxreedy import linalg
from colaxreedy.base import BaseError, EndpointError, FinSet, FinVect, LiftPreconditionError, make_base, weakened
from colaxreedy.kernels import BACKEND
from colaxreedy import _kernels_py

FS = FinSet()
FV = FinVect(2)


def fs(src, dst, table):
    return FS.arrow(FS.obj(src), FS.obj(dst), table)


def fv(src, dst, rows):
    return FV.arrow(FV.obj(src), FV.obj(dst), rows)


# ---- composition and tensor ----------------------------------------------

def test_finset_composite_is_identity_on_a_point():
    f, g = fs(1, 2, [1]), fs(2, 1, [0, 0])
    assert FS.comp(g, f) == FS.identity(FS.obj(1))


def test_finvect_composite_vanishes_mod_2():
    f, g = fv(1, 2, [[1], [1]]), fv(2, 1, [[1, 1]])
    assert FV.comp(g, f).data == ((0,),)


def test_compose_rejects_mismatched_ends():
    with pytest.raises(EndpointError):
        FS.comp(fs(2, 1, [0, 0]), fs(2, 3, [0, 1]))


def test_kronecker_by_hand():
    assert FV.tensor(fv(2, 1, [[1, 0]]), fv(1, 2, [[1], [1]])).data == ((1, 0), (1, 0))


def test_finset_pair_index_row_major():
    a, b = FS.obj(2), FS.obj(3)
    assert FS.tensor_obj(a, b).size == 6
    assert FS.pair_index(a, b, 1, 2) == 5


def test_tensor_of_identities():
    for B in (FS, FV):
        a, b = B.obj(2), B.obj(3)
        assert B.tensor(B.identity(a), B.identity(b)) == B.identity(B.tensor_obj(a, b))


def test_bad_tables_rejected():
    with pytest.raises(BaseError):
        fs(2, 1, [0, 1])
    with pytest.raises(BaseError):
        fv(2, 1, [[1]])
    with pytest.raises(BaseError):
        FinVect(4)
    with pytest.raises(BaseError):
        make_base("groups")


# ---- limits and colimits ---------------------------------------------------

def test_empty_limits_and_colimits():
    assert FS.limit([], []).apex.size == 1
    assert FV.limit([], []).apex.size == 0
    assert FS.colimit([], []).apex.size == 0
    assert FV.colimit([], []).apex.size == 0


def test_pullback_along_identity():
    f = fs(2, 1, [0, 0])
    assert FS.pullback(f, FS.identity(FS.obj(1))).apex.size == 2


def test_pushout_glues_one_point():
    f = fs(1, 2, [0])
    assert FS.pushout(f, f).apex.size == 3


def test_equalizer_and_coequalizer_of_equal_maps():
    f = fs(3, 2, [0, 1, 1])
    lim = FS.limit([f.src, f.dst], [(0, 1, f), (0, 1, f)])
    assert lim.apex.size == 3 and FS.is_iso(lim.legs[0])
    col = FS.colimit([f.src, f.dst], [(0, 1, f), (0, 1, f)])
    assert col.apex.size == 2 and FS.is_iso(col.legs[1])


def _brute_pullback_size(f, g):
    return sum(1 for x in range(f.src.size) for y in range(g.src.size) if f.data[x] == g.data[y])


@given(st.integers(0, 3), st.integers(0, 3), st.integers(1, 3), st.data())
@settings(max_examples=60, deadline=None)
def test_finset_pullback_matches_enumeration(a, b, c, data):
    f = fs(a, c, data.draw(st.lists(st.integers(0, c - 1), min_size=a, max_size=a)))
    g = fs(b, c, data.draw(st.lists(st.integers(0, c - 1), min_size=b, max_size=b)))
    cone = FS.pullback(f, g)
    assert cone.apex.size == _brute_pullback_size(f, g)
    assert FS.comp(f, cone.legs[0]) == FS.comp(g, cone.legs[1])


def _matrices(n, m, p=2):
    return st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=m, max_size=m)


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.data())
@settings(max_examples=60, deadline=None)
def test_finvect_pullback_dimension(a, b, c, data):
    f = fv(a, c, data.draw(_matrices(a, c)))
    g = fv(b, c, data.draw(_matrices(b, c)))
    cone = FV.pullback(f, g)
    # the pullback is the kernel of [f, -g] : A + B -> C
    block = tuple(tuple(f.data[r]) + tuple(g.data[r]) for r in range(c))
    assert cone.apex.size == a + b - linalg.rank(block, a + b, 2)
    assert FV.comp(f, cone.legs[0]) == FV.comp(g, cone.legs[1])


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.data())
@settings(max_examples=60, deadline=None)
def test_finvect_pushout_dimension(a, b, c, data):
    f = fv(c, a, data.draw(_matrices(c, a)))
    g = fv(c, b, data.draw(_matrices(c, b)))
    cone = FV.pushout(f, g)
    stacked = tuple(f.data) + tuple(g.data)
    assert cone.apex.size == a + b - linalg.rank(stacked, c, 2)
    assert FV.comp(cone.legs[0], f) == FV.comp(cone.legs[1], g)


def test_limit_mediator_is_unique_in_finset():
    f = fs(2, 2, [0, 1])
    g = fs(3, 2, [1, 0, 1])
    cone = FS.pullback(f, g)
    for x, y in itertools.product(FS.hom(FS.obj(1), f.src), FS.hom(FS.obj(1), g.src)):
        if FS.comp(f, x) != FS.comp(g, y):
            continue
        m = FS.limit_mediator(cone, [x, y, FS.comp(f, x)], source=FS.obj(1))
        hits = [h for h in FS.hom(FS.obj(1), cone.apex)
                if FS.comp(cone.legs[0], h) == x and FS.comp(cone.legs[1], h) == y]
        assert hits == [m]


# ---- factorization and lifting ---------------------------------------------

def test_finvect_graph_factorization():
    f = fv(2, 1, [[1, 1]])
    i, p = FV.factorize(f, "cof_afib")
    assert i.dst.size == 3 and FV.is_mono(i) and FV.is_epi(p)
    assert FV.comp(p, i) == f


def test_finset_image_factorization():
    f = fs(2, 2, [1, 1])
    e, m = FS.factorize(f, "ofs")
    assert e.data == (0, 0) and m.data == (1,)


def test_identity_factors_trivially():
    for B in (FS, FV):
        a = B.obj(2)
        for system in ("acof_fib", "cof_afib", "ofs"):
            i, p = B.factorize(B.identity(a), system)
            assert B.comp(p, i) == B.identity(a)


@pytest.mark.parametrize("B", [FS, FV], ids=["finset", "finvect"])
@pytest.mark.parametrize("system", ["acof_fib", "cof_afib", "ofs"])
def test_factorizations_land_in_classes(B, system):
    S = B.model.system(system)
    for n, m in itertools.product(range(3), repeat=2):
        for f in B.hom(B.obj(n), B.obj(m)):
            i, p = S.factor(f)
            assert B.comp(p, i) == f and S.left(i) and S.right(p)


def test_lift_through_iso():
    i = fv(2, 2, [[0, 1], [1, 0]])
    top = fv(2, 1, [[1, 0]])
    p = FV.identity(FV.obj(1))
    h = FV.find_lift(i, p, top, FV.comp(top, FV.inverse(i)))
    assert h == FV.comp(top, FV.inverse(i))


def test_mono_epi_lifting_exhaustive_dim_2():
    # projectivity of vector spaces: every mono/epi square has a diagonal
    for a, b, x, y in itertools.product(range(3), repeat=4):
        if a > b or y > x:
            continue
        monos = [i for i in FV.hom(FV.obj(a), FV.obj(b)) if FV.is_mono(i)]
        epis = [p for p in FV.hom(FV.obj(x), FV.obj(y)) if FV.is_epi(p)]
        for i, p in itertools.product(monos[:3], epis[:3]):
            for top in FV.hom(i.src, p.src):
                for bottom in FV.hom(i.dst, p.dst):
                    if FV.comp(p, top) != FV.comp(bottom, i):
                        continue
                    h = FV.find_lift(i, p, top, bottom)
                    assert h is not None
                    assert FV.comp(h, i) == top and FV.comp(p, h) == bottom


def test_finset_no_lift_when_bottom_misses_image():
    # i: empty -> 1, p: 1 -> 2 not surjective, bottom picks the missed point
    p = fs(1, 2, [0])
    assert FS.find_lift(fs(0, 1, []), p, fs(0, 1, []), fs(1, 2, [1])) is None
    assert FS.find_lift(fs(0, 1, []), p, fs(0, 1, []), fs(1, 2, [0])).data == (0,)


def test_non_commuting_square_rejected():
    with pytest.raises(LiftPreconditionError):
        FS.find_lift(fs(1, 1, [0]), fs(2, 2, [0, 1]), fs(1, 2, [0]), fs(1, 2, [1]))


def test_weakened_base_keeps_operations():
    W = weakened(FV, fib=lambda f: True)
    f = fv(2, 1, [[0, 0]])
    assert W.model.fib(f) and not FV.model.fib(f)
    assert W.comp(f, W.identity(f.src)) == f


def test_finvect_we_is_everything_finset_we_is_bijection():
    assert all(FV.model.we(f) for f in FV.hom(FV.obj(1), FV.obj(2)))
    assert [FS.model.we(f) for f in FS.hom(FS.obj(2), FS.obj(2))] == [False, True, True, False]


# ---- kernels ---------------------------------------------------------------

@given(st.integers(1, 6), st.integers(1, 6), st.sampled_from([2, 3, 5]), st.data())
@settings(max_examples=80, deadline=None)
def test_rref_backends_agree(n, m, p, data):
    rows = data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=m, max_size=m), min_size=n, max_size=n))
    from colaxreedy import kernels
    assert kernels.rref_mod_p(rows, m, p) == _kernels_py.rref_mod_p(rows, m, p)


def test_compiled_backend_selected():
    assert BACKEND in ("cython", "python")
