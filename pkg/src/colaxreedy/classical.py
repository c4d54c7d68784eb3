"""Classical Reedy theory for diagrams on a finite Reedy 1-category.

Written without the colax machinery so it can serve as an oracle for the
groupement built from a Reedy 1-category.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .base import BaseArrow, BaseCategory
from .fincat import ReedyCat


class ClassicalError(Exception):
    pass


@dataclass
class Diagram:
    """A functor R -> base: values on objects and on every arrow."""

    R: ReedyCat
    base: BaseCategory
    obj: dict
    arr: dict

    def map(self, a) -> BaseArrow:
        if a in self.arr:
            return self.arr[a]
        c = self.R.cat
        if c.is_identity(a):
            return self.base.identity(self.obj[c.src(a)])
        raise ClassicalError(f"no value at arrow {a!r}")


@dataclass
class NatTrans:
    src: Diagram
    dst: Diagram
    comp: dict


def check_functor(D: Diagram) -> list:
    bad = []
    c, B = D.R.cat, D.base
    for a in c.arrows:
        f = D.map(a)
        if f.src != D.obj[c.src(a)] or f.dst != D.obj[c.dst(a)]:
            bad.append(("endpoints", a))
    for (g, f), h in c.comp_table.items():
        if B.comp(D.map(g), D.map(f)) != D.map(h):
            bad.append(("composition", (g, f)))
    return bad


def check_nat(t: NatTrans) -> list:
    bad = []
    c, B = t.src.R.cat, t.src.base
    for a in c.arrows:
        s, d = c.src(a), c.dst(a)
        if B.comp(t.comp[d], t.src.map(a)) != B.comp(t.dst.map(a), t.comp[s]):
            bad.append(("naturality", a))
    return bad


def _is_direct(R, a):
    return a in R.direct


def _is_inverse(R, a):
    return a in R.inverse


def _latching_shape(R: ReedyCat, c):
    """Objects: non-identity direct arrows into c.  Edges: (i, j, gamma)
    for non-identity direct gamma with alpha_j o gamma = alpha_i."""
    cat = R.cat
    objs = [a for a in cat.into(c) if _is_direct(R, a)]
    edges = []
    for i, a in enumerate(objs):
        for j, b in enumerate(objs):
            for g in cat.hom(cat.src(a), cat.src(b)):
                if _is_direct(R, g) and cat.compose(b, g) == a:
                    edges.append((i, j, g))
    return objs, edges


def _matching_shape(R: ReedyCat, c):
    """Objects: non-identity inverse arrows out of c.  Edges: (i, j, gamma)
    for non-identity inverse gamma with gamma o beta_i = beta_j."""
    cat = R.cat
    objs = [b for b in cat.out_of(c) if _is_inverse(R, b)]
    edges = []
    for i, a in enumerate(objs):
        for j, b in enumerate(objs):
            for g in cat.hom(cat.dst(a), cat.dst(b)):
                if _is_inverse(R, g) and cat.compose(g, a) == b:
                    edges.append((i, j, g))
    return objs, edges


@dataclass
class Latching:
    objects: list
    cocone: object
    to_c: BaseArrow | None


@dataclass
class Matching:
    objects: list
    cone: object
    from_c: BaseArrow | None


def latching(D: Diagram, c) -> Latching:
    B, cat = D.base, D.R.cat
    objs, edges = _latching_shape(D.R, c)
    cocone = B.colimit([D.obj[cat.src(a)] for a in objs], [(i, j, D.map(g)) for i, j, g in edges])
    to_c = None
    if c in D.obj:
        to_c = B.colimit_mediator(cocone, [D.map(a) for a in objs], target=D.obj[c])
    return Latching(objs, cocone, to_c)


def matching(D: Diagram, c) -> Matching:
    B, cat = D.base, D.R.cat
    objs, edges = _matching_shape(D.R, c)
    cone = B.limit([D.obj[cat.dst(b)] for b in objs], [(i, j, D.map(g)) for i, j, g in edges])
    from_c = None
    if c in D.obj:
        from_c = B.limit_mediator(cone, [D.map(b) for b in objs], source=D.obj[c])
    return Matching(objs, cone, from_c)


def _lat_map(t: NatTrans, c, LF: Latching, LG: Latching):
    B, cat = t.src.base, t.src.R.cat
    legs = [B.comp(LG.cocone.legs[k], t.comp[cat.src(a)]) for k, a in enumerate(LF.objects)]
    return B.colimit_mediator(LF.cocone, legs, target=LG.cocone.apex)


def _mat_map(t: NatTrans, c, MF: Matching, MG: Matching):
    B, cat = t.src.base, t.src.R.cat
    legs = [B.comp(t.comp[cat.dst(b)], MF.cone.legs[k]) for k, b in enumerate(MF.objects)]
    return B.limit_mediator(MG.cone, legs, source=MF.cone.apex)


def order(R: ReedyCat):
    return sorted(R.cat.objects, key=lambda o: (R.degree[o], R.cat.objects.index(o)))


def relative(t: NatTrans, c):
    """(relative latching map, relative matching map) at c."""
    F, G = t.src, t.dst
    B = F.base
    LF, LG = latching(F, c), latching(G, c)
    po = B.pushout(LF.to_c, _lat_map(t, c, LF, LG))
    lrel = B.colimit_mediator(po, [t.comp[c], LG.to_c, B.comp(t.comp[c], LF.to_c)], target=G.obj[c])
    MF, MG = matching(F, c), matching(G, c)
    pb = B.pullback(MG.from_c, _mat_map(t, c, MF, MG))
    mrel = B.limit_mediator(pb, [t.comp[c], MF.from_c, B.comp(MG.from_c, t.comp[c])], source=F.obj[c])
    return lrel, mrel


def classify(t: NatTrans):
    """(we, cof, fib) for the Reedy model structure."""
    m = t.src.base.model
    we = all(m.we(t.comp[c]) for c in t.src.R.cat.objects)
    cof = fib = True
    for c in order(t.src.R):
        lrel, mrel = relative(t, c)
        cof = cof and m.cof(lrel)
        fib = fib and m.fib(mrel)
    return we, cof, fib


def membership(t: NatTrans, system: str):
    """(relative latching maps all left, relative matching maps all right)."""
    fs = t.src.base.model.system(system)
    left = right = True
    for c in order(t.src.R):
        lrel, mrel = relative(t, c)
        left = left and fs.left(lrel)
        right = right and fs.right(mrel)
    return left, right


def factor(t: NatTrans, system: str):
    """Reedy factorization t = p o i through a new diagram K."""
    F, G = t.src, t.dst
    R, B = F.R, F.base
    cat = R.cat
    fs = B.model.system(system)
    kobj, karr, icomp, pcomp = {}, {}, {}, {}
    for c in order(R):
        K = Diagram(R, B, dict(kobj), dict(karr))
        i_part = NatTrans(F, K, icomp)
        p_part = NatTrans(K, G, pcomp)
        LF, LK, LG = latching(F, c), latching(K, c), latching(G, c)
        MF, MK, MG = matching(F, c), matching(K, c), matching(G, c)
        tc = t.comp[c]
        P = B.pushout(LF.to_c, _lat_map(i_part, c, LF, LK))
        Q = B.pullback(MG.from_c, _mat_map(p_part, c, MK, MG))
        a = B.limit_mediator(Q, [tc, B.comp(_mat_map(i_part, c, MF, MK), MF.from_c), B.comp(MG.from_c, tc)],
                             source=F.obj[c])
        lk = B.comp(LG.to_c, _lat_map(p_part, c, LK, LG))
        ik = _classical_iz(K, c, LK, MK)
        b = B.limit_mediator(Q, [lk, ik, B.comp(MG.from_c, lk)], source=LK.cocone.apex)
        h = B.colimit_mediator(P, [a, b, B.comp(a, LF.to_c)], target=Q.apex)
        i, p = fs.factor(h)
        kobj[c] = i.dst
        icomp[c] = B.comp(i, P.legs[0])
        pcomp[c] = B.comp(Q.legs[0], p)
        to_c = B.comp(i, P.legs[1])
        from_c = B.comp(Q.legs[1], p)
        for k, al in enumerate(LK.objects):
            karr[al] = B.comp(to_c, LK.cocone.legs[k])
        for k, be in enumerate(MK.objects):
            karr[be] = B.comp(MK.cone.legs[k], from_c)
        for u in cat.arrows:
            if u in karr or cat.is_identity(u):
                continue
            ends = (cat.src(u), cat.dst(u))
            if c not in ends or any(e not in kobj for e in ends):
                continue
            (inv, dr), = R.factor(u)
            parts = [B.identity(kobj[cat.src(x)]) if cat.is_identity(x) else karr[x] for x in (dr, inv)]
            karr[u] = B.comp(*parts)
    K = Diagram(R, B, kobj, karr)
    return NatTrans(F, K, icomp), K, NatTrans(K, G, pcomp)


def _classical_iz(K: Diagram, c, LK: Latching, MK: Matching):
    """L(K, c) -> M(K, c) from the composites beta o alpha."""
    B, cat = K.base, K.R.cat
    legs = []
    for al in LK.objects:
        comps = [K.map(cat.compose(be, al)) for be in MK.objects]
        legs.append(B.limit_mediator(MK.cone, comps, source=K.obj[cat.src(al)]))
    return B.colimit_mediator(LK.cocone, legs, target=MK.cone.apex)


def generators(R: ReedyCat):
    """Non-identity direct and inverse arrows; every arrow is a composite
    of at most one of each."""
    cat = R.cat
    return [a for a in cat.arrows if not cat.is_identity(a) and (a in R.direct or a in R.inverse)]


def enumerate_diagrams(R: ReedyCat, B: BaseCategory, sizes):
    """All functors R -> base with object values of the given sizes."""
    cat = R.cat
    gens = generators(R)
    for szs in itertools.product(sizes, repeat=len(cat.objects)):
        obj = {o: B.obj(n) for o, n in zip(cat.objects, szs)}
        homs = [list(B.hom(obj[cat.src(g)], obj[cat.dst(g)])) for g in gens]
        for pick in itertools.product(*homs):
            arr = dict(zip(gens, pick))
            if _complete(R, B, obj, arr):
                D = Diagram(R, B, obj, arr)
                if not check_functor(D):
                    yield D


def _complete(R, B, obj, arr) -> bool:
    """Fill composite arrows from generators; False if inconsistent."""
    cat = R.cat
    changed = True
    while changed:
        changed = False
        for (g, f), h in cat.comp_table.items():
            if cat.is_identity(g) or cat.is_identity(f):
                continue
            if g in arr and f in arr:
                v = B.comp(arr[g], arr[f])
                if h in arr:
                    if arr[h] != v:
                        return False
                elif not cat.is_identity(h):
                    arr[h] = v
                    changed = True
                elif v != B.identity(obj[cat.src(h)]):
                    return False
    return all(a in arr for a in cat.arrows if not cat.is_identity(a))


def enumerate_nats(F: Diagram, G: Diagram):
    cat = F.R.cat
    B = F.base
    homs = [list(B.hom(F.obj[o], G.obj[o])) for o in cat.objects]
    for pick in itertools.product(*homs):
        t = NatTrans(F, G, dict(zip(cat.objects, pick)))
        if not check_nat(t):
            yield t


# ---------------------------------------------------------------------------
# transport to and from the two-object groupement


def to_colax(C, D: Diagram):
    """The colax diagram on build_from_reedy1(R) with the same tables."""
    from .colax import ColaxDiagram

    cat = D.R.cat
    val2 = {a: D.map(a) for a in cat.arrows}
    return ColaxDiagram(C, D.base, dict(D.obj), val2, {}, name="from-classical")


def to_icon(C, t: NatTrans, F=None, G=None):
    from .colax import Icon

    F = F or to_colax(C, t.src)
    G = G or to_colax(C, t.dst)
    comps = {u: t.src.base.identity(t.src.base.unit) for u in C.units.values()}
    comps.update(t.comp)
    return Icon(F, G, comps)


def agreement(R: ReedyCat, B: BaseCategory, obj_sizes, nat_sizes, systems=None, extra_pairs=0, seed=0):
    """Compare the colax machinery on build_from_reedy1(R) with this module.

    Latching and matching objects are compared on every diagram with values
    in ``obj_sizes``; classifications, class memberships and factorizations
    on every natural transformation between diagrams with values in
    ``nat_sizes``, and between ``extra_pairs`` seeded pairs of arbitrary
    enumerated diagrams.
    """
    import random

    from .colax import lat, mat
    from .homotopy import classify as colax_classify, factor_icon, in_left, in_right
    from .reedy2 import build_from_reedy1
    from .report import Report

    rep = Report("classical-agreement")
    C = build_from_reedy1(R)
    systems = systems or B.model.system_names
    cat = R.cat
    ds = list(enumerate_diagrams(R, B, obj_sizes))
    colax = {id(d): to_colax(C, d) for d in ds}
    for n, d in enumerate(ds):
        F = colax[id(d)]
        for c in cat.objects:
            L, M = latching(d, c), matching(d, c)
            LF, MF = lat(F, c), mat(F, c)
            rep.check(LF.obj == L.cocone.apex and LF.to_z == L.to_c, "latching", (n, c))
            rep.check(MF.obj == M.cone.apex and MF.from_z == M.from_c, "matching", (n, c))
    small = [d for d in ds if all(o.size in nat_sizes for o in d.obj.values())]
    units = {u: B.unit for u in C.units.values()}
    pairs = list(itertools.product(small, repeat=2))
    rng = random.Random(seed)
    pairs += [(rng.choice(ds), rng.choice(ds)) for _ in range(extra_pairs if ds else 0)]
    count = 0
    for d1, d2 in pairs:
        for t in enumerate_nats(d1, d2):
            count += 1
            ic = to_icon(C, t, colax[id(d1)], colax[id(d2)])
            wit = (ds.index(d1), ds.index(d2), [t.comp[c].data for c in cat.objects])
            rep.check(colax_classify(ic).flags == classify(t), "classification", wit)
            for s in systems:
                rep.check((in_left(ic, s), in_right(ic, s)) == membership(t, s), f"membership-{s}", wit)
                fa = factor_icon(ic, s)
                i, K, p = factor(t, s)
                same = fa.K.val1 == {**units, **K.obj}
                same = same and all(fa.lam.at(c) == i.comp[c] and fa.rho.at(c) == p.comp[c] for c in cat.objects)
                same = same and all(fa.K.arr(a) == K.map(a) for a in cat.arrows)
                rep.check(same, f"factorization-{s}", wit)
    rep.info.update({"diagrams": len(ds), "nats": count})
    return rep
