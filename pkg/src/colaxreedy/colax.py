"""Normal colax diagrams on a truncated groupement, icons between them, and
the colax latching and matching constructions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .base import BaseArrow, BaseCategory, BaseObject, Cone
from .fincat import FinCat
from .reedy2 import GroupementError, TwoGroupement
from .report import Report


class ColaxError(Exception):
    pass


class DomainError(ColaxError):
    """An index category was requested at a unit 1-cell."""


class ConsistencyError(ColaxError):
    """A cone that must commute does not; names the failing triangle."""


class ColaxDiagram:
    """A normal colax diagram C -> base, defined on 1-cells of degree <= level.

    Omitted entries for identity 2-cells and for colaxity maps involving a
    unit default to identities.
    """

    def __init__(self, C: TwoGroupement, base: BaseCategory, val1, val2, colax, level=None, name=""):
        self.C = C
        self.base = base
        self.level = C.bound if level is None else level
        self.val1 = dict(val1)
        self.val2 = dict(val2)
        self.colax = dict(colax)
        self.name = name
        self._cache = {}
        for o, u in C.units.items():
            self.val1.setdefault(u, base.unit)

    # ---- domain ------------------------------------------------------------
    def in_domain1(self, z) -> bool:
        return z in self.C.cells1 and self.C.deg(z) <= self.level

    def in_domain2(self, a) -> bool:
        return self.in_domain1(self.C.src2(a)) and self.in_domain1(self.C.dst2(a))

    def cells1(self):
        return [z for z in self.C.cells1 if self.C.deg(z) <= self.level]

    def cells2(self):
        return [a for a in self.C.cells2 if self.in_domain2(a)]

    def pairs(self):
        """Composable non-unit pairs whose product is in the domain."""
        C = self.C
        return [
            (s, t) for (s, t), u in C.hcomp1_table.items()
            if C.deg(u) <= self.level and not C.is_unit(s) and not C.is_unit(t)
        ]

    # ---- values ------------------------------------------------------------
    def obj(self, z) -> BaseObject:
        try:
            return self.val1[z]
        except KeyError:
            raise ColaxError(f"diagram has no value at 1-cell {self.C.fmt1(z)}") from None

    def arr(self, a) -> BaseArrow:
        if a in self.val2:
            return self.val2[a]
        if self.C.is_identity2(a):
            return self.base.identity(self.obj(self.C.src2(a)))
        raise ColaxError(f"diagram has no value at 2-cell {self.C.fmt2(a)}")

    def cx(self, s, t) -> BaseArrow:
        """Colaxity F(s (x) t) -> F s (x) F t."""
        C = self.C
        if C.is_unit(s) or C.is_unit(t):
            if (s, t) in self.colax:
                return self.colax[(s, t)]
            return self.base.identity(self.obj(C.hcomp_strict(s, t)))
        try:
            return self.colax[(s, t)]
        except KeyError:
            raise ColaxError(f"diagram has no colaxity at ({C.fmt1(s)}, {C.fmt1(t)})") from None

    def split(self, xs) -> BaseArrow:
        """Iterated colaxity F(x_1 (x) ... (x) x_k) -> F x_1 (x) ... (x) F x_k,
        splitting off x_1 first."""
        xs = list(xs)
        if len(xs) == 1:
            return self.base.identity(self.obj(xs[0]))
        rest = self.C.hcomp_many(xs[1:])
        head = self.cx(xs[0], rest)
        tail = self.base.tensor(self.base.identity(self.obj(xs[0])), self.split(xs[1:]))
        return self.base.comp(tail, head)

    def split_left(self, xs) -> BaseArrow:
        """Same composite, splitting off x_k first."""
        xs = list(xs)
        if len(xs) == 1:
            return self.base.identity(self.obj(xs[0]))
        init = self.C.hcomp_many(xs[:-1])
        head = self.cx(init, xs[-1])
        tail = self.base.tensor(self.split_left(xs[:-1]), self.base.identity(self.obj(xs[-1])))
        return self.base.comp(tail, head)

    def tensor_obj(self, xs) -> BaseObject:
        return self.base.tensor_objs([self.obj(x) for x in xs])

    # ---- equality and copies ---------------------------------------------
    def _tables(self):
        v1 = {z: self.val1[z] for z in self.cells1() if z in self.val1}
        v2 = {a: self.arr(a) for a in self.cells2() if a in self.val2 or self.C.is_identity2(a)}
        cx = {k: v for k, v in self.colax.items() if k in set(self.pairs())}
        return v1, v2, cx

    def __eq__(self, other):
        if not isinstance(other, ColaxDiagram):
            return NotImplemented
        return (self.C is other.C and self.level == other.level and self._tables() == other._tables())

    def __hash__(self):
        return id(self)

    def replace(self, val1=None, val2=None, colax=None, level=None, name=None, base=None):
        return ColaxDiagram(
            self.C, self.base if base is None else base,
            {**self.val1, **(val1 or {})}, {**self.val2, **(val2 or {})}, {**self.colax, **(colax or {})},
            self.level if level is None else level, self.name if name is None else name,
        )

    def __repr__(self):
        return f"ColaxDiagram({self.name or '?'} on {self.C.name}, level {self.level}, {self.base!r})"


def constant_unit(C: TwoGroupement, base: BaseCategory, level=None) -> ColaxDiagram:
    lv = C.bound if level is None else level
    I = base.unit
    val1 = {z: I for z in C.cells1 if C.deg(z) <= lv}
    val2 = {a: base.identity(I) for a in C.cells2 if C.deg(C.src2(a)) <= lv and C.deg(C.dst2(a)) <= lv}
    colax = {(s, t): base.identity(I) for (s, t), u in C.hcomp1_table.items() if C.deg(u) <= lv}
    return ColaxDiagram(C, base, val1, val2, colax, lv, "const-unit")


def truncate(F: ColaxDiagram, k: int) -> ColaxDiagram:
    if k > F.level:
        raise ColaxError(f"cannot truncate level-{F.level} diagram at {k}")
    C = F.C
    val1 = {z: v for z, v in F.val1.items() if C.deg(z) <= k}
    val2 = {a: v for a, v in F.val2.items() if C.deg(C.src2(a)) <= k and C.deg(C.dst2(a)) <= k}
    colax = {p: v for p, v in F.colax.items() if C.deg(C.hcomp_strict(*p)) <= k}
    return ColaxDiagram(C, F.base, val1, val2, colax, k, F.name)


# ---------------------------------------------------------------------------
# validation


def validate_colax(F: ColaxDiagram, only_degree: int | None = None) -> Report:
    """Functoriality, normality, naturality and coassociativity.

    With ``only_degree`` set, only constraints touching a 1-cell of that
    degree are checked.
    """
    rep = Report("colax-diagram")
    C, B = F.C, F.base

    def touches(*zs):
        return only_degree is None or any(C.deg(z) == only_degree for z in zs)

    for z in F.cells1():
        if not touches(z):
            continue
        if not rep.check(z in F.val1, "missing-value", C.fmt1(z)):
            continue
        if C.is_unit(z):
            rep.check(F.val1[z] == B.unit, "normality-unit", C.fmt1(z))
    cells2 = F.cells2()
    for a in cells2:
        s, d = C.src2(a), C.dst2(a)
        if not touches(s, d):
            continue
        try:
            fa = F.arr(a)
        except ColaxError:
            rep.fail("missing-2-cell", C.fmt2(a))
            continue
        if s not in F.val1 or d not in F.val1:
            continue
        rep.check(fa.src == F.val1[s] and fa.dst == F.val1[d], "2-cell-endpoints", C.fmt2(a))
        if C.is_identity2(a):
            rep.check(fa == B.identity(F.val1[s]), "preserves-identity", C.fmt2(a))
    if not rep.ok:
        return rep
    for a in cells2:
        for b in C.out2[C.dst2(a)]:
            if not F.in_domain2(b) or not touches(C.src2(a), C.dst2(a), C.dst2(b)):
                continue
            ba = C.vcomp(b, a)
            rep.check(B.comp(F.arr(b), F.arr(a)) == F.arr(ba), "functoriality", (C.fmt2(b), C.fmt2(a)))

    for (s, t), u in C.hcomp1_table.items():
        if C.deg(u) > F.level or not touches(s, t, u):
            continue
        try:
            c = F.cx(s, t)
        except ColaxError:
            rep.fail("missing-colaxity", (C.fmt1(s), C.fmt1(t)))
            continue
        want_src, want_dst = F.obj(u), B.tensor_obj(F.obj(s), F.obj(t))
        if not rep.check(c.src == want_src and c.dst == want_dst, "colaxity-endpoints", (C.fmt1(s), C.fmt1(t))):
            continue
        if C.is_unit(s) or C.is_unit(t):
            rep.check(c == B.identity(want_src), "normality-colaxity", (C.fmt1(s), C.fmt1(t)))
    if not rep.ok:
        return rep

    # naturality, including pairs with a unit component
    for (a, b), ab in C.hcomp2_table.items():
        s, t = C.src2(a), C.src2(b)
        s2, t2 = C.dst2(a), C.dst2(b)
        if C.deg(C.src2(ab)) > F.level or C.deg(C.dst2(ab)) > F.level:
            continue
        if not touches(s, t, s2, t2, C.src2(ab), C.dst2(ab)):
            continue
        lhs = B.comp(B.tensor(F.arr(a), F.arr(b)), F.cx(s, t))
        rhs = B.comp(F.cx(s2, t2), F.arr(ab))
        rep.check(lhs == rhs, "naturality", {"square": (C.fmt2(a), C.fmt2(b))})

    # coassociativity
    for (s, t), st in C.hcomp1_table.items():
        for u in C.cells1:
            if C.src1(u) != C.dst1(t):
                continue
            stu = C.hcomp(st, u)
            tu = C.hcomp(t, u)
            if stu is None or tu is None or C.deg(stu) > F.level or not touches(s, t, u, stu):
                continue
            Fs, Fu = F.obj(s), F.obj(u)
            lhs = B.comp(B.tensor(F.cx(s, t), B.identity(Fu)), F.cx(st, u))
            rhs = B.comp(B.tensor(B.identity(Fs), F.cx(t, u)), F.cx(s, tu))
            rep.check(lhs == rhs, "coassociativity", tuple(C.fmt1(x) for x in (s, t, u)))
    return rep


def extend_check(F: ColaxDiagram, val1, val2, colax) -> Report:
    """Validate candidate degree-(level+1) data against the truncation F."""
    k = F.level + 1
    if k > F.C.bound:
        raise ColaxError(f"level {k} exceeds the groupement bound {F.C.bound}")
    G = F.replace(val1, val2, colax, level=k)
    rep = validate_colax(G, only_degree=k)
    rep.name = "extension"
    return rep


# ---------------------------------------------------------------------------
# icons


@dataclass
class Icon:
    src: ColaxDiagram
    dst: ColaxDiagram
    comp: dict

    def at(self, z) -> BaseArrow:
        if z in self.comp:
            return self.comp[z]
        if self.src.C.is_unit(z):
            return self.src.base.identity(self.src.base.unit)
        raise ColaxError(f"icon has no component at {self.src.C.fmt1(z)}")


def identity_icon(F: ColaxDiagram) -> Icon:
    return Icon(F, F, {z: F.base.identity(F.obj(z)) for z in F.cells1()})


def compose_icons(g: Icon, f: Icon) -> Icon:
    """g o f."""
    B = f.src.base
    return Icon(f.src, g.dst, {z: B.comp(g.at(z), f.at(z)) for z in f.src.cells1()})


def validate_icon(eta: Icon) -> Report:
    rep = Report("icon")
    F, G = eta.src, eta.dst
    C, B = F.C, F.base
    rep.check(F.C is G.C and F.level == G.level, "same-domain", (F.name, G.name))
    for z in F.cells1():
        try:
            c = eta.at(z)
        except ColaxError:
            rep.fail("missing-component", C.fmt1(z))
            continue
        rep.check(c.src == F.obj(z) and c.dst == G.obj(z), "component-endpoints", C.fmt1(z))
        if C.is_unit(z):
            rep.check(c == B.identity(B.unit), "unit-component", C.fmt1(z))
    if not rep.ok:
        return rep
    for a in F.cells2():
        lhs = B.comp(eta.at(C.dst2(a)), F.arr(a))
        rhs = B.comp(G.arr(a), eta.at(C.src2(a)))
        rep.check(lhs == rhs, "naturality", C.fmt2(a))
    for s, t in F.pairs():
        u = C.hcomp(s, t)
        lhs = B.comp(B.tensor(eta.at(s), eta.at(t)), F.cx(s, t))
        rhs = B.comp(G.cx(s, t), eta.at(u))
        rep.check(lhs == rhs, "colaxity", (C.fmt1(s), C.fmt1(t)))
    return rep


# ---------------------------------------------------------------------------
# index categories


@dataclass
class _Shape:
    """Objects plus the non-identity arrows of an index category."""

    objects: list
    arrows: list
    ends: dict

    def src(self, a):
        return self.ends[a][0]

    def dst(self, a):
        return self.ends[a][1]


@dataclass
class LatchingIndex:
    """Non-identity direct 2-cells into z, ordered as in the groupement."""

    z: object
    index: FinCat
    gamma: dict = field(repr=False)  # arrow id -> direct 2-cell between sources

    @property
    def objects(self):
        return self.index.objects

    def shape(self) -> _Shape:
        arrows = [a for a in self.index.arrows if not self.index.is_identity(a)]
        return _Shape(self.index.objects, arrows, {a: (self.index.src(a), self.index.dst(a)) for a in arrows})


def latching_index(C: TwoGroupement, z) -> LatchingIndex:
    if C.is_unit(z):
        raise DomainError(f"latching index at unit 1-cell {C.fmt1(z)}")
    objs = [a for a in C.in2[z] if C.kind2(a) == "direct"]
    arrows, comp, idents, gamma = {}, {}, {}, {}
    for al in objs:
        for g in C.out2[C.src2(al)]:
            if not C.is_direct(g):
                continue
            for al2 in objs:
                if C.src2(al2) == C.dst2(g) and C.vcomp_table.get((al2, g)) == al:
                    aid = (al, al2, g)
                    arrows[aid] = (al, al2)
                    gamma[aid] = g
                    if C.is_identity2(g):
                        idents[al] = aid
    for f, (a1, a2) in arrows.items():
        for g, (b1, b2) in arrows.items():
            if b1 == a2:
                comp[(g, f)] = (a1, b2, C.vcomp(gamma[g], gamma[f]))
    return LatchingIndex(z, FinCat(objs, arrows, comp, idents), gamma)


@dataclass
class MatchingIndex:
    """Objects ((x_1..x_k), beta); morphisms (src, dst, blocks, u) with
    ``blocks`` the block sizes of the surjection and ``u`` the inverse
    2-cells x_i -> (block product)."""

    z: object
    index: FinCat

    @property
    def objects(self):
        return self.index.objects

    def shape(self) -> _Shape:
        arrows = [a for a in self.index.arrows if not self.index.is_identity(a)]
        return _Shape(self.index.objects, arrows, {a: (self.index.src(a), self.index.dst(a)) for a in arrows})


def _compositions(p: int, k: int):
    """Ordered ways to cut p items into k non-empty consecutive blocks."""
    for cuts in itertools.combinations(range(1, p), k - 1):
        bounds = (0,) + cuts + (p,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(k))


def _blocks(seq, sizes):
    out, pos = [], 0
    for n in sizes:
        out.append(tuple(seq[pos:pos + n]))
        pos += n
    return out


def _padded(C: TwoGroupement, xs, max_units: int):
    """``xs`` with up to ``max_units`` unit 1-cells inserted."""
    out = [tuple(xs)]
    frontier = [tuple(xs)]
    for _ in range(max_units):
        nxt = []
        for t in frontier:
            for i in range(len(t) + 1):
                obj = C.src1(t[i]) if i < len(t) else C.dst1(t[-1])
                cand = t[:i] + (C.units[obj],) + t[i:]
                if cand not in out and cand not in nxt:
                    nxt.append(cand)
        out.extend(nxt)
        frontier = nxt
    return out


def matching_index(C: TwoGroupement, z, max_units: int = 0) -> MatchingIndex:
    """The colax matching category at z.

    ``max_units`` > 0 also admits decompositions with that many unit
    1-cells inserted; used only to compare limits.
    """
    if C.is_unit(z):
        raise DomainError(f"matching index at unit 1-cell {C.fmt1(z)}")
    objs = []
    for beta in C.out2[z]:
        if not C.is_inverse(beta):
            continue
        for xs in C.decompositions(C.dst2(beta)):
            for ys in _padded(C, xs, max_units):
                if len(ys) == 1 and C.is_identity2(beta):
                    continue
                objs.append((ys, beta))
    arrows, idents = {}, {}
    for o1 in objs:
        xs, beta = o1
        k = len(xs)
        for o2 in objs:
            ys, beta2 = o2
            p = len(ys)
            if p < k:
                continue
            for sizes in _compositions(p, k):
                targets = []
                for blk in _blocks(ys, sizes):
                    targets.append(C.hcomp_many(blk))
                choices = [[u for u in C.hom2(x, y) if C.is_inverse(u)] for x, y in zip(xs, targets)]
                for us in itertools.product(*choices):
                    tens = C.hcomp2_many(us)
                    if C.vcomp_table.get((tens, beta)) != beta2:
                        continue
                    aid = (o1, o2, sizes, tuple(us))
                    arrows[aid] = (o1, o2)
                    if o1 == o2 and all(C.is_identity2(u) for u in us):
                        idents[o1] = aid
    comp = {}
    for f, (o1, o2) in arrows.items():
        _, _, s1, us = f
        for g, (q1, q2) in arrows.items():
            if q1 != o2:
                continue
            _, _, s2, vs = g
            vblocks = _blocks(vs, s1)
            ws = tuple(C.vcomp(C.hcomp2_many(vb), u) for vb, u in zip(vblocks, us))
            sizes = tuple(sum(b) for b in _blocks(s2, s1))
            h = (o1, q2, sizes, ws)
            if h not in arrows:
                raise GroupementError(f"matching-index composite {h!r} missing")
            comp[(g, f)] = h
    return MatchingIndex(z, FinCat(objs, arrows, comp, idents))


def matching_functor(F: ColaxDiagram, M: MatchingIndex):
    """Object and arrow assignments of the matching diagram of F."""
    B = F.base
    objmap = {o: F.tensor_obj(o[0]) for o in M.objects}
    arrmap = {}
    for a in M.index.arrows:
        (xs, _), (ys, _), sizes, us = a
        parts = [B.comp(F.split(blk), F.arr(u)) for blk, u in zip(_blocks(ys, sizes), us)]
        arrmap[a] = B.tensor_many(parts)
    return objmap, arrmap


# ---------------------------------------------------------------------------
# latching and matching objects


@dataclass
class LatchingObject:
    obj: BaseObject
    cocone: Cone
    index: LatchingIndex
    to_z: BaseArrow | None  # L(F, z) -> F z when F is defined at z


@dataclass
class MatchingObject:
    obj: BaseObject
    cone: Cone
    index: MatchingIndex
    from_z: BaseArrow | None  # F z -> M(F, z) when F is defined at z
    objmap: dict = field(repr=False, default=None)
    arrmap: dict = field(repr=False, default=None)


def colax_latching_object(F: ColaxDiagram, z, index: LatchingIndex | None = None) -> LatchingObject:
    C, B = F.C, F.base
    L = index or latching_index(C, z)
    objmap = {a: F.obj(C.src2(a)) for a in L.objects}
    arrmap = {aid: F.arr(g) for aid, g in L.gamma.items()}
    cocone = B.colimit_of(L.shape(), objmap, arrmap)
    to_z = None
    if F.in_domain1(z) and z in F.val1:
        to_z = B.colimit_mediator(cocone, [F.arr(a) for a in L.objects], target=F.obj(z))
    return LatchingObject(cocone.apex, cocone, L, to_z)


def matching_leg(F: ColaxDiagram, o) -> BaseArrow:
    """F z -> F x_1 (x) ... (x) F x_k for the matching object ((x_i), beta)."""
    xs, beta = o
    return F.base.comp(F.split(xs), F.arr(beta))


def colax_matching_object(F: ColaxDiagram, z, index: MatchingIndex | None = None) -> MatchingObject:
    B = F.base
    M = index or matching_index(F.C, z)
    objmap, arrmap = matching_functor(F, M)
    cone = B.limit_of(M.shape(), objmap, arrmap)
    from_z = None
    if F.in_domain1(z) and z in F.val1:
        from_z = B.limit_mediator(cone, [matching_leg(F, o) for o in M.objects], source=F.obj(z))
    return MatchingObject(cone.apex, cone, M, from_z, objmap, arrmap)


def iz_component(F: ColaxDiagram, alpha, o) -> BaseArrow:
    """Component of i_z at latching object alpha: s -> z and matching object o."""
    C, B = F.C, F.base
    xs, beta = o
    if not C.is_identity2(beta):
        return B.comp(F.split(xs), F.arr(C.vcomp(beta, alpha)))
    parts = C.divide(alpha, xs)
    srcs = [C.src2(a) for a in parts]
    return B.comp(B.tensor_many([F.arr(a) for a in parts]), F.split(srcs))


def canonical_map_iz(F: ColaxDiagram, z, lat: LatchingObject | None = None,
                     mat: MatchingObject | None = None) -> BaseArrow:
    """The canonical map L(F, z) -> M(F, z), built from F below z only."""
    C, B = F.C, F.base
    lat = lat or colax_latching_object(F, z)
    mat = mat or colax_matching_object(F, z)
    M = mat.index
    shape = M.shape()
    per_alpha = []
    for alpha in lat.index.objects:
        comps = {o: iz_component(F, alpha, o) for o in M.objects}
        for a in shape.arrows:
            o1, o2 = shape.src(a), shape.dst(a)
            if B.comp(mat.arrmap[a], comps[o1]) != comps[o2]:
                raise ConsistencyError(
                    f"i_z triangle fails at latching {C.fmt2(alpha)}, matching morphism "
                    f"{_fmt_obj(C, o1)} -> {_fmt_obj(C, o2)}"
                )
        src = F.obj(C.src2(alpha))
        per_alpha.append(B.limit_mediator(mat.cone, [comps[o] for o in M.objects], source=src))
    lshape = lat.index.shape()
    pos = {a: n for n, a in enumerate(lat.index.objects)}
    for aid in lshape.arrows:
        a1, a2 = lshape.src(aid), lshape.dst(aid)
        g = lat.index.gamma[aid]
        if B.comp(per_alpha[pos[a2]], F.arr(g)) != per_alpha[pos[a1]]:
            raise ConsistencyError(f"i_z latching triangle fails at {C.fmt2(a1)} -> {C.fmt2(a2)}")
    return B.colimit_mediator(lat.cocone, per_alpha, target=mat.obj)


def _fmt_obj(C, o):
    xs, beta = o
    return f"(({', '.join(C.fmt1(x) for x in xs)}), {C.fmt2(beta)})"


def fmt_matching_object(C: TwoGroupement, o) -> str:
    return _fmt_obj(C, o)


# ---------------------------------------------------------------------------
# caches


def _index_cache(C: TwoGroupement) -> dict:
    cache = C.__dict__.get("_colax_index_cache")
    if cache is None:
        cache = C.__dict__["_colax_index_cache"] = {}
    return cache


def cached_latching_index(C: TwoGroupement, z) -> LatchingIndex:
    cache = _index_cache(C)
    key = ("L", z)
    if key not in cache:
        cache[key] = latching_index(C, z)
    return cache[key]


def cached_matching_index(C: TwoGroupement, z) -> MatchingIndex:
    cache = _index_cache(C)
    key = ("M", z)
    if key not in cache:
        cache[key] = matching_index(C, z)
    return cache[key]


def lat(F: ColaxDiagram, z) -> LatchingObject:
    """Cached latching object of F at z."""
    key = ("L", z)
    if key not in F._cache:
        F._cache[key] = colax_latching_object(F, z, cached_latching_index(F.C, z))
    return F._cache[key]


def mat(F: ColaxDiagram, z) -> MatchingObject:
    """Cached matching object of F at z."""
    key = ("M", z)
    if key not in F._cache:
        F._cache[key] = colax_matching_object(F, z, cached_matching_index(F.C, z))
    return F._cache[key]


def iz(F: ColaxDiagram, z) -> BaseArrow:
    key = ("i", z)
    if key not in F._cache:
        F._cache[key] = canonical_map_iz(F, z, lat(F, z), mat(F, z))
    return F._cache[key]
