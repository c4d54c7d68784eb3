"""Finite categories given by explicit tables, and Reedy structures on them."""

from __future__ import annotations

from dataclasses import dataclass, field


class FinCat:
    """A finite category.

    ``arrows`` maps arrow id -> (src, dst) and must contain the identities;
    ``comp`` maps (g, f) -> g o f for every composable pair.
    """

    def __init__(self, objects, arrows, comp, identities):
        self.objects = list(objects)
        self._ends = dict(arrows)
        self.arrows = list(self._ends)
        self.comp_table = dict(comp)
        self.identities = dict(identities)
        self._out: dict = {o: [] for o in self.objects}
        self._into: dict = {o: [] for o in self.objects}
        for a, (s, d) in self._ends.items():
            self._out[s].append(a)
            self._into[d].append(a)

    def src(self, a):
        return self._ends[a][0]

    def dst(self, a):
        return self._ends[a][1]

    def identity(self, o):
        return self.identities[o]

    def compose(self, g, f):
        """``g o f``."""
        return self.comp_table[(g, f)]

    def hom(self, a, b):
        return [f for f in self._out[a] if self.dst(f) == b]

    def out_of(self, o):
        return self._out[o]

    def into(self, o):
        return self._into[o]

    def is_identity(self, a):
        return self.identities.get(self.src(a)) == a

    def validate(self) -> list[tuple]:
        """Unit and associativity violations, as (law, witness) pairs."""
        bad = []
        for o, i in self.identities.items():
            if self._ends.get(i) != (o, o):
                bad.append(("identity-endpoints", (o, i)))
        for f in self.arrows:
            s, d = self._ends[f]
            if self.comp_table.get((f, self.identities[s])) != f:
                bad.append(("right-unit", f))
            if self.comp_table.get((self.identities[d], f)) != f:
                bad.append(("left-unit", f))
        for f in self.arrows:
            for g in self._out[self.dst(f)]:
                gf = self.comp_table.get((g, f))
                if gf is None:
                    bad.append(("missing-composite", (g, f)))
                    continue
                if self._ends[gf] != (self.src(f), self.dst(g)):
                    bad.append(("composite-endpoints", (g, f)))
                    continue
                for h in self._out[self.dst(g)]:
                    hg = self.comp_table.get((h, g))
                    if hg is None:
                        continue
                    lhs = self.comp_table.get((h, gf))
                    rhs = self.comp_table.get((hg, f))
                    if lhs != rhs:
                        bad.append(("associativity", (h, g, f)))
        return bad


@dataclass
class ReedyCat:
    """A finite category with degrees and direct/inverse arrow classes.

    Identities belong to both classes.
    """

    cat: FinCat
    degree: dict
    direct: frozenset
    inverse: frozenset
    name: str = ""
    _factor: dict = field(default=None, repr=False)

    def arrow_class(self, a) -> str:
        if self.cat.is_identity(a):
            return "identity"
        if a in self.direct:
            return "direct"
        if a in self.inverse:
            return "inverse"
        return "mixed"

    def factor(self, a):
        """The unique (inverse, direct) pair with direct o inverse = a."""
        if self._factor is None:
            table = {}
            for i in self.inverse | {self.cat.identity(o) for o in self.cat.objects}:
                for d in self.cat.out_of(self.cat.dst(i)):
                    if d in self.direct or self.cat.is_identity(d):
                        table.setdefault(self.cat.compose(d, i), []).append((i, d))
            self._factor = table
        return self._factor.get(a, [])

    def validate(self) -> list[tuple]:
        bad = list(self.cat.validate())
        c = self.cat
        for a in c.arrows:
            if c.is_identity(a):
                continue
            ds, dd = self.degree[c.src(a)], self.degree[c.dst(a)]
            if a in self.direct and not dd > ds:
                bad.append(("direct-degree", a))
            if a in self.inverse and not dd < ds:
                bad.append(("inverse-degree", a))
            if a in self.direct and a in self.inverse:
                bad.append(("both-classes", a))
        for a in c.arrows:
            n = len(self.factor(a))
            if n != 1:
                bad.append(("factorization-count", (a, n)))
        for a in c.arrows:
            if c.is_identity(a):
                continue
            for b in c.hom(c.dst(a), c.src(a)):
                if c.compose(b, a) == c.identity(c.src(a)) and c.compose(a, b) == c.identity(c.dst(a)):
                    bad.append(("nontrivial-iso", a))
        return bad


def reedy_from_generators(name, objects, degree, arrows, compositions=()):
    """Build a ReedyCat from non-identity arrows and a partial composition
    table.

    ``arrows``: iterable of (id, src, dst, kind) with kind "direct",
    "inverse" or "mixed".  ``compositions``: (g, f, h) meaning g o f = h for
    non-identity g, f.  Identities are added as ``"id:<obj>"``.
    """
    ends = {}
    direct, inverse = set(), set()
    idents = {}
    for o in objects:
        i = f"id:{o}"
        idents[o] = i
        ends[i] = (o, o)
    for a, s, d, kind in arrows:
        ends[a] = (s, d)
        if kind == "direct":
            direct.add(a)
        elif kind == "inverse":
            inverse.add(a)
    comp = {}
    for a, (s, d) in ends.items():
        comp[(a, idents[s])] = a
        comp[(idents[d], a)] = a
    for g, f, h in compositions:
        comp[(g, f)] = h
    cat = FinCat(objects, ends, comp, idents)
    return ReedyCat(cat, dict(degree), frozenset(direct), frozenset(inverse), name)


def walking_arrow() -> ReedyCat:
    return reedy_from_generators("walking-arrow", ["a", "c"], {"a": 0, "c": 1}, [("f", "a", "c", "direct")])


def walking_span() -> ReedyCat:
    """a -> c <- b with c of degree 1: the latching test category."""
    return reedy_from_generators(
        "span", ["a", "b", "c"], {"a": 0, "b": 0, "c": 1},
        [("f", "a", "c", "direct"), ("g", "b", "c", "direct")],
    )


def walking_retraction() -> ReedyCat:
    """c -> a inverse with a degree-0 target."""
    return reedy_from_generators("retraction", ["a", "c"], {"a": 0, "c": 1}, [("s", "c", "a", "inverse")])


def delta_le1() -> ReedyCat:
    """The simplex category truncated to [0], [1]."""
    arrows = [
        ("d0", "0", "1", "direct"),
        ("d1", "0", "1", "direct"),
        ("s0", "1", "0", "inverse"),
        ("e0", "1", "1", "mixed"),  # d0 s0
        ("e1", "1", "1", "mixed"),  # d1 s0
    ]
    comps = [
        ("s0", "d0", "id:0"), ("s0", "d1", "id:0"),
        ("d0", "s0", "e0"), ("d1", "s0", "e1"),
        ("e0", "d0", "d0"), ("e0", "d1", "d0"), ("e1", "d0", "d1"), ("e1", "d1", "d1"),
        ("s0", "e0", "s0"), ("s0", "e1", "s0"),
        ("e0", "e0", "e0"), ("e0", "e1", "e0"), ("e1", "e0", "e1"), ("e1", "e1", "e1"),
    ]
    return reedy_from_generators("delta<=1", ["0", "1"], {"0": 0, "1": 1}, arrows, comps)


def single_object() -> ReedyCat:
    return reedy_from_generators("point", ["a"], {"a": 0}, [])


def free_shape(objects, arrows) -> FinCat:
    """The free category on a graph with no composable non-identity pairs.

    ``arrows``: (id, src, dst).  Used as limit and colimit shapes.
    """
    ends = {f"id:{o}": (o, o) for o in objects}
    idents = {o: f"id:{o}" for o in objects}
    if {d for _, _, d in arrows} & {s for _, s, _ in arrows}:
        raise ValueError("free_shape needs a graph without composable arrows")
    for a, s, d in arrows:
        ends[a] = (s, d)
    comp = {}
    for a, (s, d) in ends.items():
        comp[(a, idents[s])] = a
        comp[(idents[d], a)] = a
    return FinCat(objects, ends, comp, idents)


def point_shape() -> FinCat:
    return free_shape(["*"], [])


def discrete_shape(n: int) -> FinCat:
    return free_shape([f"j{i}" for i in range(n)], [])


def cospan_shape() -> FinCat:
    """j0 -> j2 <- j1, whose limits are pullbacks."""
    return free_shape(["j0", "j1", "j2"], [("u", "j0", "j2"), ("v", "j1", "j2")])


def span_shape() -> FinCat:
    """j1 <- j0 -> j2, whose colimits are pushouts."""
    return free_shape(["j0", "j1", "j2"], [("u", "j0", "j1"), ("v", "j0", "j2")])
