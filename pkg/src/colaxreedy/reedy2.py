"""Finite truncations of simple locally Reedy 2-categories (2-groupements).

A groupement is stored as explicit tables.  1-cells carry a degree, 2-cells
carry a kind (``identity``, ``direct``, ``inverse`` or ``mixed``), and both
compositions are partial: a horizontal composite is absent exactly when the
total degree would exceed the bound.
"""

from __future__ import annotations

import itertools
import re
from functools import cached_property

from .fincat import FinCat, ReedyCat
from .report import Report

DIRECTISH = ("identity", "direct")
INVERSISH = ("identity", "inverse")


class GroupementError(Exception):
    pass


class TruncationError(GroupementError):
    """A composite needed by an operation lies outside the degree bound."""


class TwoGroupement:
    """Tables for a truncated simple locally Reedy 2-category.

    ``cells1``: 1-cell -> (A, B, degree).  ``units``: object -> unit 1-cell.
    ``cells2``: 2-cell -> (source 1-cell, target 1-cell, kind).
    ``ident2``: 1-cell -> identity 2-cell.  ``vcomp``: (b, a) -> b o a.
    ``hcomp1``: (s, t) -> s (x) t for s: A->B, t: B->C.
    ``hcomp2``: (a, b) -> a (x) b.
    """

    def __init__(self, name, objects, bound, cells1, units, cells2, ident2,
                 vcomp, hcomp1, hcomp2, kind="explicit", params=None):
        self.name = name
        self.objects = list(objects)
        self.bound = bound
        self.cells1 = dict(cells1)
        self.units = dict(units)
        self.cells2 = dict(cells2)
        self.ident2 = dict(ident2)
        self.vcomp_table = dict(vcomp)
        self.hcomp1_table = dict(hcomp1)
        self.hcomp2_table = dict(hcomp2)
        self.kind = kind
        self.params = dict(params or {})
        self._unit_set = set(self.units.values())
        self.out2 = {z: [] for z in self.cells1}
        self.in2 = {z: [] for z in self.cells1}
        for a, (s, d, _) in self.cells2.items():
            self.out2[s].append(a)
            self.in2[d].append(a)
        self.splits = {z: [] for z in self.cells1}
        for (s, t), u in self.hcomp1_table.items():
            self.splits[u].append((s, t))
        self.hom1 = {}
        for z, (a, b, _) in self.cells1.items():
            self.hom1.setdefault((a, b), []).append(z)
        self._decomp_cache = {}

    # ---- basic accessors -------------------------------------------------
    def src1(self, z):
        return self.cells1[z][0]

    def dst1(self, z):
        return self.cells1[z][1]

    def deg(self, z) -> int:
        return self.cells1[z][2]

    def is_unit(self, z) -> bool:
        return z in self._unit_set

    def src2(self, a):
        return self.cells2[a][0]

    def dst2(self, a):
        return self.cells2[a][1]

    def kind2(self, a) -> str:
        return self.cells2[a][2]

    def is_direct(self, a) -> bool:
        return self.cells2[a][2] in DIRECTISH

    def is_inverse(self, a) -> bool:
        return self.cells2[a][2] in INVERSISH

    def is_identity2(self, a) -> bool:
        return self.cells2[a][2] == "identity"

    def identity(self, z):
        return self.ident2[z]

    def hom2(self, z, w):
        return [a for a in self.out2[z] if self.dst2(a) == w]

    def cells_of_degree(self, d, nonunit=True):
        return [z for z, (_, _, k) in self.cells1.items() if k == d and not (nonunit and self.is_unit(z))]

    # ---- composition -----------------------------------------------------
    def vcomp(self, b, a):
        """``b o a`` for a: z -> z', b: z' -> z''."""
        try:
            return self.vcomp_table[(b, a)]
        except KeyError:
            raise GroupementError(f"vertical composite of {b!r} after {a!r} undefined") from None

    def vcomp_many(self, *cells):
        """Composite in mathematical order: vcomp_many(c, b, a) = c o b o a."""
        out = cells[-1]
        for c in reversed(cells[:-1]):
            out = self.vcomp(c, out)
        return out

    def hcomp(self, s, t):
        """``s (x) t`` or None when out of bound or not composable."""
        return self.hcomp1_table.get((s, t))

    def hcomp_strict(self, s, t):
        r = self.hcomp1_table.get((s, t))
        if r is None:
            if self.dst1(s) != self.src1(t):
                raise GroupementError(f"1-cells {s!r}, {t!r} not composable")
            raise TruncationError(f"{s!r} (x) {t!r} exceeds bound {self.bound}")
        return r

    def hcomp_many(self, cells, start=None):
        """Left fold of (x) over 1-cells; the empty product needs ``start``."""
        cells = list(cells)
        if not cells:
            if start is None:
                raise GroupementError("empty horizontal product without object")
            return self.units[start]
        out = cells[0]
        for c in cells[1:]:
            out = self.hcomp_strict(out, c)
        return out

    def hcomp2(self, a, b):
        r = self.hcomp2_table.get((a, b))
        if r is None:
            s = self.hcomp1_table.get((self.src2(a), self.src2(b)))
            t = self.hcomp1_table.get((self.dst2(a), self.dst2(b)))
            if s is None or t is None:
                raise TruncationError(f"{a!r} (x) {b!r} exceeds bound {self.bound}")
            raise GroupementError(f"2-cell composite {a!r} (x) {b!r} missing")
        return r

    def hcomp2_many(self, cells):
        cells = list(cells)
        out = cells[0]
        for c in cells[1:]:
            out = self.hcomp2(out, c)
        return out

    # ---- decompositions --------------------------------------------------
    def decompositions(self, z):
        """All tuples of non-unit 1-cells whose product is ``z``.

        Includes the trivial tuple ``(z,)`` when z is not a unit.
        """
        if z in self._decomp_cache:
            return self._decomp_cache[z]
        out = []
        if not self.is_unit(z):
            out.append((z,))
            for s, t in self.splits[z]:
                if self.is_unit(s) or self.is_unit(t):
                    continue
                for rest in self.decompositions(t):
                    out.append((s,) + rest)
        self._decomp_cache[z] = out
        return out

    @cached_property
    def _direct_split(self):
        idx = {}
        for (a, b), c in self.hcomp2_table.items():
            if self.is_direct(a) and self.is_direct(b):
                idx.setdefault((c, self.dst2(a), self.dst2(b)), []).append((a, b))
        return idx

    def direct_lifts(self, alpha, s2, t2):
        """All direct (b1, b2) with b1 (x) b2 = alpha, b1 into s2, b2 into t2."""
        return list(self._direct_split.get((alpha, s2, t2), []))

    def split_direct(self, alpha, s2, t2):
        lifts = self.direct_lifts(alpha, s2, t2)
        if len(lifts) != 1:
            raise GroupementError(
                f"direct 2-cell {alpha!r} has {len(lifts)} lifts along {s2!r} (x) {t2!r}"
            )
        return lifts[0]

    def divide(self, alpha, parts):
        """Split a direct alpha along ``parts`` (product = target of alpha)."""
        parts = list(parts)
        if len(parts) == 1:
            return (alpha,)
        rest = self.hcomp_many(parts[1:])
        a1, a2 = self.split_direct(alpha, parts[0], rest)
        return (a1,) + self.divide(a2, parts[1:])

    # ---- Reedy structure per hom ----------------------------------------
    @cached_property
    def _factor_index(self):
        idx = {}
        for (b, a), c in self.vcomp_table.items():
            if self.is_inverse(a) and self.is_direct(b):
                idx.setdefault(c, []).append((a, b))
        return idx

    def reedy_factorize(self, u):
        """(inv, dir) with dir o inv = u."""
        if u not in self.cells2:
            raise GroupementError(f"2-cell {u!r} not in {self.name}")
        facs = self._factor_index.get(u, [])
        if len(facs) != 1:
            raise GroupementError(f"2-cell {u!r} has {len(facs)} Reedy factorizations")
        return facs[0]

    def hom_reedy(self, A, B) -> ReedyCat:
        objs = self.hom1.get((A, B), [])
        oset = set(objs)
        arrows = {a: (s, d) for a, (s, d, _) in self.cells2.items() if s in oset}
        comp = {k: v for k, v in self.vcomp_table.items() if k[1] in arrows}
        cat = FinCat(objs, arrows, comp, {z: self.ident2[z] for z in objs})
        direct = frozenset(a for a in arrows if self.kind2(a) == "direct")
        inverse = frozenset(a for a in arrows if self.kind2(a) == "inverse")
        return ReedyCat(cat, {z: self.deg(z) for z in objs}, direct, inverse, f"{self.name}({A},{B})")

    # ---- derived groupements ---------------------------------------------
    def truncated(self, m: int) -> "TwoGroupement":
        keep1 = {z: v for z, v in self.cells1.items() if v[2] <= m}
        keep2 = {a: v for a, v in self.cells2.items() if v[0] in keep1 and v[1] in keep1}
        return self._restrict(keep1, keep2, bound=m, name=f"{self.name}<={m}")

    def _restrict(self, keep1, keep2, bound=None, name=None, kinds=None):
        cells2 = {a: (s, d, (kinds or {}).get(a, k)) for a, (s, d, k) in keep2.items()}
        return TwoGroupement(
            name or self.name, self.objects, self.bound if bound is None else bound,
            keep1, {o: u for o, u in self.units.items() if u in keep1},
            cells2, {z: i for z, i in self.ident2.items() if z in keep1},
            {k: v for k, v in self.vcomp_table.items() if k[0] in keep2 and k[1] in keep2 and v in keep2},
            {k: v for k, v in self.hcomp1_table.items() if k[0] in keep1 and k[1] in keep1 and v in keep1},
            {k: v for k, v in self.hcomp2_table.items() if k[0] in keep2 and k[1] in keep2 and v in keep2},
            kind=self.kind, params=self.params,
        )

    # ---- naming ------------------------------------------------------------
    def fmt1(self, z) -> str:
        if self.kind == "delta_plus":
            return str(z)
        if self.kind == "px":
            return ".".join(z)
        return str(z)

    def fmt2(self, a) -> str:
        if self.kind == "delta_plus":
            n, k, f = a
            return f"{n}->{k}:[{','.join(map(str, f))}]"
        if self.kind == "px":
            c, d, f = a
            return f"{'.'.join(c)}->{'.'.join(d)}:[{','.join(map(str, f))}]"
        return str(a)

    @cached_property
    def _by_name1(self):
        return {self.fmt1(z): z for z in self.cells1}

    @cached_property
    def _by_name2(self):
        return {self.fmt2(a): a for a in self.cells2}

    def parse1(self, text: str):
        key = re.sub(r"\s+", "", text)
        try:
            return self._by_name1[key]
        except KeyError:
            raise GroupementError(f"unknown 1-cell {text!r} in {self.name}") from None

    def parse2(self, text: str):
        key = re.sub(r"\s+", "", text)
        if key in self._by_name2:
            return self._by_name2[key]
        m = re.fullmatch(r"id\((.*)\)", key)
        if m:
            return self.ident2[self.parse1(m.group(1))]
        raise GroupementError(f"unknown 2-cell {text!r} in {self.name}")

    def delta_map(self, a):
        """Underlying map in the simplex category (P_X builder only)."""
        if self.kind != "px":
            raise GroupementError("delta_map is defined for P_X groupements")
        c, d, f = a
        return (len(c) - 1, len(d) - 1, f)

    def summary(self) -> dict:
        return {
            "name": self.name, "objects": len(self.objects), "bound": self.bound,
            "cells1": len(self.cells1), "cells2": len(self.cells2),
        }

    def __repr__(self):
        return f"TwoGroupement({self.name!r}, |1-cells|={len(self.cells1)}, |2-cells|={len(self.cells2)})"


# ---------------------------------------------------------------------------
# monotone maps


def monotone_maps(n: int, k: int):
    """All monotone maps {0..n-1} -> {0..k-1}, as tuples, lexicographic."""
    if n == 0:
        return [()]
    return list(itertools.combinations_with_replacement(range(k), n))


def classify_map(f, k) -> str:
    n = len(f)
    inj = len(set(f)) == n
    surj = set(f) == set(range(k))
    if inj and surj:
        return "identity"
    if inj:
        return "direct"
    if surj:
        return "inverse"
    return "mixed"


def compose_maps(g, f):
    """g o f on tuples."""
    return tuple(g[i] for i in f)


def ordinal_sum(f, g, k):
    """Side-by-side sum; ``k`` is the target size of f."""
    return tuple(f) + tuple(k + v for v in g)


def joyal_dual(f, k):
    """psi(j) = #{i : f(i) < j} for j = 0..k: the reindexing of chain vertices."""
    return tuple(sum(1 for v in f if v < j) for j in range(k + 1))


# ---------------------------------------------------------------------------
# builders


def build_delta_plus(m: int) -> TwoGroupement:
    """Augmented simplex category truncated at ordinal m, as a one-object
    groupement under ordinal sum."""
    cells1 = {n: ("*", "*", n) for n in range(m + 1)}
    cells2 = {}
    ident2 = {}
    for n in range(m + 1):
        for k in range(m + 1):
            for f in monotone_maps(n, k):
                cells2[(n, k, f)] = (n, k, classify_map(f, k))
        ident2[n] = (n, n, tuple(range(n)))
    vcomp = {}
    for a in cells2:
        n, k, f = a
        for l in range(m + 1):
            for g in monotone_maps(k, l):
                vcomp[((k, l, g), a)] = (n, l, compose_maps(g, f))
    hcomp1 = {(s, t): s + t for s in range(m + 1) for t in range(m + 1 - s)}
    hcomp2 = {}
    for a in cells2:
        n1, k1, f1 = a
        for b in cells2:
            n2, k2, f2 = b
            if n1 + n2 <= m and k1 + k2 <= m:
                hcomp2[(a, b)] = (n1 + n2, k1 + k2, ordinal_sum(f1, f2, k1))
    return TwoGroupement(
        f"delta+<={m}", ["*"], m, cells1, {"*": 0}, cells2, ident2, vcomp, hcomp1, hcomp2,
        kind="delta_plus", params={"m": m},
    )


def _chains(X, n):
    return itertools.product(X, repeat=n + 1)


def build_PX(X, m: int) -> TwoGroupement:
    """Chains in X under concatenation, with 2-cells over maps of the
    augmented simplex category; the target chain is reindexed by the Joyal
    dual of the map."""
    X = [str(x) for x in X]
    for x in X:
        if "." in x:
            raise GroupementError(f"object name {x!r} may not contain '.'")
    cells1 = {}
    for n in range(m + 1):
        for c in _chains(X, n):
            cells1[c] = (c[0], c[-1], n)
    units = {x: (x,) for x in X}
    cells2 = {}
    ident2 = {}
    for c in cells1:
        n = len(c) - 1
        ident2[c] = (c, c, tuple(range(n)))
        for k in range(m + 1):
            for f in monotone_maps(n, k):
                psi = joyal_dual(f, k)
                d = tuple(c[j] for j in psi)
                cells2[(c, d, f)] = (c, d, classify_map(f, k))
    out2 = {}
    for a in cells2:
        out2.setdefault(a[0], []).append(a)
    vcomp = {}
    for a in cells2:
        c, d, f = a
        for b in out2.get(d, ()):
            _, e, g = b
            vcomp[(b, a)] = (c, e, compose_maps(g, f))
    hcomp1 = {}
    by_start = {}
    for c in cells1:
        by_start.setdefault(c[0], []).append(c)
    for s in cells1:
        for t in by_start.get(s[-1], ()):
            if len(s) + len(t) - 2 <= m:
                hcomp1[(s, t)] = s + t[1:]
    by_start2 = {}
    for b in cells2:
        by_start2.setdefault(b[0][0], []).append(b)
    hcomp2 = {}
    for a in cells2:
        c1, d1, f1 = a
        for b in by_start2.get(c1[-1], ()):
            c2, d2, f2 = b
            if d2[0] != d1[-1]:
                continue
            if len(c1) + len(c2) - 2 <= m and len(d1) + len(d2) - 2 <= m:
                hcomp2[(a, b)] = (c1 + c2[1:], d1 + d2[1:], ordinal_sum(f1, f2, len(d1) - 1))
    return TwoGroupement(
        f"P_X<={m}", X, m, cells1, units, cells2, ident2, vcomp, hcomp1, hcomp2,
        kind="px", params={"X": X, "m": m},
    )


def build_from_reedy1(B: ReedyCat, bound: int | None = None) -> TwoGroupement:
    """Two objects 0, 1 with hom(0, 1) = B and only units elsewhere."""
    u0, u1 = "<0>", "<1>"
    for o in B.cat.objects:
        if o in (u0, u1):
            raise GroupementError(f"object name {o!r} is reserved")
    cells1 = {u0: ("0", "0", 0), u1: ("1", "1", 0)}
    for o in B.cat.objects:
        cells1[o] = ("0", "1", B.degree[o])
    i0, i1 = "id:<0>", "id:<1>"
    cells2 = {i0: (u0, u0, "identity"), i1: (u1, u1, "identity")}
    for a in B.cat.arrows:
        cells2[a] = (B.cat.src(a), B.cat.dst(a), B.arrow_class(a))
    ident2 = {u0: i0, u1: i1}
    ident2.update({o: B.cat.identity(o) for o in B.cat.objects})
    vcomp = {(i0, i0): i0, (i1, i1): i1}
    vcomp.update(B.cat.comp_table)
    hcomp1 = {(u0, u0): u0, (u1, u1): u1}
    hcomp2 = {(i0, i0): i0, (i1, i1): i1}
    for o in B.cat.objects:
        hcomp1[(u0, o)] = o
        hcomp1[(o, u1)] = o
    for a in B.cat.arrows:
        hcomp2[(i0, a)] = a
        hcomp2[(a, i1)] = a
    if bound is None:
        bound = max(B.degree.values(), default=0)
    return TwoGroupement(
        f"B[{B.name}]", ["0", "1"], bound, cells1, {"0": u0, "1": u1}, cells2, ident2,
        vcomp, hcomp1, hcomp2, kind="reedy1", params={"B": B.name},
    )


def build_explicit(name, objects, bound, cells1, units, cells2, vcomp=(), hcomp1=(), hcomp2=()):
    """Groupement from explicit tables; identities and unit laws are filled in.

    ``cells1``: (id, A, B, degree).  ``units``: object -> 1-cell id.
    ``cells2``: (id, src, dst, kind).  Composition tables list only the
    non-trivial entries as (x, y, result).
    """
    c1 = {z: (a, b, d) for z, a, b, d in cells1}
    c2 = {}
    ident2 = {}
    for z in c1:
        i = f"id:{z}"
        ident2[z] = i
        c2[i] = (z, z, "identity")
    for a, s, d, k in cells2:
        c2[a] = (s, d, k)
    vt = {}
    for a, (s, d, _) in c2.items():
        vt[(a, ident2[s])] = a
        vt[(ident2[d], a)] = a
    for b, a, c in vcomp:
        vt[(b, a)] = c
    h1 = {}
    h2 = {}
    for o, u in units.items():
        h2[(ident2[u], ident2[u])] = ident2[u]
    for z, (a, b, _) in c1.items():
        h1[(units[a], z)] = z
        h1[(z, units[b])] = z
    for x, (s, d, _) in c2.items():
        A, B = c1[s][0], c1[s][1]
        h2[(ident2[units[A]], x)] = x
        h2[(x, ident2[units[B]])] = x
    for s, t, u in hcomp1:
        h1[(s, t)] = u
    for a, b, c in hcomp2:
        h2[(a, b)] = c
    for (s, t), u in list(h1.items()):
        h2.setdefault((ident2[s], ident2[t]), ident2[u])
    return TwoGroupement(name, objects, bound, c1, units, c2, ident2, vt, h1, h2, kind="explicit")


# ---------------------------------------------------------------------------
# mutation helpers


def reclassify(C: TwoGroupement, cell, kind: str) -> TwoGroupement:
    """Copy of C with one 2-cell given a different kind."""
    return C._restrict(C.cells1, C.cells2, name=f"{C.name}+reclassified", kinds={cell: kind})


def drop_cells(C: TwoGroupement, cells) -> TwoGroupement:
    """Copy of C with 2-cells removed together with every table entry
    mentioning them."""
    gone = set(cells)
    keep2 = {a: v for a, v in C.cells2.items() if a not in gone}
    return C._restrict(C.cells1, keep2, name=f"{C.name}-dropped")


# ---------------------------------------------------------------------------
# validators


def validate_simple_lr(C: TwoGroupement) -> Report:
    """Check every groupement invariant by enumeration."""
    rep = Report("simple-locally-reedy")
    units = C.units

    for z, (A, B, d) in C.cells1.items():
        rep.check(A in C.objects and B in C.objects, "1-cell-endpoints", z)
        rep.check(d >= 0 and d <= C.bound, "degree-range", (z, d))
    for o, u in units.items():
        rep.check(C.cells1.get(u, (None, None, None))[:2] == (o, o) and C.deg(u) == 0, "unit", (o, u))

    # each hom is a Reedy 1-category
    for (A, B) in C.hom1:
        for rule, w in C.hom_reedy(A, B).validate():
            rep.fail(rule, w)
        rep.checks += 1
    for a, (s, d, k) in C.cells2.items():
        if k == "identity":
            rep.check(C.ident2.get(s) == a and s == d, "identity-kind", a)
        if k in ("direct", "inverse"):
            ends = C.cells1[s][:2] == C.cells1[d][:2]
            rep.check(ends, "2-cell-endpoints", a)

    # horizontal composition of 1-cells
    for s in C.cells1:
        for t in C.cells1:
            if C.dst1(s) != C.src1(t):
                continue
            u = C.hcomp(s, t)
            fits = C.deg(s) + C.deg(t) <= C.bound
            if not rep.check((u is not None) == fits, "hcomp1-defined-iff-in-bound", (s, t)):
                continue
            if u is None:
                continue
            rep.check(C.deg(u) == C.deg(s) + C.deg(t), "simplicity", (s, t, u))
            rep.check(C.cells1[u][:2] == (C.src1(s), C.dst1(t)), "hcomp1-endpoints", (s, t, u))
    for z, (A, B, _) in C.cells1.items():
        rep.check(C.hcomp(units[A], z) == z and C.hcomp(z, units[B]) == z, "hcomp1-unit", z)
    for (s, t), st in C.hcomp1_table.items():
        for r in C.cells1:
            if C.src1(r) != C.dst1(t):
                continue
            tr = C.hcomp(t, r)
            lhs = C.hcomp(st, r)
            if tr is None or lhs is None:
                continue
            rep.check(C.hcomp(s, tr) == lhs, "hcomp1-associativity", (s, t, r))

    # horizontal composition of 2-cells
    for a in C.cells2:
        sa, da, _ = C.cells2[a]
        for b in C.cells2:
            sb, db, _ = C.cells2[b]
            if C.dst1(sa) != C.src1(sb):
                continue
            src = C.hcomp(sa, sb)
            dst = C.hcomp(da, db)
            c = C.hcomp2_table.get((a, b))
            if src is None or dst is None:
                rep.check(c is None, "hcomp2-outside-bound", (a, b))
                continue
            if not rep.check(c is not None, "hcomp2-missing", (a, b)):
                continue
            rep.check(C.cells2[c][:2] == (src, dst), "hcomp2-endpoints", (a, b, c))
            ka, kb, kc = C.kind2(a), C.kind2(b), C.kind2(c)
            if ka in DIRECTISH and kb in DIRECTISH:
                rep.check(kc in DIRECTISH, "direct-closed", (a, b, c))
            if ka in INVERSISH and kb in INVERSISH:
                rep.check(kc in INVERSISH, "inverse-closed", (a, b, c))
            if kc == "identity":
                rep.check(ka == "identity" and kb == "identity", "identity-reflecting", (a, b, c))
            if ka == "identity" and kb == "identity":
                rep.check(kc == "identity", "identity-preserving", (a, b, c))
    for a in C.cells2:
        A = C.src1(C.src2(a))
        B = C.dst1(C.src2(a))
        rep.check(C.hcomp2_table.get((C.ident2[units[A]], a)) == a, "hcomp2-left-unit", a)
        rep.check(C.hcomp2_table.get((a, C.ident2[units[B]])) == a, "hcomp2-right-unit", a)
    for (a, b), ab in C.hcomp2_table.items():
        last = C.dst1(C.src2(b))
        for c in C.cells2:
            if C.src1(C.src2(c)) != last:
                continue
            bc = C.hcomp2_table.get((b, c))
            lhs = C.hcomp2_table.get((ab, c))
            if bc is None or lhs is None:
                continue
            rep.check(C.hcomp2_table.get((a, bc)) == lhs, "hcomp2-associativity", (a, b, c))
        # interchange: (a2 o a) (x) (b2 o b) = (a2 (x) b2) o (a (x) b)
        for a2 in C.out2[C.dst2(a)]:
            for b2 in C.out2[C.dst2(b)]:
                top = C.hcomp2_table.get((a2, b2))
                if top is None:
                    continue
                lhs = C.hcomp2_table.get((C.vcomp_table.get((a2, a)), C.vcomp_table.get((b2, b))))
                rhs = C.vcomp_table.get((top, ab))
                rep.check(lhs is not None and lhs == rhs, "interchange", (a, b, a2, b2))
    return rep


def check_direct_divisibility(C: TwoGroupement) -> Report:
    """Unique direct lifts along every decomposition, and functoriality of
    the lifts."""
    rep = Report("direct-divisibility")
    directs = [a for a in C.cells2 if C.is_direct(a)]
    lift = {}
    for alpha in directs:
        z2 = C.dst2(alpha)
        for s2, t2 in C.splits[z2]:
            cands = C.direct_lifts(alpha, s2, t2)
            if rep.check(len(cands) == 1, "lift-count", {"cell": alpha, "split": (s2, t2), "lifts": cands}):
                lift[(alpha, s2, t2)] = cands[0]
    for alpha in directs:
        for beta in C.out2[C.dst2(alpha)]:
            if not C.is_direct(beta):
                continue
            comp = C.vcomp_table.get((beta, alpha))
            if comp is None:
                rep.fail("missing-composite", (beta, alpha))
                continue
            for s3, t3 in C.splits[C.dst2(beta)]:
                lb = lift.get((beta, s3, t3))
                if lb is None:
                    continue
                la = lift.get((alpha, C.src2(lb[0]), C.src2(lb[1])))
                lc = lift.get((comp, s3, t3))
                if la is None or lc is None:
                    continue
                want = (C.vcomp_table.get((lb[0], la[0])), C.vcomp_table.get((lb[1], la[1])))
                rep.check(lc == want, "lift-functoriality", {"cells": (beta, alpha), "split": (s3, t3)})
    return rep
