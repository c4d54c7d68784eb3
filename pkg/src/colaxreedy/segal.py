"""Joyal duality, the categories Delta_X, and the correspondence between
normal colax diagrams on P_X and unital presheaves on Delta_X.

Conventions: a Delta^+ map n -> k is a monotone tuple of length n with
values < k.  An Omega map {0..k} -> {0..n} is a monotone tuple of length
k + 1 with first entry 0 and last entry n.  A Delta_X morphism is a triple
(phi, s, t) with s[i] == t[phi[i]].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .base import BaseArrow, BaseCategory
from .colax import ColaxDiagram, Icon
from .fincat import FinCat, ReedyCat
from .reedy2 import TwoGroupement, build_PX, compose_maps, joyal_dual, monotone_maps
from .report import Report


class SegalError(Exception):
    pass


# ---------------------------------------------------------------------------
# Joyal duality


def omega_maps(k: int, n: int):
    """Extremity-preserving monotone maps {0..k} -> {0..n}."""
    return [f for f in monotone_maps(k + 1, n + 1) if f[0] == 0 and f[-1] == n]


def omega_compose(a, b):
    """a o b for Omega maps."""
    return tuple(a[j] for j in b)


def omega_glue(a, b):
    """Gluing at the extremities: the image of an ordinal sum."""
    n = a[-1]
    return tuple(a) + tuple(n + v for v in b[1:])


T_MU = (0, 2)
T_ETA = (0, 0)
T_ID1 = (0, 1)


def _collapse_image(m: int):
    """Image of the unique Delta^+ map m -> 1, built from mu and eta."""
    if m == 0:
        return T_ETA
    out = T_ID1
    for _ in range(m - 1):
        # u_{j+1} = mu o (u_j + id_1), so T(u_{j+1}) = T(u_j + id_1) o T(mu)
        out = omega_compose(omega_glue(out, T_ID1), T_MU)
    return out


def joyal_forward(f, k: int):
    """T(f) for f: n -> k, from the fibre decomposition f = sum_j (f^-1(j) -> 1)."""
    out = (0,)
    for j in range(k):
        out = omega_glue(out, _collapse_image(sum(1 for v in f if v == j)))
    return out


def joyal_backward(psi, n: int):
    """The Delta^+ map n -> k with forward image psi: phi(i) = #{j >= 1 : psi(j) <= i}."""
    return tuple(sum(1 for j in range(1, len(psi)) if psi[j] <= i) for i in range(n))


@dataclass
class JoyalIso:
    m: int
    forward: dict  # (n, k, f) -> Omega map {0..k} -> {0..n}
    backward: dict  # (k, n, psi) -> f


def joyal_T(m: int) -> JoyalIso:
    fw, bw = {}, {}
    for n in range(m + 1):
        for k in range(m + 1):
            for f in monotone_maps(n, k):
                psi = joyal_forward(f, k)
                fw[(n, k, f)] = psi
                bw[(k, n, psi)] = f
    return JoyalIso(m, fw, bw)


def check_joyal(J: JoyalIso) -> Report:
    """Bijectivity per hom-set, agreement with the closed formula, inverse
    tables, contravariant functoriality and compatibility with sums."""
    rep = Report("joyal")
    m = J.m
    for n in range(m + 1):
        for k in range(m + 1):
            dom = monotone_maps(n, k)
            cod = set(omega_maps(k, n))
            imgs = [J.forward[(n, k, f)] for f in dom]
            rep.check(len(dom) == len(cod), "hom-cardinality", (n, k, len(dom), len(cod)))
            rep.check(set(imgs) == cod and len(set(imgs)) == len(imgs), "bijective", (n, k))
            for f, psi in zip(dom, imgs):
                rep.check(psi == joyal_dual(f, k), "closed-formula", (n, k, f))
                rep.check(joyal_backward(psi, n) == f, "backward-inverse", (n, k, f))
            for psi in cod:
                rep.check(J.forward[(n, k, joyal_backward(psi, n))] == psi, "forward-inverse", (k, n, psi))
    for n, k, l in itertools.product(range(m + 1), repeat=3):
        for f in monotone_maps(n, k):
            for g in monotone_maps(k, l):
                lhs = J.forward[(n, l, compose_maps(g, f))]
                rhs = omega_compose(J.forward[(n, k, f)], J.forward[(k, l, g)])
                rep.check(lhs == rhs, "functorial", (f, g))
    for n1, k1, n2, k2 in itertools.product(range(m + 1), repeat=4):
        if n1 + n2 > m or k1 + k2 > m:
            continue
        for f in monotone_maps(n1, k1):
            for g in monotone_maps(n2, k2):
                s = tuple(f) + tuple(k1 + v for v in g)
                rep.check(J.forward[(n1 + n2, k1 + k2, s)] == omega_glue(J.forward[(n1, k1, f)], J.forward[(n2, k2, g)]),
                          "monoidal", (f, g))
    return rep


# ---------------------------------------------------------------------------
# Delta_X


@dataclass
class DeltaX:
    X: tuple
    n_max: int
    objects: list
    morphisms: list  # (phi, s, t)
    _hom: dict = field(default_factory=dict, repr=False)

    def hom(self, s, t):
        return self._hom.get((s, t), [])

    def identity(self, s):
        return (tuple(range(len(s))), s, s)

    @staticmethod
    def compose(b, a):
        """b o a for a: s -> t, b: t -> u."""
        return (compose_maps(b[0], a[0]), a[1], b[2])

    def lift(self, phi, t):
        """The unique morphism over phi with target t."""
        s = tuple(t[v] for v in phi)
        return (tuple(phi), s, tuple(t))


def build_delta_X(X, n_max: int) -> DeltaX:
    X = tuple(str(x) for x in X)
    objects = [s for n in range(n_max + 1) for s in itertools.product(X, repeat=n + 1)]
    morphisms, hom = [], {}
    for s in objects:
        for t in objects:
            for phi in monotone_maps(len(s), len(t)):
                if all(s[i] == t[v] for i, v in enumerate(phi)):
                    mor = (phi, s, t)
                    morphisms.append(mor)
                    hom.setdefault((s, t), []).append(mor)
    return DeltaX(X, n_max, objects, morphisms, hom)


def check_delta_X(D: DeltaX) -> Report:
    """Unique lifting over Delta, and p an isomorphism when |X| = 1."""
    rep = Report("delta-x")
    over = {}
    for mor in D.morphisms:
        over.setdefault((mor[0], mor[2]), []).append(mor)
    for t in D.objects:
        for n in range(D.n_max + 1):
            for phi in monotone_maps(n + 1, len(t)):
                found = over.get((phi, t), [])
                rep.check(len(found) == 1, "unique-lift", (phi, t, len(found)))
                if len(found) == 1:
                    rep.check(found[0] == D.lift(phi, t), "lift-formula", (phi, t))
    if len(D.X) == 1:
        for n in range(D.n_max + 1):
            rep.check(sum(1 for s in D.objects if len(s) == n + 1) == 1, "p-iso-objects", n)
        for s in D.objects:
            for t in D.objects:
                rep.check(len(D.hom(s, t)) == len(monotone_maps(len(s), len(t))), "p-iso-homs", (s, t))
    return rep


def is_omega(mor) -> bool:
    phi, s, t = mor
    return phi[0] == 0 and phi[-1] == len(t) - 1


# ---------------------------------------------------------------------------
# the isomorphism J between P_X(x, y) and Omega(x, y)^op


@dataclass
class JTable:
    x: str
    y: str
    objects: dict  # chain -> sequence
    cells: dict  # 2-cell (c, d, f) -> Delta_X morphism d -> c


def iso_J(C: TwoGroupement, x, y, D: DeltaX | None = None):
    """J on P_X(x, y) with its verification report.

    Omega(x, y) is the subcategory of Delta_X of sequences from x to y with
    morphisms over Omega; J sends a 2-cell c -> d to the Omega morphism
    d -> c over the Joyal dual of its Delta^+ map.
    """
    D = D or build_delta_X(C.objects, C.bound)
    rep = Report("iso-J")
    chains = [c for c in C.cells1 if c[0] == x and c[-1] == y]
    objects = {c: tuple(c) for c in chains}
    cells = {}
    for a in C.cells2:
        c, d, f = a
        if c[0] != x or c[-1] != y:
            continue
        psi = joyal_forward(f, len(d) - 1)
        mor = (psi, d, c)
        rep.check(all(d[j] == c[v] for j, v in enumerate(psi)) and is_omega(mor), "lands-in-omega", C.fmt2(a))
        cells[a] = mor
    for c in chains:
        for d in chains:
            src = [a for a in C.hom2(c, d)]
            tgt = [m for m in D.hom(d, c) if is_omega(m)]
            imgs = {cells[a] for a in src}
            rep.check(len(src) == len(tgt) and imgs == set(tgt), "hom-bijection", (C.fmt1(c), C.fmt1(d)))
        rep.check(cells[C.identity(c)] == D.identity(c), "identities", C.fmt1(c))
    for (b, a), ba in C.vcomp_table.items():
        if a in cells and b in cells:
            rep.check(cells[ba] == D.compose(cells[a], cells[b]), "functorial", (C.fmt2(b), C.fmt2(a)))
    top = (x, y)
    if top in objects:
        rep.check(all(len(C.hom2(c, top)) == 1 for c in chains), "terminal", C.fmt1(top))
    return JTable(x, y, objects, cells), rep


# ---------------------------------------------------------------------------
# unital presheaves


@dataclass
class UnitalPresheaf:
    D: DeltaX
    base: BaseCategory
    val: dict  # sequence -> BaseObject
    action: dict  # morphism (phi, s, t) -> BaseArrow val[t] -> val[s]
    name: str = ""

    def act(self, mor) -> BaseArrow:
        return self.action[mor]


def validate_presheaf(P: UnitalPresheaf, pairs: bool = True) -> Report:
    rep = Report("presheaf")
    B, D = P.base, P.D
    for s in D.objects:
        if len(s) == 1:
            rep.check(P.val[s] == B.terminal, "unital", s)
        rep.check(P.act(D.identity(s)) == B.identity(P.val[s]), "identity", s)
    for mor in D.morphisms:
        a = P.act(mor)
        rep.check(a.src == P.val[mor[2]] and a.dst == P.val[mor[1]], "endpoints", mor)
    if pairs:
        by_src = {}
        for mor in D.morphisms:
            by_src.setdefault(mor[1], []).append(mor)
        for a in D.morphisms:
            for b in by_src[a[2]]:
                ba = D.compose(b, a)
                rep.check(B.compose(P.act(b), P.act(a)) == P.act(ba), "functorial", (a, b))
    return rep


def _require_cartesian(B: BaseCategory):
    if not B.cartesian:
        raise SegalError(f"{B.kind} is not cartesian; the presheaf correspondence needs a cartesian tensor")


def _projection(B: BaseCategory, a, b, first: bool) -> BaseArrow:
    """pr_1 or pr_2 out of a x b."""
    n = B.tensor_obj(a, b)
    if first:
        table = [i // b.size for i in range(n.size)] if b.size else []
        return B.arrow(n, a, table)
    table = [i % b.size for i in range(n.size)]
    return B.arrow(n, b, table)


def _drop_last(F: ColaxDiagram, u) -> BaseArrow:
    """F(u0..ur) -> F(u0..u_{r-1}) as pr_1 o colax."""
    B = F.base
    s, t = u[:-1], u[-2:]
    return B.compose(F.cx(s, t), _projection(B, F.obj(s), F.obj(t), True))


def _drop_first(F: ColaxDiagram, u) -> BaseArrow:
    B = F.base
    s, t = u[:2], u[1:]
    return B.compose(F.cx(s, t), _projection(B, F.obj(s), F.obj(t), False))


def _restrict(F: ColaxDiagram, t, a: int, b: int) -> BaseArrow:
    """F(t) -> F(t[a..b]) through outer cofaces: last vertices first."""
    B = F.base
    out = B.identity(F.obj(t))
    u = tuple(t)
    while len(u) - 1 > b:
        out = B.compose(out, _drop_last(F, u))
        u = u[:-1]
    for _ in range(a):
        out = B.compose(out, _drop_first(F, u))
        u = u[1:]
    return out


def presheaf_action(F: ColaxDiagram, mor) -> BaseArrow:
    """Delta_F on one morphism: restriction to the spanned interval, then
    the 2-cell for the Omega part."""
    B = F.base
    phi, s, t = mor
    a, b = phi[0], phi[-1]
    sub = t[a:b + 1]
    omega = tuple(v - a for v in phi)
    f = joyal_backward(omega, len(sub) - 1)
    cell = (sub, s, f)
    return B.compose(_restrict(F, t, a, b), F.arr(cell))


def to_presheaf(F: ColaxDiagram, D: DeltaX | None = None) -> UnitalPresheaf:
    C, B = F.C, F.base
    _require_cartesian(B)
    if C.kind != "px":
        raise SegalError("to_presheaf needs a diagram on P_X")
    D = D or build_delta_X(C.objects, F.level)
    val = {s: F.obj(s) for s in D.objects}
    action = {mor: presheaf_action(F, mor) for mor in D.morphisms}
    return UnitalPresheaf(D, B, val, action, F.name)


def from_presheaf(P: UnitalPresheaf, C: TwoGroupement | None = None) -> ColaxDiagram:
    B, D = P.base, P.D
    _require_cartesian(B)
    C = C or build_PX(D.X, D.n_max)
    for x in D.X:
        if P.val[(x,)] != B.terminal:
            raise SegalError(f"presheaf is not unital at ({x})")
    val1 = {c: P.val[c] for c in C.cells1 if len(c) - 1 <= D.n_max}
    val2 = {}
    for a in C.cells2:
        c, d, f = a
        if c in val1 and d in val1 and not C.is_identity2(a):
            val2[a] = P.act((joyal_dual(f, len(d) - 1), d, c))
    colax = {}
    for (s, t), u in C.hcomp1_table.items():
        if C.is_unit(s) or C.is_unit(t) or u not in val1:
            continue
        p1 = P.act((tuple(range(len(s))), s, u))
        p2 = P.act((tuple(range(len(s) - 1, len(u))), t, u))
        nt = P.val[t].size
        colax[(s, t)] = B.arrow(P.val[u], B.tensor_obj(P.val[s], P.val[t]),
                                [i * nt + j for i, j in zip(p1.data, p2.data)])
    return ColaxDiagram(C, B, val1, val2, colax, D.n_max, P.name)


def presheaf_tables_equal(P: UnitalPresheaf, Q: UnitalPresheaf) -> bool:
    return P.val == Q.val and P.action == Q.action


def transport_icon(sigma: Icon, P: UnitalPresheaf | None = None, Q: UnitalPresheaf | None = None):
    """(P, Q, components) for the presheaf map induced by an icon."""
    P = P or to_presheaf(sigma.src)
    Q = Q or to_presheaf(sigma.dst, P.D)
    return P, Q, {s: sigma.at(s) for s in P.D.objects}


def check_presheaf_map(P: UnitalPresheaf, Q: UnitalPresheaf, comps: dict) -> Report:
    rep = Report("presheaf-map")
    B = P.base
    for mor in P.D.morphisms:
        _, s, t = mor
        rep.check(B.compose(P.act(mor), comps[s]) == B.compose(comps[t], Q.act(mor)), "naturality", mor)
    return rep


# ---------------------------------------------------------------------------
# classical Reedy structure on presheaves


def presheaf_reedy(D: DeltaX) -> ReedyCat:
    """Delta_X^op with degree = length - 1; reversed surjections are direct
    and reversed injections inverse."""
    arrows, direct, inverse, comp, idents = {}, set(), set(), {}, {}
    into = {}
    for mor in D.morphisms:
        phi, s, t = mor
        arrows[mor] = (t, s)
        into.setdefault(t, []).append(mor)
        if mor == D.identity(s):
            idents[s] = mor
        elif set(phi) == set(range(len(t))):
            direct.add(mor)
        elif len(set(phi)) == len(phi):
            inverse.add(mor)
    for a in D.morphisms:  # op-arrow a: t -> s
        for b in into.get(a[1], ()):  # op-arrow b: s -> r, i.e. b: r -> s in Delta_X
            comp[(b, a)] = D.compose(a, b)
    cat = FinCat(D.objects, arrows, comp, idents)
    degree = {s: len(s) - 1 for s in D.objects}
    return ReedyCat(cat, degree, frozenset(direct), frozenset(inverse), f"Delta_{''.join(D.X)}^op")


def to_classical(P: UnitalPresheaf, R: ReedyCat):
    from .classical import Diagram

    return Diagram(R, P.base, dict(P.val), dict(P.action))


def _classical_pair(sigma: Icon, R: ReedyCat | None, D: DeltaX | None):
    from .classical import NatTrans

    P = to_presheaf(sigma.src, D)
    Q = to_presheaf(sigma.dst, P.D)
    R = R or presheaf_reedy(P.D)
    _, _, comps = transport_icon(sigma, P, Q)
    return NatTrans(to_classical(P, R), to_classical(Q, R), comps)


def presheaf_verdicts(sigma: Icon, R: ReedyCat | None = None, D: DeltaX | None = None):
    """Classical Reedy (we, cof, fib) of the presheaf map transported from sigma."""
    from .classical import classify

    return classify(_classical_pair(sigma, R, D))


def presheaf_membership(sigma: Icon, system: str, R: ReedyCat | None = None, D: DeltaX | None = None):
    """(relative latching maps in the left class, relative matching maps in
    the right class) for the transported presheaf map."""
    from .classical import membership

    return membership(_classical_pair(sigma, R, D), system)


# ---------------------------------------------------------------------------
# Segal conditions


def _edges(C: TwoGroupement, z):
    for parts in C.decompositions(z):
        if all(C.deg(p) == 1 for p in parts):
            return parts
    return None


def check_segal_conditions(F: ColaxDiagram) -> Report:
    """For each 1-cell of degree >= 2, whether the total colaxity map to
    the tensor of its degree-one pieces is a weak equivalence."""
    rep = Report("segal")
    C, B = F.C, F.base
    verdicts = {}
    for z in F.cells1():
        if C.is_unit(z) or C.deg(z) < 2:
            continue
        parts = _edges(C, z)
        if parts is None:
            continue
        ok = B.model.we(F.split(parts))
        verdicts[C.fmt1(z)] = ok
        rep.check(ok, "segal-map", C.fmt1(z))
    rep.info["chains"] = verdicts
    return rep
