"""Relative latching and matching maps, Reedy classification of icons,
limits and colimits of colax diagrams, and the degree-wise factorization
and lifting constructions."""

from __future__ import annotations

from dataclasses import dataclass, field

from .base import BaseArrow, BaseCategory, Cone, LiftPreconditionError
from .colax import (
    ColaxDiagram,
    ColaxError,
    Icon,
    _Shape,
    iz,
    lat,
    mat,
    validate_colax,
    validate_icon,
)
from .fincat import FinCat
from .reedy2 import TwoGroupement, check_direct_divisibility


class HomotopyError(ColaxError):
    pass


class DivisibilityError(HomotopyError):
    """The groupement fails check_direct_divisibility."""


class LiftObstruction(HomotopyError):
    """No base lift exists at some 1-cell; ``z`` and ``degree`` locate it."""

    def __init__(self, z, degree, msg):
        super().__init__(msg)
        self.z = z
        self.degree = degree


def require_divisible(C: TwoGroupement) -> None:
    rep = C.__dict__.get("_divisibility_report")
    if rep is None:
        rep = C.__dict__["_divisibility_report"] = check_direct_divisibility(C)
    if not rep.ok:
        rule, w = rep.violations[0]
        raise DivisibilityError(f"{C.name} is not direct-divisible ({rule}: {w}); see check_direct_divisibility")


def stages(F: ColaxDiagram):
    """Non-unit 1-cells in the domain of F grouped by increasing degree."""
    C = F.C
    by = {}
    for z in F.cells1():
        if not C.is_unit(z):
            by.setdefault(C.deg(z), []).append(z)
    return [(d, by[d]) for d in sorted(by)]


# ---------------------------------------------------------------------------
# induced maps on latching and matching objects


def latching_map(sigma: Icon, z) -> BaseArrow:
    """L(F, z) -> L(G, z) induced by sigma: F -> G."""
    F, G = sigma.src, sigma.dst
    B = F.base
    LF, LG = lat(F, z), lat(G, z)
    legs = [B.comp(LG.cocone.legs[k], sigma.at(F.C.src2(a))) for k, a in enumerate(LF.index.objects)]
    return B.colimit_mediator(LF.cocone, legs, target=LG.obj)


def matching_map(sigma: Icon, z) -> BaseArrow:
    """M(F, z) -> M(G, z) induced by sigma: F -> G."""
    F, G = sigma.src, sigma.dst
    B = F.base
    MF, MG = mat(F, z), mat(G, z)
    legs = [
        B.comp(B.tensor_many([sigma.at(x) for x in xs]), MF.cone.legs[k])
        for k, (xs, _) in enumerate(MF.index.objects)
    ]
    return B.limit_mediator(MG.cone, legs, source=MF.obj)


@dataclass
class RelativeAt:
    z: object
    pushout: Cone  # legs (F z, L(G,z), L(F,z))
    latch_rel: BaseArrow
    pullback: Cone  # legs (G z, M(F,z), M(G,z))
    match_rel: BaseArrow


@dataclass
class RelativeMaps:
    sigma: Icon
    at: dict

    def latch(self, z) -> BaseArrow:
        return self.at[z].latch_rel

    def match(self, z) -> BaseArrow:
        return self.at[z].match_rel


def relative_at(sigma: Icon, z) -> RelativeAt:
    F, G = sigma.src, sigma.dst
    B = F.base
    sz = sigma.at(z)
    LF, LG = lat(F, z), lat(G, z)
    po = B.pushout(LF.to_z, latching_map(sigma, z))
    latch_rel = B.colimit_mediator(po, [sz, LG.to_z, B.comp(sz, LF.to_z)], target=G.obj(z))
    MF, MG = mat(F, z), mat(G, z)
    pb = B.pullback(MG.from_z, matching_map(sigma, z))
    match_rel = B.limit_mediator(pb, [sz, MF.from_z, B.comp(MG.from_z, sz)], source=F.obj(z))
    return RelativeAt(z, po, latch_rel, pb, match_rel)


def relative_maps(sigma: Icon) -> RelativeMaps:
    rep = validate_icon(sigma)
    if not rep.ok:
        raise HomotopyError(f"invalid icon: {rep.violations[0]}")
    out = {}
    for _, zs in stages(sigma.src):
        for z in zs:
            out[z] = relative_at(sigma, z)
    return RelativeMaps(sigma, out)


@dataclass
class Classification:
    is_we: bool
    is_cof: bool
    is_fib: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def flags(self):
        return (self.is_we, self.is_cof, self.is_fib)


def classify(sigma: Icon, rel: RelativeMaps | None = None) -> Classification:
    F = sigma.src
    C, B = F.C, F.base
    model = B.model
    rel = rel or relative_maps(sigma)
    wit = {}
    we = True
    for z in F.cells1():
        if not model.we(sigma.at(z)):
            we = False
            wit.setdefault("we", C.fmt1(z))
    cof = fib = True
    for z, r in rel.at.items():
        if cof and not model.cof(r.latch_rel):
            cof = False
            wit["cof"] = C.fmt1(z)
        if fib and not model.fib(r.match_rel):
            fib = False
            wit["fib"] = C.fmt1(z)
    return Classification(we, cof, fib, wit)


def in_left(sigma: Icon, system: str, rel: RelativeMaps | None = None) -> bool:
    """Every relative latching map lies in the left class of ``system``."""
    fs = sigma.src.base.model.system(system)
    rel = rel or relative_maps(sigma)
    return all(fs.left(r.latch_rel) for r in rel.at.values())


def in_right(sigma: Icon, system: str, rel: RelativeMaps | None = None) -> bool:
    fs = sigma.src.base.model.system(system)
    rel = rel or relative_maps(sigma)
    return all(fs.right(r.match_rel) for r in rel.at.values())


# ---------------------------------------------------------------------------
# shared stage machinery


def _fill_from_latching(C, B, val2, LK, to_z):
    for k, a in enumerate(LK.index.objects):
        val2[a] = B.comp(to_z, LK.cocone.legs[k])


def _fill_from_matching(C, B, val2, colax, MK, from_z, z):
    for k, (xs, beta) in enumerate(MK.index.objects):
        leg = B.comp(MK.cone.legs[k], from_z)
        if C.is_identity2(beta):
            if len(xs) == 2:
                colax[(xs[0], xs[1])] = leg
        elif len(xs) == 1:
            val2[beta] = leg
    for beta in C.out2[z]:
        if C.kind2(beta) == "inverse" and C.is_unit(C.dst2(beta)):
            raise HomotopyError(f"inverse 2-cell {C.fmt2(beta)} into a unit is not supported")


def _fill_mixed(C, B, val1, val2, degree, level):
    """Mixed 2-cells touching the new degree, as direct o inverse."""
    for a, (s, d, kind) in C.cells2.items():
        if a in val2 or kind == "identity":
            continue
        ds, dd = C.deg(s), C.deg(d)
        if max(ds, dd) != degree or ds > level or dd > level:
            continue
        inv, dr = C.reedy_factorize(a)
        parts = [B.identity(val1[C.src2(x)]) if C.is_identity2(x) else val2[x] for x in (dr, inv)]
        val2[a] = B.comp(*parts)


def _units(C, B):
    return {u: B.unit for u in C.units.values()}


def _ident_comps(C, B):
    return {u: B.identity(B.unit) for u in C.units.values()}


# ---------------------------------------------------------------------------
# factorization


@dataclass
class Factorization:
    lam: Icon
    K: ColaxDiagram
    rho: Icon
    system: str


def factor_icon(sigma: Icon, system: str = "acof_fib") -> Factorization:
    """Degree-wise factorization sigma = rho o lam with relative latching
    maps of lam in the left class and relative matching maps of rho in the
    right class."""
    F, G = sigma.src, sigma.dst
    C, B = F.C, F.base
    require_divisible(C)
    fs = B.model.system(system)
    kv1, kv2, kcx = _units(C, B), {}, {}
    lam, rho = _ident_comps(C, B), _ident_comps(C, B)
    for d, zs in stages(F):
        Kp = ColaxDiagram(C, B, kv1, kv2, kcx, level=d - 1, name="K")
        li, ri = Icon(F, Kp, lam), Icon(Kp, G, rho)
        new1, new_from, new_to = {}, {}, {}
        for z in zs:
            LF, LK, LG = lat(F, z), lat(Kp, z), lat(G, z)
            MF, MK, MG = mat(F, z), mat(Kp, z), mat(G, z)
            sz = sigma.at(z)
            P = B.pushout(LF.to_z, latching_map(li, z))
            Q = B.pullback(MG.from_z, matching_map(ri, z))
            from_F = B.limit_mediator(
                Q, [sz, B.comp(matching_map(li, z), MF.from_z), B.comp(MG.from_z, sz)], source=F.obj(z))
            g_part = B.comp(LG.to_z, latching_map(ri, z))
            from_LK = B.limit_mediator(Q, [g_part, iz(Kp, z), B.comp(MG.from_z, g_part)], source=LK.obj)
            h = B.colimit_mediator(P, [from_F, from_LK, B.comp(from_F, LF.to_z)], target=Q.apex)
            i, p = fs.factor(h)
            new1[z] = i.dst
            lam[z] = B.comp(i, P.legs[0])
            rho[z] = B.comp(Q.legs[0], p)
            new_to[z] = (LK, B.comp(i, P.legs[1]))
            new_from[z] = (MK, B.comp(Q.legs[1], p))
        kv1.update(new1)
        for z in zs:
            _fill_from_latching(C, B, kv2, *new_to[z])
            _fill_from_matching(C, B, kv2, kcx, *new_from[z], z)
        _fill_mixed(C, B, kv1, kv2, d, F.level)
        stage = ColaxDiagram(C, B, kv1, kv2, kcx, level=d, name="K")
        rep = validate_colax(stage, only_degree=d)
        if not rep.ok:
            raise HomotopyError(f"factorization stage {d} is not coherent: {rep.violations[0]}")
    K = ColaxDiagram(C, B, kv1, kv2, kcx, level=F.level, name="K")
    return Factorization(Icon(F, K, lam), K, Icon(K, G, rho), system)


# ---------------------------------------------------------------------------
# lifting


def check_square(lam: Icon, rho: Icon, top: Icon, bottom: Icon) -> None:
    B = lam.src.base
    for z in lam.src.cells1():
        if B.comp(rho.at(z), top.at(z)) != B.comp(bottom.at(z), lam.at(z)):
            raise LiftPreconditionError(f"square does not commute at {lam.src.C.fmt1(z)}")


def lift_icon(lam: Icon, rho: Icon, top: Icon, bottom: Icon) -> Icon:
    """Diagonal h: B -> X with h o lam = top and rho o h = bottom for the
    square lam: A -> B, rho: X -> Y, top: A -> X, bottom: B -> Y.

    Raises LiftObstruction naming the first 1-cell with no base lift.
    """
    A, Bd = lam.src, lam.dst
    X, Y = rho.src, rho.dst
    C, B = A.C, A.base
    check_square(lam, rho, top, bottom)
    h = _ident_comps(C, B)
    for d, zs in stages(A):
        hp = Icon(Bd, X, h)
        new = {}
        for z in zs:
            LA, LB, LX = lat(A, z), lat(Bd, z), lat(X, z)
            MB, MX, MY = mat(Bd, z), mat(X, z), mat(Y, z)
            lz, rz, tz, bz = lam.at(z), rho.at(z), top.at(z), bottom.at(z)
            P = B.pushout(LA.to_z, latching_map(lam, z))
            latch_rel = B.colimit_mediator(P, [lz, LB.to_z, B.comp(lz, LA.to_z)], target=Bd.obj(z))
            Q = B.pullback(MY.from_z, matching_map(rho, z))
            match_rel = B.limit_mediator(Q, [rz, MX.from_z, B.comp(MY.from_z, rz)], source=X.obj(z))
            t_sq = B.colimit_mediator(
                P, [tz, B.comp(LX.to_z, latching_map(hp, z)), B.comp(tz, LA.to_z)], target=X.obj(z))
            b_sq = B.limit_mediator(
                Q, [bz, B.comp(matching_map(hp, z), MB.from_z), B.comp(MY.from_z, bz)], source=Bd.obj(z))
            l = B.find_lift(latch_rel, match_rel, t_sq, b_sq)
            if l is None:
                raise LiftObstruction(z, d, f"no base lift at {C.fmt1(z)} (degree {d})")
            new[z] = l
        h.update(new)
    out = Icon(Bd, X, h)
    rep = validate_icon(out)
    if not rep.ok:
        raise HomotopyError(f"assembled lift is not an icon: {rep.violations[0]}")
    return out


def icons_equal(f: Icon, g: Icon) -> bool:
    return all(f.at(z) == g.at(z) for z in f.src.cells1())


# ---------------------------------------------------------------------------
# colimits


def _jshape(J: FinCat) -> _Shape:
    arrows = [a for a in J.arrows if not J.is_identity(a)]
    return _Shape(list(J.objects), arrows, {a: (J.src(a), J.dst(a)) for a in arrows})


@dataclass
class ColimitResult:
    diagram: ColaxDiagram
    cocone: dict  # J-object -> Icon
    cones: dict = field(repr=False, default_factory=dict)  # z -> (Cone, unit-source cells)
    objects: list = field(default_factory=list)

    def mediator(self, H: ColaxDiagram, legs: dict) -> Icon:
        """Unique icon colim -> H through a cocone ``legs`` (J-object -> Icon)."""
        E = self.diagram
        C, B = E.C, E.base
        comps = _ident_comps(C, B)
        for z, (cone, alphas) in self.cones.items():
            ls = [legs[j].at(z) for j in self.objects] + [H.arr(a) for a in alphas]
            comps[z] = B.colimit_mediator(cone, ls, target=H.obj(z))
        return Icon(E, H, comps)


def colimit_colax(J: FinCat, objs: dict, arrs: dict, C: TwoGroupement | None = None,
                  base: BaseCategory | None = None, level: int | None = None) -> ColimitResult:
    """Level-wise colimit; each 2-cell from a unit into z adds one copy of
    the unit to the diagram at z so the result stays normal."""
    J_objs = list(J.objects)
    if J_objs:
        C = objs[J_objs[0]].C
        base = objs[J_objs[0]].base
        level = min(objs[j].level for j in J_objs) if level is None else level
    if C is None or base is None:
        raise HomotopyError("empty colimit needs an explicit groupement and base")
    level = C.bound if level is None else level
    B = base
    shape = _jshape(J)
    v1, v2, cx = _units(C, B), {}, {}
    cones = {}
    order = [z for z in C.cells1 if C.deg(z) <= level and not C.is_unit(z)]
    for z in order:
        alphas = [a for a in C.in2[z] if C.is_unit(C.src2(a))]
        nodes = [objs[j].obj(z) for j in J_objs] + [B.unit] * len(alphas)
        pos = {j: n for n, j in enumerate(J_objs)}
        edges = [(pos[shape.src(a)], pos[shape.dst(a)], arrs[a].at(z)) for a in shape.arrows]
        for k, al in enumerate(alphas):
            for j in J_objs:
                edges.append((len(J_objs) + k, pos[j], objs[j].arr(al)))
        cone = B.colimit(nodes, edges)
        cones[z] = (cone, alphas)
        v1[z] = cone.apex

    def leg(z, j):
        return cones[z][0].legs[J_objs.index(j)]

    def unit_leg(z, alpha):
        """I -> colim at z for a unit-source 2-cell alpha."""
        if C.is_unit(z):
            return B.identity(B.unit)
        cone, alphas = cones[z]
        return cone.legs[len(J_objs) + alphas.index(alpha)]

    for a, (s, d, _) in C.cells2.items():
        if C.deg(s) > level or C.deg(d) > level or C.is_identity2(a):
            continue
        if C.is_unit(s):
            v2[a] = unit_leg(d, a)
            continue
        cone, alphas = cones[s]
        ls = [B.comp(leg(d, j), objs[j].arr(a)) for j in J_objs]
        ls += [unit_leg(d, C.vcomp(a, al)) for al in alphas]
        v2[a] = B.colimit_mediator(cone, ls, target=v1[d])
    for (s, t), u in C.hcomp1_table.items():
        if C.deg(u) > level or C.is_unit(s) or C.is_unit(t):
            continue
        cone, alphas = cones[u]
        ls = [B.comp(B.tensor(leg(s, j), leg(t, j)), objs[j].cx(s, t)) for j in J_objs]
        for al in alphas:
            a1, a2 = C.split_direct(al, s, t)
            ls.append(B.tensor(unit_leg(s, a1), unit_leg(t, a2)))
        cx[(s, t)] = B.colimit_mediator(cone, ls, target=B.tensor_obj(v1[s], v1[t]))
    E = ColaxDiagram(C, B, v1, v2, cx, level, "colim")
    cocone = {}
    for j in J_objs:
        comps = _ident_comps(C, B)
        comps.update({z: leg(z, j) for z in order})
        cocone[j] = Icon(objs[j], E, comps)
    return ColimitResult(E, cocone, cones, J_objs)


# ---------------------------------------------------------------------------
# limits


@dataclass
class LimitStage:
    z: object
    x_inf: Cone  # lim_J X_j z
    wide: Cone  # legs (X_inf, M(E,z), M(X_j,z) ...)


@dataclass
class LimitResult:
    diagram: ColaxDiagram
    cone: dict  # J-object -> Icon E -> X_j
    stages: dict = field(repr=False, default_factory=dict)
    objects: list = field(default_factory=list)

    def mediator(self, H: ColaxDiagram, legs: dict) -> Icon:
        """Unique icon H -> lim through a cone ``legs`` (J-object -> Icon)."""
        E = self.diagram
        C, B = E.C, E.base
        comps = _ident_comps(C, B)
        for d, zs in stages(E):
            part = Icon(H, E, comps)
            new = {}
            for z in zs:
                st = self.stages[z]
                xpart = B.limit_mediator(st.x_inf, [legs[j].at(z) for j in self.objects], source=H.obj(z))
                mpart = B.comp(matching_map(part, z), mat(H, z).from_z)
                rest = [B.comp(mat(self.cone[j].dst, z).from_z, legs[j].at(z)) for j in self.objects]
                new[z] = B.limit_mediator(st.wide, [xpart, mpart] + rest, source=H.obj(z))
            comps.update(new)
        return Icon(H, E, comps)


def limit_colax(J: FinCat, objs: dict, arrs: dict, C: TwoGroupement | None = None,
                base: BaseCategory | None = None, level: int | None = None) -> LimitResult:
    """Limit built degree by degree: at z the value is the wide pullback of
    lim_J X_j z and M(E, z) over the M(X_j, z)."""
    J_objs = list(J.objects)
    if J_objs:
        C = objs[J_objs[0]].C
        base = objs[J_objs[0]].base
        level = min(objs[j].level for j in J_objs) if level is None else level
    if C is None or base is None:
        raise HomotopyError("empty limit needs an explicit groupement and base")
    level = C.bound if level is None else level
    require_divisible(C)
    B = base
    shape = _jshape(J)
    pos = {j: n for n, j in enumerate(J_objs)}
    ev1, ev2, ecx = _units(C, B), {}, {}
    pis = {j: _ident_comps(C, B) for j in J_objs}
    stage_data = {}
    proto = ColaxDiagram(C, B, ev1, {}, {}, level=level)
    for d, zs in stages(proto):
        Ep = ColaxDiagram(C, B, ev1, ev2, ecx, level=d - 1, name="lim")
        picons = {j: Icon(Ep, objs[j], pis[j]) for j in J_objs}
        new1, fills = {}, {}
        for z in zs:
            xinf = B.limit([objs[j].obj(z) for j in J_objs],
                           [(pos[shape.src(a)], pos[shape.dst(a)], arrs[a].at(z)) for a in shape.arrows])
            ME = mat(Ep, z)
            nodes = [xinf.apex, ME.obj] + [mat(objs[j], z).obj for j in J_objs]
            edges = []
            for j in J_objs:
                k = 2 + pos[j]
                edges.append((0, k, B.comp(mat(objs[j], z).from_z, xinf.legs[pos[j]])))
                edges.append((1, k, matching_map(picons[j], z)))
            wide = B.limit(nodes, edges)
            stage_data[z] = LimitStage(z, xinf, wide)
            new1[z] = wide.apex
            for j in J_objs:
                pis[j][z] = B.comp(xinf.legs[pos[j]], wide.legs[0])
            LE = lat(Ep, z)
            iE = iz(Ep, z)
            to_vals = {}
            for k, al in enumerate(LE.index.objects):
                s = C.src2(al)
                xpart = B.limit_mediator(
                    xinf, [B.comp(objs[j].arr(al), pis[j][s]) for j in J_objs], source=Ep.obj(s))
                mpart = B.comp(iE, LE.cocone.legs[k])
                rest = [B.comp(mat(objs[j], z).from_z, objs[j].arr(al), pis[j][s]) for j in J_objs]
                to_vals[al] = B.limit_mediator(wide, [xpart, mpart] + rest, source=Ep.obj(s))
            fills[z] = (to_vals, ME, wide.legs[1])
        ev1.update(new1)
        for z in zs:
            to_vals, ME, from_z = fills[z]
            ev2.update(to_vals)
            _fill_from_matching(C, B, ev2, ecx, ME, from_z, z)
        _fill_mixed(C, B, ev1, ev2, d, level)
        rep = validate_colax(ColaxDiagram(C, B, ev1, ev2, ecx, level=d), only_degree=d)
        if not rep.ok:
            raise HomotopyError(f"limit stage {d} is not coherent: {rep.violations[0]}")
    E = ColaxDiagram(C, B, ev1, ev2, ecx, level, "lim")
    cone = {j: Icon(E, objs[j], pis[j]) for j in J_objs}
    return LimitResult(E, cone, stage_data, J_objs)
