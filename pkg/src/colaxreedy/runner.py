"""Materialize a parsed project and run its tasks."""

from __future__ import annotations

import random
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import fincat
from .axioms import model_family, verify_model_axioms
from .base import make_base
from .colax import (
    ColaxDiagram,
    Icon,
    canonical_map_iz,
    colax_latching_object,
    colax_matching_object,
    compose_icons,
    constant_unit,
    matching_leg,
    identity_icon,
    truncate,
    validate_colax,
    validate_icon,
)
from .examples import category_diagram, monoid_diagram, xor_monoid
from .generate import exhaustive_diagrams, exhaustive_icons, random_diagram, random_icon
from .homotopy import (
    LiftObstruction,
    classify,
    colimit_colax,
    factor_icon,
    icons_equal,
    in_left,
    in_right,
    lift_icon,
    limit_colax,
)
from .project import Decl, Project
from .reedy2 import build_delta_plus, build_from_reedy1, build_PX, check_direct_divisibility
from .report import Report, canonical_json, jsonable
from .segal import (
    check_joyal,
    check_segal_conditions,
    from_presheaf,
    joyal_T,
    presheaf_verdicts,
    to_presheaf,
    validate_presheaf,
)
from .universal import check_colimit_universal, check_limit_universal

SYSTEMS = ("acof_fib", "cof_afib")

REEDY1 = {
    "walking-arrow": fincat.walking_arrow,
    "span": fincat.walking_span,
    "retraction": fincat.walking_retraction,
    "delta-le1": fincat.delta_le1,
    "point": fincat.single_object,
}

SHAPES = {
    "point": lambda p: fincat.point_shape(),
    "discrete": lambda p: fincat.discrete_shape(int(p.get("n", 2))),
    "cospan": lambda p: fincat.cospan_shape(),
    "span": lambda p: fincat.span_shape(),
}


class TaskError(Exception):
    pass


@dataclass
class Options:
    seed: int = 0
    parallel: bool = False
    workers: int = 4


@dataclass
class TaskResult:
    id: str
    kind: str
    records: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r["verdict"] == "pass" for r in self.records)

    def add(self, rep: Report, instance: str):
        self.records.extend(rep.to_records(instance))


def _ints(text, default=()):
    if text is None:
        return tuple(default)
    return tuple(int(x) for x in str(text).split(",") if x != "")


class Workspace:
    """Lazily built objects named in a project."""

    def __init__(self, project: Project, options: Options):
        self.project = project
        self.options = options
        self.decl = {s: project.of(s) for s in ("base", "groupement", "diagram", "icon", "shape")}
        self._built = {}

    def seed_for(self, d: Decl) -> int:
        if "seed" in d.params:
            return int(d.params["seed"])
        return zlib.crc32(f"{self.options.seed}:{d.stmt}:{d.name}".encode())

    def _memo(self, stmt, name, build):
        key = (stmt, name)
        if key not in self._built:
            if name not in self.decl[stmt]:
                raise TaskError(f"undeclared {stmt} {name!r}")
            self._built[key] = build(self.decl[stmt][name])
        return self._built[key]

    def base(self, name):
        return self._memo("base", name, lambda d: make_base(d.kind, int(d.params.get("p", 2))))

    def groupement(self, name):
        def build(d):
            m = int(d.params.get("m", 2))
            if d.kind == "delta_plus":
                return build_delta_plus(m)
            if d.kind == "px":
                return build_PX(tuple(d.params.get("X", "ab").split(",")) if "," in d.params.get("X", "")
                                else tuple(d.params.get("X", "ab")), m)
            shape = d.params.get("shape", "walking-arrow")
            if shape not in REEDY1:
                raise TaskError(f"groupement {d.name!r}: unknown Reedy 1-category {shape!r}")
            return build_from_reedy1(REEDY1[shape](), int(d.params["m"]) if "m" in d.params else None)
        return self._memo("groupement", name, build)

    def shape(self, name):
        return self._memo("shape", name, lambda d: SHAPES[d.kind](d.params))

    def diagram(self, name) -> ColaxDiagram:
        return self._memo("diagram", name, self._build_diagram)

    def icon(self, name) -> Icon:
        return self._memo("icon", name, self._build_icon)

    def item(self, name):
        if name in self.decl["diagram"]:
            return self.diagram(name)
        return self.icon(name)

    def _build_diagram(self, d: Decl) -> ColaxDiagram:
        C = self.groupement(d.args[0])
        B = self.base(d.args[1])
        level = int(d.params["level"]) if "level" in d.params else None
        if d.kind == "random":
            rng = random.Random(self.seed_for(d))
            return random_diagram(C, B, rng, sizes=_ints(d.params.get("sizes"), (0, 1, 2)), level=level, name=d.name)
        if d.kind == "monoid":
            S, mult, unit = xor_monoid(B)
            return monoid_diagram(C, B, S, mult, unit, level=level).replace(name=d.name)
        if d.kind == "nerve":
            return _cyclic_nerve(C, B, int(d.params.get("n", 2)), level).replace(name=d.name)
        if d.kind == "unit":
            return constant_unit(C, B, level=level).replace(name=d.name)
        val1, val2, colax = {}, {}, {}
        for key, cells, value in d.entries:
            if key == "val":
                val1[C.parse1(cells[0])] = B.obj(int(value))
        proto = ColaxDiagram(C, B, val1, {}, {}, level=level, name=d.name)
        for key, cells, value in d.entries:
            if key == "arr":
                a = C.parse2(cells[0])
                val2[a] = B.arrow(proto.obj(C.src2(a)), proto.obj(C.dst2(a)), _thaw(value))
            elif key == "colax":
                s, t = C.parse1(cells[0]), C.parse1(cells[1])
                u = C.hcomp_strict(s, t)
                val2_dst = B.tensor_obj(proto.obj(s), proto.obj(t))
                colax[(s, t)] = B.arrow(proto.obj(u), val2_dst, _thaw(value))
            elif key != "val":
                raise TaskError(f"diagram {d.name!r}: unexpected entry {key!r}")
        missing = [C.fmt1(z) for z in proto.cells1() if not C.is_unit(z) and z not in val1]
        if missing:
            raise TaskError(f"diagram {d.name!r}: no value for {', '.join(missing)}")
        return ColaxDiagram(C, B, val1, val2, colax, level=level, name=d.name)

    def _build_icon(self, d: Decl) -> Icon:
        if d.kind == "compose":
            g, f = self.icon(d.args[0]), self.icon(d.args[1])
            return compose_icons(g, f)
        if d.kind in ("factor-left", "factor-right"):
            fa = factor_icon(self.icon(d.args[0]), d.params.get("system", "acof_fib"))
            return fa.lam if d.kind == "factor-left" else fa.rho
        F, G = self.diagram(d.args[0]), self.diagram(d.args[1])
        if d.kind == "identity":
            if F is not G:
                raise TaskError(f"icon {d.name!r}: identity needs equal ends")
            return identity_icon(F)
        if d.kind == "random":
            ic = random_icon(F, G, random.Random(self.seed_for(d)))
            if ic is None:
                raise TaskError(f"icon {d.name!r}: no icon {F.name} -> {G.name}")
            return ic
        C, B = F.C, F.base
        comps = {}
        for key, cells, value in d.entries:
            if key != "comp":
                raise TaskError(f"icon {d.name!r}: unexpected entry {key!r}")
            z = C.parse1(cells[0])
            comps[z] = B.arrow(F.obj(z), G.obj(z), _thaw(value))
        for z in F.cells1():
            if C.is_unit(z):
                comps.setdefault(z, B.identity(F.obj(z)))
        missing = [C.fmt1(z) for z in F.cells1() if z not in comps]
        if missing:
            raise TaskError(f"icon {d.name!r}: no component at {', '.join(missing)}")
        return Icon(F, G, comps)


def _cyclic_nerve(C, B, n, level):
    """Nerve of the category on X with every hom-set Z/n under addition."""
    X = C.objects
    homs = {(x, y): n for x in X for y in X}
    comp = {(x, y, z): [(f + g) % n for f in range(n) for g in range(n)] for x in X for y in X for z in X}
    return category_diagram(C, B, homs, comp, {x: 0 for x in X}, level=level)


def _thaw(v):
    if isinstance(v, tuple):
        return [_thaw(x) for x in v]
    return v


def _table(f):
    return jsonable(f.data)


# ---------------------------------------------------------------------------
# tasks


def _cells(F: ColaxDiagram, which):
    C = F.C
    if which in (None, "all"):
        return [z for z in F.cells1() if not C.is_unit(z)]
    return [C.parse1(which)]


def task_validate(ws, t, res, pmap):
    target = t.args[0]
    if target in ws.decl["diagram"]:
        res.add(validate_colax(ws.diagram(target)), target)
    else:
        res.add(validate_icon(ws.icon(target)), target)


def task_divisibility(ws, t, res, pmap):
    C = ws.groupement(t.args[0])
    rep = check_direct_divisibility(C)
    res.add(rep, t.args[0])
    res.summary["checks"] = rep.checks


def task_latch(ws, t, res, pmap):
    F = ws.diagram(t.args[0])
    zs = _cells(F, t.args[1])
    objs = pmap(lambda z: colax_latching_object(F, z), zs)
    rep = Report("latching")
    for z, L in zip(zs, objs):
        name = F.C.fmt1(z)
        res.summary[name] = {"size": L.obj.size, "diagram": len(L.index.objects)}
        if L.to_z is not None:
            rep.check(all(F.base.comp(L.to_z, leg) == F.arr(a) for a, leg in zip(L.index.objects, L.cocone.legs)),
                      "cocone-to-value", name)
    res.add(rep, t.args[0])


def task_match(ws, t, res, pmap):
    F = ws.diagram(t.args[0])
    zs = _cells(F, t.args[1])
    objs = pmap(lambda z: colax_matching_object(F, z), zs)
    rep = Report("matching")
    for z, M in zip(zs, objs):
        name = F.C.fmt1(z)
        res.summary[name] = {"size": M.obj.size, "diagram": len(M.index.objects)}
        if M.from_z is not None:
            rep.check(all(F.base.comp(leg, M.from_z) == matching_leg(F, o)
                          for o, leg in zip(M.index.objects, M.cone.legs)), "cone-from-value", name)
    res.add(rep, t.args[0])


def task_imap(ws, t, res, pmap):
    F = ws.diagram(t.args[0])
    B = F.base
    zs = _cells(F, t.args[1])

    def one(z):
        L, M = colax_latching_object(F, z), colax_matching_object(F, z)
        try:
            i = canonical_map_iz(F, z, L, M)
        except Exception as e:  # triangle failure is the witness
            return z, None, str(e)
        if L.to_z is not None and M.from_z is not None:
            return z, i, B.comp(M.from_z, L.to_z) == i
        return z, i, True

    rep = Report("canonical-map")
    for z, i, ok in pmap(one, zs):
        name = F.C.fmt1(z)
        if i is None:
            rep.fail("triangles", {"z": name, "error": ok})
            continue
        rep.check(ok is True, "factors-through-value", name)
        res.summary[name] = _table(i)
    res.add(rep, t.args[0])


def _flags_dict(fl):
    return dict(zip(("we", "cof", "fib"), fl))


def task_classify(ws, t, res, pmap):
    s = ws.icon(t.args[0])
    cl = classify(s)
    res.summary["flags"] = _flags_dict(cl.flags)
    rep = Report("classify")
    if "expect" in t.params:
        want = set(x for x in t.params["expect"].split(",") if x)
        got = {k for k, v in _flags_dict(cl.flags).items() if v}
        rep.check(want == got, "expected-classes", {"expected": sorted(want), "got": sorted(got)})
    res.add(rep, t.args[0])


def task_factor(ws, t, res, pmap):
    s = ws.icon(t.args[0])
    systems = SYSTEMS if t.params.get("system", "both") == "both" else (t.params["system"],)
    for system in systems:
        fa = factor_icon(s, system)
        rep = Report(f"factor-{system}")
        rep.check(validate_icon(fa.lam).ok and validate_icon(fa.rho).ok, "icons-valid", system)
        rep.check(icons_equal(compose_icons(fa.rho, fa.lam), s), "composite", system)
        rep.check(in_left(fa.lam, system), "left-class", system)
        rep.check(in_right(fa.rho, system), "right-class", system)
        res.add(rep, t.args[0])
        res.summary[system] = {"middle": {fa.K.C.fmt1(z): fa.K.obj(z).size for z in fa.K.cells1()}}


def task_lift(ws, t, res, pmap):
    lam, rho = ws.icon(t.params["lam"]), ws.icon(t.params["rho"])
    if "top" in t.params:
        squares = [(ws.icon(t.params["top"]), ws.icon(t.params["bottom"]))]
    else:
        cap = int(t.params.get("cap", 50))
        squares = [(a, b) for a in exhaustive_icons(lam.src, rho.src) for b in exhaustive_icons(lam.dst, rho.dst)
                   if icons_equal(compose_icons(rho, a), compose_icons(b, lam))][:cap]

    def one(sq):
        top, bottom = sq
        try:
            h = lift_icon(lam, rho, top, bottom)
        except LiftObstruction as e:
            return {"z": lam.src.C.fmt1(e.z), "degree": e.degree}
        ok = icons_equal(compose_icons(h, lam), top) and icons_equal(compose_icons(rho, h), bottom)
        return None if ok else {"error": "diagonal does not fill the square"}

    rep = Report("lift")
    for n, w in enumerate(pmap(one, squares)):
        rep.check(w is None, "diagonal", {"square": n, **(w or {})})
    res.summary["squares"] = len(squares)
    res.add(rep, f"{t.params['lam']}/{t.params['rho']}")


def _shape_data(ws, t):
    J = ws.shape(t.args[0])
    objs = {j: ws.diagram(t.params[j]) for j in J.objects}
    arrs = {a: ws.icon(t.params[a]) for a in J.arrows if not J.is_identity(a)}
    missing = [j for j in J.objects if j not in t.params]
    if missing:
        raise TaskError(f"task {t.name!r}: no diagram for {', '.join(missing)}")
    return J, objs, arrs


def diagrams_equal(F: ColaxDiagram, G: ColaxDiagram) -> bool:
    if F.level != G.level or F.C is not G.C:
        return False
    return (all(F.obj(z) == G.obj(z) for z in F.cells1())
            and all(F.arr(a) == G.arr(a) for a in F.cells2())
            and all(F.cx(s, u) == G.cx(s, u) for s, u in F.pairs()))


def _tests(ws, t, E):
    sizes = _ints(t.params.get("sizes"), (0, 1))
    return list(exhaustive_diagrams(E.C, E.base, sizes, level=E.level, limit=int(t.params.get("tests", 6))))


def task_limit(ws, t, res, pmap, co=False):
    J, objs, arrs = _shape_data(ws, t)
    build = colimit_colax if co else limit_colax
    out = build(J, objs, arrs)
    E = out.diagram
    res.add(validate_colax(E), "limit" if not co else "colimit")
    res.summary["values"] = {E.C.fmt1(z): E.obj(z).size for z in E.cells1()}
    if t.params.get("check", "universal") == "universal":
        check = check_colimit_universal if co else check_limit_universal
        rep = check(J, objs, arrs, out, _tests(ws, t, E))
        res.summary["cones"] = rep.info.get("cones", 0)
        res.add(rep, t.args[0])
    if not co and E.level > 0:
        rep = Report("truncation")
        k = E.level - 1
        low = limit_colax(J, {j: truncate(X, k) for j, X in objs.items()},
                          {a: Icon(truncate(s.src, k), truncate(s.dst, k),
                                   {z: c for z, c in s.comp.items() if E.C.deg(z) <= k}) for a, s in arrs.items()})
        rep.check(diagrams_equal(truncate(E, k), low.diagram), "commutes", {"level": k})
        res.add(rep, t.args[0])


def task_colimit(ws, t, res, pmap):
    task_limit(ws, t, res, pmap, co=True)


def task_bridge(ws, t, res, pmap):
    F = ws.diagram(t.args[0])
    P = to_presheaf(F)
    res.add(validate_presheaf(P), t.args[0])
    rep = Report("round-trip")
    rep.check(diagrams_equal(from_presheaf(P, F.C), F), "identity", t.args[0])
    res.add(rep, t.args[0])
    res.summary["objects"] = len(P.D.objects)


def task_joyal(ws, t, res, pmap):
    m = int(t.params.get("m", 4))
    J = joyal_T(m)
    res.add(check_joyal(J), f"m={m}")
    rep = Report("generators")
    rep.check(J.forward[(2, 1, (0, 0))] == (0, 2), "mu", J.forward.get((2, 1, (0, 0))))
    rep.check(J.forward[(0, 1, ())] == (0, 0), "eta", J.forward.get((0, 1, ())))
    res.add(rep, f"m={m}")
    res.summary["maps"] = len(J.forward)


def task_segal(ws, t, res, pmap):
    F = ws.diagram(t.args[0])
    rep = check_segal_conditions(F)
    res.add(rep, t.args[0])
    res.summary["chains"] = rep.info.get("chains", {})


def task_model_verify(ws, t, res, pmap):
    C, B = ws.groupement(t.args[0]), ws.base(t.args[1])
    p = t.params
    seed = int(p.get("seed", ws.options.seed))
    diagrams, icons = model_family(
        C, B, _ints(p.get("sizes"), (0, 1)), level=int(p["level"]) if "level" in p else None,
        sample=int(p["sample"]) if "sample" in p else None, seed=seed,
        base_sizes=_ints(p.get("base_sizes"), (0, 1)),
    )
    oracle = None
    if p.get("oracle") == "presheaf":
        oracle = lambda s: presheaf_verdicts(s)
    rep = verify_model_axioms(icons, oracle=oracle, seed=seed,
                              square_pairs=int(p.get("square_pairs", 40)),
                              squares_per_pair=int(p.get("squares_per_pair", 20)),
                              retracts=int(p.get("retracts", 20)))
    res.add(rep, f"{t.args[0]}/{t.args[1]}")
    res.summary.update({"diagrams": len(diagrams), **rep.info})


TASKS = {
    "validate": task_validate,
    "divisibility": task_divisibility,
    "latch": task_latch,
    "match": task_match,
    "imap": task_imap,
    "classify": task_classify,
    "factor": task_factor,
    "lift": task_lift,
    "limit": task_limit,
    "colimit": task_colimit,
    "bridge": task_bridge,
    "joyal": task_joyal,
    "segal-check": task_segal,
    "model-verify": task_model_verify,
}


def run_project(project: Project, options: Options | None = None) -> list[TaskResult]:
    options = options or Options()
    ws = Workspace(project, options)
    results = []
    pool = ThreadPoolExecutor(options.workers) if options.parallel else None
    pmap = (lambda f, xs: list(pool.map(f, xs))) if pool else (lambda f, xs: [f(x) for x in xs])
    try:
        for t in project.tasks:
            res = TaskResult(t.name, t.kind)
            try:
                TASKS[t.kind](ws, t, res, pmap)
            except Exception as e:
                res.records.append({"axiom": "task", "instance": t.name, "verdict": "error",
                                    "witness": f"{type(e).__name__}: {e}"})
            results.append(res)
    finally:
        if pool:
            pool.shutdown()
    return results


def report_json(results, options: Options) -> str:
    body = {
        "seed": options.seed,
        "verdict": "pass" if all(r.ok for r in results) else "fail",
        "tasks": [{"id": r.id, "kind": r.kind, "verdict": "pass" if r.ok else "fail",
                   "records": r.records, "summary": r.summary} for r in results],
    }
    return canonical_json(body) + "\n"


def report_text(results) -> str:
    lines = []
    for r in results:
        lines.append(f"[{'PASS' if r.ok else 'FAIL'}] {r.id} ({r.kind})")
        for rec in r.records:
            if rec["verdict"] != "pass":
                lines.append(f"    {rec['verdict']}: {rec['axiom']} on {rec['instance']}: {canonical_json(rec['witness'])}")
        for k in sorted(r.summary):
            lines.append(f"    {k}: {canonical_json(r.summary[k])}")
    n_ok = sum(r.ok for r in results)
    lines.append(f"{n_ok}/{len(results)} tasks passed")
    return "\n".join(lines) + "\n"


def write_reports(results, options: Options, out: Path):
    out.mkdir(parents=True, exist_ok=True)
    (out / "report.json").write_text(report_json(results, options))
    (out / "report.txt").write_text(report_text(results))
