"""Model-structure axioms checked on a finite family of icons.

Every check is run against the Reedy classes computed from relative
latching and matching maps.  Lifting squares are enumerated exhaustively for
a seeded sample of (left, right) pairs; a failed lift is confirmed or
refuted by brute-force search over all icons.
"""

from __future__ import annotations

import itertools
import random

from .colax import ColaxDiagram, Icon, compose_icons, identity_icon, validate_icon
from .generate import exhaustive_diagrams, exhaustive_icons
from .homotopy import (
    HomotopyError,
    LiftObstruction,
    classify,
    factor_icon,
    icons_equal,
    in_left,
    in_right,
    lift_icon,
)
from .report import Report


def icon_key(s: Icon):
    return (id(s.src), id(s.dst), tuple(s.at(z).data for z in s.src.cells1()))


class _Classifier:
    def __init__(self):
        self.cache = {}

    def __call__(self, s: Icon):
        k = icon_key(s)
        if k not in self.cache:
            self.cache[k] = classify(s).flags
        return self.cache[k]


def model_family(C, B, sizes, level=None, diagram_limit=None, icon_limit=None, sample=None, seed=0,
                 base_sizes=None):
    """Diagrams with values of the given sizes and all icons between them.

    With ``sample``, keep every diagram whose values have sizes in
    ``base_sizes`` plus ``sample`` seeded picks from the rest.
    """
    diagrams = list(exhaustive_diagrams(C, B, sizes, level=level, limit=diagram_limit))
    if sample is not None:
        keep = set(base_sizes or ())
        small = [D for D in diagrams if all(D.obj(z).size in keep for z in D.cells1() if not C.is_unit(z))]
        rest = [D for D in diagrams if D not in small]
        rng = random.Random(seed)
        diagrams = small + rng.sample(rest, min(sample, len(rest)))
    icons = []
    for F, G in itertools.product(diagrams, repeat=2):
        icons.extend(exhaustive_icons(F, G, limit=icon_limit))
    return diagrams, icons


def rebase(icons, base):
    """The same icons over ``base`` (typically a base with mutated model data)."""
    moved = {}

    def mv(F: ColaxDiagram):
        if id(F) not in moved:
            moved[id(F)] = F.replace(base=base)
        return moved[id(F)]

    return [Icon(mv(s.src), mv(s.dst), dict(s.comp)) for s in icons]


def _by_ends(icons):
    out = {}
    for s in icons:
        out.setdefault((id(s.src), id(s.dst)), []).append(s)
    return out


def _check_lift(rep, cls_name, lam, rho, top, bottom):
    try:
        h = lift_icon(lam, rho, top, bottom)
    except LiftObstruction as e:
        exists = any(
            icons_equal(compose_icons(h, lam), top) and icons_equal(compose_icons(rho, h), bottom)
            for h in exhaustive_icons(lam.dst, rho.src)
        )
        rep.fail(f"lifting-{cls_name}", {"z": lam.src.C.fmt1(e.z), "degree": e.degree, "lift_exists": exists})
        return
    rep.check(icons_equal(compose_icons(h, lam), top) and icons_equal(compose_icons(rho, h), bottom),
              f"lifting-{cls_name}", "diagonal does not fill the square")


def verify_model_axioms(icons, *, oracle=None, square_pairs=40, squares_per_pair=20, retracts=20,
                        seed=0, factor=True) -> Report:
    """Check the model axioms on ``icons``.

    ``oracle``, if given, maps an icon to expected (we, cof, fib) flags.
    Lifting is checked on up to ``square_pairs`` seeded (left, right) pairs
    per lifting property, with up to ``squares_per_pair`` commuting squares
    each.
    """
    rep = Report("model-axioms")
    rng = random.Random(seed)
    flags = _Classifier()
    icons = list(icons)
    diagrams = {}
    for s in icons:
        diagrams.setdefault(id(s.src), s.src)
        diagrams.setdefault(id(s.dst), s.dst)
    ends = _by_ends(icons)
    counts = {"icons": len(icons), "pairs": 0, "squares": 0, "retracts": 0}

    for s in icons:
        if not rep.check(validate_icon(s).ok, "icon-valid", s.src.name + "->" + s.dst.name):
            return rep

    # identities lie in all three classes
    for F in diagrams.values():
        rep.check(flags(identity_icon(F)) == (True, True, True), "identity-classes", F.name)

    if oracle is not None:
        for s in icons:
            got, want = flags(s), tuple(oracle(s))
            rep.check(got == want, "oracle-agreement", {"icon": _name(s), "colax": got, "oracle": want})

    # 2-of-3 and closure under composition
    for f in icons:
        for g in [x for (a, _), xs in ends.items() if a == id(f.dst) for x in xs]:
            counts["pairs"] += 1
            gf = compose_icons(g, f)
            ff, fg, fgf = flags(f), flags(g), flags(gf)
            wes = (ff[0], fg[0], fgf[0])
            rep.check(sum(wes) != 2, "two-of-three", {"f": _name(f), "g": _name(g), "we": wes})
            for k, cls_name in ((1, "cof"), (2, "fib")):
                if ff[k] and fg[k]:
                    rep.check(fgf[k], f"closure-{cls_name}", {"f": _name(f), "g": _name(g)})
            if ff[0] and fg[0]:
                rep.check(fgf[0], "closure-we", {"f": _name(f), "g": _name(g)})

    # factorizations
    fact = {}
    if factor:
        for s in icons:
            for system, want_l, want_r in (("acof_fib", (True, True, None), (None, None, True)),
                                           ("cof_afib", (None, True, None), (True, None, True))):
                try:
                    fa = factor_icon(s, system)
                except HomotopyError as e:
                    rep.fail(f"factor-{system}", {"icon": _name(s), "error": str(e)})
                    continue
                fact[(icon_key(s), system)] = fa
                ok = icons_equal(compose_icons(fa.rho, fa.lam), s)
                ok = ok and _matches(flags(fa.lam), want_l) and _matches(flags(fa.rho), want_r)
                ok = ok and in_left(fa.lam, system) and in_right(fa.rho, system)
                rep.check(ok, f"factor-{system}", _name(s))

    # lifting: (cof & we) against fib, cof against (fib & we)
    for cls_name, lwant, rwant in (("acof-fib", (True, True, None), (None, None, True)),
                                   ("cof-afib", (None, True, None), (True, None, True))):
        lefts = [s for s in icons if _matches(flags(s), lwant)]
        rights = [s for s in icons if _matches(flags(s), rwant)]
        pairs = list(itertools.product(range(len(lefts)), range(len(rights))))
        rng.shuffle(pairs)
        for li, ri in pairs[:square_pairs]:
            lam, rho = lefts[li], rights[ri]
            tops = list(exhaustive_icons(lam.src, rho.src))
            bottoms = list(exhaustive_icons(lam.dst, rho.dst))
            sq = [(t, b) for t in tops for b in bottoms
                  if icons_equal(compose_icons(rho, t), compose_icons(b, lam))]
            rng.shuffle(sq)
            for t, b in sq[:squares_per_pair]:
                counts["squares"] += 1
                _check_lift(rep, cls_name, lam, rho, t, b)

    # retract argument: a cofibration is a retract of the left half of its
    # (cof, fib & we) factorization; dually for fibrations
    done = 0
    order = list(range(len(icons)))
    rng.shuffle(order)
    for n in order:
        if done >= retracts:
            break
        s = icons[n]
        fl = flags(s)
        for system, k in (("cof_afib", 1), ("acof_fib", 2)):
            if not fl[k]:
                continue
            fa = fact.get((icon_key(s), system))
            if fa is None:
                try:
                    fa = factor_icon(s, system)
                except HomotopyError:
                    continue
            try:
                if k == 1:
                    r = lift_icon(s, fa.rho, fa.lam, identity_icon(s.dst))
                    ok = icons_equal(compose_icons(fa.rho, r), identity_icon(s.dst))
                else:
                    r = lift_icon(fa.lam, s, identity_icon(s.src), fa.rho)
                    ok = icons_equal(compose_icons(r, fa.lam), identity_icon(s.src))
            except LiftObstruction as e:
                rep.fail("retract", {"icon": _name(s), "system": system, "z": s.src.C.fmt1(e.z)})
                continue
            rep.check(ok, "retract", {"icon": _name(s), "system": system})
            done += 1
    counts["retracts"] = done
    rep.info.update(counts)
    return rep


def _matches(flags, want):
    return all(w is None or f == w for f, w in zip(flags, want))


def _name(s: Icon) -> str:
    comps = ";".join(repr(list(s.at(z).data)) for z in s.src.cells1() if not s.src.C.is_unit(z))
    return f"{s.src.name}->{s.dst.name}[{comps}]"
