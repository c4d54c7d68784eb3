"""Brute-force universal-property checks for limits and colimits of colax
diagrams.

Competitor (co)cones are enumerated exhaustively from a supplied family of
test diagrams; each must factor through the constructed (co)limit by exactly
one icon, found by enumerating every icon between the two diagrams.
"""

from __future__ import annotations

import itertools

from .base import BaseError
from .colax import ColaxDiagram, compose_icons, validate_icon
from .fincat import FinCat
from .generate import exhaustive_icons
from .homotopy import ColimitResult, LimitResult, icons_equal
from .report import Report


def _commutes(J: FinCat, arrs: dict, legs: dict, cone: bool) -> bool:
    for a in J.arrows:
        if J.is_identity(a):
            continue
        s, d = J.src(a), J.dst(a)
        if cone:
            ok = icons_equal(compose_icons(arrs[a], legs[s]), legs[d])
        else:
            ok = icons_equal(compose_icons(legs[d], arrs[a]), legs[s])
        if not ok:
            return False
    return True


def competitor_cones(J: FinCat, objs: dict, arrs: dict, H: ColaxDiagram, limit=None):
    """Every cone H -> (X_j) over J, as dicts J-object -> Icon."""
    js = list(J.objects)
    per = [list(exhaustive_icons(H, objs[j], limit=limit)) for j in js]
    for pick in itertools.product(*per):
        legs = dict(zip(js, pick))
        if _commutes(J, arrs, legs, cone=True):
            yield legs


def competitor_cocones(J: FinCat, objs: dict, arrs: dict, H: ColaxDiagram, limit=None):
    js = list(J.objects)
    per = [list(exhaustive_icons(objs[j], H, limit=limit)) for j in js]
    for pick in itertools.product(*per):
        legs = dict(zip(js, pick))
        if _commutes(J, arrs, legs, cone=False):
            yield legs


def check_limit_universal(J: FinCat, objs: dict, arrs: dict, res: LimitResult, tests) -> Report:
    """For every test diagram H and cone H -> X: exactly one icon H -> lim
    composes to the cone, and it is the one ``res.mediator`` builds."""
    rep = Report("limit-universal")
    E = res.diagram
    rep.check(all(validate_icon(c).ok for c in res.cone.values()), "cone-legs", "limit cone")
    rep.check(_commutes(J, arrs, res.cone, cone=True), "cone-commutes", "limit cone")
    n_cones = 0
    for H in tests:
        into = list(exhaustive_icons(H, E))
        for legs in competitor_cones(J, objs, arrs, H):
            n_cones += 1
            hits = [m for m in into
                    if all(icons_equal(compose_icons(res.cone[j], m), legs[j]) for j in J.objects)]
            if not rep.check(len(hits) == 1, "unique-mediator", (H.name, len(hits))):
                continue
            try:
                built = res.mediator(H, legs)
            except BaseError as e:
                rep.fail("mediator-construction", (H.name, str(e)))
                continue
            rep.check(validate_icon(built).ok and icons_equal(built, hits[0]), "mediator-construction", H.name)
    rep.info["cones"] = n_cones
    return rep


def check_colimit_universal(J: FinCat, objs: dict, arrs: dict, res: ColimitResult, tests) -> Report:
    rep = Report("colimit-universal")
    E = res.diagram
    rep.check(all(validate_icon(c).ok for c in res.cocone.values()), "cocone-legs", "colimit cocone")
    rep.check(_commutes(J, arrs, res.cocone, cone=False), "cocone-commutes", "colimit cocone")
    n_cones = 0
    for H in tests:
        out = list(exhaustive_icons(E, H))
        for legs in competitor_cocones(J, objs, arrs, H):
            n_cones += 1
            hits = [m for m in out
                    if all(icons_equal(compose_icons(m, res.cocone[j]), legs[j]) for j in J.objects)]
            if not rep.check(len(hits) == 1, "unique-mediator", (H.name, len(hits))):
                continue
            try:
                built = res.mediator(H, legs)
            except BaseError as e:
                rep.fail("mediator-construction", (H.name, str(e)))
                continue
            rep.check(validate_icon(built).ok and icons_equal(built, hits[0]), "mediator-construction", H.name)
    rep.info["cones"] = n_cones
    return rep
