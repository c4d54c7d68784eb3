"""Exhaustive and seeded generation of colax diagrams and icons.

A diagram is built degree by degree: extending to z means choosing an
object K z and arrows L(K, z) -> K z -> M(K, z) composing to i_z.  Icons
are built the same way, choosing each component subject to the latching
and matching squares.
"""

from __future__ import annotations

import itertools
import random

from . import linalg
from .base import BaseArrow, BaseCategory
from .colax import ColaxDiagram, ColaxError, Icon, iz, lat, mat, validate_colax, validate_icon
from .homotopy import (
    _fill_from_latching,
    _fill_from_matching,
    _fill_mixed,
    _ident_comps,
    _units,
    latching_map,
    matching_map,
    stages,
)
from .reedy2 import TwoGroupement


def _sections(B: BaseCategory, b: BaseArrow, target: BaseArrow):
    """All a with b o a = target (a: target.src -> b.src)."""
    L, K = target.src, b.src
    if B.kind == "finset":
        choices = []
        for l in range(L.size):
            want = target.data[l]
            choices.append([k for k in range(K.size) if b.data[k] == want])
        for t in itertools.product(*choices):
            yield BaseArrow(L, K, t)
        return
    p = B.p
    cols = []
    basis = linalg.nullspace(b.data, K.size, p) if K.size else []
    for c in range(L.size):
        rhs = tuple(target.data[r][c] for r in range(target.dst.size))
        x0 = linalg.solve(b.data, rhs, K.size, p) if b.data else (0,) * K.size
        if x0 is None:
            return
        sols = []
        for coeffs in itertools.product(range(p), repeat=len(basis)):
            sols.append(tuple((x0[i] + sum(cf * v[i] for cf, v in zip(coeffs, basis))) % p for i in range(K.size)))
        cols.append(sols)
    for pick in itertools.product(*cols):
        yield BaseArrow(L, K, tuple(tuple(col[r] for col in pick) for r in range(K.size)))


def _random_section(B: BaseCategory, b: BaseArrow, target: BaseArrow, rng: random.Random):
    L, K = target.src, b.src
    if B.kind == "finset":
        t = []
        for l in range(L.size):
            opts = [k for k in range(K.size) if b.data[k] == target.data[l]]
            if not opts:
                return None
            t.append(rng.choice(opts))
        return BaseArrow(L, K, tuple(t))
    p = B.p
    basis = linalg.nullspace(b.data, K.size, p) if K.size else []
    cols = []
    for c in range(L.size):
        rhs = tuple(target.data[r][c] for r in range(target.dst.size))
        x0 = linalg.solve(b.data, rhs, K.size, p) if b.data else (0,) * K.size
        if x0 is None:
            return None
        coeffs = [rng.randrange(p) for _ in basis]
        cols.append(tuple((x0[i] + sum(cf * v[i] for cf, v in zip(coeffs, basis))) % p for i in range(K.size)))
    return BaseArrow(L, K, tuple(tuple(col[r] for col in cols) for r in range(K.size)))


def extension_choices(Kp: ColaxDiagram, z, sizes):
    """All (K z, L -> K z, K z -> M) factoring i_z, with K z of a size in ``sizes``."""
    B = Kp.base
    M, i = mat(Kp, z), iz(Kp, z)
    for n in sizes:
        Kz = B.obj(n)
        for b in B.hom(Kz, M.obj):
            for a in _sections(B, b, i):
                yield Kz, a, b


def random_extension(Kp: ColaxDiagram, z, sizes, rng: random.Random, tries: int = 40):
    B = Kp.base
    L, M, i = lat(Kp, z), mat(Kp, z), iz(Kp, z)
    for _ in range(tries):
        Kz = B.obj(rng.choice(list(sizes)))
        b = B.random_arrow(Kz, M.obj, rng) if not (M.obj.size == 0 and Kz.size > 0 and B.kind == "finset") else None
        if b is None:
            continue
        a = _random_section(B, b, i, rng)
        if a is not None:
            return Kz, a, b
    # factorizations through one end always exist; use them if they fit
    cap = max(sizes)
    if L.obj.size <= cap and L.obj.size in sizes:
        return L.obj, B.identity(L.obj), i
    if M.obj.size <= cap and M.obj.size in sizes:
        return M.obj, i, B.identity(M.obj)
    opts = list(itertools.islice(extension_choices(Kp, z, sizes), 64))
    if not opts:
        raise ColaxError(f"no extension at {Kp.C.fmt1(z)} with values of size in {sorted(sizes)}")
    return rng.choice(opts)


def _apply_stage(C, B, tables, d, zs, picks, level):
    v1, v2, cx = (dict(t) for t in tables)
    Kp = ColaxDiagram(C, B, *tables, level=d - 1)
    for z, (Kz, a, b) in zip(zs, picks):
        v1[z] = Kz
        _fill_from_latching(C, B, v2, lat(Kp, z), a)
        _fill_from_matching(C, B, v2, cx, mat(Kp, z), b, z)
    _fill_mixed(C, B, v1, v2, d, level)
    return v1, v2, cx


def _proto(C, B, level):
    return ColaxDiagram(C, B, _units(C, B), {}, {}, level=level)


def exhaustive_diagrams(C: TwoGroupement, B: BaseCategory, sizes, level=None, limit=None):
    """Every valid diagram with non-unit values of the given sizes, in a
    deterministic order; stops after ``limit`` diagrams if given."""
    level = C.bound if level is None else level
    plan = stages(_proto(C, B, level))
    count = 0

    def rec(k, tables):
        nonlocal count
        if limit is not None and count >= limit:
            return
        if k == len(plan):
            count += 1
            yield ColaxDiagram(C, B, *tables, level=level, name=f"D{count}")
            return
        d, zs = plan[k]
        Kp = ColaxDiagram(C, B, *tables, level=d - 1)
        per_z = [list(extension_choices(Kp, z, sizes)) for z in zs]
        for picks in itertools.product(*per_z):
            nt = _apply_stage(C, B, tables, d, zs, picks, level)
            if not validate_colax(ColaxDiagram(C, B, *nt, level=d), only_degree=d).ok:
                continue
            yield from rec(k + 1, nt)
            if limit is not None and count >= limit:
                return

    yield from rec(0, (_units(C, B), {}, {}))


def random_diagram(C: TwoGroupement, B: BaseCategory, rng: random.Random, sizes=(0, 1, 2), level=None,
                   name="R", restarts: int = 50) -> ColaxDiagram:
    """A seeded random diagram with every non-unit value of a size in
    ``sizes``; restarts when an early choice leaves no extension later."""
    level = C.bound if level is None else level
    for _ in range(restarts):
        tables = (_units(C, B), {}, {})
        try:
            for d, zs in stages(_proto(C, B, level)):
                Kp = ColaxDiagram(C, B, *tables, level=d - 1)
                picks = [random_extension(Kp, z, sizes, rng) for z in zs]
                tables = _apply_stage(C, B, tables, d, zs, picks, level)
                if not validate_colax(ColaxDiagram(C, B, *tables, level=d), only_degree=d).ok:
                    raise ColaxError("incoherent stage")
        except ColaxError:
            continue
        return ColaxDiagram(C, B, *tables, level=level, name=name)
    raise ColaxError(f"no random diagram on {C.name} with values of size in {sorted(sizes)}")


# ---------------------------------------------------------------------------
# icons


def constrained_arrows(B: BaseCategory, S, T, pre=(), post=()):
    """Every s: S -> T with s o a = t for (a, t) in ``pre`` and b o s = t for
    (b, t) in ``post``; the constraints are solved, not filtered."""
    if B.kind == "finset":
        fixed = {}
        for a, t in pre:
            for k in range(a.src.size):
                x, y = a.data[k], t.data[k]
                if fixed.setdefault(x, y) != y:
                    return
        choices = []
        for x in range(S.size):
            opts = [fixed[x]] if x in fixed else range(T.size)
            choices.append([y for y in opts if all(b.data[y] == t.data[x] for b, t in post)])
        for pick in itertools.product(*choices):
            yield BaseArrow(S, T, pick)
        return
    p, ns, nt = B.p, S.size, T.size
    rows, rhs = [], []
    for a, t in pre:
        for r in range(nt):
            for k in range(a.src.size):
                row = [0] * (nt * ns)
                for c in range(ns):
                    row[r * ns + c] = a.data[c][k]
                rows.append(row)
                rhs.append(t.data[r][k])
    for b, t in post:
        for u in range(b.dst.size):
            for c in range(ns):
                row = [0] * (nt * ns)
                for r in range(nt):
                    row[r * ns + c] = b.data[u][r]
                rows.append(row)
                rhs.append(t.data[u][c])
    n = nt * ns
    x0 = linalg.solve(rows, tuple(rhs), n, p) if rows else (0,) * n
    if x0 is None:
        return
    basis = linalg.nullspace(rows, n, p) if rows else [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        v = [(x0[i] + sum(cf * w[i] for cf, w in zip(coeffs, basis))) % p for i in range(n)]
        yield BaseArrow(S, T, tuple(tuple(v[r * ns:(r + 1) * ns]) for r in range(nt)))


def _component_choices(part: Icon, z):
    """Every component at z compatible with latching and matching."""
    F, G = part.src, part.dst
    B = F.base
    LF, LG, MF, MG = lat(F, z), lat(G, z), mat(F, z), mat(G, z)
    lhs_l = B.comp(LG.to_z, latching_map(part, z))
    rhs_m = B.comp(matching_map(part, z), MF.from_z)
    yield from constrained_arrows(B, F.obj(z), G.obj(z), pre=[(LF.to_z, lhs_l)], post=[(MG.from_z, rhs_m)])


def exhaustive_icons(F: ColaxDiagram, G: ColaxDiagram, limit=None):
    C, B = F.C, F.base
    plan = stages(F)
    count = 0

    def rec(k, comps):
        nonlocal count
        if limit is not None and count >= limit:
            return
        if k == len(plan):
            ic = Icon(F, G, dict(comps))
            if validate_icon(ic).ok:
                count += 1
                yield ic
            return
        _, zs = plan[k]
        part = Icon(F, G, comps)
        per_z = [list(_component_choices(part, z)) for z in zs]
        for picks in itertools.product(*per_z):
            nc = dict(comps)
            nc.update(zip(zs, picks))
            yield from rec(k + 1, nc)
            if limit is not None and count >= limit:
                return

    yield from rec(0, _ident_comps(C, B))


def random_icon(F: ColaxDiagram, G: ColaxDiagram, rng: random.Random) -> Icon | None:
    """A seeded random icon F -> G, or None if there is none.

    A capped randomized search runs first; if it misses, one of the first
    64 exhaustively enumerated icons is picked.
    """
    C, B = F.C, F.base
    plan = stages(F)

    def rec(k, comps):
        if k == len(plan):
            ic = Icon(F, G, dict(comps))
            return ic if validate_icon(ic).ok else None
        _, zs = plan[k]
        part = Icon(F, G, comps)
        per_z = []
        for z in zs:
            opts = list(_component_choices(part, z))
            rng.shuffle(opts)
            per_z.append(opts)
        for n, picks in enumerate(itertools.product(*per_z)):
            if n >= 8:
                break
            nc = dict(comps)
            nc.update(zip(zs, picks))
            out = rec(k + 1, nc)
            if out is not None:
                return out
        return None

    out = rec(0, _ident_comps(C, B))
    if out is None:
        found = list(exhaustive_icons(F, G, limit=64))
        out = rng.choice(found) if found else None
    return out
