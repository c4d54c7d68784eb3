"""Hand-built colax diagrams used by tests, fixtures and the CLI."""

from __future__ import annotations

import itertools

from .base import BaseArrow, BaseCategory
from .colax import ColaxDiagram
from .reedy2 import TwoGroupement


def _iterated(base: BaseCategory, S, mult: BaseArrow, unit: BaseArrow, k: int) -> BaseArrow:
    """S^(x)k -> S by left-nested multiplication; k = 0 gives the unit."""
    if k == 0:
        return unit
    out = base.identity(S)
    for _ in range(k - 1):
        out = base.comp(mult, base.tensor(out, base.identity(S)))
    return out


def monoid_diagram(C: TwoGroupement, base: BaseCategory, S, mult: BaseArrow, unit: BaseArrow,
                   level=None) -> ColaxDiagram:
    """The strict diagram on the augmented simplex groupement sending n to
    S^(x)n; a monotone map multiplies each fibre."""
    if C.kind != "delta_plus":
        raise ValueError("monoid_diagram needs an augmented simplex groupement")
    lv = C.bound if level is None else level
    val1 = {n: base.tensor_objs([S] * n) for n in C.cells1 if n <= lv}
    val2 = {}
    for a in C.cells2:
        n, k, f = a
        if n > lv or k > lv:
            continue
        sizes = [sum(1 for v in f if v == j) for j in range(k)]
        val2[a] = base.tensor_many([_iterated(base, S, mult, unit, b) for b in sizes]) if k else base.identity(base.unit)
    colax = {(s, t): base.identity(val1[s + t]) for (s, t) in C.hcomp1_table if s + t <= lv}
    return ColaxDiagram(C, base, val1, val2, colax, lv, "monoid")


def xor_monoid(base: BaseCategory):
    """Z/2 under addition, as a set monoid or a group algebra over F_p."""
    S = base.obj(2)
    if base.kind == "finset":
        mult = base.arrow(base.obj(4), S, [i ^ j for i in range(2) for j in range(2)])
        unit = base.arrow(base.unit, S, [0])
    else:
        rows = [[0] * 4 for _ in range(2)]
        for i, j in itertools.product(range(2), repeat=2):
            rows[i ^ j][i * 2 + j] = 1
        mult = base.arrow(base.obj(4), S, rows)
        unit = base.arrow(base.unit, S, [[1], [0]])
    return S, mult, unit


def category_diagram(C: TwoGroupement, base: BaseCategory, homs: dict, compose: dict, ident: dict,
                     level=None) -> ColaxDiagram:
    """Strict nerve-style diagram on P_X of a small category in finite sets.

    ``homs[(x, y)]``: number of arrows x -> y.  ``compose[(x, y, z)]``:
    table (f, g) -> g o f indexed f * |H(y,z)| + g.  ``ident[x]``: identity
    arrow index.
    """
    if C.kind != "px" or base.kind != "finset":
        raise ValueError("category_diagram needs a P_X groupement and finite sets")
    lv = C.bound if level is None else level

    def elements(chain):
        return list(itertools.product(*[range(homs[(chain[i], chain[i + 1])]) for i in range(len(chain) - 1)]))

    def compose_path(xs, path):
        if len(xs) == 1:
            return ident[xs[0]]
        acc = path[0]
        for i in range(1, len(path)):
            x, y, z = xs[0], xs[i], xs[i + 1]
            acc = compose[(x, y, z)][acc * homs[(y, z)] + path[i]]
        return acc

    val1, index = {}, {}
    for c in C.cells1:
        if C.deg(c) <= lv:
            els = elements(c)
            index[c] = {e: n for n, e in enumerate(els)}
            val1[c] = base.obj(len(els))
    val2 = {}
    for a in C.cells2:
        c, d, f = a
        if C.deg(c) > lv or C.deg(d) > lv:
            continue
        psi = [sum(1 for v in f if v < j) for j in range(len(d))]
        table = []
        for e in index[c]:
            img = tuple(compose_path(c[psi[j]:psi[j + 1] + 1], e[psi[j]:psi[j + 1]]) for j in range(len(d) - 1))
            table.append(index[d][img])
        val2[a] = base.arrow(val1[c], val1[d], table)
    colax = {(s, t): base.identity(val1[u]) for (s, t), u in C.hcomp1_table.items() if C.deg(u) <= lv}
    return ColaxDiagram(C, base, val1, val2, colax, lv, "nerve")
