"""Concrete finite monoidal base categories.

Two bases are provided: finite sets with the cartesian product and
finite-dimensional vector spaces over F_p with the tensor product.  Both
use strict skeletal encodings (objects are sizes, products are indexed
row-major) so associators and unitors are literal identities.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from typing import Callable, Iterator, Sequence

from . import linalg
from .kernels import finset_limit


class BaseError(ValueError):
    pass


class EndpointError(BaseError):
    """Raised when arrows are composed across mismatched endpoints."""


class LiftPreconditionError(BaseError):
    """Raised when a lifting problem is posed on a non-commuting square."""


class UnknownSystemError(KeyError):
    pass


@dataclass(frozen=True, slots=True)
class BaseObject:
    kind: str  # "finset" | "finvect"
    size: int  # cardinality, or dimension over F_p
    p: int = 0

    def __repr__(self):
        if self.kind == "finset":
            return f"Set({self.size})"
        return f"F{self.p}^{self.size}"


@dataclass(frozen=True, slots=True)
class BaseArrow:
    """A function table (finset) or a dst.size x src.size matrix (finvect)."""

    src: BaseObject
    dst: BaseObject
    data: tuple

    def __repr__(self):
        return f"<{self.src}->{self.dst} {list(map(list, self.data)) if self.src.kind == 'finvect' else list(self.data)}>"


@dataclass(frozen=True)
class Cone:
    """A limit (or colimit) object with its projection (injection) legs."""

    apex: BaseObject
    legs: tuple
    aux: object = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class FactorizationSystem:
    name: str
    left: Callable[[BaseArrow], bool]
    right: Callable[[BaseArrow], bool]
    factor: Callable[[BaseArrow], tuple]


@dataclass(frozen=True)
class ModelData:
    """Weak equivalences, (co)fibrations, and a standalone factorization
    system on one base category.

    ``factor_acof_fib`` must return (cof & we, fib) factorizations and
    ``factor_cof_afib`` (cof, fib & we) ones.
    """

    we: Callable[[BaseArrow], bool]
    cof: Callable[[BaseArrow], bool]
    fib: Callable[[BaseArrow], bool]
    factor_acof_fib: Callable[[BaseArrow], tuple]
    factor_cof_afib: Callable[[BaseArrow], tuple]
    ofs: FactorizationSystem

    def system(self, name: str) -> FactorizationSystem:
        if name == "acof_fib":
            return FactorizationSystem(
                name,
                lambda f: self.cof(f) and self.we(f),
                self.fib,
                self.factor_acof_fib,
            )
        if name == "cof_afib":
            return FactorizationSystem(
                name,
                self.cof,
                lambda f: self.fib(f) and self.we(f),
                self.factor_cof_afib,
            )
        if name == "ofs":
            return self.ofs
        raise UnknownSystemError(name)

    system_names = ("acof_fib", "cof_afib", "ofs")


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller index stays root so the class minimum is the root
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


class BaseCategory:
    """Operations shared by both bases.  Subclasses fill in the encoding."""

    kind: str
    cartesian: bool
    p: int = 0
    model: ModelData

    # -- objects ---------------------------------------------------------
    def obj(self, n: int) -> BaseObject:
        if n < 0:
            raise BaseError(f"negative size {n}")
        return BaseObject(self.kind, n, self.p)

    @property
    def unit(self) -> BaseObject:
        return self.obj(1)

    def tensor_obj(self, a: BaseObject, b: BaseObject) -> BaseObject:
        return self.obj(a.size * b.size)

    def tensor_objs(self, objs: Sequence[BaseObject]) -> BaseObject:
        n = 1
        for o in objs:
            n *= o.size
        return self.obj(n)

    def tensor_many(self, arrows: Sequence[BaseArrow]) -> BaseArrow:
        if not arrows:
            return self.identity(self.unit)
        out = arrows[0]
        for f in arrows[1:]:
            out = self.tensor(out, f)
        return out

    def comp(self, *arrows: BaseArrow) -> BaseArrow:
        """Composite in mathematical order: ``comp(h, g, f) = h o g o f``."""
        out = arrows[-1]
        for g in reversed(arrows[:-1]):
            out = self.compose(out, g)
        return out

    def with_model(self, model: ModelData) -> "BaseCategory":
        clone = object.__new__(type(self))
        clone.__dict__.update(self.__dict__)
        clone.model = model
        return clone

    # -- model-theoretic conveniences -----------------------------------
    def factorize(self, f: BaseArrow, system: str):
        return self.model.system(system).factor(f)

    def pullback(self, f: BaseArrow, g: BaseArrow) -> Cone:
        """Limit of ``f.src -> f.dst <- g.src``; legs ordered (f.src, g.src, f.dst)."""
        if f.dst != g.dst:
            raise EndpointError("pullback of arrows with different codomains")
        return self.limit([f.src, g.src, f.dst], [(0, 2, f), (1, 2, g)])

    def pushout(self, f: BaseArrow, g: BaseArrow) -> Cone:
        """Colimit of ``f.dst <- f.src -> g.dst``; legs ordered (f.dst, g.dst, f.src)."""
        if f.src != g.src:
            raise EndpointError("pushout of arrows with different domains")
        return self.colimit([f.dst, g.dst, f.src], [(2, 0, f), (2, 1, g)])

    def limit_of(self, shape, objmap, arrowmap) -> Cone:
        """Limit of a diagram on a FinCat-like ``shape``."""
        index = {o: k for k, o in enumerate(shape.objects)}
        nodes = [objmap[o] for o in shape.objects]
        edges = [(index[shape.src(a)], index[shape.dst(a)], arrowmap[a]) for a in shape.arrows]
        return self.limit(nodes, edges)

    def colimit_of(self, shape, objmap, arrowmap) -> Cone:
        index = {o: k for k, o in enumerate(shape.objects)}
        nodes = [objmap[o] for o in shape.objects]
        edges = [(index[shape.src(a)], index[shape.dst(a)], arrowmap[a]) for a in shape.arrows]
        return self.colimit(nodes, edges)

    def is_iso(self, f: BaseArrow) -> bool:
        return self.is_mono(f) and self.is_epi(f)

    def compose(self, f: BaseArrow, g: BaseArrow) -> BaseArrow:  # pragma: no cover
        raise NotImplementedError


def _check_compose(f: BaseArrow, g: BaseArrow):
    if f.dst != g.src:
        raise EndpointError(f"cannot compose {f.src}->{f.dst} with {g.src}->{g.dst}")


# ---------------------------------------------------------------------------
# finite sets


class FinSet(BaseCategory):
    kind = "finset"
    cartesian = True
    p = 0

    def __init__(self):
        self.model = ModelData(
            we=self.is_iso,
            cof=lambda f: True,
            fib=lambda f: True,
            factor_acof_fib=lambda f: (self.identity(f.src), f),
            factor_cof_afib=lambda f: (f, self.identity(f.dst)),
            ofs=FactorizationSystem("ofs", self.is_epi, self.is_mono, self._image_factor),
        )

    def __repr__(self):
        return "FinSet()"

    @property
    def initial(self):
        return self.obj(0)

    @property
    def terminal(self):
        return self.obj(1)

    def arrow(self, src: BaseObject, dst: BaseObject, table) -> BaseArrow:
        table = tuple(int(v) for v in table)
        if len(table) != src.size or any(not 0 <= v < dst.size for v in table):
            raise BaseError(f"bad function table {table} for {src}->{dst}")
        return BaseArrow(src, dst, table)

    def identity(self, a: BaseObject) -> BaseArrow:
        return BaseArrow(a, a, tuple(range(a.size)))

    def compose(self, f: BaseArrow, g: BaseArrow) -> BaseArrow:
        """``g o f`` (f first)."""
        _check_compose(f, g)
        gt = g.data
        return BaseArrow(f.src, g.dst, tuple(gt[v] for v in f.data))

    def tensor(self, f: BaseArrow, g: BaseArrow) -> BaseArrow:
        nb, nd = g.src.size, g.dst.size
        table = tuple(x * nd + y for x in f.data for y in g.data)
        assert len(table) == f.src.size * nb
        return BaseArrow(self.tensor_obj(f.src, g.src), self.tensor_obj(f.dst, g.dst), table)

    def pair_index(self, a: BaseObject, b: BaseObject, i: int, j: int) -> int:
        return i * b.size + j

    def is_mono(self, f):
        return len(set(f.data)) == len(f.data)

    def is_epi(self, f):
        return len(set(f.data)) == f.dst.size

    def inverse(self, f):
        if not self.is_iso(f):
            raise BaseError("not invertible")
        inv = [0] * f.dst.size
        for i, v in enumerate(f.data):
            inv[v] = i
        return BaseArrow(f.dst, f.src, tuple(inv))

    def hom(self, a: BaseObject, b: BaseObject) -> Iterator[BaseArrow]:
        for t in itertools.product(range(b.size), repeat=a.size):
            yield BaseArrow(a, b, t)

    def random_arrow(self, a, b, rng: random.Random) -> BaseArrow:
        if b.size == 0 and a.size > 0:
            raise BaseError("no arrows into the empty set")
        return BaseArrow(a, b, tuple(rng.randrange(b.size) for _ in range(a.size)))

    def _image_factor(self, f):
        image = sorted(set(f.data))
        pos = {v: k for k, v in enumerate(image)}
        mid = self.obj(len(image))
        return BaseArrow(f.src, mid, tuple(pos[v] for v in f.data)), BaseArrow(mid, f.dst, tuple(image))

    # -- limits ----------------------------------------------------------
    def limit(self, nodes, edges) -> Cone:
        sizes = [o.size for o in nodes]
        for i, j, f in edges:
            if f.src != nodes[i] or f.dst != nodes[j]:
                raise EndpointError(f"edge {i}->{j} does not match its nodes")
        tuples = finset_limit(sizes, [(i, j, f.data) for i, j, f in edges])
        apex = self.obj(len(tuples))
        legs = tuple(BaseArrow(apex, nodes[k], tuple(t[k] for t in tuples)) for k in range(len(nodes)))
        return Cone(apex, legs, {t: n for n, t in enumerate(tuples)})

    def limit_mediator(self, cone: Cone, legs: Sequence[BaseArrow], source: BaseObject | None = None) -> BaseArrow:
        if source is None:
            if not legs:
                raise BaseError("mediator needs an explicit source for empty shapes")
            source = legs[0].src
        src = source
        table = []
        for x in range(src.size):
            key = tuple(leg.data[x] for leg in legs)
            if key not in cone.aux:
                raise BaseError(f"legs do not form a cone (element {x})")
            table.append(cone.aux[key])
        return BaseArrow(src, cone.apex, tuple(table))

    def colimit(self, nodes, edges) -> Cone:
        offs = list(itertools.accumulate([0] + [o.size for o in nodes]))
        uf = _UnionFind(offs[-1])
        for i, j, f in edges:
            if f.src != nodes[i] or f.dst != nodes[j]:
                raise EndpointError(f"edge {i}->{j} does not match its nodes")
            for x, y in enumerate(f.data):
                uf.union(offs[i] + x, offs[j] + y)
        roots = sorted({uf.find(g) for g in range(offs[-1])})
        cls = {r: n for n, r in enumerate(roots)}
        apex = self.obj(len(roots))
        legs = tuple(
            BaseArrow(o, apex, tuple(cls[uf.find(offs[k] + x)] for x in range(o.size)))
            for k, o in enumerate(nodes)
        )
        return Cone(apex, legs, (roots, offs, [uf.find(g) for g in range(offs[-1])]))

    def colimit_mediator(self, cocone: Cone, legs: Sequence[BaseArrow], target: BaseObject | None = None) -> BaseArrow:
        roots, offs, find = cocone.aux
        if target is None:
            if not legs:
                raise BaseError("mediator needs an explicit target for empty shapes")
            target = legs[0].dst
        out = [None] * len(roots)
        cls = {r: n for n, r in enumerate(roots)}
        for k, leg in enumerate(legs):
            for x, y in enumerate(leg.data):
                c = cls[find[offs[k] + x]]
                if out[c] is None:
                    out[c] = y
                elif out[c] != y:
                    raise BaseError("legs do not form a cocone")
        return BaseArrow(cocone.apex, target, tuple(out))

    # -- lifting ---------------------------------------------------------
    def find_lift(self, i, p, top, bottom):
        """First h (in lexicographic table order) with h o i = top and p o h = bottom."""
        if self.compose(top, p) != self.compose(i, bottom):
            raise LiftPreconditionError("square does not commute")
        forced: dict[int, int] = {}
        for a, b in enumerate(i.data):
            v = top.data[a]
            if forced.setdefault(b, v) != v:
                return None
        table = []
        for b in range(i.dst.size):
            if b in forced:
                table.append(forced[b])
                continue
            for x in range(p.src.size):
                if p.data[x] == bottom.data[b]:
                    table.append(x)
                    break
            else:
                return None
        return BaseArrow(i.dst, p.src, tuple(table))


# ---------------------------------------------------------------------------
# vector spaces over F_p


class FinVect(BaseCategory):
    kind = "finvect"
    cartesian = False

    def __init__(self, p: int = 2):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise BaseError(f"{p} is not prime")
        self.p = p
        mono = lambda f: linalg.rank(f.data, f.src.size, self.p) == f.src.size
        epi = lambda f: linalg.rank(f.data, f.src.size, self.p) == f.dst.size
        self.is_mono, self.is_epi = mono, epi
        self.model = ModelData(
            we=lambda f: True,
            cof=mono,
            fib=epi,
            factor_acof_fib=self._graph_factor,
            factor_cof_afib=self._graph_factor,
            ofs=FactorizationSystem("ofs", epi, mono, self._image_factor),
        )

    def __repr__(self):
        return f"FinVect({self.p})"

    @property
    def initial(self):
        return self.obj(0)

    @property
    def terminal(self):
        return self.obj(0)

    def arrow(self, src: BaseObject, dst: BaseObject, rows) -> BaseArrow:
        data = tuple(tuple(int(v) % self.p for v in r) for r in rows)
        if len(data) != dst.size or any(len(r) != src.size for r in data):
            raise BaseError(f"bad matrix shape for {src}->{dst}")
        return BaseArrow(src, dst, data)

    def identity(self, a):
        return BaseArrow(a, a, linalg.eye(a.size))

    def zero(self, a, b):
        return BaseArrow(a, b, linalg.zeros(b.size, a.size))

    def compose(self, f, g):
        """``g o f`` (f first)."""
        _check_compose(f, g)
        return BaseArrow(f.src, g.dst, linalg.matmul(g.data, f.data, f.dst.size, f.src.size, self.p))

    def tensor(self, f, g):
        return BaseArrow(
            self.tensor_obj(f.src, g.src),
            self.tensor_obj(f.dst, g.dst),
            linalg.kron(f.data, g.data, self.p),
        )

    def inverse(self, f):
        if not self.is_iso(f):
            raise BaseError("not invertible")
        n = f.src.size
        cols = []
        for k in range(n):
            e = tuple(1 if r == k else 0 for r in range(n))
            cols.append(linalg.solve(f.data, e, n, self.p))
        return BaseArrow(f.dst, f.src, linalg.transpose(tuple(cols), n))

    def hom(self, a, b):
        for flat in itertools.product(range(self.p), repeat=a.size * b.size):
            yield BaseArrow(a, b, tuple(tuple(flat[r * a.size:(r + 1) * a.size]) for r in range(b.size)))

    def random_arrow(self, a, b, rng: random.Random):
        return BaseArrow(a, b, tuple(tuple(rng.randrange(self.p) for _ in range(a.size)) for _ in range(b.size)))

    def _graph_factor(self, f):
        """(mono, epi) factorization through the graph: A -> A+B -> B."""
        if self.is_iso(f):
            return f, self.identity(f.dst)
        a, b = f.src.size, f.dst.size
        mid = self.obj(a + b)
        i = BaseArrow(f.src, mid, linalg.eye(a) + f.data)
        p = BaseArrow(mid, f.dst, tuple((0,) * a + row for row in linalg.eye(b)))
        return i, p

    def _image_factor(self, f):
        a, b = f.src.size, f.dst.size
        cols = linalg.transpose(f.data, a)
        red, piv = linalg.rref(cols, b, self.p)
        r = len(piv)
        mid = self.obj(r)
        incl = BaseArrow(mid, f.dst, linalg.transpose(tuple(tuple(row) for row in red), b) if r else linalg.zeros(b, 0))
        coords = BaseArrow(f.src, mid, tuple(f.data[pc] for pc in piv))
        return coords, incl

    # -- limits ----------------------------------------------------------
    def limit(self, nodes, edges) -> Cone:
        p = self.p
        dims = [o.size for o in nodes]
        offs = list(itertools.accumulate([0] + dims))
        n = offs[-1]
        rows = []
        for i, j, f in edges:
            if f.src != nodes[i] or f.dst != nodes[j]:
                raise EndpointError(f"edge {i}->{j} does not match its nodes")
            for r in range(dims[j]):
                row = [0] * n
                for c in range(dims[i]):
                    row[offs[i] + c] = f.data[r][c]
                row[offs[j] + r] = (row[offs[j] + r] - 1) % p
                rows.append(row)
        basis, free = linalg.nullspace_free(tuple(map(tuple, rows)), n, p)
        k = len(basis)
        apex = self.obj(k)
        legs = tuple(
            BaseArrow(apex, o, tuple(tuple(v[offs[m] + r] for v in basis) for r in range(o.size)))
            for m, o in enumerate(nodes)
        )
        return Cone(apex, legs, (free, offs, basis))

    def limit_mediator(self, cone: Cone, legs, source: BaseObject | None = None) -> BaseArrow:
        free, offs, basis = cone.aux
        if source is None:
            if not legs:
                raise BaseError("mediator needs an explicit source for empty shapes")
            source = legs[0].src
        stacked = [row for leg in legs for row in leg.data]
        m = BaseArrow(source, cone.apex, tuple(tuple(stacked[c]) for c in free) if free else ())
        for leg, proj in zip(legs, cone.legs):
            if self.compose(m, proj) != leg:
                raise BaseError("legs do not form a cone")
        return m

    def colimit(self, nodes, edges) -> Cone:
        p = self.p
        dims = [o.size for o in nodes]
        offs = list(itertools.accumulate([0] + dims))
        n = offs[-1]
        rels = []
        for i, j, f in edges:
            if f.src != nodes[i] or f.dst != nodes[j]:
                raise EndpointError(f"edge {i}->{j} does not match its nodes")
            for c in range(dims[i]):
                v = [0] * n
                for r in range(dims[j]):
                    v[offs[j] + r] = f.data[r][c]
                v[offs[i] + c] = (v[offs[i] + c] - 1) % p
                rels.append(v)
        red, piv = linalg.rref(rels, n, p)
        pivrow = {pc: row for row, pc in zip(red, piv)}
        nonpiv = [c for c in range(n) if c not in pivrow]
        k = len(nonpiv)
        apex = self.obj(k)
        # quotient map: column t is the reduced form of e_t in non-pivot coordinates
        qcols = []
        for t in range(n):
            if t in pivrow:
                row = pivrow[t]
                qcols.append(tuple((-row[f]) % p for f in nonpiv))
            else:
                qcols.append(tuple(1 if f == t else 0 for f in nonpiv))
        legs = tuple(
            BaseArrow(o, apex, tuple(tuple(qcols[offs[m] + c][r] for c in range(o.size)) for r in range(k)))
            for m, o in enumerate(nodes)
        )
        return Cone(apex, legs, (nonpiv, offs))

    def colimit_mediator(self, cocone: Cone, legs, target: BaseObject | None = None) -> BaseArrow:
        nonpiv, offs = cocone.aux
        if target is None:
            if not legs:
                raise BaseError("mediator needs an explicit target for empty shapes")
            target = legs[0].dst
        stacked_cols = [col for leg in legs for col in linalg.transpose(leg.data, leg.src.size)]
        cols = tuple(stacked_cols[c] for c in nonpiv)
        m = BaseArrow(cocone.apex, target, linalg.transpose(cols, target.size) if cols else linalg.zeros(target.size, 0))
        for leg, inj in zip(legs, cocone.legs):
            if self.compose(inj, m) != leg:
                raise BaseError("legs do not form a cocone")
        return m

    # -- lifting ---------------------------------------------------------
    def find_lift(self, i, p_, top, bottom):
        """Solve h o i = top, p o h = bottom as one linear system over F_p."""
        if self.compose(top, p_) != self.compose(i, bottom):
            raise LiftPreconditionError("square does not commute")
        p = self.p
        nb, nx = i.dst.size, p_.src.size
        na, ny = i.src.size, p_.dst.size
        nvar = nx * nb
        rows, rhs = [], []
        for x in range(nx):
            for a in range(na):
                row = [0] * nvar
                for b in range(nb):
                    row[x * nb + b] = i.data[b][a]
                rows.append(tuple(row))
                rhs.append(top.data[x][a])
        for y in range(ny):
            for b in range(nb):
                row = [0] * nvar
                for x in range(nx):
                    row[x * nb + b] = p_.data[y][x]
                rows.append(tuple(row))
                rhs.append(bottom.data[y][b])
        sol = linalg.solve(tuple(rows), tuple(rhs), nvar, p) if rows else (0,) * nvar
        if sol is None:
            return None
        return BaseArrow(i.dst, p_.src, tuple(tuple(sol[x * nb:(x + 1) * nb]) for x in range(nx)))


def make_base(kind: str, p: int = 2) -> BaseCategory:
    if kind == "finset":
        return FinSet()
    if kind == "finvect":
        return FinVect(p)
    raise BaseError(f"unknown base kind {kind!r}")


def weakened(base: BaseCategory, **preds) -> BaseCategory:
    """Copy of ``base`` whose model data has some predicates replaced."""
    return base.with_model(replace(base.model, **preds))
