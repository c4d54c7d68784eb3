"""Project files: a line-oriented description of bases, groupements,
diagrams, icons, shapes and tasks.

    # comment
    base fv finvect p=2
    groupement D delta_plus m=2
    groupement D1 delta_plus m=1
    diagram M on D base fv monoid
    diagram E on D1 base fv {
      val 1 = 2
      arr 0->1:[] = [[1],[0]]
    }
    icon s : M -> M identity
    shape J discrete n=2
    task t1 validate M

Statements are one per line; ``{`` opens a block that runs to a line
holding only ``}``.  Parameters are ``key=value`` words; block values are
JSON.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

BASE_KINDS = ("finset", "finvect")
GROUPEMENT_KINDS = ("delta_plus", "px", "reedy1")
DIAGRAM_GENERATORS = ("explicit", "random", "monoid", "nerve", "unit")
ICON_GENERATORS = ("explicit", "identity", "random", "compose", "factor-left", "factor-right")
SHAPE_KINDS = ("point", "discrete", "cospan", "span")
TASK_KINDS = (
    "validate", "divisibility", "latch", "match", "imap", "classify", "factor", "lift",
    "limit", "colimit", "bridge", "joyal", "segal-check", "model-verify",
)


class ProjectError(Exception):
    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("\n".join(str(e) for e in self.errors))


@dataclass(frozen=True)
class Problem:
    line: int
    col: int
    msg: str

    def __str__(self):
        return f"{self.line}:{self.col}: {self.msg}"


@dataclass
class Decl:
    """One statement.  ``args`` are positional words after the kind,
    ``params`` the key=value words, ``entries`` the block lines as
    (keyword, cell words, JSON value)."""

    stmt: str
    name: str
    kind: str
    args: tuple = ()
    params: dict = field(default_factory=dict)
    entries: list = field(default_factory=list)
    line: int = field(default=0, compare=False)


@dataclass
class Project:
    decls: list = field(default_factory=list)

    def of(self, stmt):
        return {d.name: d for d in self.decls if d.stmt == stmt}

    @property
    def tasks(self):
        return [d for d in self.decls if d.stmt == "task"]


_WORD = re.compile(r"\S+")
_ENTRY_KEYS = {"val": 1, "arr": 1, "colax": 2, "comp": 1}


def _words(text):
    return [(m.group(), m.start() + 1) for m in _WORD.finditer(text)]


def _split_params(words):
    args, params = [], {}
    for w, col in words:
        if "=" in w and not w.startswith("=") and not w.startswith("["):
            k, v = w.split("=", 1)
            params[k] = v
        else:
            args.append(w)
    return tuple(args), params


def _header(stmt, words, ln, problems):
    """(name, kind, args, params) for the words after the statement keyword."""
    if stmt == "task":
        if len(words) < 2:
            problems.append(Problem(ln, 1, "task needs an id and a kind"))
            return None
        name, kind = words[0][0], words[1][0]
        args, params = _split_params(words[2:])
        if kind not in TASK_KINDS:
            problems.append(Problem(ln, words[1][1], f"unknown task kind {kind!r}"))
        return name, kind, args, params
    if stmt == "diagram":
        # diagram NAME on G base B [generator] [params]
        w = [x for x, _ in words]
        if len(w) < 5 or w[1] != "on" or w[3] != "base":
            problems.append(Problem(ln, 1, "expected 'diagram NAME on GROUPEMENT base BASE [generator]'"))
            return None
        rest = words[5:]
        kind = "explicit"
        if rest and "=" not in rest[0][0]:
            kind = rest[0][0]
            if kind not in DIAGRAM_GENERATORS:
                problems.append(Problem(ln, rest[0][1], f"unknown diagram generator {kind!r}"))
            rest = rest[1:]
        args, params = _split_params(rest)
        return w[0], kind, (w[2], w[4]) + args, params
    if stmt == "icon":
        # icon NAME : SRC -> DST [generator] [args] [params]
        w = [x for x, _ in words]
        if len(w) >= 2 and w[1] == ":" and len(w) >= 5 and w[3] == "->":
            rest = words[5:]
            kind = "explicit"
            if rest and "=" not in rest[0][0]:
                kind = rest[0][0]
                rest = rest[1:]
            if kind not in ICON_GENERATORS:
                problems.append(Problem(ln, 1, f"unknown icon generator {kind!r}"))
            args, params = _split_params(rest)
            return w[0], kind, (w[2], w[4]) + args, params
        if len(w) >= 2 and w[1] in ICON_GENERATORS:
            args, params = _split_params(words[2:])
            return w[0], w[1], args, params
        problems.append(Problem(ln, 1, "expected 'icon NAME : SRC -> DST [generator]' or 'icon NAME GENERATOR ARGS'"))
        return None
    if len(words) < 2:
        problems.append(Problem(ln, 1, f"{stmt} needs a name and a kind"))
        return None
    name, kind = words[0][0], words[1][0]
    allowed = {"base": BASE_KINDS, "groupement": GROUPEMENT_KINDS, "shape": SHAPE_KINDS}[stmt]
    if kind not in allowed:
        problems.append(Problem(ln, words[1][1], f"unknown {stmt} kind {kind!r}"))
    args, params = _split_params(words[2:])
    return name, kind, args, params


def _entry(text, ln, offset, problems):
    if "=" not in text:
        problems.append(Problem(ln, offset, "block entry needs '= value'"))
        return None
    lhs, rhs = text.split("=", 1)
    words = lhs.split()
    if not words or words[0] not in _ENTRY_KEYS:
        problems.append(Problem(ln, offset, f"unknown block entry {words[0] if words else ''!r}"))
        return None
    key = words[0]
    if len(words) - 1 != _ENTRY_KEYS[key]:
        problems.append(Problem(ln, offset, f"'{key}' takes {_ENTRY_KEYS[key]} cell name(s)"))
        return None
    try:
        value = json.loads(rhs)
    except json.JSONDecodeError as e:
        problems.append(Problem(ln, offset + len(lhs) + 1 + e.colno, f"bad JSON value: {e.msg}"))
        return None
    return (key, tuple(words[1:]), _freeze(value))


def _freeze(v):
    if isinstance(v, list):
        return tuple(_freeze(x) for x in v)
    return v


def parse_project(text: str) -> Project:
    """Parse and check references; raises ProjectError with every problem."""
    problems = []
    decls = []
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        ln = i + 1
        raw = lines[i].split("#", 1)[0].rstrip()
        i += 1
        if not raw.strip():
            continue
        words = _words(raw)
        stmt = words[0][0]
        if stmt not in ("base", "groupement", "diagram", "icon", "shape", "task"):
            problems.append(Problem(ln, words[0][1], f"unknown statement {stmt!r}"))
            continue
        block = words[-1][0] == "{"
        if block:
            words = words[:-1]
        head = _header(stmt, words[1:], ln, problems)
        entries = []
        if block:
            closed = False
            while i < len(lines):
                bl = lines[i].split("#", 1)[0]
                i += 1
                if bl.strip() == "}":
                    closed = True
                    break
                if not bl.strip():
                    continue
                e = _entry(bl.strip(), i, len(bl) - len(bl.lstrip()) + 1, problems)
                if e is not None:
                    entries.append(e)
            if not closed:
                problems.append(Problem(ln, len(raw), "unclosed block"))
        if head is None:
            continue
        name, kind, args, params = head
        decls.append(Decl(stmt, name, kind, args, params, entries, ln))
    project = Project(decls)
    problems.extend(check_references(project))
    if problems:
        raise ProjectError(problems)
    return project


def _task_refs(d: Decl):
    """(role, statement, name) references made by a task."""
    k, a, p = d.kind, d.args, d.params
    if k in ("validate",):
        return [("target", ("diagram", "icon"), a[0])] if a else []
    if k in ("latch", "match", "imap", "bridge", "segal-check"):
        return [("diagram", ("diagram",), a[0])] if a else []
    if k == "divisibility":
        return [("groupement", ("groupement",), a[0])] if a else []
    if k in ("classify", "factor"):
        return [("icon", ("icon",), a[0])] if a else []
    if k == "lift":
        return [(r, ("icon",), p[r]) for r in ("lam", "rho", "top", "bottom") if r in p]
    if k in ("limit", "colimit"):
        refs = [("shape", ("shape",), a[0])] if a else []
        return refs + [(key, ("diagram", "icon"), v) for key, v in p.items() if key not in ("sizes", "check", "tests")]
    if k == "model-verify":
        refs = [("groupement", ("groupement",), a[0])] if a else []
        return refs + ([("base", ("base",), a[1])] if len(a) > 1 else [])
    return []


_ARITY = {
    "validate": 1, "divisibility": 1, "latch": 2, "match": 2, "imap": 2, "classify": 1, "factor": 1,
    "lift": 0, "limit": 1, "colimit": 1, "bridge": 1, "joyal": 0, "segal-check": 1, "model-verify": 2,
}


def check_references(project: Project):
    problems = []
    seen = {}
    for d in project.decls:
        key = (d.stmt if d.stmt != "task" else "task", d.name)
        if key in seen:
            problems.append(Problem(d.line, 1, f"duplicate {d.stmt} {d.name!r} (first at line {seen[key]})"))
        seen[key] = d.line
    names = {s: project.of(s) for s in ("base", "groupement", "diagram", "icon", "shape")}

    def need(d, stmts, name, role):
        if not any(name in names[s] for s in stmts):
            problems.append(Problem(d.line, 1, f"{d.stmt} {d.name!r}: {role} refers to undeclared {'/'.join(stmts)} {name!r}"))
            return False
        return True

    for d in project.decls:
        if d.stmt == "diagram":
            g, b = d.args[0], d.args[1]
            ok = need(d, ("groupement",), g, "groupement") & need(d, ("base",), b, "base")
            if ok and "level" in d.params:
                gm = names["groupement"][g].params.get("m")
                if gm is not None and int(d.params["level"]) > int(gm):
                    problems.append(Problem(d.line, 1, f"diagram {d.name!r}: level {d.params['level']} exceeds bound {gm} of {g!r}"))
        elif d.stmt == "icon":
            if d.kind in ("explicit", "identity", "random"):
                for role, n in zip(("source", "target"), d.args[:2]):
                    need(d, ("diagram",), n, role)
                if len(d.args) >= 2 and all(n in names["diagram"] for n in d.args[:2]):
                    s, t = names["diagram"][d.args[0]], names["diagram"][d.args[1]]
                    if s.args[0] != t.args[0]:
                        problems.append(Problem(d.line, 1, f"icon {d.name!r}: {d.args[0]!r} and {d.args[1]!r} live on different groupements"))
                    elif s.params.get("level") != t.params.get("level"):
                        problems.append(Problem(d.line, 1, f"icon {d.name!r}: {d.args[0]!r} and {d.args[1]!r} have different levels"))
            else:
                for n in d.args:
                    need(d, ("icon",), n, "argument")
        elif d.stmt == "task":
            arity = _ARITY.get(d.kind, 0)
            if len(d.args) < arity:
                problems.append(Problem(d.line, 1, f"task {d.name!r}: {d.kind} takes {arity} argument(s)"))
                continue
            for role, stmts, n in _task_refs(d):
                need(d, stmts, n, role)
    return problems


def _fmt_value(v):
    return json.dumps(v, separators=(",", ":"))


def _fmt_params(params):
    return [f"{k}={v}" for k, v in params.items()]


def serialize_project(project: Project) -> str:
    out = []
    for d in project.decls:
        if d.stmt == "diagram":
            words = ["diagram", d.name, "on", d.args[0], "base", d.args[1], d.kind, *d.args[2:]]
        elif d.stmt == "icon" and d.kind in ("explicit", "identity", "random"):
            words = ["icon", d.name, ":", d.args[0], "->", d.args[1], d.kind, *d.args[2:]]
        else:
            words = [d.stmt, d.name, d.kind, *d.args]
        words += _fmt_params(d.params)
        if d.entries:
            out.append(" ".join(words) + " {")
            for key, cells, value in d.entries:
                out.append(f"  {key} {' '.join(cells)} = {_fmt_value(value)}")
            out.append("}")
        else:
            out.append(" ".join(words))
    return "\n".join(out) + "\n"
