"""Command line front end: ``check``, ``run`` and ``explain``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .project import ProjectError, parse_project
from .runner import Options, report_json, report_text, run_project, write_reports

EXPLAIN = {
    "validate": ("validate NAME",
                 "Check a diagram (normality, functoriality on 2-cells, colaxity naturality and coassociativity) "
                 "or an icon (components compatible with 2-cells and colaxity maps)."),
    "divisibility": ("divisibility GROUPEMENT",
                     "Direct 2-cells split uniquely along every decomposition of their target; "
                     "a failure names the 2-cell and the decomposition."),
    "latch": ("latch DIAGRAM CELL|all",
              "Colax-latching object L(F, z) as a colimit over direct 2-cells into z; reports its size "
              "and checks the map to F z."),
    "match": ("match DIAGRAM CELL|all",
              "Colax-matching object M(F, z) as a limit over inverse 2-cells out of z into tensor products; "
              "reports its size and checks the map from F z."),
    "imap": ("imap DIAGRAM CELL|all",
             "Canonical map L(F, z) -> M(F, z) built from F below z; every compatibility triangle is checked and "
             "the map must equal (F z -> M) o (L -> F z) when F is defined at z."),
    "classify": ("classify ICON [expect=we,cof,fib]",
                 "Reedy classes of an icon from its relative latching and matching maps; with expect= the "
                 "classes must match exactly."),
    "factor": ("factor ICON [system=acof_fib|cof_afib|both]",
               "Factor an icon as rho o lambda and re-verify the composite and class membership."),
    "lift": ("lift lam=ICON rho=ICON [top=ICON bottom=ICON] [cap=N]",
             "Solve the given square, or every enumerated commuting square up to cap, degree by degree."),
    "limit": ("limit SHAPE OBJ=DIAGRAM ... ARROW=ICON ... [check=universal|none] [sizes=..] [tests=N]",
              "Limit of diagrams; checks the universal property against enumerated competitor cones and that "
              "truncation commutes with the limit."),
    "colimit": ("colimit SHAPE OBJ=DIAGRAM ... ARROW=ICON ... [check=universal|none] [sizes=..] [tests=N]",
                "Colimit of diagrams; checks the universal property against enumerated competitor cocones."),
    "bridge": ("bridge DIAGRAM",
               "Transport a diagram on P_X to a unital presheaf on Delta_X, check the presheaf laws and that "
               "transporting back gives the same tables."),
    "joyal": ("joyal [m=N]",
              "Joyal duality between augmented simplex maps and extremity-preserving maps: bijection per "
              "hom-set, functoriality, sums, and the images of multiplication and unit."),
    "segal-check": ("segal-check DIAGRAM",
                    "For each chain of length >= 2, whether the colaxity map to the tensor of its edges is a "
                    "weak equivalence."),
    "model-verify": ("model-verify GROUPEMENT BASE [sizes=..] [sample=N] [oracle=presheaf] [seed=N]",
                     "Enumerate diagrams and icons and check 2-of-3, closure, both factorizations, both lifting "
                     "properties and the retract argument."),
}


def _load(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        print(f"{path}: {e.strerror}", file=sys.stderr)
        return None
    try:
        return parse_project(text)
    except ProjectError as e:
        for p in e.errors:
            print(f"{path}:{p}", file=sys.stderr)
        return None


def cmd_check(args):
    project = _load(args.file)
    if project is None:
        return 2
    tasks = project.tasks
    print(f"{args.file}: ok, {len(project.decls) - len(tasks)} declarations, {len(tasks)} tasks")
    for t in tasks:
        print(f"  {t.name}: {t.kind} {' '.join(t.args)}".rstrip())
    return 0


def cmd_run(args):
    project = _load(args.file)
    if project is None:
        return 2
    options = Options(seed=args.seed, parallel=args.parallel)
    results = run_project(project, options)
    if args.out:
        write_reports(results, options, Path(args.out))
    else:
        sys.stdout.write(report_json(results, options))
    sys.stdout.write(report_text(results))
    return 0 if all(r.ok for r in results) else 1


def cmd_explain(args):
    entry = EXPLAIN.get(args.task)
    if entry is None:
        print(f"unknown task kind {args.task!r}; known: {', '.join(EXPLAIN)}", file=sys.stderr)
        return 2
    usage, text = entry
    print(f"task ID {usage}\n\n{text}")
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="colaxreedy", description="Colax Reedy diagram computations.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    p = sub.add_parser("check", help="parse a project file and list its tasks")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)
    p = sub.add_parser("run", help="run every task in a project file")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--out", default=None, help="directory for report.json and report.txt")
    p.set_defaults(func=cmd_run)
    p = sub.add_parser("explain", help="describe a task kind")
    p.add_argument("task")
    p.set_defaults(func=cmd_explain)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
