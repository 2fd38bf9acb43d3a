"""Command-line entry point: ``rainbow-lab {construct,verify,solve,diagnose}``.

Exit codes: 0 success / nothing found, 1 witness found, 2 input error,
3 search budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import constructions as cons
from .diagnostics import check_extremal_structure, f4_accounting, f4_bounds, gallai_defect
from .errors import RainbowLabError
from .hypercore import Coloring, load_coloring, save_coloring
from .patterns import (
    CANCELLATIVE,
    ColoredGraph,
    canonical_kind,
    find_rainbow,
    has_rainbow_triangle,
)
from .solver import PROVED, Budget, solve_anti_ramsey

EXIT_OK, EXIT_WITNESS, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

FAMILY_CHOICES = ["cancellative", "f4", "f5", "h1", "h2", "t", "o"]


def _default_seed() -> int:
    raw = os.environ.get("RAINBOW_LAB_SEED")
    return int(raw) if raw else 0


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _write_outputs(c: Coloring, out: str | None, sidecar: dict) -> None:
    if not out:
        return
    save_coloring(c, out)
    Path(out + ".json").write_text(json.dumps(sidecar, indent=2, sort_keys=True) + "\n")


def _int_like(text: str) -> int:
    return int(float(text))


def cmd_construct(args) -> int:
    kind = args.kind
    params: dict = {"kind": kind}
    if kind == "cancellative":
        c = cons.build_cancellative_extremal(args.n, args.p)
        params.update(n=args.n, p=args.p, seed=args.seed)
        detectors = ["cancellative"]
    elif kind == "mpsts":
        c = cons.build_mpsts_coloring(args.n, args.seed)
        params.update(n=args.n, seed=args.seed)
        detectors = ["f4"]
    elif kind == "pg":
        pg = cons.build_pg_construction(args.s, args.restarts, args.seed)
        c = pg.coloring
        params.update(s=args.s, restarts=args.restarts, seed=args.seed,
                      independent_set_size=len(pg.independent_set))
        detectors = ["f4"]
    else:
        g = cons.generate_gallai(args.n, args.seed, args.max_parts)
        c = g.to_coloring()
        params.update(n=args.n, seed=args.seed, max_parts=args.max_parts)
        detectors = ["rainbow-triangle"]

    hits = {}
    for fam in detectors:
        if fam == "rainbow-triangle":
            tri = has_rainbow_triangle(ColoredGraph.from_coloring(c))
            hits[fam] = None if tri is None else {"triangle": list(tri)}
        else:
            w = find_rainbow(c, fam)
            hits[fam] = None if w is None else w.to_json()
    summary = {
        "params": params,
        "n": c.n,
        "p": c.p,
        "colors": c.k,
        "verification": {fam: ("absent" if hit is None else "FOUND") for fam, hit in hits.items()},
    }
    _write_outputs(c, args.out, summary)
    if args.out:
        summary["coloring_path"] = args.out
    _emit(summary)
    if any(h is not None for h in hits.values()):
        sys.stderr.write("construction produced a rainbow copy: " + json.dumps(hits) + "\n")
        return EXIT_WITNESS
    return EXIT_OK


def cmd_verify(args) -> int:
    c = load_coloring(args.path)
    fam = canonical_kind(args.family)
    w = find_rainbow(c, fam)
    if w is None:
        _emit({"family": fam, "result": "absent", "n": c.n, "p": c.p, "colors": c.k})
        return EXIT_OK
    _emit({"family": fam, "result": "witness", "witness": w.to_json()})
    return EXIT_WITNESS


def cmd_solve(args) -> int:
    budget = Budget(max_nodes=args.max_nodes, max_seconds=args.max_seconds)
    res = solve_anti_ramsey(args.n, args.p, args.family, budget)
    report = res.to_json()
    if args.out:
        save_coloring(res.witness, args.out)
        report["witness_path"] = args.out
    _emit(report)
    return EXIT_OK if res.status == PROVED else EXIT_BUDGET


def cmd_diagnose(args) -> int:
    c = load_coloring(args.path)
    report: dict = {"n": c.n, "p": c.p, "colors": c.k}
    failed = False
    if c.p == 2:
        g = ColoredGraph.from_coloring(c)
        tri = has_rainbow_triangle(g)
        report["rainbow_triangle"] = None if tri is None else list(tri)
        if tri is None:
            d = gallai_defect(g)
            report["gallai"] = {"c": d.c, "rho": d.rho, "bound_ok": d.bound_ok}
            failed = not d.bound_ok
    elif c.p == 3:
        acc = f4_accounting(c)
        f4_free = find_rainbow(c, "F4") is None
        report["accounting"] = acc.to_json()
        report["rainbow_f4_free"] = f4_free
        checks = {"leave_identity": acc.leave_identity}
        if f4_free:
            checks.update(incidence_bound=acc.incidence_bound, color_bound=acc.color_bound)
            if c.n >= 4:
                lo, hi = f4_bounds(c.n)
                report["f4_bounds"] = {"lower": lo, "upper": hi}
            failed = not all(checks.values())
        report["checks"] = checks
    if c.p >= 3 and c.n >= c.p + 1:
        st = check_extremal_structure(c)
        report["cancellative_extremal_structure"] = {"ok": st.ok, "status": st.status,
                                                     "U": list(st.U) if st.U else None}
        report["rainbow_cancellative_free"] = find_rainbow(c, CANCELLATIVE) is None
    _emit(report)
    return EXIT_WITNESS if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rainbow-lab", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    seed = _default_seed()

    pc = sub.add_parser("construct", help="build a lower-bound coloring")
    pc.add_argument("kind", choices=["cancellative", "mpsts", "pg", "gallai"])
    pc.add_argument("--n", type=int, default=7)
    pc.add_argument("--p", type=int, default=3)
    pc.add_argument("--s", type=int, default=3)
    pc.add_argument("--seed", type=int, default=seed)
    pc.add_argument("--restarts", type=int, default=32)
    pc.add_argument("--max-parts", type=int, default=4)
    pc.add_argument("--out", help="coloring file; a JSON sidecar is written next to it")
    pc.set_defaults(func=cmd_construct)

    pv = sub.add_parser("verify", help="search a coloring file for a rainbow copy")
    pv.add_argument("path")
    pv.add_argument("--family", choices=FAMILY_CHOICES, default="cancellative")
    pv.set_defaults(func=cmd_verify)

    ps = sub.add_parser("solve", help="exact anti-Ramsey number for a tiny instance")
    ps.add_argument("--n", type=int, required=True)
    ps.add_argument("--p", type=int, required=True)
    ps.add_argument("--family", choices=["cancellative", "f4", "f5", "o"], default="cancellative")
    ps.add_argument("--max-nodes", type=_int_like, default=None)
    ps.add_argument("--max-seconds", type=float, default=None)
    ps.add_argument("--out", help="write the witness coloring here")
    ps.set_defaults(func=cmd_solve)

    pd = sub.add_parser("diagnose", help="accounting identities and bound checks")
    pd.add_argument("path")
    pd.set_defaults(func=cmd_diagnose)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RainbowLabError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
