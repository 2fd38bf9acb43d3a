"""Exact anti-Ramsey values for the instances the solver can finish.

    python scripts/exact_values.py --max-seconds 120 --out results/exact_values.json

Cancellative values are compared with 1 + floor(n/p); F4 values with the
known (lower, upper) bracket.
"""
from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from rainbow_lab.constructions import build_cancellative_extremal, build_mpsts_coloring
from rainbow_lab.diagnostics import ar_cancellative_formula, f4_bounds
from rainbow_lab.solver import Budget, solve_anti_ramsey

DEFAULT_INSTANCES = [
    (4, 3, "Cancellative"), (5, 3, "Cancellative"), (6, 3, "Cancellative"),
    (5, 4, "Cancellative"), (6, 4, "Cancellative"), (6, 5, "Cancellative"), (7, 5, "Cancellative"),
    (5, 3, "F5"), (6, 3, "F5"), (5, 3, "O"), (6, 3, "O"), (6, 4, "O"),
    (4, 3, "F4"), (5, 3, "F4"), (6, 3, "F4"), (7, 3, "F4"),
]


@dataclass
class ExactConfig:
    max_seconds: float = 120.0
    max_nodes: int | None = None
    use_incumbent: bool = True
    instances: list = field(default_factory=lambda: list(DEFAULT_INSTANCES))


def reference(n, p, family):
    if family == "F4":
        return {"bracket": list(f4_bounds(n))}
    if p >= 3 and n >= p + 1 and (family == "Cancellative" or p == 3):
        return {"formula": ar_cancellative_formula(n, p)}
    return {}


def seed_incumbent(n, p, family):
    if family == "F4" and n >= 4:
        return build_mpsts_coloring(n)
    if family in ("Cancellative", "F5", "O") and p >= 3 and n >= p + 1:
        return build_cancellative_extremal(n, p)
    return None


def run(cfg: ExactConfig) -> list[dict]:
    rows = []
    for n, p, family in cfg.instances:
        inc = seed_incumbent(n, p, family) if cfg.use_incumbent else None
        res = solve_anti_ramsey(n, p, family, Budget(cfg.max_nodes, cfg.max_seconds), incumbent=inc)
        row = {**res.to_json(), **reference(n, p, family)}
        rows.append(row)
        print(f"n={n} p={p} {family:<12} value={res.value:<3} {res.status:<8} "
              f"nodes={res.nodes:<10} {res.elapsed:7.2f}s {reference(n, p, family)}")
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-seconds", type=float, default=120.0)
    ap.add_argument("--max-nodes", type=int, default=None)
    ap.add_argument("--no-incumbent", action="store_true")
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    cfg = ExactConfig(args.max_seconds, args.max_nodes, not args.no_incumbent)
    rows = run(cfg)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        cfg_json = {k: v for k, v in asdict(cfg).items() if k != "instances"}
        Path(args.out).write_text(json.dumps({"config": cfg_json, "rows": rows}, indent=2) + "\n")


if __name__ == "__main__":
    main()
