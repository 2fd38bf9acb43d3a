"""Color counts and detector checks for the three lower-bound constructions.

    python scripts/constructions_table.py --out results/constructions.csv

Each row lists the color count, the reference value, whether the relevant
detector found nothing, and the F4 accounting aggregates when p = 3.
"""
from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass

from rainbow_lab.constructions import build_cancellative_extremal, build_mpsts_coloring, build_pg_construction
from rainbow_lab.designs import schonheim
from rainbow_lab.diagnostics import f4_accounting, f4_bounds
from rainbow_lab.patterns import find_rainbow

FIELDS = ["construction", "n", "p", "colors", "reference", "detector", "absent",
          "I_plus_rho", "n_n_minus_2", "f4_lower", "f4_upper", "seconds"]


@dataclass
class TableConfig:
    cancellative_max_n: int = 25
    mpsts_max_n: int = 30
    pg_dims: tuple = (3, 4, 5)
    seed: int = 0


def _row(name, c, reference, detector, t0):
    row = dict(construction=name, n=c.n, p=c.p, colors=c.k, reference=reference, detector=detector,
               absent=find_rainbow(c, detector) is None)
    if c.p == 3:
        a = f4_accounting(c)
        row.update(I_plus_rho=a.I + a.rho, n_n_minus_2=c.n * (c.n - 2))
        lo, hi = f4_bounds(c.n)
        row.update(f4_lower=lo, f4_upper=hi)
    row["seconds"] = round(time.perf_counter() - t0, 3)
    return row


def rows(cfg: TableConfig):
    for p in (3, 4, 5):
        for n in range(p + 1, cfg.cancellative_max_n + 1):
            t0 = time.perf_counter()
            yield _row("cancellative", build_cancellative_extremal(n, p), 1 + n // p, "Cancellative", t0)
    for n in range(4, cfg.mpsts_max_n + 1):
        t0 = time.perf_counter()
        yield _row("mpsts", build_mpsts_coloring(n, cfg.seed), schonheim(n) + 1, "F4", t0)
    for s in cfg.pg_dims:
        t0 = time.perf_counter()
        pg = build_pg_construction(s, order_seed=cfg.seed)
        yield _row(f"pg(s={s})", pg.coloring, schonheim(pg.coloring.n) + 1, "F4", t0)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None, help="CSV path (stdout when omitted)")
    args = ap.parse_args()
    cfg = TableConfig(seed=args.seed)
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.DictWriter(fh, fieldnames=FIELDS)
        w.writeheader()
        for r in rows(cfg):
            w.writerow(r)
    finally:
        if args.out:
            fh.close()


if __name__ == "__main__":
    main()
