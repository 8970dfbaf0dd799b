"""Write structure-constant tables for several families.

Each table lists a^r_{g,h} for all basis pairs with ambient at most n_max,
in the same CSV layout as ``conjalg table``.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from pathlib import Path

from conjalg.cli import render_table, table_rows
from conjalg.perm import FamilyDescriptor


@dataclass
class TableConfig:
    n_max: dict[str, int] = field(default_factory=lambda: {"s1": 3, "s2": 2, "full:a": 2})
    out_dir: str = "results/tables"
    fmt: str = "csv"
    workers: int = 1


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default=TableConfig.out_dir)
    ap.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    cfg = TableConfig(out_dir=args.out_dir, fmt=args.fmt, workers=args.workers)

    out_dir = Path(cfg.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for literal, n_max in cfg.n_max.items():
        rows = table_rows(FamilyDescriptor.parse(literal), n_max, cfg.workers)
        name = literal.replace(":", "_").replace(",", "_")
        path = out_dir / f"{name}_n{n_max}.{cfg.fmt}"
        path.write_text(render_table(rows, cfg.fmt))
        print(f"{path}: {len(rows)} rows")


if __name__ == "__main__":
    main()
