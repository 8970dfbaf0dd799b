"""Check the stability identity for every basis pair of small ambient.

    python3 scripts/stability_sweep.py --out results/stability.json
"""
from __future__ import annotations

import argparse
import itertools
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from conjalg.conjugacy import classes_up_to
from conjalg.oracle import verify_stability
from conjalg.perm import FamilyDescriptor


@dataclass
class SweepConfig:
    # family literal -> (largest basis ambient, largest N)
    targets: dict[str, tuple[int, int]] = field(
        default_factory=lambda: {"s1": (2, 6), "s2": (2, 4), "full:a": (2, 5)}
    )
    workers: int = 1
    out: str = "results/stability.json"


def run(cfg: SweepConfig) -> dict:
    summary = {"config": asdict(cfg), "families": {}}
    for literal, (n_max, N_max) in cfg.targets.items():
        fam = FamilyDescriptor.parse(literal)
        basis = classes_up_to(fam, n_max)
        start = time.time()
        failures = []
        for g, h in itertools.product(basis, repeat=2):
            report = verify_stability(g, h, range(N_max + 1), workers=cfg.workers)
            if not report.passed:
                failures.append(report.to_json())
        summary["families"][literal] = {
            "pairs": len(basis) ** 2,
            "N_max": N_max,
            "failures": failures,
            "seconds": round(time.time() - start, 2),
        }
        print(f"{literal:>8}: {len(basis) ** 2} pairs, N <= {N_max}, "
              f"{len(failures)} failures, {summary['families'][literal]['seconds']}s")
    return summary


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default=SweepConfig.out)
    args = ap.parse_args()
    cfg = SweepConfig(workers=args.workers, out=args.out)
    summary = run(cfg)
    out = Path(cfg.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    bad = sum(len(f["failures"]) for f in summary["families"].values())
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
