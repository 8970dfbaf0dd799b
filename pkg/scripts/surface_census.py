"""Genus and component statistics of unlabeled checker surfaces."""
from __future__ import annotations

import argparse
from collections import Counter
from dataclasses import dataclass

from conjalg.conjugacy import class_enumerate
from conjalg.surfaces import PRODUCT2, surface_from_class, surface_topology


@dataclass
class CensusConfig:
    N_max: int = 4


def census(N: int) -> Counter:
    """Counter over (components, sorted genera) for all surfaces with 2N faces."""
    out: Counter = Counter()
    for c in class_enumerate(PRODUCT2, N):
        topo = surface_topology(surface_from_class(c))
        out[(len(topo.components), tuple(sorted(k.genus for k in topo.components)))] += 1
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=CensusConfig.N_max)
    cfg = CensusConfig(ap.parse_args().n_max)
    for N in range(1, cfg.N_max + 1):
        counts = census(N)
        connected = sum(v for (k, _), v in counts.items() if k == 1)
        print(f"N={N}: {sum(counts.values())} surfaces, {connected} connected")
        for (k, genera), v in sorted(counts.items()):
            print(f"    {v:>4} x  components={k} genera={list(genera)}")


if __name__ == "__main__":
    main()
