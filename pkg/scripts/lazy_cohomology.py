"""Enumerate lazy 2-cocycles of H4 over small prime fields and group them into
cohomology classes.

    python scripts/lazy_cohomology.py --primes 3 5 7
"""

import argparse
import time
from dataclasses import dataclass, field

from homkit.corpus import h4
from homkit.exactlin import Field
from homkit.lazy import centrality_report, lazy_cohomology, lazy_functionals


@dataclass
class CohomologyConfig:
    primes: list[int] = field(default_factory=lambda: [3, 5])
    workers: int = 1


def run(cfg: CohomologyConfig) -> list[dict]:
    rows = []
    for p in cfg.primes:
        F = Field("GF", p)
        H = h4(F)
        start = time.perf_counter()
        c = lazy_cohomology(H, workers=cfg.workers)
        rows.append({
            "p": p,
            "candidates": c.certificate["candidates_examined"],
            "cocycles": len(c.cocycles),
            "lazy_functionals": len(lazy_functionals(H)),
            "coboundaries": len(c.coboundaries),
            "classes": len(c.classes),
            "class_sizes": c.class_sizes,
            "central": centrality_report(H, c.coboundaries, c.cocycles).ok,
            "seconds": round(time.perf_counter() - start, 2),
        })
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=[3, 5])
    ap.add_argument("--workers", type=int, default=1)
    cfg = CohomologyConfig(**vars(ap.parse_args()))
    keys = ["p", "candidates", "cocycles", "lazy_functionals", "coboundaries", "classes", "central", "seconds"]
    print("\t".join(keys))
    for row in run(cfg):
        print("\t".join(str(row[k]) for k in keys))


if __name__ == "__main__":
    main()
