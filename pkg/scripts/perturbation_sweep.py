"""Perturb single entries of sigma_t over GF(p) and compare the cocycle
conditions with associativity and unitality of the resulting crossed product.

    python scripts/perturbation_sweep.py --p 5 --ts 0 1 2 --out sweep.json
"""

import argparse
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from itertools import product

from homkit.corpus import action_h4, h4, kaa, sigma_t
from homkit.crossed import build_crossed_product, carrier_report, crossed_conditions
from homkit.exactlin import Field


@dataclass
class SweepConfig:
    p: int = 5
    ts: list[int] = field(default_factory=lambda: [0, 1, 2])
    out: str | None = None


def run(cfg: SweepConfig) -> dict:
    F = Field("GF", cfg.p)
    H, A, act = h4(F), kaa(F), action_h4(F)
    tally: Counter = Counter()
    survivors = []
    start = time.perf_counter()
    for t in cfg.ts:
        base = sigma_t(t, F)
        for idx, delta in product(product(*map(range, base.shape)), range(1, cfg.p)):
            s = base.copy()
            s[idx] = s[idx] + F(delta)
            cond = crossed_conditions(H, A, act, s).ok
            carrier = carrier_report(build_crossed_product(H, A, act, s, override=True)).ok
            tally[f"conditions={cond} carrier={carrier}"] += 1
            if cond:
                survivors.append({"t": t, "entry": list(idx), "delta": delta})
    return {
        "config": asdict(cfg),
        "total": sum(tally.values()),
        "tally": dict(sorted(tally.items())),
        "agree": all(k in ("conditions=True carrier=True", "conditions=False carrier=False") for k in tally),
        "surviving_perturbations": survivors,
        "seconds": round(time.perf_counter() - start, 2),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=SweepConfig.p)
    ap.add_argument("--ts", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--out")
    cfg = SweepConfig(**vars(ap.parse_args()))
    result = run(cfg)
    text = json.dumps(result, indent=2)
    print(text)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")


if __name__ == "__main__":
    main()
