"""Markdown multiplication table of A #_sigma H4 for sigma_t, with entries that
differ from the reference table marked by an asterisk.

    python scripts/crossed_table.py --t 1
"""

import argparse
from dataclasses import dataclass

from homkit.corpus import CROSSED_LABELS, action_h4, h4, kaa, known_table_discrepancies, reference_crossed_table, sigma_t
from homkit.crossed import build_crossed_product, crossed_table_discrepancies
from homkit.exactlin import Field


@dataclass
class TableConfig:
    t: str = "1"
    field: str = "Q"


def term(vec, F: Field) -> str:
    parts = []
    for x, lab in zip(vec, CROSSED_LABELS):
        if x != 0:
            s = F.format(x)
            parts.append(lab if s == "1" else f"-{lab}" if s == "-1" else f"{s} {lab}")
    return " + ".join(parts).replace("+ -", "- ") or "0"


def render(cfg: TableConfig) -> str:
    F = Field.parse(cfg.field)
    t = F(cfg.t)
    cp = build_crossed_product(h4(F), kaa(F), action_h4(F), sigma_t(t, F))
    diff = set(crossed_table_discrepancies(cp, reference_crossed_table(t, F)))
    assert diff == set(known_table_discrepancies(t, F))
    lines = ["| | " + " | ".join(CROSSED_LABELS) + " |", "|---" * 9 + "|"]
    for i, row_label in enumerate(CROSSED_LABELS):
        cells = [term(cp.mul[i, j], F) + (" *" if (i, j) in diff else "") for j in range(8)]
        lines.append(f"| {row_label} | " + " | ".join(cells) + " |")
    lines.append(f"\n{len(diff)} entries marked * differ from the reference table.")
    return "\n".join(lines)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--t", default=TableConfig.t)
    ap.add_argument("--field", default=TableConfig.field)
    print(render(TableConfig(**vars(ap.parse_args()))))


if __name__ == "__main__":
    main()
