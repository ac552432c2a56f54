"""Write (x, Q(x)) tables for the three question-mark functions.

    python3 scripts/q_graph_data.py --out results/q_graphs --even-level 8 --odd-level 14
"""

import argparse
import csv
from dataclasses import dataclass
from pathlib import Path

from qmark.dynamics import plot_data


@dataclass
class GraphConfig:
    out: Path = Path("results/q_graphs")
    even_level: int = 8
    odd_level: int = 14
    rcf_level: int = 14
    digits: int = 12


def run(cfg: GraphConfig) -> dict[str, Path]:
    cfg.out.mkdir(parents=True, exist_ok=True)
    written = {}
    for family, level in (("rcf", cfg.rcf_level), ("even", cfg.even_level), ("odd", cfg.odd_level)):
        exact = plot_data(family, level)
        approx = plot_data(family, level, digits=cfg.digits)
        path = cfg.out / f"{family}_level{level}.csv"
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "q_exact", "q_decimal"])
            for (x, q), (_, d) in zip(exact, approx):
                w.writerow([x, q, d])
        written[family] = path
    return written


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    d = GraphConfig()
    p.add_argument("--out", type=Path, default=d.out)
    p.add_argument("--even-level", type=int, default=d.even_level)
    p.add_argument("--odd-level", type=int, default=d.odd_level)
    p.add_argument("--rcf-level", type=int, default=d.rcf_level)
    p.add_argument("--digits", type=int, default=d.digits)
    a = p.parse_args()
    cfg = GraphConfig(a.out, a.even_level, a.odd_level, a.rcf_level, a.digits)
    for family, path in run(cfg).items():
        print(f"{family}: {path}")


if __name__ == "__main__":
    main()
