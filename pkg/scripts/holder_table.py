"""Tabulate extremal-sequence Holder estimates against their closed forms.

    python3 scripts/holder_table.py --depths 10 20 40 60
"""

import argparse
from dataclasses import dataclass, field

from qmark.dynamics import holder_estimate


@dataclass
class HolderConfig:
    depths: list[int] = field(default_factory=lambda: [10, 20, 30, 40, 50, 60])
    families: tuple[str, ...] = ("even", "odd", "rcf")


def run(cfg: HolderConfig) -> list[dict]:
    rows = []
    for fam in cfg.families:
        for depth in cfg.depths:
            rep = holder_estimate(fam, depth)
            rows.append({"family": fam, "depth": depth, "estimate": rep["terminal"],
                         "target": rep["target"], "distance": rep["distance"]})
    return rows


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--depths", type=int, nargs="+", default=HolderConfig().depths)
    cfg = HolderConfig(depths=p.parse_args().depths)
    print(f"{'family':<7}{'depth':>6}{'estimate':>12}{'target':>13}{'distance':>11}")
    for r in run(cfg):
        print(f"{r['family']:<7}{r['depth']:>6}{r['estimate']:>12}{r['target']:>13}{r['distance']:>11.5f}")


if __name__ == "__main__":
    main()
