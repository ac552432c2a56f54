"""Run every invariance pair, plus a few mismatched controls, and print the discrepancies.

    python3 scripts/invariance_sweep.py --trials 1000 --seed 0
"""

import argparse
import json
from dataclasses import dataclass

from qmark.dynamics import INVARIANT_PAIRS, invariance_check

CONTROLS = (("T_E", "gauss"), ("F_O", "nu_E"), ("G", "mu_O"), ("T_O", "mu_E"))
EXTRA = (("G", "gauss"), ("F_O", "nu_O_scaled"), ("Tbar_E", "lebesgue"))


@dataclass
class SweepConfig:
    trials: int = 1000
    seed: int = 0
    digits: int = 10
    json: bool = False


def run(cfg: SweepConfig) -> list[dict]:
    out = []
    for group, pairs in (("invariant", INVARIANT_PAIRS), ("classical", EXTRA), ("control", CONTROLS)):
        for m, mu in pairs:
            rep = invariance_check(m, mu, digits=cfg.digits, trials=cfg.trials, seed=cfg.seed)
            out.append({"group": group, **rep.to_json()})
    return out


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--digits", type=int, default=10)
    p.add_argument("--json", action="store_true")
    a = p.parse_args()
    rows = run(SweepConfig(a.trials, a.seed, a.digits, a.json))
    if a.json:
        print(json.dumps(rows, indent=1))
        return
    for r in rows:
        par = r["parameters"]
        print(f"{r['group']:<10}{par['map']:>8} {par['measure']:<12}"
              f"{r['max_discrepancy']:>12.3e}  {'pass' if r['pass'] else 'FAIL'}")


if __name__ == "__main__":
    main()
