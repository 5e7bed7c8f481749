"""Exact pair-correlation coefficients and the counting check on a patch."""
from dataclasses import dataclass

import numpy as np

from _common import parse_config
from nonpisot.correlation import base_system_solve, count_correlations, extend_table
from nonpisot.inflation import geometric_patch


@dataclass
class Config:
    radius: float = 6.0
    level: int = 7


def main(cfg: Config):
    table = base_system_solve()
    if cfg.radius > 1 + (1 + 13**0.5) / 2:
        table = extend_table(table, cfg.radius)
    emp = count_correlations(geometric_patch(cfg.level), cfg.radius)
    print(f"{'z':>24} {'nu00':>10} {'nu01':>10} {'nu10':>10} {'nu11':>10}  max|count-exact|")
    for z in table.support:
        exact = np.array([float(v) for v in table.entries[z]])
        print(f"{str(z):>24} " + " ".join(f"{v:10.6f}" for v in exact) + f"  {np.abs(emp.get(z) - exact).max():.1e}")


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
