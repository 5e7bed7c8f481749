"""Distribution function F(x) of the diffraction of finite patches, written as
CSV with one column per level."""
from dataclasses import dataclass

import numpy as np

from _common import parse_config
from nonpisot.diffraction import distribution_function


@dataclass
class Config:
    weights: str = "balanced"
    xmax: float = 3.0
    grid: int = 600
    levels: str = "5,6,7"
    threads: int = 4
    out: str = "distribution_function.csv"


def main(cfg: Config):
    levels = [int(s) for s in cfg.levels.split(",")]
    curves = [distribution_function(cfg.weights, cfg.xmax, cfg.grid, L, threads=cfg.threads) for L in levels]
    data = np.column_stack([curves[0].xs] + [c.Fs for c in curves])
    np.savetxt(cfg.out, data, delimiter=",", header="x," + ",".join(f"F_level{L}" for L in levels), comments="")
    for L, c in zip(levels, curves):
        print(f"level {L}: F({cfg.xmax})/{cfg.xmax} = {c.slope_at_end():.5f}, min increment {c.min_increment():.2e}")
    print(f"wrote {cfg.out}")


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
