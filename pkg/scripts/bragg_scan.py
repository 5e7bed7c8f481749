"""Scan |S(k)/2r|^2 across levels and list the k classified as Bragg peaks."""
from dataclasses import dataclass

import numpy as np

from _common import parse_config
from nonpisot.diffraction import bragg_scan, pure_point_intensity


@dataclass
class Config:
    weights: str = "1,1"
    kmax: float = 4.0
    points: int = 1000
    levels: str = "6,7,8,9"


def main(cfg: Config):
    levels = [int(s) for s in cfg.levels.split(",")]
    res = bragg_scan(cfg.weights, np.linspace(0, cfg.kmax, cfg.points), levels)
    print(f"expected intensity at k=0: {pure_point_intensity(cfg.weights):.5f}")
    for r in res:
        if r.classification == "Bragg":
            print(f"Bragg at k={r.k:.5f}: " + ", ".join(f"{i:.5f}" for i in r.intensities))
    top = sorted(res, key=lambda r: -r.intensities[-1])[:5]
    print("largest intensities at the top level:", ", ".join(f"k={r.k:.4f} ({r.intensities[-1]:.2e})" for r in top))


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
