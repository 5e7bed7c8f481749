"""Torus mean of log |B~^(n)|_F^2 / (2n) and the Frobenius floor, n = 1..max_n."""
from dataclasses import dataclass

from _common import parse_config
from nonpisot.torus import HALF_LOG_LAM, frobenius_floor, torus_mean_refinement


@dataclass
class Config:
    max_n: int = 6
    tol: float = 1e-4


def main(cfg: Config):
    print(f"log sqrt(lam) = {HALF_LOG_LAM:.6f}")
    print(f"{'n':>3} {'mean':>10} {'gap':>9} {'panels':>7} {'floor':>10}")
    for n in range(1, cfg.max_n + 1):
        r = torus_mean_refinement(n, 8, cfg.tol)
        print(f"{n:3d} {r.value:10.6f} {HALF_LOG_LAM - r.value:9.5f} {r.history[-1][0]:7d} {frobenius_floor(n, 100):10.3e}")


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
