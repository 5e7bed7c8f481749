"""Inward cocycle: generic and contracting exponents for a few small k."""
import math
from dataclasses import dataclass

from _common import parse_config
from nonpisot.algebra import LAM
from nonpisot.cocycles import contracting_exponent, inward_lyapunov


@dataclass
class Config:
    steps: int = 300
    ks: str = "0.005,0.01,0.02,0.05"


def main(cfg: Config):
    print(f"log sqrt(lam) = {0.5 * math.log(LAM):.5f}, log(lam-1) = {math.log(LAM - 1):.5f}")
    print(f"{'k':>8} {'generic':>10} {'contracting':>12} {'sum':>9}")
    for k in map(float, cfg.ks.split(",")):
        g, _ = inward_lyapunov(k, (1.0, 1.0), cfg.steps)
        c, _ = contracting_exponent(k, cfg.steps)
        print(f"{k:8.4f} {g:10.5f} {c:12.5f} {g + c:9.5f}")


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
