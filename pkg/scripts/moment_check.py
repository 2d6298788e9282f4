"""Marginal moments by quadrature against Monte Carlo, in standard errors.

    python scripts/moment_check.py --n 1000000
"""
from __future__ import annotations

import argparse
import math
from dataclasses import dataclass, field

import numpy as np

from bemwe.bivariate import BemweParams, bemwe_sample
from bemwe.moments import MomentRequest, marginal_moment

DEFAULT_SETS = [
    (0.0416, 0.253, 0.52, 0.1, 0.3, 0.05),
    (1.0, 1.0, 1.0, 1.0, 1.0, 1.0),
    (2.0, 0.5, 1.5, 1.0, 2.0, 0.5),
    (0.5, 3.0, 0.2, 2.0, 0.8, 0.1),
    (4.0, 4.0, 4.0, 0.5, 1.5, 2.0),
]


@dataclass
class Config:
    sets: list = field(default_factory=lambda: list(DEFAULT_SETS))
    orders: tuple[int, ...] = (1, 2, 3)
    n: int = 1_000_000
    seed: int = 0


def run(cfg: Config) -> None:
    rng = np.random.default_rng(cfg.seed)
    print("set  which  r     quadrature           mc      gap/se")
    for k, g in enumerate(cfg.sets):
        p = BemweParams(*g)
        s = bemwe_sample(p, rng, cfg.n)
        for which, x in ((1, s.x1), (2, s.x2)):
            for r in cfg.orders:
                v = x ** r
                se = v.std(ddof=1) / math.sqrt(v.size)
                q = marginal_moment(MomentRequest(p, which, r))
                print(f"{k:>3}  {which:>5}  {r}  {q:14.8g}  {v.mean():14.8g}  {(q - v.mean()) / se:8.2f}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=Config.n)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ns = ap.parse_args()
    run(Config(n=ns.n, seed=ns.seed))


if __name__ == "__main__":
    main()
