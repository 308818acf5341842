"""Sweep the partial-pair channel over θ: analytic s_min² vs Monte Carlo success rate.

    python3 scripts/success_vs_theta.py --points 9 --trials 20000 --seed 3
"""

import argparse
import math
from dataclasses import dataclass

import numpy as np

from teleport4 import channel as ch
from teleport4 import protocol as pr
from teleport4 import sigma


@dataclass(frozen=True)
class SweepConfig:
    points: int = 9
    trials: int = 20_000
    seed: int = 0
    state_seed: int = 1


def sweep(cfg: SweepConfig):
    chi = pr.InputState.random(cfg.state_seed)
    thetas = np.linspace(0, math.pi / 2, cfg.points + 2)[1:-1]
    rows = []
    for k, theta in enumerate(thetas):
        c = ch.partial_pair(float(theta))
        analytic = sigma.classify(c).success_probability
        closed = 2 * min(math.sin(theta), math.cos(theta)) ** 2
        rate = pr.run_sampled(chi, c, seed=cfg.seed + k, trials=cfg.trials).empirical_success_rate
        rows.append((float(theta), closed, analytic, rate))
    return rows


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for field, default in SweepConfig().__dict__.items():
        p.add_argument(f"--{field.replace('_', '-')}", type=int, default=default)
    cfg = SweepConfig(**vars(p.parse_args(argv)))
    band = 4 * math.sqrt(0.25 / cfg.trials)
    print(f"{'theta':>8} {'2min(s,c)^2':>12} {'s_min^2':>12} {'MC':>8}  within ±{band:.4f}")
    for theta, closed, analytic, rate in sweep(cfg):
        print(f"{theta:8.4f} {closed:12.8f} {analytic:12.8f} {rate:8.4f}  {abs(rate - analytic) <= band}")


if __name__ == "__main__":
    main()
