"""Scaled versus minimal exceptional completion on the sweep corpus.

Both completions are checked end to end; the table reports how much larger
the scaled E is (total coefficient mass) and how often the two coincide.
"""
import argparse
from dataclasses import dataclass
from fractions import Fraction

from exdiv.corpus import all_cyclic_quotients, random_toric_divisor
from exdiv.sweep import SweepConfig, instance_rng
from exdiv.toric import build_fan, completion_divisor, verify_nakayama


@dataclass(frozen=True)
class CompareConfig:
    n_max: int = 15
    per_fan: int = 5
    seed: int = 0
    tmax: int = 3


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=CompareConfig.n_max)
    ap.add_argument("--per-fan", type=int, default=CompareConfig.per_fan)
    ap.add_argument("--seed", type=int, default=CompareConfig.seed)
    ap.add_argument("--tmax", type=int, default=CompareConfig.tmax)
    cfg = CompareConfig(**{k.replace("-", "_"): v for k, v in vars(ap.parse_args()).items()})
    sweep_cfg = SweepConfig(n_max=cfg.n_max, per_fan=cfg.per_fan, seed=cfg.seed, tmax=cfg.tmax)

    total = same = 0
    mass = {"scaled": Fraction(0), "minimal": Fraction(0)}
    failures = {"scaled": 0, "minimal": 0}
    for n, q in all_cyclic_quotients(cfg.n_max):
        fan = build_fan(n, q)
        for k in range(cfg.per_fan):
            D = random_toric_divisor(instance_rng(sweep_cfg, n, q, k), fan)
            Es = {m: completion_divisor(fan, D, m) for m in mass}
            for m, E in Es.items():
                mass[m] += sum(E.coeffs)
                failures[m] += not verify_nakayama(fan, D, E, tmax=cfg.tmax).passed
            same += Es["scaled"] == Es["minimal"]
            total += 1
    print(f"instances            {total}")
    print(f"identical E          {same}")
    for m in mass:
        print(f"{m:8s} mean |E|     {float(mass[m] / total):.3f}   failures {failures[m]}")


if __name__ == "__main__":
    main()
