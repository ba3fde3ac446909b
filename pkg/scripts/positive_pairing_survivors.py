"""Instances with D.C_i > 0 for some i that still pass with E = 0.

For each one, search for the smallest grid t (up to a larger horizon) at
which E = 0 finally fails, and report those that never fail within it.
"""
import argparse
from dataclasses import dataclass

from exdiv.corpus import all_cyclic_quotients, random_toric_divisor
from exdiv.sweep import SweepConfig, instance_rng
from exdiv.systems import minimal_completion
from exdiv.toric import ToricDivisor, build_fan, curve_matrix, pairing, verify_nakayama


@dataclass(frozen=True)
class SurvivorConfig:
    sweep: SweepConfig = SweepConfig()
    horizon: int = 40


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--n-max", type=int, default=30)
    ap.add_argument("--horizon", type=int, default=SurvivorConfig.horizon)
    args = ap.parse_args()
    cfg = SurvivorConfig(SweepConfig(n_max=args.n_max, seed=args.seed), args.horizon)
    sc = cfg.sweep

    survivors, late, never = 0, [], []
    for n, q in all_cyclic_quotients(sc.n_max):
        fan = build_fan(n, q)
        zero = ToricDivisor.zero(fan)
        for k in range(sc.per_fan):
            D = random_toric_divisor(instance_rng(sc, n, q, k), fan, sc.max_coeff, sc.max_den)
            if not any(v > 0 for v in pairing(fan, D)):
                continue
            if not verify_nakayama(fan, D, zero, tmax=sc.tmax, stop_at_first=True).passed:
                continue
            survivors += 1
            far = verify_nakayama(fan, D, zero, tmax=cfg.horizon, stop_at_first=True)
            if far.passed:
                e = minimal_completion(curve_matrix(fan), pairing(fan, D))
                never.append((n, q, k, D.to_json(), [str(x) for x in e]))
            else:
                late.append((n, q, k, far.witness.t))
    print(f"survivors at tmax={sc.tmax}: {survivors}")
    print(f"  first cut later (t <= {cfg.horizon}): {len(late)}")
    if late:
        print(f"  largest first-cut t: {max(t for *_, t in late)}")
    print(f"  no cut up to t = {cfg.horizon}: {len(never)}")
    for row in never[:10]:
        print("   ", row)


if __name__ == "__main__":
    main()
