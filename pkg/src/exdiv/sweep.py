"""End-to-end corpus sweep: random divisors on every cyclic quotient up to n_max."""
from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from multiprocessing import Pool

from .corpus import all_cyclic_quotients, random_toric_divisor
from .toric import (
    ToricDivisor,
    build_fan,
    completion_divisor,
    pairing,
    verify_nakayama,
)


@dataclass(frozen=True)
class SweepConfig:
    n_max: int = 30
    per_fan: int = 10
    seed: int = 0
    tmax: int = 5
    max_coeff: int = 3
    max_den: int = 6
    mode: str = "scaled"
    jobs: int = 1


def instance_rng(cfg: SweepConfig, n: int, q: int, k: int) -> random.Random:
    # string seeds hash deterministically; results never depend on scheduling
    return random.Random(f"exdiv:{cfg.seed}:{n}:{q}:{k}")


def run_instance(cfg: SweepConfig, n: int, q: int, k: int) -> dict:
    fan = build_fan(n, q)
    D = random_toric_divisor(instance_rng(cfg, n, q, k), fan, cfg.max_coeff, cfg.max_den)
    E = completion_divisor(fan, D, cfg.mode)
    with_e = verify_nakayama(fan, D, E, tmax=cfg.tmax)
    needs_e = any(v > 0 for v in pairing(fan, D))
    row = {
        "n": n,
        "q": q,
        "k": k,
        "divisor": D.to_json(),
        "E": E.to_json(),
        "with_E": with_e.to_json(with_samples=False),
        "pairing_positive": needs_e,
    }
    if needs_e:
        without = verify_nakayama(fan, D, ToricDivisor.zero(fan), tmax=cfg.tmax, stop_at_first=True)
        row["without_E"] = {"pass": without.passed, "witness": without.witness.to_json() if without.witness else None}
    row["ok"] = with_e.passed and (not needs_e or not row["without_E"]["pass"])
    return row


def _run(args):
    return run_instance(*args)


def run_sweep(cfg: SweepConfig) -> dict:
    tasks = [(cfg, n, q, k) for n, q in all_cyclic_quotients(cfg.n_max) for k in range(cfg.per_fan)]
    if cfg.jobs > 1:
        with Pool(cfg.jobs) as pool:
            rows = pool.map(_run, tasks, chunksize=16)
    else:
        rows = [_run(t) for t in tasks]
    summary = {
        "instances": len(rows),
        "with_E_pass": sum(r["with_E"]["pass"] for r in rows),
        "pairing_positive": sum(r["pairing_positive"] for r in rows),
        "without_E_fail": sum(1 for r in rows if r["pairing_positive"] and not r["without_E"]["pass"]),
    }
    summary["pass"] = all(r["ok"] for r in rows)
    config = asdict(cfg)
    config.pop("jobs")
    return {"config": config, "summary": summary, "instances": rows}


