"""Instance generators: Dynkin (ADE) graphs and seeded random systems/divisors."""
from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from .errors import InvalidInput, NotNegativeDefinite
from .linalg import QMatrix
from .systems import CurveSystem, StratifiedSystem
from .toric import ResolutionFan, ToricDivisor


def dynkin_edges(family: str, rank: int) -> list[tuple[int, int]]:
    family = family.upper()
    if family == "A" and rank >= 1:
        return [(i, i + 1) for i in range(rank - 1)]
    if family == "D" and rank >= 4:
        return [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    if family == "E" and rank in (6, 7, 8):
        # chain of rank-1 nodes, extra node hung on the third one
        return [(i, i + 1) for i in range(rank - 2)] + [(2, rank - 1)]
    raise InvalidInput(f"no Dynkin diagram {family}_{rank}")


def ade_matrix(family: str, rank: int) -> CurveSystem:
    """-2 curves meeting along the Dynkin graph of the given type."""
    rows = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        rows[i][i] = -2
    for i, j in dynkin_edges(family, rank):
        rows[i][j] = rows[j][i] = 1
    labels = [f"{family.upper()}{rank}_{i + 1}" for i in range(rank)]
    return CurveSystem(tuple(labels), QMatrix.of(rows))


def all_cyclic_quotients(n_max: int, n_min: int = 2):
    for n in range(n_min, n_max + 1):
        for q in range(1, n):
            if gcd(n, q) == 1:
                yield n, q


def random_curve_system(rng: random.Random, max_order: int = 8, diag=(-5, -2), max_tries: int = 1000) -> CurveSystem:
    """Random forest-shaped system: diagonal in ``diag``, off-diagonal 0/1 on tree edges.

    Candidates failing the negative-definiteness filter are redrawn.
    """
    for _ in range(max_tries):
        m = rng.randint(1, max_order)
        rows = [[0] * m for _ in range(m)]
        for i in range(m):
            rows[i][i] = rng.randint(*diag)
        for i in range(1, m):
            j = rng.randrange(i)
            rows[i][j] = rows[j][i] = rng.randint(0, 1)
        try:
            return CurveSystem.from_rows(rows)
        except NotNegativeDefinite:
            continue
    raise RuntimeError("no negative-definite candidate found")


def random_rational(rng: random.Random, lo: int, hi: int, max_den: int = 6) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_stratified(rng: random.Random, max_dim: int = 5, max_order: int = 4, max_cross: int = 5) -> StratifiedSystem:
    n = rng.randint(2, max_dim)
    dims = sorted(rng.sample(range(n - 1), rng.randint(1, n - 1)))
    strata = [(e, random_curve_system(rng, max_order)) for e in dims]
    sizes = {e: s.size for e, s in strata}
    cross = {}
    for j in dims:
        for e in dims:
            if j > e:
                cross[(j, e)] = [[rng.randint(0, max_cross) for _ in range(sizes[e])] for _ in range(sizes[j])]
    return StratifiedSystem(n, tuple(strata), cross)


def random_toric_divisor(rng: random.Random, fan: ResolutionFan, bound: int = 3, max_den: int = 6) -> ToricDivisor:
    return ToricDivisor(tuple(random_rational(rng, -bound, bound, max_den) for _ in fan.rays))
