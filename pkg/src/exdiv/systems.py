"""Negativity-lemma computations on intersection/pairing data.

A :class:`CurveSystem` is a symmetric, negative-definite matrix G with
nonnegative off-diagonal entries, G[i][j] = C_i . C_j.  Every operation here
works on pairing numbers only; nothing geometric is computed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .errors import HypothesisViolated, InvalidInput, LemmaViolation, NotNegativeDefinite
from .linalg import (
    DefinitenessCertificate,
    QMatrix,
    ceil_rat,
    format_rat,
    is_negative_definite,
    rat_vector,
    solve_linear,
)

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class CurveSystem:
    labels: tuple[str, ...]
    matrix: QMatrix
    certificate: DefinitenessCertificate = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        G = self.matrix
        if len(labels) != G.order:
            raise InvalidInput(f"{len(labels)} labels for a matrix of order {G.order}")
        if len(set(labels)) != len(labels):
            raise InvalidInput("curve labels must be unique")
        for i, row in enumerate(G.rows):
            for j, x in enumerate(row):
                if x.numerator < 0 and i != j:
                    raise InvalidInput(f"negative off-diagonal entry at ({i}, {j}): {G[i, j]}")
        cert = is_negative_definite(G)
        if not cert:
            raise NotNegativeDefinite(
                "intersection matrix is not negative definite; signed minors "
                + str([format_rat(x) for x in cert.signed_minors])
            )
        object.__setattr__(self, "certificate", cert)

    @classmethod
    def from_rows(cls, rows, labels: Sequence[str] | None = None) -> "CurveSystem":
        G = QMatrix.of(rows)
        if labels is None:
            labels = [f"C{i + 1}" for i in range(G.order)]
        return cls(tuple(labels), G)

    @property
    def size(self) -> int:
        return self.matrix.order

    def pairing(self, coeffs: Sequence[Fraction]) -> Vector:
        """(sum_k x_k C_k) . C_j for every j."""
        return self.matrix.matvec(rat_vector(coeffs))

    def to_json(self) -> dict:
        return {"labels": list(self.labels), "matrix": self.matrix.to_json()}

    @classmethod
    def from_json(cls, data) -> "CurveSystem":
        if not isinstance(data, dict) or "matrix" not in data:
            raise InvalidInput('curve system JSON needs a "matrix" key')
        G = QMatrix.from_json(data["matrix"])
        labels = data.get("labels") or [f"C{i + 1}" for i in range(G.order)]
        return cls(tuple(labels), G)


def pairing_vector(values: Iterable, sys: CurveSystem) -> Vector:
    v = rat_vector(values)
    if len(v) != sys.size:
        raise InvalidInput(f"pairing vector of length {len(v)} for a system of {sys.size} curves")
    return v


def vector_to_json(v: Sequence[Fraction]) -> dict:
    return {"values": [format_rat(x) for x in v]}


def vector_from_json(data) -> Vector:
    if isinstance(data, dict):
        data = data.get("values")
    if not isinstance(data, list):
        raise InvalidInput('pairing vector JSON must look like {"values": [...]}')
    return rat_vector(data)


def integral_primitive(x: Sequence[Fraction]) -> Vector:
    """Smallest positive multiple of x with integer entries."""
    if not x:
        return ()
    den = lcm(*(v.denominator for v in x))
    ints = [int(v * den) for v in x]
    g = 0
    for v in ints:
        g = gcd(g, v)
    g = g or 1
    return tuple(Fraction(v // g) for v in ints)


# --- negativity lemma -------------------------------------------------------


@dataclass(frozen=True)
class NegativityResult:
    coefficients: Vector
    strict: bool

    @property
    def verdict(self) -> str:
        return "strict-positive" if self.strict else "nonnegative"


def negativity_coefficients(sys: CurveSystem, d, b, strict: bool | None = None) -> NegativityResult:
    """Coefficients a of D = B + sum a_i C_i from the pairings d = D.C and b = B.C.

    Requires d <= 0 (strict: d < 0) and b >= 0.  ``strict=None`` picks strict
    mode when every d_j is negative.  The returned coefficients are >= 0
    (> 0 in strict mode); anything else raises LemmaViolation.
    """
    d = pairing_vector(d, sys)
    b = pairing_vector(b, sys)
    if strict is None:
        strict = bool(d) and all(x < 0 for x in d)
    for j, x in enumerate(d):
        if x > 0 or (strict and x == 0):
            rel = "< 0" if strict else "<= 0"
            raise HypothesisViolated(f"D.C_{j + 1} = {x}, expected {rel}")
    for j, x in enumerate(b):
        if x < 0:
            raise HypothesisViolated(f"B.C_{j + 1} = {x}, expected >= 0")
    a = solve_linear(sys.matrix, [x - y for x, y in zip(d, b)])
    bad = [i for i, x in enumerate(a) if x < 0 or (strict and x == 0)]
    if bad:
        raise LemmaViolation(f"negativity lemma conclusion fails at indices {bad}: {a}")
    return NegativityResult(a, strict)


def find_negative_combination(sys: CurveSystem, integral: bool = False) -> Vector:
    """x > 0 with G x = (-1, ..., -1); ``integral`` rescales to the primitive integer vector."""
    x = negativity_coefficients(sys, [-1] * sys.size, [0] * sys.size, strict=True).coefficients
    return integral_primitive(x) if integral else x


# --- stratified systems -----------------------------------------------------


@dataclass(frozen=True)
class StratifiedSystem:
    """Curve systems grouped by the dimension e of the image of their divisors.

    ``cross[(j, e)]`` is a matrix with one row per prime of stratum j and one
    column per curve of stratum e: entry [k][i] = E_k . C_i.  Missing pairs
    are zero.  Rows index primes, so combinations E^j . C_i follow linearly.
    """

    ambient_dim: int
    strata: tuple[tuple[int, CurveSystem], ...]
    cross: Mapping[tuple[int, int], tuple[Vector, ...]] = field(default_factory=dict)

    def __post_init__(self):
        if self.ambient_dim < 2:
            raise InvalidInput("ambient dimension must be >= 2")
        strata = tuple((int(e), s) for e, s in self.strata)
        es = [e for e, _ in strata]
        if any(a >= b for a, b in zip(es, es[1:])):
            raise InvalidInput(f"stratum dimensions must be strictly increasing: {es}")
        if es and (es[0] < 0 or es[-1] > self.ambient_dim - 2):
            raise InvalidInput(f"stratum dimensions must lie in [0, {self.ambient_dim - 2}]")
        sizes = {e: s.size for e, s in strata}
        cross = {}
        for (j, e), block in dict(self.cross).items():
            if j not in sizes or e not in sizes or j == e:
                raise InvalidInput(f"cross block ({j}, {e}) does not join two distinct strata")
            rows = tuple(rat_vector(r) for r in block)
            if len(rows) != sizes[j] or any(len(r) != sizes[e] for r in rows):
                raise InvalidInput(f"cross block ({j}, {e}) must be {sizes[j]}x{sizes[e]}")
            for r in rows:
                for v in r:
                    if j < e and v != 0:
                        raise InvalidInput(f"E.C must vanish for curves of a higher stratum ({j} -> {e})")
                    if j > e and v < 0:
                        raise InvalidInput(f"E.C must be >= 0 for curves of a lower stratum ({j} -> {e})")
            cross[(j, e)] = rows
        object.__setattr__(self, "strata", strata)
        object.__setattr__(self, "cross", cross)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.strata)

    def system(self, e: int) -> CurveSystem:
        return dict(self.strata)[e]

    def cross_pairing(self, j: int, e: int, coeffs: Sequence[Fraction]) -> Vector:
        """(sum_k coeffs_k E_k) . C_i for the primes of stratum j against curves of stratum e."""
        if j == e:
            return self.system(e).pairing(coeffs)
        n_curves = self.system(e).size
        block = self.cross.get((j, e))
        if block is None:
            return (Fraction(0),) * n_curves
        return tuple(sum((c * row[i] for c, row in zip(coeffs, block)), Fraction(0)) for i in range(n_curves))

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "strata": [{"e": e, "system": s.to_json()} for e, s in self.strata],
            "cross": [
                {"from_e": j, "to_e": e, "values": [[format_rat(v) for v in r] for r in rows]}
                for (j, e), rows in sorted(self.cross.items())
            ],
        }

    @classmethod
    def from_json(cls, data) -> "StratifiedSystem":
        try:
            strata = tuple((int(s["e"]), CurveSystem.from_json(s["system"])) for s in data["strata"])
            sizes = {e: s.size for e, s in strata}
            cross = {}
            for c in data.get("cross", []):
                j, e, vals = int(c["from_e"]), int(c["to_e"]), c["values"]
                if vals and not isinstance(vals[0], list):
                    # flat form: only meaningful when stratum j has one prime
                    if sizes.get(j) != 1:
                        raise InvalidInput(f"flat cross values need a one-prime stratum, stratum {j} has {sizes.get(j)}")
                    vals = [vals]
                cross[(j, e)] = vals
            n = int(data.get("ambient_dim", max(sizes, default=0) + 2))
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed stratified instance: {exc}") from None
        return cls(n, strata, cross)


@dataclass(frozen=True)
class StratifiedCombination:
    multipliers: dict[int, int]
    combinations: dict[int, Vector]
    totals: dict[int, Vector]

    def coefficients(self) -> dict[int, Vector]:
        return {e: tuple(self.multipliers[e] * x for x in xs) for e, xs in self.combinations.items()}


def stratified_combination(ss: StratifiedSystem) -> StratifiedCombination:
    """Per-stratum negative combinations glued with separating multipliers.

    Each stratum gets the primitive integral E^e from find_negative_combination.
    Going down in e, the multiplier for e is 1 + ceil(P / N) where P bounds the
    positive pairing that the larger strata already put on curves of stratum e
    and N = min |E^e . C_i|; the top stratum gets 1.
    """
    combos = {e: find_negative_combination(s, integral=True) for e, s in ss.strata}
    self_pair = {e: s.pairing(combos[e]) for e, s in ss.strata}
    mult: dict[int, int] = {}
    for e in reversed(ss.dims):
        if not mult:
            mult[e] = 1
            continue
        if not combos[e]:
            mult[e] = 1
            continue
        push = Fraction(0)
        for e2, m2 in mult.items():
            cp = ss.cross_pairing(e2, e, combos[e2])
            push += m2 * max(max(cp), Fraction(0))
        floor_gap = min(-v for v in self_pair[e])
        mult[e] = 1 + ceil_rat(push / floor_gap)
    totals = {}
    for e, s in ss.strata:
        tot = [Fraction(0)] * s.size
        for e2, _ in ss.strata:
            for i, v in enumerate(ss.cross_pairing(e2, e, combos[e2])):
                tot[i] += mult[e2] * v
        if any(v >= 0 for v in tot):
            raise LemmaViolation(f"stratum {e}: total pairing not negative: {tot}")
        totals[e] = tuple(tot)
    order = ss.dims
    return StratifiedCombination(
        {e: mult[e] for e in order}, {e: combos[e] for e in order}, totals
    )


@dataclass(frozen=True)
class DescentResult:
    coefficients: dict[int, Vector]
    folded_b: dict[int, Vector]

    def is_effective(self) -> bool:
        return all(x >= 0 for xs in self.coefficients.values() for x in xs)


def effectivity_descent(ss: StratifiedSystem, d_per_stratum: Mapping[int, Sequence], b_per_stratum: Mapping[int, Sequence] | None = None) -> DescentResult:
    """Certify D >= 0 stratum by stratum, from the largest e downwards.

    Coefficients already certified on larger strata pair >= 0 with curves of
    smaller strata, so they are folded into the B side before solving there.
    """
    d = {e: pairing_vector(d_per_stratum[e], s) for e, s in ss.strata}
    if b_per_stratum is None:
        b = {e: (Fraction(0),) * s.size for e, s in ss.strata}
    else:
        b = {e: pairing_vector(b_per_stratum[e], s) for e, s in ss.strata}
    for e in ss.dims:
        if any(x > 0 for x in d[e]):
            raise HypothesisViolated(f"stratum {e}: D.C must be <= 0, got {d[e]}")
        if any(x < 0 for x in b[e]):
            raise HypothesisViolated(f"stratum {e}: B.C must be >= 0, got {b[e]}")
    coeffs: dict[int, Vector] = {}
    folded: dict[int, Vector] = {}
    for e in reversed(ss.dims):
        s = ss.system(e)
        fb = list(b[e])
        for e2, a2 in coeffs.items():
            for i, v in enumerate(ss.cross_pairing(e2, e, a2)):
                fb[i] += v
        folded[e] = tuple(fb)
        coeffs[e] = negativity_coefficients(s, d[e], fb, strict=False).coefficients
    return DescentResult({e: coeffs[e] for e in ss.dims}, {e: folded[e] for e in ss.dims})


# --- exceptional completion -------------------------------------------------


def scaled_completion(sys: CurveSystem, d) -> Vector:
    """Smallest integer multiple m x of the primitive negative combination with G(m x) + d <= 0."""
    d = pairing_vector(d, sys)
    if sys.size == 0:
        return ()
    x = find_negative_combination(sys, integral=True)
    gx = sys.pairing(x)
    m = max([0] + [ceil_rat(dj / -g) for dj, g in zip(d, gx)])
    return tuple(m * xi for xi in x)


def minimal_completion(sys: CurveSystem, d) -> Vector:
    """Coefficient-wise least e >= 0 with G e + d <= 0.

    Active-set iteration: every constraint found violated joins the active
    set, which is then made tight.  Both the set and e grow monotonically, so
    at most ``sys.size`` rounds are needed.  The result satisfies
    complementarity: e_j = 0 or (G e + d)_j = 0.
    """
    d = pairing_vector(d, sys)
    n = sys.size
    G = sys.matrix
    zero = Fraction(0)
    e = [zero] * n
    r = list(d)  # G e + d, with e = 0 to start
    active: list[int] = []
    for _ in range(n + 1):
        violated = [j for j in range(n) if r[j] > 0]
        if not violated:
            return tuple(e)
        active = sorted(set(active) | set(violated))
        sol = solve_linear(G.submatrix(active), [-d[j] for j in active])
        new = [zero] * n
        for j, v in zip(active, sol):
            new[j] = v
        if any(a < b for a, b in zip(new, e)):
            raise LemmaViolation("active-set iterate decreased; monotonicity broken")
        e = new
        r = [sum((row[j] * e[j] for j in active), d[i]) for i, row in enumerate(G.rows)]
    raise LemmaViolation("active-set iteration did not terminate")


def exceptional_completion(sys: CurveSystem, d, mode: str = "scaled") -> Vector:
    if mode == "scaled":
        return scaled_completion(sys, d)
    if mode == "minimal":
        return minimal_completion(sys, d)
    raise InvalidInput(f"unknown completion mode {mode!r}; use 'scaled' or 'minimal'")


def residuals(sys: CurveSystem, e, d) -> Vector:
    """(G e + d)_j: pairing of D + E with each curve."""
    return tuple(a + b for a, b in zip(sys.pairing(e), pairing_vector(d, sys)))
