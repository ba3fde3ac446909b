"""Cyclic quotient surface singularities and their lattice-point section spaces.

The minimal resolution of the singularity of type (n, q) is the fan with rays
v_0 = (0, 1), v_1 = (1, 0), v_{i+1} = b_i v_i - v_{i-1}, ending at
v_{s+1} = (n, -q).  A monomial chi^m is a section of O(floor(tD)) over the
affine chart iff <m, v_rho> >= -floor(t d_rho) on every ray; keeping only the
two boundary rays gives the reflexive hull of the pushforward.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd, lcm
from typing import Iterable, Mapping, Sequence

from .divisors import RDivisor
from .errors import HypothesisViolated, InvalidE, InvalidInput
from .linalg import QMatrix, ceil_div, ceil_rat, format_rat, rat_vector, to_rat
from .systems import CurveSystem, exceptional_completion

Point = tuple[int, int]


@dataclass(frozen=True)
class CyclicQuotient:
    n: int
    q: int

    def __post_init__(self):
        n, q = self.n, self.q
        if isinstance(n, bool) or isinstance(q, bool) or not isinstance(n, int) or not isinstance(q, int):
            raise InvalidInput(f"n and q must be integers, got {n!r}, {q!r}")
        if n < 2 or not 0 < q < n or gcd(n, q) != 1:
            raise InvalidInput(f"need n >= 2, 0 < q < n, gcd(n, q) = 1; got n={n}, q={q}")


def hj_expand(n: int, q: int) -> list[int]:
    """Hirzebruch-Jung continued fraction n/q = b_1 - 1/(b_2 - ...), all b_i >= 2."""
    CyclicQuotient(n, q)
    out = []
    while q:
        b = ceil_div(n, q)
        out.append(b)
        n, q = q, b * q - n
    return out


@dataclass(frozen=True)
class ResolutionFan:
    n: int
    q: int
    b: tuple[int, ...]
    rays: tuple[Point, ...] = field(repr=False)

    @property
    def s(self) -> int:
        """Number of exceptional curves."""
        return len(self.b)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(f"v{i}" for i in range(len(self.rays)))

    @property
    def exceptional(self) -> range:
        return range(1, self.s + 1)

    @property
    def boundary(self) -> tuple[int, int]:
        return (0, self.s + 1)


def _det2(u: Point, v: Point) -> int:
    return u[0] * v[1] - u[1] * v[0]


def build_fan(n: int, q: int) -> ResolutionFan:
    b = hj_expand(n, q)
    rays = [(0, 1), (1, 0)]
    for bi in b:
        (x0, y0), (x1, y1) = rays[-2], rays[-1]
        rays.append((bi * x1 - x0, bi * y1 - y0))
    assert rays[-1] == (n, -q), f"recurrence ended at {rays[-1]}, expected {(n, -q)}"
    for u, v in zip(rays, rays[1:]):
        assert abs(_det2(u, v)) == 1, f"rays {u}, {v} do not span the lattice"
    return ResolutionFan(n, q, tuple(b), tuple(rays))


def curve_matrix(fan: ResolutionFan) -> CurveSystem:
    s = fan.s
    rows = [[0] * s for _ in range(s)]
    for i, bi in enumerate(fan.b):
        rows[i][i] = -bi
        if i + 1 < s:
            rows[i][i + 1] = rows[i + 1][i] = 1
    return CurveSystem(fan.labels[1 : s + 1], QMatrix.of(rows))


@dataclass(frozen=True)
class ToricDivisor:
    """Torus-invariant divisor: one rational coefficient per ray of a fan."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", rat_vector(self.coeffs))

    @classmethod
    def zero(cls, fan: ResolutionFan) -> "ToricDivisor":
        return cls((0,) * len(fan.rays))

    @classmethod
    def from_mapping(cls, fan: ResolutionFan, data: Mapping[str, object]) -> "ToricDivisor":
        labels = fan.labels
        unknown = set(data) - set(labels)
        if unknown:
            raise InvalidInput(f"unknown ray labels {sorted(unknown)}; fan has {list(labels)}")
        return cls(tuple(data.get(k, 0) for k in labels))

    @classmethod
    def from_exceptional(cls, fan: ResolutionFan, values: Sequence) -> "ToricDivisor":
        values = rat_vector(values)
        if len(values) != fan.s:
            raise InvalidInput(f"{len(values)} exceptional coefficients for {fan.s} curves")
        return cls((0,) + values + (0,))

    def __add__(self, other: "ToricDivisor") -> "ToricDivisor":
        return ToricDivisor(tuple(a + b for a, b in zip(self.coeffs, other.coeffs, strict=True)))

    def __le__(self, other: "ToricDivisor") -> bool:
        return all(a <= b for a, b in zip(self.coeffs, other.coeffs, strict=True))

    def scaled(self, t) -> "ToricDivisor":
        t = to_rat(t)
        return ToricDivisor(tuple(t * c for c in self.coeffs))

    def round_down(self) -> tuple[int, ...]:
        return tuple(floor(c) for c in self.coeffs)

    def as_rdivisor(self) -> RDivisor:
        return RDivisor({f"v{i}": c for i, c in enumerate(self.coeffs)})

    def to_json(self) -> dict[str, str]:
        return {f"v{i}": format_rat(c) for i, c in enumerate(self.coeffs) if c}


def _check_divisor(fan: ResolutionFan, D: ToricDivisor):
    if len(D.coeffs) != len(fan.rays):
        raise InvalidInput(f"divisor has {len(D.coeffs)} coefficients, fan has {len(fan.rays)} rays")


def pairing(fan: ResolutionFan, D: ToricDivisor) -> tuple[Fraction, ...]:
    """D . C_i = d_{i-1} - b_i d_i + d_{i+1} for each exceptional curve."""
    _check_divisor(fan, D)
    d = D.coeffs
    return tuple(d[i - 1] - bi * d[i] + d[i + 1] for i, bi in enumerate(fan.b, start=1))


# --- section sets ----------------------------------------------------------


def _ray_indices(fan: ResolutionFan, rays: str) -> tuple[int, ...]:
    if rays == "all":
        return tuple(range(len(fan.rays)))
    if rays == "boundary":
        return fan.boundary
    raise InvalidInput(f"rays must be 'all' or 'boundary', got {rays!r}")


def _y_interval(constraints, x: int, lo: int, hi: int) -> tuple[int, int]:
    """Range of integer y with a*x + b*y >= c for all (a, b, c), clipped to [lo, hi]."""
    for a, b, c in constraints:
        rest = c - a * x
        if b > 0:
            lo = max(lo, ceil_div(rest, b))
        elif b < 0:
            hi = min(hi, (-rest) // (-b))
        elif rest > 0:
            return (1, 0)
    return lo, hi


def _constraints(fan: ResolutionFan, floors: Sequence[int], idx: Iterable[int]):
    return [(fan.rays[r][0], fan.rays[r][1], -floors[r]) for r in idx]


def sections(fan: ResolutionFan, D: ToricDivisor, t=1, rays: str = "all", window: int = 10) -> frozenset[Point]:
    """Exponents m in the box [-window, window]^2 with <m, v> >= -floor(t d_v) on the chosen rays."""
    _check_divisor(fan, D)
    t = to_rat(t)
    if t <= 0:
        raise InvalidInput("t must be positive")
    floors = D.scaled(t).round_down()
    cons = _constraints(fan, floors, _ray_indices(fan, rays))
    out = []
    for x in range(-window, window + 1):
        lo, hi = _y_interval(cons, x, -window, window)
        out.extend((x, y) for y in range(lo, hi + 1))
    return frozenset(out)


def is_section(fan: ResolutionFan, D: ToricDivisor, t, m: Point, rays: str = "all") -> bool:
    floors = D.scaled(to_rat(t)).round_down()
    return all(
        m[0] * fan.rays[r][0] + m[1] * fan.rays[r][1] >= -floors[r] for r in _ray_indices(fan, rays)
    )


# --- verification ------------------------------------------------------------


def t_grid(divisors: Iterable[ToricDivisor], tmax: int = 5) -> tuple[Fraction, ...]:
    """k/L for 1 <= k <= L*tmax plus the midpoints (2k+1)/(2L), sorted.

    L is the lcm of every coefficient denominator, so each t -> floor(t c)
    breakpoint up to tmax is hit, along with one point inside each gap.
    Together these are exactly j/(2L) for 1 <= j <= 2L*tmax.
    """
    L = lcm(1, *(c.denominator for D in divisors for c in D.coeffs))
    return tuple(Fraction(j, 2 * L) for j in range(1, 2 * L * tmax + 1))


def default_window(fan: ResolutionFan, D: ToricDivisor, tmax: int = 5) -> int:
    M = max((abs(c) for c in D.coeffs), default=Fraction(0))
    return ceil_rat(tmax * (1 + M) * (fan.n + 2))


@dataclass(frozen=True)
class Witness:
    t: Fraction
    m: Point
    ray: int
    value: int
    bound: int

    def to_json(self) -> dict:
        return {
            "t": format_rat(self.t),
            "m": list(self.m),
            "ray": f"v{self.ray}",
            "pairing": self.value,
            "required": self.bound,
        }


@dataclass(frozen=True)
class Verdict:
    passed: bool
    t_samples: tuple[Fraction, ...]
    window: int
    failures: tuple[Witness, ...] = ()

    @property
    def witness(self) -> Witness | None:
        return self.failures[0] if self.failures else None

    def to_json(self, with_samples: bool = True) -> dict:
        out = {
            "pass": self.passed,
            "window": self.window,
            "witness": self.witness.to_json() if self.witness else None,
        }
        if with_samples:
            out["t_samples"] = [format_rat(t) for t in self.t_samples]
        else:
            out["t_count"] = len(self.t_samples)
        if len(self.failures) > 1:
            out["failures"] = [w.to_json() for w in self.failures]
        return out


def _hull_gap(fan: ResolutionFan, floors: Sequence[int], window: int):
    """First lattice point of the boundary wedge that breaks an exceptional constraint.

    For exceptional rays <m, v_i> is increasing in the x coordinate, so over a
    fixed row y only the smallest admissible x matters; and shifting y by n
    moves that minimizer by a positive multiple of n in every <m, v_i>.  Hence
    the n candidates with y in [-floor_0, -floor_0 + n) see every violation.
    Returns (m, ray, value) or None; raises LookupError when a candidate falls
    outside the window (the caller then enumerates the window directly).
    """
    n, q, b = fan.n, fan.q, fan.b
    a0, a1 = floors[0], floors[-1]
    for k in range(n):
        y = -a0 + k
        x = ceil_div(q * y - a1, n)
        if abs(x) > window or abs(y) > window:
            raise LookupError
        prev, cur = y, x
        for i in range(1, fan.s + 1):
            if cur < -floors[i]:
                return (x, y), i, cur
            prev, cur = cur, b[i - 1] * cur - prev
    return None


def _window_gap(fan: ResolutionFan, floors: Sequence[int], window: int):
    """Same question as _hull_gap, answered by scanning the window column by column."""
    bcons = _constraints(fan, floors, fan.boundary)
    for x in range(-window, window + 1):
        lo, hi = _y_interval(bcons, x, -window, window)
        if lo > hi:
            continue
        for i in fan.exceptional:
            a, bb = fan.rays[i]
            c = -floors[i]
            # <m, v_i> = a x + bb y with bb <= 0: smallest at y = hi
            if a * x + bb * hi < c:
                return (x, hi), i, a * x + bb * hi
    return None


def _gap(fan, floors, window, fast: bool = True):
    if fast:
        try:
            return _hull_gap(fan, floors, window)
        except LookupError:
            pass
    return _window_gap(fan, floors, window)


def _check_exceptional(fan: ResolutionFan, E: ToricDivisor):
    _check_divisor(fan, E)
    for r in fan.boundary:
        if E.coeffs[r] != 0:
            raise InvalidE(f"E has coefficient {E.coeffs[r]} on boundary ray v{r}")
    if any(c < 0 for c in E.coeffs):
        raise InvalidE("E must be effective")


def verify_nakayama(
    fan: ResolutionFan,
    D: ToricDivisor,
    E: ToricDivisor,
    t_samples: Sequence | None = None,
    window: int | None = None,
    tmax: int = 5,
    fast: bool = True,
    stop_at_first: bool = False,
) -> Verdict:
    """Compare sections(D, t, boundary) with sections(D + E, t, all) for each sampled t.

    The boundary coefficients of D and D + E agree (E is exceptional), so the
    second set always sits inside the first; the sets differ exactly when a
    wedge point breaks some exceptional constraint of floor(t(D + E)).
    """
    _check_divisor(fan, D)
    _check_exceptional(fan, E)
    DE = D + E
    ts = t_grid([D, DE], tmax) if t_samples is None else tuple(sorted({to_rat(t) for t in t_samples}))
    if any(t <= 0 for t in ts):
        raise InvalidInput("t samples must be positive")
    R = default_window(fan, DE, tmax) if window is None else int(window)
    failures = []
    seen: dict[tuple[int, ...], object] = {}
    nums = [(c.numerator, c.denominator) for c in DE.coeffs]
    for t in ts:
        tn, td = t.numerator, t.denominator
        floors = tuple((tn * cn) // (td * cd) for cn, cd in nums)
        if floors not in seen:
            seen[floors] = _gap(fan, floors, R, fast)
        hit = seen[floors]
        if hit is not None:
            m, ray, value = hit
            failures.append(Witness(t, m, ray, value, -floors[ray]))
            if stop_at_first:
                break
    return Verdict(not failures, ts, R, tuple(failures))


def verify_reflexive(fan: ResolutionFan, D: ToricDivisor, window: int | None = None) -> Verdict:
    """Check sections(D, 1, all) = sections(D, 1, boundary) for anti-nef D."""
    p = pairing(fan, D)
    bad = [i for i, v in enumerate(p, start=1) if v > 0]
    if bad:
        raise HypothesisViolated(f"D.C_i > 0 for curves {['v%d' % i for i in bad]}")
    return verify_nakayama(fan, D, ToricDivisor.zero(fan), t_samples=[1], window=window, tmax=1)


def completion_divisor(fan: ResolutionFan, D: ToricDivisor, mode: str = "scaled") -> ToricDivisor:
    """The exceptional divisor E built from the pairings of D."""
    e = exceptional_completion(curve_matrix(fan), pairing(fan, D), mode)
    return ToricDivisor.from_exceptional(fan, e)
