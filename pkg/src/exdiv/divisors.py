"""Sparse divisors with rational coefficients over opaque prime identifiers."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from types import MappingProxyType
from typing import Hashable, Iterable, Mapping

from .errors import InvalidInput
from .linalg import format_rat, to_rat


def _sort_key(k):
    return (type(k).__name__, k)


@dataclass(frozen=True, eq=False)
class RDivisor:
    """Finite formal sum of prime divisors with rational coefficients.

    Zero coefficients are never stored; iteration order is sorted by identifier.
    """

    coeffs: Mapping[Hashable, Fraction]

    def __post_init__(self):
        items = ((k, to_rat(v)) for k, v in dict(self.coeffs).items())
        clean = {k: v for k, v in sorted(items, key=lambda kv: _sort_key(kv[0])) if v}
        object.__setattr__(self, "coeffs", MappingProxyType(clean))

    @classmethod
    def zero(cls) -> "RDivisor":
        return cls({})

    def __getitem__(self, key) -> Fraction:
        return self.coeffs.get(key, Fraction(0))

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def items(self):
        return self.coeffs.items()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RDivisor):
            return NotImplemented
        return dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{k!r}: {format_rat(v)}" for k, v in self.coeffs.items())
        return f"RDivisor({{{body}}})"

    @property
    def support(self) -> frozenset:
        return frozenset(self.coeffs)

    def __add__(self, other: "RDivisor") -> "RDivisor":
        return axpy(1, self, 1, other)

    def __sub__(self, other: "RDivisor") -> "RDivisor":
        return axpy(1, self, -1, other)

    def __neg__(self) -> "RDivisor":
        return scale(-1, self)

    def __le__(self, other: "RDivisor") -> bool:
        """Coefficient-wise partial order."""
        return all(self[k] <= other[k] for k in self.support | other.support)

    def __ge__(self, other: "RDivisor") -> bool:
        return other <= self

    def is_effective(self) -> bool:
        return all(v > 0 for v in self.coeffs.values())

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.coeffs.values())

    def to_json(self) -> dict:
        return {"coeffs": {str(k): format_rat(v) for k, v in self.coeffs.items()}}

    @classmethod
    def from_json(cls, data) -> "RDivisor":
        if not isinstance(data, dict) or not isinstance(data.get("coeffs"), dict):
            raise InvalidInput('divisor JSON must look like {"coeffs": {...}}')
        return cls(data["coeffs"])


def round_down(D: RDivisor) -> RDivisor:
    return RDivisor({k: Fraction(floor(v)) for k, v in D.items()})


def pos_neg_parts(D: RDivisor) -> tuple[RDivisor, RDivisor]:
    """Return (D+, D-), both effective, with D = D+ - D-."""
    return (
        RDivisor({k: v for k, v in D.items() if v > 0}),
        RDivisor({k: -v for k, v in D.items() if v < 0}),
    )


def axpy(c1, D1: RDivisor, c2, D2: RDivisor) -> RDivisor:
    c1, c2 = to_rat(c1), to_rat(c2)
    out: dict = {}
    for k, v in D1.items():
        out[k] = c1 * v
    for k, v in D2.items():
        out[k] = out.get(k, Fraction(0)) + c2 * v
    return RDivisor(out)


def scale(c, D: RDivisor) -> RDivisor:
    c = to_rat(c)
    return RDivisor({k: c * v for k, v in D.items()})


def linear_combination(terms: Iterable[tuple[object, RDivisor]]) -> RDivisor:
    out = RDivisor.zero()
    for c, D in terms:
        out = axpy(1, out, c, D)
    return out
