"""Exact rational matrices: fraction-free determinants, Sylvester test, linear solve.

Scalars are :class:`fractions.Fraction`, which already keeps numerator and
denominator coprime with a positive denominator.  Rows are handled internally
as sparse ``{column: value}`` dicts so that the banded matrices coming from
resolution graphs stay cheap at order ~200.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence

from .errors import InvalidInput, NonSymmetric, SingularMatrix

Rat = Fraction

_RAT_RE = re.compile(r"^\s*-?\d+(/\d+)?\s*$")
_SMALL = {k: Fraction(k) for k in range(-64, 65)}


def to_rat(x) -> Fraction:
    """Coerce ``x`` to a Fraction; floats are rejected, never rounded."""
    if type(x) is Fraction:
        return x
    if type(x) is int and -64 <= x <= 64:
        return _SMALL[x]
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InvalidInput(f"boolean is not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        if not _RAT_RE.match(x):
            raise InvalidInput(f"not an exact rational string 'p/q': {x!r}")
        try:
            return Fraction(x.strip())
        except ZeroDivisionError:
            raise InvalidInput(f"zero denominator: {x!r}") from None
    raise InvalidInput(f"cannot read {type(x).__name__} as an exact rational: {x!r}")


def format_rat(x: Fraction) -> str:
    return str(x)


def rat_vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(to_rat(v) for v in values)


def ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def ceil_rat(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class QMatrix:
    """Square matrix of exact rationals.

    ``order`` may be 0; an empty system of curves is a legal input.
    """

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(to_rat(x) for x in row) for row in self.rows)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise InvalidInput(f"matrix is not square: {n} rows, a row of length {len(row)}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def of(cls, rows: Iterable[Iterable]) -> "QMatrix":
        try:
            return cls(tuple(tuple(r) for r in rows))
        except TypeError as exc:
            raise InvalidInput(f"matrix must be a list of rows: {exc}") from None

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @property
    def order(self) -> int:
        return len(self.rows)

    @cached_property
    def is_symmetric(self) -> bool:
        n = self.order
        return all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i + 1, n))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def submatrix(self, idx: Sequence[int]) -> "QMatrix":
        return QMatrix(tuple(tuple(self.rows[i][j] for j in idx) for i in idx))

    def leading(self, k: int) -> "QMatrix":
        return self.submatrix(range(k))

    def matvec(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(v) != self.order:
            raise InvalidInput(f"vector length {len(v)} does not match order {self.order}")
        return tuple(dot(row, v) for row in self.rows)

    def quadratic_form(self, v: Sequence[Fraction]) -> Fraction:
        return dot(v, self.matvec(v))

    def to_json(self) -> list[list[str]]:
        return [[format_rat(x) for x in row] for row in self.rows]

    @classmethod
    def from_json(cls, data) -> "QMatrix":
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise InvalidInput("matrix JSON must be an array of arrays")
        return cls.of(data)


def _integer_rows(M: QMatrix) -> tuple[list[dict[int, int]], list[int]]:
    """Clear denominators row by row; returns sparse integer rows and the row scales."""
    rows, scales = [], []
    for row in M.rows:
        s = lcm(*(x.denominator for x in row)) if row else 1
        rows.append({j: x.numerator * (s // x.denominator) for j, x in enumerate(row) if x.numerator})
        scales.append(s)
    return rows, scales


def _bareiss(rows: list[dict[int, int]], n: int, pivoting: bool) -> tuple[list[int], int]:
    """In-place sparse Bareiss elimination.

    Returns ``(pivots, sign)``.  Without pivoting the k-th pivot is the
    leading (k+1)-minor and elimination stops at the first zero pivot.  With
    pivoting the last pivot is ``sign * det``; a short pivot list means det = 0.

    Rows with a zero in the pivot column would only be rescaled by
    pivot/prev; those factors telescope, so such rows are left alone and
    ``stamp[i]`` records the step whose pivot their stored values refer to.
    The true entry is ``stored * piv[k] // piv[stamp[i]]`` (always exact).
    """
    piv = [1]
    stamp = [0] * n
    sign = 1
    where: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for j in r:
            where.setdefault(j, set()).add(i)

    def move(i: int, old: dict, new: dict):
        for j in old:
            where[j].discard(i)
        for j in new:
            where.setdefault(j, set()).add(i)

    for k in range(n):
        col = where.get(k, set())
        if not rows[k].get(k):
            below = [i for i in col if i > k]
            if not pivoting or not below:
                return piv[1:], sign
            i = min(below)
            move(k, rows[k], {})
            move(i, rows[i], {})
            rows[k], rows[i] = rows[i], rows[k]
            stamp[k], stamp[i] = stamp[i], stamp[k]
            move(k, {}, rows[k])
            move(i, {}, rows[i])
            sign = -sign
        prev = piv[k]
        rk = rows[k]
        if stamp[k] != k:
            rk = {j: v * prev // piv[stamp[k]] for j, v in rk.items()}
        pk = rk[k]
        tail = [(j, v) for j, v in rk.items() if j > k]
        for i in sorted(x for x in where.get(k, ()) if x > k):
            ri = rows[i]
            if stamp[i] != k:
                ri = {j: v * prev // piv[stamp[i]] for j, v in ri.items()}
            aik = ri.pop(k)
            acc = {j: pk * v for j, v in ri.items()}
            for j, v in tail:
                acc[j] = acc.get(j, 0) - aik * v
            new = {j: v // prev for j, v in acc.items() if v}
            move(i, rows[i], new)
            rows[i] = new
            stamp[i] = k + 1
        piv.append(pk)
    return piv[1:], sign


def det(M: QMatrix) -> Fraction:
    """Exact determinant by fraction-free elimination."""
    n = M.order
    if n == 0:
        return Fraction(1)
    rows, scales = _integer_rows(M)
    pivots, sign = _bareiss(rows, n, pivoting=True)
    if len(pivots) < n:
        return Fraction(0)
    denom = 1
    for s in scales:
        denom *= s
    return Fraction(sign * pivots[-1], denom)


def det_by_pivots(M: QMatrix) -> Fraction:
    """Determinant as the signed product of rational Gaussian pivots.

    Independent of :func:`det`; the two are cross-checked in the tests.
    """
    n = M.order
    a = [list(row) for row in M.rows]
    result = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k]), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            result = -result
        pk = a[k][k]
        result *= pk
        for i in range(k + 1, n):
            f = a[i][k] / pk
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return result


def leading_minors(M: QMatrix) -> tuple[Fraction, ...]:
    """All leading principal minors det(M_1), ..., det(M_n)."""
    n = M.order
    rows, scales = _integer_rows(M)
    pivots, _ = _bareiss(rows, n, pivoting=False)
    minors = []
    denom = 1
    for k, p in enumerate(pivots):
        denom *= scales[k]
        minors.append(Fraction(p, denom))
    # a zero leading minor stops the unpivoted sweep; finish the rest directly
    for k in range(len(pivots), n):
        minors.append(det(M.leading(k + 1)))
    return tuple(minors)


@dataclass(frozen=True)
class DefinitenessCertificate:
    minors: tuple[Fraction, ...]
    signed_minors: tuple[Fraction, ...]
    negative_definite: bool

    def __bool__(self) -> bool:
        return self.negative_definite

    def to_json(self) -> dict:
        return {
            "negative_definite": self.negative_definite,
            "leading_minors": [format_rat(x) for x in self.minors],
            "signed_minors": [format_rat(x) for x in self.signed_minors],
        }


def is_negative_definite(M: QMatrix) -> DefinitenessCertificate:
    """Sylvester's criterion: (-1)^k det(M_k) > 0 for every leading minor.

    The returned certificate is truthy iff M is negative definite.  Raises
    NonSymmetric rather than symmetrizing.
    """
    if not M.is_symmetric:
        raise NonSymmetric("negative-definiteness is only tested on symmetric matrices")
    minors = leading_minors(M)
    signed = tuple(m if k % 2 == 0 else -m for k, m in enumerate(minors, start=1))
    return DefinitenessCertificate(minors, signed, all(s > 0 for s in signed))


def solve_linear(M: QMatrix, v: Sequence) -> tuple[Fraction, ...]:
    """Exact solution of M x = v; raises SingularMatrix if det(M) = 0.

    The augmented system is cleared to integers and reduced by the same
    fraction-free elimination as :func:`det`; only back-substitution touches
    Fractions.  Stored rows are scalar multiples of the reduced equations,
    which leaves the solution unchanged.
    """
    n = M.order
    v = rat_vector(v)
    if len(v) != n:
        raise InvalidInput(f"right-hand side has length {len(v)}, matrix order is {n}")
    rows = []
    for row, b in zip(M.rows, v):
        s = lcm(b.denominator, *(x.denominator for x in row))
        r = {j: x.numerator * (s // x.denominator) for j, x in enumerate(row) if x.numerator}
        if b.numerator:
            r[n] = b.numerator * (s // b.denominator)
        rows.append(r)
    pivots, _ = _bareiss(rows, n, pivoting=True)
    if len(pivots) < n:
        raise SingularMatrix(f"matrix of order {n} is singular")
    x: list[Fraction] = [Fraction(0)] * n
    for k in reversed(range(n)):
        rk = rows[k]
        acc = Fraction(rk.get(n, 0))
        for j, a in rk.items():
            if k < j < n and x[j]:
                acc -= a * x[j]
        x[k] = acc / rk[k]
    return tuple(x)
