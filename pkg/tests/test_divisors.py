from fractions import Fraction
from math import floor

from hypothesis import given
from hypothesis import strategies as st

from exdiv.divisors import RDivisor, axpy, pos_neg_parts, round_down, scale

F = Fraction


def test_round_down_examples():
    assert round_down(RDivisor({})) == RDivisor({})
    assert round_down(RDivisor({"A": "3/2", "B": "-1/2"})) == RDivisor({"A": 1, "B": -1})
    assert round_down(RDivisor({"A": 2})) == RDivisor({"A": 2})
    # floor toward -inf; a result of 0 leaves the map
    assert round_down(RDivisor({"A": "1/3"})).coeffs == {}


def test_pos_neg_examples():
    assert pos_neg_parts(RDivisor({"A": 3, "B": -2})) == (RDivisor({"A": 3}), RDivisor({"B": 2}))
    assert pos_neg_parts(RDivisor({})) == (RDivisor({}), RDivisor({}))
    assert pos_neg_parts(RDivisor({"A": "-5/3"})) == (RDivisor({}), RDivisor({"A": "5/3"}))


def test_axpy_examples():
    assert axpy(1, RDivisor({"A": 1}), 1, RDivisor({"A": -1})) == RDivisor({})
    assert axpy(3, RDivisor({"A": "1/3"}), 0, RDivisor({})) == RDivisor({"A": 1})
    assert axpy(1, RDivisor({"A": "3/2"}), 1, RDivisor({"A": "1/2", "B": 1})) == RDivisor({"A": 2, "B": 1})


def test_zero_coefficients_not_stored():
    D = RDivisor({"A": 0, "B": "0/7", "C": 1})
    assert list(D) == ["C"]


def test_serialization_sorted():
    D = RDivisor({"b": "1/2", "a": -3})
    assert D.to_json() == {"coeffs": {"a": "-3", "b": "1/2"}}
    assert list(D.to_json()["coeffs"]) == ["a", "b"]
    assert RDivisor.from_json(D.to_json()) == D


keys = st.sampled_from(["A", "B", "C", "D", "E"])
rats = st.fractions(min_value=-10, max_value=10, max_denominator=12)
divisors = st.dictionaries(keys, rats, max_size=5).map(RDivisor)


@given(divisors)
def test_round_down_bracket(D):
    R = round_down(D)
    for k in D.support | R.support:
        assert R[k] <= D[k] < R[k] + 1
        assert D[k] - 1 < R[k]
        assert R[k] == floor(D[k])


@given(divisors)
def test_pos_neg_decomposition(D):
    P, N = pos_neg_parts(D)
    assert P.is_effective() and N.is_effective()
    assert not (P.support & N.support)
    assert axpy(1, P, -1, N) == D


@given(divisors, st.dictionaries(keys, st.integers(0, 5), max_size=5), st.fractions(min_value=F(1, 8), max_value=6, max_denominator=8))
def test_floor_monotone_under_integral_shift(D, e, t):
    E = RDivisor(e)
    if not scale(t, E).is_integral():
        E = scale(t.denominator, E)
    lhs = round_down(axpy(t, D, t, E))
    rhs = axpy(1, round_down(scale(t, D)), t, E)
    assert lhs >= rhs
