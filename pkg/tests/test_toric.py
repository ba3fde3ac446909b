from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exdiv.corpus import all_cyclic_quotients
from exdiv.errors import HypothesisViolated, InvalidE, InvalidInput
from exdiv.linalg import det
from exdiv.toric import (
    ToricDivisor,
    build_fan,
    completion_divisor,
    curve_matrix,
    default_window,
    hj_expand,
    pairing,
    sections,
    t_grid,
    verify_nakayama,
    verify_reflexive,
)
from oracles import box_points, continued_fraction_value

F = Fraction


def div(fan, **coeffs):
    return ToricDivisor.from_mapping(fan, coeffs)


@pytest.mark.parametrize("n, q, b", [(2, 1, [2]), (5, 3, [2, 3]), (7, 3, [3, 2, 2])])
def test_hj_examples(n, q, b):
    assert continued_fraction_value(b) == F(n, q)
    assert hj_expand(n, q) == b


def test_hj_matches_continued_fraction_oracle():
    for n, q in all_cyclic_quotients(60):
        b = hj_expand(n, q)
        assert min(b) >= 2
        assert continued_fraction_value(b) == F(n, q)


@pytest.mark.parametrize("n, q", [(4, 2), (1, 1), (5, 0), (5, 5), (6, 4)])
def test_invalid_quotients(n, q):
    with pytest.raises(InvalidInput):
        hj_expand(n, q)


@pytest.mark.parametrize(
    "n, q, rays",
    [
        (2, 1, [(0, 1), (1, 0), (2, -1)]),
        (5, 3, [(0, 1), (1, 0), (2, -1), (5, -3)]),
        (3, 1, [(0, 1), (1, 0), (3, -1)]),
    ],
)
def test_fan_examples(n, q, rays):
    assert list(build_fan(n, q).rays) == rays


def test_consecutive_rays_unimodular():
    for n, q in all_cyclic_quotients(40):
        rays = build_fan(n, q).rays
        dets = {u[0] * v[1] - u[1] * v[0] for u, v in zip(rays, rays[1:])}
        # the recurrence runs clockwise, so every determinant is -1
        assert dets == {-1}


@pytest.mark.parametrize(
    "n, q, rows, d",
    [
        (2, 1, [[-2]], -2),
        (5, 3, [[-2, 1], [1, -3]], 5),
        (7, 3, [[-3, 1, 0], [1, -2, 1], [0, 1, -2]], -7),
    ],
)
def test_curve_matrix_examples(n, q, rows, d):
    sys = curve_matrix(build_fan(n, q))
    assert [list(r) for r in sys.matrix.rows] == rows
    assert det(sys.matrix) == d
    assert sys.labels == tuple(f"v{i}" for i in range(1, len(rows) + 1))


def test_pairing_examples():
    f21, f53 = build_fan(2, 1), build_fan(5, 3)
    assert pairing(f21, div(f21, v1=-1)) == (2,)
    assert pairing(f53, ToricDivisor.zero(f53)) == (0, 0)
    assert pairing(f53, div(f53, v0=1)) == (1, 0)


def test_pairing_matches_intersection_matrix():
    # on exceptional divisors the pairing is just G times the coefficients
    fan = build_fan(11, 7)
    sys = curve_matrix(fan)
    e = [F(k, 3) for k in range(1, fan.s + 1)]
    assert pairing(fan, ToricDivisor.from_exceptional(fan, e)) == sys.pairing(e)


# --- sections ------------------------------------------------------------------


def test_sections_examples():
    fan = build_fan(2, 1)
    zero = ToricDivisor.zero(fan)
    minus_c = div(fan, v1=-1)
    full = sections(fan, zero, 1, "all", 3)
    assert full == box_points(fan, (0, 0, 0), range(3), 3)
    assert len(full) == 12
    assert sections(fan, zero, 1, "boundary", 3) == full
    cut = sections(fan, minus_c, 1, "all", 3)
    assert cut == box_points(fan, (0, -1, 0), range(3), 3)
    assert len(cut) == 11
    assert cut < full and all(x >= 1 for x, _ in cut)


@st.composite
def fans(draw, n_max=9):
    n = draw(st.integers(2, n_max))
    q = draw(st.sampled_from([q for q in range(1, n) if gcd(n, q) == 1]))
    return build_fan(n, q)


def toric_divisors(fan, bound=2):
    c = st.fractions(min_value=-bound, max_value=bound, max_denominator=4)
    return st.lists(c, min_size=len(fan.rays), max_size=len(fan.rays)).map(ToricDivisor)


ts = st.fractions(min_value=F(1, 6), max_value=3, max_denominator=6).filter(lambda t: t > 0)


@settings(max_examples=60, deadline=None)
@given(fans(), st.data(), ts)
def test_sections_match_pointwise_oracle(fan, data, t):
    D = data.draw(toric_divisors(fan))
    floors = D.scaled(t).round_down()
    for rays, idx in (("all", range(len(fan.rays))), ("boundary", fan.boundary)):
        assert sections(fan, D, t, rays, 6) == box_points(fan, floors, idx, 6)


@settings(max_examples=60, deadline=None)
@given(fans(), st.data(), ts)
def test_sections_monotone(fan, data, t):
    D = data.draw(toric_divisors(fan))
    bump = data.draw(st.lists(st.fractions(0, 2, max_denominator=3), min_size=len(fan.rays), max_size=len(fan.rays)))
    D2 = D + ToricDivisor(bump)
    small = sections(fan, D, t, "all", 12)
    assert small <= sections(fan, D2, t, "all", 12)
    assert small <= sections(fan, D, t, "boundary", 12)


# --- verification ------------------------------------------------------------------


def test_t_grid():
    fan = build_fan(2, 1)
    assert t_grid([ToricDivisor.zero(fan)], 5) == tuple(F(k, 2) for k in range(1, 11))
    g = t_grid([div(fan, v1="-1/3")], 1)
    assert g == tuple(F(j, 6) for j in range(1, 7))


def test_default_window():
    fan = build_fan(5, 3)
    # ceil(5 * (1 + 5/2) * (5 + 2)) = ceil(245/2)
    assert default_window(fan, div(fan, v1="-5/2"), 5) == 123


def test_nakayama_examples():
    fan = build_fan(2, 1)
    D = div(fan, v1=-1)
    C = div(fan, v1=1)
    ts = [F(1, 2), 1, F(3, 2), 2, F(7, 3)]
    assert verify_nakayama(fan, D, C, ts).passed
    v = verify_nakayama(fan, D, ToricDivisor.zero(fan), [1])
    assert not v.passed
    w = v.witness
    assert (w.t, w.m, w.ray) == (1, (0, 0), 1)
    assert (0, 0) in sections(fan, D, 1, "boundary", 3) - sections(fan, D, 1, "all", 3)
    for n, q in [(2, 1), (5, 3), (7, 3)]:
        f = build_fan(n, q)
        assert verify_nakayama(f, ToricDivisor.zero(f), ToricDivisor.zero(f)).passed


def test_invalid_e():
    fan = build_fan(5, 3)
    with pytest.raises(InvalidE):
        verify_nakayama(fan, ToricDivisor.zero(fan), div(fan, v1=-1))
    with pytest.raises(InvalidE):
        verify_nakayama(fan, ToricDivisor.zero(fan), div(fan, v0=1))


def test_reflexive_examples():
    f21, f53 = build_fan(2, 1), build_fan(5, 3)
    assert verify_reflexive(f21, ToricDivisor.zero(f21)).passed
    D = div(f53, v1="1/2", v2="1/2")
    assert pairing(f53, D) == (F(-1, 2), -1)
    assert verify_reflexive(f53, D, window=6).passed
    assert sections(f53, D, 1, "all", 6) == sections(f53, D, 1, "boundary", 6)
    assert pairing(f21, div(f21, v1=1)) == (-2,)
    assert verify_reflexive(f21, div(f21, v1=1)).passed


def test_reflexive_hypothesis_checked():
    f53 = build_fan(5, 3)
    D = div(f53, v1="-1/2", v2="-1/2")
    assert pairing(f53, D) == (F(1, 2), 1)
    with pytest.raises(HypothesisViolated):
        verify_reflexive(f53, D)


@settings(max_examples=80, deadline=None)
@given(fans(7), st.data())
def test_fast_check_agrees_with_enumeration(fan, data):
    D = data.draw(toric_divisors(fan))
    E = ToricDivisor.from_exceptional(fan, data.draw(st.lists(st.integers(0, 2), min_size=fan.s, max_size=fan.s)))
    samples = [F(1, 3), F(1, 2), 1, F(5, 3), 2]
    R = 25
    fast = verify_nakayama(fan, D, E, samples, window=R)
    slow = verify_nakayama(fan, D, E, samples, window=R, fast=False)
    by_sets = [
        sections(fan, D, t, "boundary", R) != sections(fan, D + E, t, "all", R) for t in samples
    ]
    assert [w.t for w in fast.failures] == [w.t for w in slow.failures]
    assert [w.t for w in fast.failures] == [t for t, bad in zip(samples, by_sets) if bad]
    for w in fast.failures:
        assert w.m in sections(fan, D, w.t, "boundary", R)
        assert w.m not in sections(fan, D + E, w.t, "all", R)


def test_small_window_falls_back_to_enumeration():
    fan = build_fan(7, 3)
    D = div(fan, v0="5/2", v1="-2", v4="3")
    for R in (1, 2, 3, 5):
        v = verify_nakayama(fan, D, ToricDivisor.zero(fan), [1, 2], window=R)
        expected = [sections(fan, D, t, "boundary", R) != sections(fan, D, t, "all", R) for t in (1, 2)]
        assert [w.t for w in v.failures] == [t for t, bad in zip((1, 2), expected) if bad]


@pytest.mark.parametrize("mode", ["scaled", "minimal"])
def test_completion_divisor_makes_anti_nef(mode):
    fan = build_fan(13, 5)
    D = div(fan, v0="7/3", v1="-2", v2="1/2", v3="-5/6")
    E = completion_divisor(fan, D, mode)
    assert all(c >= 0 for c in E.coeffs) and E.coeffs[0] == E.coeffs[-1] == 0
    assert all(x <= 0 for x in pairing(fan, D + E))
    assert verify_nakayama(fan, D, E).passed


def test_positive_pairing_without_cut():
    # D.C > 0, yet floor(tD) never cuts the boundary wedge for t <= 5:
    # a cut needs floor(8t/3) + floor(-11t/5) >= 3, but 8t/3 - 11t/5 = 7t/15 <= 7/3
    fan = build_fan(3, 1)
    D = div(fan, v0="8/3", v2="-11/5")
    assert pairing(fan, D) == (F(7, 15),)
    zero = ToricDivisor.zero(fan)
    R = 40
    for t in t_grid([D], 5):
        assert sections(fan, D, t, "boundary", R) == sections(fan, D, t, "all", R)
    assert verify_nakayama(fan, D, zero).passed
    # the cut does appear once t(8/3 - 11/5) is large enough
    assert not verify_nakayama(fan, D, zero, [F(15, 2)]).passed


def test_positive_pairing_never_cut():
    # D = C1 + 3 C2 on the A2 chain pairs (1, -5): positive on C1, yet D >= 0 is
    # exceptional, so floor(tD) only loosens constraints and never cuts
    fan = build_fan(3, 2)
    D = ToricDivisor.from_exceptional(fan, [1, 3])
    assert pairing(fan, D) == (1, -5)
    assert verify_nakayama(fan, D, ToricDivisor.zero(fan), tmax=20).passed
