from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from liecert.mvpoly import (MultiPoly, buchberger, degrevlex_key, maximal_minors, origin_only,
                            reduce_poly, two_var_gcd_oracle, upoly_gcd)

A, B = MultiPoly.var(0, 2), MultiPoly.var(1, 2)


def lin(*coeffs):
    return MultiPoly.linear(list(coeffs))


def lcm(m1, m2):
    return tuple(max(a, b) for a, b in zip(m1, m2))


def divides(m1, m2):
    return all(a <= b for a, b in zip(m1, m2))


def naive_reduce(p, basis):
    """Textbook multivariate division with Fractions; returns the remainder."""
    p = MultiPoly(dict(p.terms), p.num_vars)
    rem = MultiPoly({}, p.num_vars)
    while p:
        lm, lc = p.leading_monomial(), p.leading_coefficient()
        for g in basis:
            glm = g.leading_monomial()
            if divides(glm, lm):
                shift = tuple(a - b for a, b in zip(lm, glm))
                p = p - MultiPoly({shift: lc / g.leading_coefficient()}, p.num_vars) * g
                break
        else:
            rem = rem + MultiPoly({lm: lc}, p.num_vars)
            p = p - MultiPoly({lm: lc}, p.num_vars)
    return rem


def is_groebner(basis):
    for f, g in combinations(basis, 2):
        l = lcm(f.leading_monomial(), g.leading_monomial())
        mf = MultiPoly({tuple(a - b for a, b in zip(l, f.leading_monomial())): 1 / f.leading_coefficient()}, f.num_vars)
        mg = MultiPoly({tuple(a - b for a, b in zip(l, g.leading_monomial())): 1 / g.leading_coefficient()}, g.num_vars)
        if naive_reduce(mf * f - mg * g, basis):
            return False
    return True


@st.composite
def binary_forms(draw, max_deg=3):
    d = draw(st.integers(1, max_deg))
    coeffs = draw(st.lists(st.integers(-4, 4), min_size=d + 1, max_size=d + 1))
    p = MultiPoly({(i, d - i): c for i, c in enumerate(coeffs)}, 2)
    assume(p)
    return p


@st.composite
def ternary_forms(draw, max_deg=2):
    d = draw(st.integers(1, max_deg))
    monos = [(i, j, d - i - j) for i in range(d + 1) for j in range(d + 1 - i)]
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(monos), max_size=len(monos)))
    p = MultiPoly(dict(zip(monos, coeffs)), 3)
    assume(p)
    return p


# arithmetic ---------------------------------------------------------------------

def test_basic_arithmetic_and_evaluation():
    p = (A + B) * (A - B)
    assert p == A * A - B * B
    assert p.evaluate([3, 2]) == 5
    assert (p * 0).is_zero()
    assert p.is_homogeneous() and not (p + MultiPoly.const(1, 2)).is_homogeneous()


def test_degrevlex_order():
    # a > b; among degree-2 monomials a^2 > ab > b^2; degree dominates
    ms = [(0, 2), (1, 1), (2, 0), (1, 0), (0, 3)]
    assert sorted(ms, key=degrevlex_key, reverse=True) == [(0, 3), (2, 0), (1, 1), (0, 2), (1, 0)]
    x, y, z = (MultiPoly.var(i, 3) for i in range(3))
    # equal degree: the smaller power of the last variable wins, so x*y^2 > x*z^2
    assert (x * y * y + x * z * z).leading_monomial() == (1, 2, 0)


def test_ring_mismatch():
    with pytest.raises(ValueError):
        A + MultiPoly.var(0, 3)


# minors --------------------------------------------------------------------------

def test_minors_of_two_by_three_example():
    m = [[lin(-10, 0), lin(0, -1), MultiPoly({}, 2)],
         [lin(0, -9), lin(10, 0), lin(0, -1)]]
    # direct 2x2 cofactor expansion
    direct = set()
    for i, j in combinations(range(3), 2):
        d = m[0][i] * m[1][j] - m[0][j] * m[1][i]
        if d:
            direct.add(d.primitive())
    got = maximal_minors(m)
    assert {p.primitive() for p in got} == direct
    assert {p.primitive() for p in got} == {
        (A * A * -100 - B * B * 9).primitive(), (A * B * 10).primitive(), (B * B).primitive()}


def test_minors_one_row():
    row = [lin(1, 0), lin(0, 1), lin(1, 1)]
    assert maximal_minors([row]) == row


def test_minors_zero_row():
    zero = MultiPoly({}, 2)
    assert maximal_minors([[lin(1, 0), lin(0, 1)], [zero, zero]]) == []


def test_minors_reject_tall_matrix():
    with pytest.raises(ValueError):
        maximal_minors([[lin(1, 0)], [lin(0, 1)]])


def test_minors_dedupe_up_to_sign():
    a, b = lin(1, 0), lin(0, 1)
    # columns (0,1) and (1,2) give a^2 - b^2 and its negative; (0,2) vanishes
    got = maximal_minors([[a, b, a], [b, a, b]])
    assert len(got) == 1 and got[0].primitive() == (a * a - b * b).primitive()


def test_minors_match_specialized_determinants():
    rng = random.Random(5)
    m = [[lin(*(rng.randint(-3, 3) for _ in range(3))) for _ in range(4)] for _ in range(3)]
    minors = maximal_minors(m)
    pt = [2, -1, 3]
    vals = {abs(p.evaluate(pt)) for p in minors}
    num = [[e.evaluate(pt) for e in r] for r in m]
    for cols in combinations(range(4), 3):
        sub = [[num[r][c] for c in cols] for r in range(3)]
        det = (sub[0][0] * (sub[1][1] * sub[2][2] - sub[1][2] * sub[2][1])
               - sub[0][1] * (sub[1][0] * sub[2][2] - sub[1][2] * sub[2][0])
               + sub[0][2] * (sub[1][0] * sub[2][1] - sub[1][1] * sub[2][0]))
        assert det == 0 or abs(det) in vals


# Buchberger ---------------------------------------------------------------------

def test_buchberger_variables():
    assert set(buchberger([A, B])) == {A, B}


def test_buchberger_contains_cube():
    gb = buchberger([A * A - B * B, A * B])
    lms = {g.leading_monomial() for g in gb}
    assert (2, 0) in lms and (1, 1) in lms and (0, 3) in lms
    assert is_groebner(gb)


def test_buchberger_single_generator_is_monic():
    g = A * A * 3 - A * B * 6
    assert buchberger([g]) == [g.monic()]


@settings(max_examples=40, deadline=None)
@given(st.lists(ternary_forms(), min_size=1, max_size=3))
def test_buchberger_properties(gens):
    gb = buchberger(gens)
    assert all(g.is_homogeneous() for g in gb)
    assert all(g.leading_coefficient() == 1 for g in gb)
    for f, g in combinations(gb, 2):
        assert not divides(f.leading_monomial(), g.leading_monomial())
        assert not divides(g.leading_monomial(), f.leading_monomial())
    for p in gens:
        assert not naive_reduce(p, gb)
        assert not reduce_poly(p, gb)
    assert is_groebner(gb)


# zero locus ---------------------------------------------------------------------

def test_origin_only_examples():
    assert origin_only([A, B])
    assert origin_only([A * A * -100 - B * B * 9, A * B * 10, B * B])
    assert not origin_only([A * A - B * B])
    assert not origin_only([A * A * -100 - B * B * 9])


def test_origin_only_rejects_inhomogeneous():
    with pytest.raises(ValueError):
        origin_only([A + MultiPoly.const(1, 2)])


def test_gcd_oracle_examples():
    assert two_var_gcd_oracle([A, B])
    assert not two_var_gcd_oracle([A * A - B * B])
    assert two_var_gcd_oracle([A * A * -100 - B * B * 9, A * B * 10, B * B])
    # the point [1:0] is a common zero of b*a and b^2
    assert not two_var_gcd_oracle([A * B, B * B])


def test_gcd_oracle_preconditions():
    with pytest.raises(ValueError):
        two_var_gcd_oracle([MultiPoly.var(0, 3)])
    with pytest.raises(ValueError):
        two_var_gcd_oracle([A + MultiPoly.const(1, 2)])
    with pytest.raises(ValueError):
        two_var_gcd_oracle([MultiPoly({}, 2)])


def test_upoly_gcd():
    # (x - 1)(x + 2) and (x - 1)(x - 3)
    g = upoly_gcd([-2, 1, 1], [3, -4, 1])
    assert g == [-1, 1]


@settings(max_examples=60, deadline=None)
@given(st.lists(binary_forms(), min_size=1, max_size=3), st.booleans())
def test_origin_only_agrees_with_gcd_oracle(gens, share):
    if share:
        gens = [g * (A - B * 2) for g in gens]
    assert origin_only(gens) == two_var_gcd_oracle(gens)


@settings(max_examples=30, deadline=None)
@given(st.lists(ternary_forms(), min_size=1, max_size=4))
def test_origin_only_sound_on_samples(gens):
    if origin_only(gens):
        rng = random.Random(0)
        for _ in range(100):
            pt = [rng.randint(-9, 9) for _ in range(3)]
            if any(pt):
                assert any(g.evaluate(pt) for g in gens)


def test_common_zero_found_when_not_origin_only():
    x, y, z = (MultiPoly.var(i, 3) for i in range(3))
    gens = [x * y - z * z, x - y]  # common zero at (1, 1, 1)
    assert not origin_only(gens)
    assert all(g.evaluate([1, 1, 1]) == 0 for g in gens)


def test_four_variable_instance():
    xs = [MultiPoly.var(i, 4) for i in range(4)]
    assert origin_only([v * v * v for v in xs])
    assert not origin_only([xs[0] * xs[1], xs[2] * xs[3]])
    assert origin_only([xs[0] * xs[0] + xs[1] * xs[1] * Fraction(1, 3), xs[0] * xs[1],
                        xs[2] - xs[3], xs[3] * xs[3], xs[1] * xs[1] * xs[1]])
