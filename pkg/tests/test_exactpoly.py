from fractions import Fraction
from itertools import permutations
from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zonal.exactpoly import (
    MPoly,
    SymM,
    distinct_permutations,
    elementary,
    m_expand,
    monomial_orbit,
    power_sum_of_variables,
    to_m_basis,
    u_expand,
)
from zonal.partitions import partitions_of

NV = 3
fracs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
exps = st.tuples(*[st.integers(0, 3)] * NV)
polys = st.dictionaries(exps, fracs, max_size=6).map(lambda d: MPoly(NV, d))
points = st.tuples(*[fracs] * NV)


def naive_product(f: MPoly, g: MPoly) -> dict:
    # schoolbook convolution over term lists
    out: dict = {}
    for e1, c1 in f.terms.items():
        for e2, c2 in g.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


@given(polys, polys)
def test_product_matches_naive_convolution(f, g):
    assert (f * g).terms == naive_product(f, g)


@given(polys, polys, points)
def test_ring_operations_commute_with_evaluation(f, g, p):
    assert (f + g).evaluate(p) == f.evaluate(p) + g.evaluate(p)
    assert (f - g).evaluate(p) == f.evaluate(p) - g.evaluate(p)
    assert (f * g).evaluate(p) == f.evaluate(p) * g.evaluate(p)
    assert (f**2).evaluate(p) == f.evaluate(p) ** 2


@given(polys, points, st.integers(0, NV - 1))
def test_derivative_matches_exact_difference_quotient(f, p, i):
    # f(p + h e_i) - f(p) = h f_i(p) + O(h^2); compare the linear coefficient exactly
    def shifted(h):
        q = list(p)
        q[i] += h
        return f.evaluate(q)

    h1, h2 = Fraction(1, 10**6), Fraction(1, 10**7)
    d1 = (shifted(h1) - f.evaluate(p)) / h1
    d2 = (shifted(h2) - f.evaluate(p)) / h2
    # Richardson step removes the O(h) term; the remaining error is O(h^2)
    estimate = (d2 * h1 - d1 * h2) / (h1 - h2)
    assert abs(estimate - f.derivative(i).evaluate(p)) < Fraction(1, 10**6)


@given(polys, points)
def test_div_difference_round_trip(g, p):
    y0, y1 = MPoly.variables(NV)[:2]
    f = g * (y0 - y1)
    assert f.div_difference(0, 1) == g


def test_div_difference_rejects_non_multiple():
    y0, y1, _ = MPoly.variables(3)
    with pytest.raises(ValueError, match="not divisible"):
        (y0 * y0 + y1).div_difference(0, 1)


def test_zero_and_degree():
    assert MPoly(2).degree() == -1
    assert not MPoly(2)
    assert MPoly(2, {(1, 0): 0}) == MPoly(2)
    assert MPoly(2, {(2, 1): 3}).degree() == 3


def test_text_rendering():
    y1, y2 = MPoly.variables(2)
    f = (y1 * y1 * y2).scale(Fraction(12, 5)) - y2 + MPoly.constant(2, 1)
    assert f.to_text() == "12/5*y1^2*y2 - y2 + 1"
    assert f.to_text(["a", "b"]) == "12/5*a^2*b - b + 1"
    assert MPoly(2).to_text() == "0"


def test_orbit_sizes():
    # |orbit| = m! / (prod of multiplicity factorials, zeros included)
    assert len(list(monomial_orbit((2, 1), 3))) == 6
    assert len(list(monomial_orbit((1, 1), 4))) == comb(4, 2)
    assert list(monomial_orbit((1, 1, 1), 2)) == []
    assert len(list(distinct_permutations((2, 2, 1, 0)))) == factorial(4) // 2


def test_distinct_permutations_match_itertools():
    items = (3, 1, 1, 0)
    assert sorted(distinct_permutations(items), reverse=True) == list(distinct_permutations(items))
    assert set(distinct_permutations(items)) == set(permutations(items))


@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_monomial_expansion_of_power_sum(n, m):
    # (y1+...+ym)^n = sum_lam multinomial(lam) M_lam
    total = MPoly(m)
    for lam in partitions_of(n):
        multi = factorial(n)
        for part in lam:
            multi //= factorial(part)
        total = total + m_expand(lam, m).scale(multi)
    assert total == power_sum_of_variables(m, n)


def test_elementary_and_u_basis():
    y1, y2, y3 = MPoly.variables(3)
    assert elementary(2, 3) == y1 * y2 + y1 * y3 + y2 * y3
    assert elementary(0, 3) == MPoly.constant(3, 1)
    assert u_expand((2, 1), 3) == elementary(1, 3) * elementary(2, 3)
    assert u_expand((2, 2), 2) == elementary(2, 2) ** 2
    with pytest.raises(ValueError):
        u_expand((1, 1, 1), 2)


@given(st.integers(1, 6).flatmap(lambda n: st.sampled_from(partitions_of(n))), st.integers(1, 4))
def test_m_basis_round_trip(lam, m):
    f = m_expand(lam, m)
    if len(lam) > m:
        assert not f
    else:
        assert to_m_basis(f) == SymM({lam: 1})
        assert to_m_basis(f).to_mpoly(m) == f


def test_to_m_basis_checks_symmetry_and_homogeneity():
    y1, y2 = MPoly.variables(2)
    with pytest.raises(ValueError, match="not symmetric"):
        to_m_basis(y1 * y1 + y1 * y2)
    with pytest.raises(ValueError, match="not homogeneous"):
        to_m_basis(y1 + y2 + y1 * y2)


def test_symm_text_and_json():
    s = SymM({(2,): Fraction(1, 3), (1, 1): 2})
    assert s.to_text() == "1/3*M(2) + 2*M(1,1)"
    assert s.to_json() == [
        {"partition": [2], "coefficient": "1/3"},
        {"partition": [1, 1], "coefficient": "2"},
    ]


def test_permute_symmetric_invariant():
    f = u_expand((3, 1), 3)
    for perm in permutations(range(3)):
        assert f.permute(perm) == f
