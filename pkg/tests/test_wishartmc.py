from fractions import Fraction as F
from itertools import combinations

import numpy as np
import pytest

from zonal.exactpoly import MPoly, u_expand
from zonal.wishartmc import (
    basis_partitions,
    d_constant,
    elementary_values,
    identity,
    is_upper_triangular,
    make_rng,
    matmul,
    mc_expectation_u,
    sample_wishart,
    solve,
    standard_normals,
    transition_matrix,
    u_value,
    xi_matrix,
)
from zonal.zonalcore import zonal_polynomial


def test_d_constants():
    assert d_constant((4,)) == F(1, 4233600)
    assert d_constant((3, 1)) == F(1, 211680)
    assert d_constant((2, 2)) == F(1, 302400)


def test_xi_lambda_t_for_reference_case():
    data = transition_matrix(4, 2, 3)
    assert data.partitions == [(4,), (3, 1), (2, 2)]
    assert data.xi == [[120960 * x for x in row] for row in [[35, -120, 48], [0, 6, -8], [0, 0, 8]]]
    assert data.lambda_diag == [945, 210, 120]
    assert data.t == [[945, -2520, 720], [0, 210, -120], [0, 0, 120]]


def test_t_times_u_polynomials():
    y1, y2 = MPoly.variables(2)
    data = transition_matrix(4, 2, 3)
    expected = [
        (y1**4 + y2**4).scale(945) + (y1**3 * y2 + y1 * y2**3).scale(1260) + (y1**2 * y2**2).scale(1350),
        (y1**3 * y2 + y1 * y2**3).scale(210) + (y1**2 * y2**2).scale(300),
        (y1**2 * y2**2).scale(120),
    ]
    assert data.t_times_u() == expected
    assert data.targets([1, 1]) == [5760, 720, 120]


@pytest.mark.parametrize("n, m", [(3, 2), (4, 3), (5, 2), (5, 3)])
def test_xi_reconstructs_scaled_zonals(n, m):
    basis = basis_partitions(n, m)
    xi = xi_matrix(n, m)
    assert is_upper_triangular(xi)
    us = [u_expand(mu, m) for mu in basis]
    for lam, row in zip(basis, xi):
        combo = MPoly(m)
        for c, u in zip(row, us):
            combo = combo + u.scale(c)
        assert combo == zonal_polynomial(lam, m).scale(1 / d_constant(lam))


@pytest.mark.parametrize("nu", [1, 2, 5])
def test_t_is_diagonalized_by_xi(nu):
    data = transition_matrix(4, 3, nu)
    lam = [[data.lambda_diag[i] if i == j else 0 for j in range(len(data.xi))] for i in range(len(data.xi))]
    assert matmul(data.xi, data.t) == matmul(lam, data.xi)


def test_exact_solver():
    a = [[F(2), F(1)], [F(1), F(3)]]
    assert matmul(a, solve(a, identity(2))) == identity(2)
    with pytest.raises(ZeroDivisionError):
        solve([[F(1), F(2)], [F(2), F(4)]], identity(2))


def test_box_muller_moments():
    z = standard_normals(make_rng(3), 200_001)
    assert z.shape == (200_001,)
    assert abs(z.mean()) < 0.01
    assert abs(z.var() - 1) < 0.01
    assert abs((z**4).mean() - 3) < 0.05


def test_sampler_is_deterministic_and_spd():
    a = sample_wishart(3, 5, make_rng(11), 50)
    b = sample_wishart(3, 5, make_rng(11), 50)
    assert np.array_equal(a, b)
    assert np.allclose(a, np.transpose(a, (0, 2, 1)))
    assert np.all(np.linalg.eigvalsh(a) > 0)
    assert sample_wishart(2, 3, make_rng(0)).shape == (2, 2)


def test_wishart_mean_is_nu_times_identity():
    w = sample_wishart(3, 4, make_rng(5), 40_000)
    assert np.allclose(w.mean(axis=0), 4 * np.eye(3), atol=0.1)


def test_elementary_values_match_eigenvalues():
    rng = np.random.default_rng(1)
    a = rng.normal(size=(20, 4, 4))
    e = elementary_values(a)
    eig = np.linalg.eigvals(a)
    for r in range(5):
        brute = sum(np.prod(eig[:, list(idx)], axis=1) for idx in combinations(range(4), r)) if r else 1
        assert np.allclose(e[:, r], np.real_if_close(brute))


def test_u_value_matches_polynomial():
    y = [0.5, 2.0, -1.5]
    for lam in [(1,), (2, 1), (3, 2, 1), (2, 2, 2)]:
        exact = float(u_expand(lam, 3).evaluate([F(v) for v in y]))
        assert u_value(lam, np.diag(y)) == pytest.approx(exact)
    with pytest.raises(ValueError):
        u_value((1, 1, 1), np.eye(2))


def test_monte_carlo_small_run_is_reproducible():
    r1 = mc_expectation_u(3, 2, 4, y=[1, 2], samples=20_000, seed=9)
    r2 = mc_expectation_u(3, 2, 4, y=[1, 2], samples=20_000, seed=9)
    assert r1 == r2
    assert r1["pass"]
    assert set(r1) >= {"targets", "means", "stderrs", "zscores", "pass"}
