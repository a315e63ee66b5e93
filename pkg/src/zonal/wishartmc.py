"""Zonal polynomials through the Wishart expectation operator.

Exact side: the normalizing constants d_lam, the change of basis Xi from the
elementary-product basis U to C_lam / d_lam, the eigenvalue diagonal
2^n (nu/2)_lam and the transition matrix T = Xi^-1 Lambda Xi.

Sampling side: Wishart W_m(I, nu) matrices from Box-Muller normals driven by
numpy's counter-based Philox generator, and a Monte-Carlo estimate of
E[U_lam(Y W)] to compare against T U evaluated at Y.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, prod
from typing import Sequence

import numpy as np

from .exactpoly import MPoly, to_m_basis, u_expand
from .hypermat import gen_pochhammer
from .partitions import Partition, make_partition, partitions_of, to_text
from .zonalcore import ZonalCoefficients, zonal_polynomial

Matrix = list[list[Fraction]]


def d_constant(lam: Sequence[int]) -> Fraction:
    lam = make_partition(lam)
    k, n = len(lam), sum(lam)
    num = prod(
        2 * lam[i] - 2 * lam[j] - (i + 1) + (j + 1)
        for i in range(k) for j in range(i + 1, k)
    )
    den = prod(factorial(2 * lam[i] + k - (i + 1)) for i in range(k))
    return Fraction(num, den) * Fraction(2**n * factorial(n), factorial(2 * n))


def basis_partitions(n: int, m: int) -> list[Partition]:
    """Partitions of n with at most m parts, descending lex."""
    return [p for p in partitions_of(n) if len(p) <= m]


def solve(a: Matrix, b: Matrix) -> Matrix:
    """X with A X = B, by exact Gauss-Jordan elimination with row pivoting."""
    size = len(a)
    aug = [list(map(Fraction, a[i])) + list(map(Fraction, b[i])) for i in range(size)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[size:] for row in aug]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)] for row in a]


def identity(size: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]


def _m_coordinates(f: MPoly, basis: list[Partition]) -> list[Fraction]:
    sym = to_m_basis(f)
    return [sym[p] for p in basis]


def xi_matrix(n: int, m: int, engine: ZonalCoefficients | None = None) -> Matrix:
    """Xi with (C_lam / d_lam)_lam = Xi (U_mu)_mu over partitions of n with <= m parts.

    Both sides are expanded in the M basis and the linear system solved
    exactly; triangularity is checked by callers, not assumed here.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    basis = basis_partitions(n, m)
    u_rows = [_m_coordinates(u_expand(mu, m), basis) for mu in basis]
    y_rows = [
        [c / d_constant(lam) for c in _m_coordinates(zonal_polynomial(lam, m, engine), basis)]
        for lam in basis
    ]
    # Xi U_M = Y_M  <=>  U_M^T Xi^T = Y_M^T
    xi_t = solve(_transpose(u_rows), _transpose(y_rows))
    return _transpose(xi_t)


def _transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


@dataclass
class TransitionData:
    n: int
    m: int
    nu: int
    partitions: list[Partition]
    xi: Matrix
    lambda_diag: list[Fraction]
    t: Matrix

    def u_basis(self) -> list[MPoly]:
        return [u_expand(mu, self.m) for mu in self.partitions]

    def t_times_u(self) -> list[MPoly]:
        """T applied to the U basis vector, one polynomial per row."""
        us = self.u_basis()
        out = []
        for row in self.t:
            acc = MPoly(self.m)
            for coeff, u in zip(row, us):
                acc = acc + u.scale(coeff)
            out.append(acc)
        return out

    def targets(self, y: Sequence[Fraction]) -> list[Fraction]:
        """(T U)(diag(y)), exactly."""
        return [p.evaluate(list(y)) for p in self.t_times_u()]


def transition_matrix(n: int, m: int, nu: int, engine: ZonalCoefficients | None = None) -> TransitionData:
    if nu < 1:
        raise ValueError("degrees of freedom must be a positive integer")
    basis = basis_partitions(n, m)
    xi = xi_matrix(n, m, engine)
    lam_diag = [Fraction(2**n) * gen_pochhammer(Fraction(nu, 2), lam) for lam in basis]
    scaled = [[lam_diag[i] * x for x in row] for i, row in enumerate(xi)]
    t = solve(xi, scaled)
    return TransitionData(n, m, nu, basis, xi, lam_diag, t)


def is_upper_triangular(a: Matrix) -> bool:
    return all(a[i][j] == 0 for i in range(len(a)) for j in range(i))


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def standard_normals(rng: np.random.Generator, size: int) -> np.ndarray:
    """Box-Muller transform of uniform draws; both outputs of each pair are used."""
    pairs = (size + 1) // 2
    u1 = rng.random(pairs)
    u2 = rng.random(pairs)
    radius = np.sqrt(-2.0 * np.log1p(-u1))
    angle = 2.0 * np.pi * u2
    return np.concatenate([radius * np.cos(angle), radius * np.sin(angle)])[:size]


def sample_wishart(m: int, nu: int, rng: np.random.Generator, count: int | None = None) -> np.ndarray:
    """W = X^T X with nu independent N_m(0, I) rows; shape (m, m) or (count, m, m)."""
    if nu < 1:
        raise ValueError("degrees of freedom must be a positive integer")
    batch = 1 if count is None else count
    x = standard_normals(rng, batch * nu * m).reshape(batch, nu, m)
    w = np.einsum("bki,bkj->bij", x, x)
    return w[0] if count is None else w


def elementary_values(a: np.ndarray) -> np.ndarray:
    """e_0..e_m of the eigenvalues of each square matrix in ``a``.

    e_r is the sum of the r x r principal minors, so no eigen-solver is used.
    Works on a single matrix or a stack; the last axis of the result runs over r.
    """
    a = np.asarray(a, dtype=float)
    m = a.shape[-1]
    out = np.empty(a.shape[:-2] + (m + 1,))
    out[..., 0] = 1.0
    for r in range(1, m + 1):
        acc = np.zeros(a.shape[:-2])
        for idx in combinations(range(m), r):
            sub = a[..., idx, :][..., :, idx]
            acc = acc + np.linalg.det(sub)
        out[..., r] = acc
    return out


def u_from_elementary(lam: Sequence[int], e: np.ndarray) -> np.ndarray:
    lam = make_partition(lam)
    padded = lam + (0,)
    out = np.ones(e.shape[:-1])
    for r in range(1, len(lam) + 1):
        power = padded[r - 1] - padded[r]
        if power:
            out = out * e[..., r] ** power
    return out


def u_value(lam: Sequence[int], a: np.ndarray) -> float | np.ndarray:
    """U_lam at the eigenvalues of ``a`` (or of each matrix in a stack)."""
    lam = make_partition(lam)
    a = np.asarray(a, dtype=float)
    if len(lam) > a.shape[-1]:
        raise ValueError(f"{to_text(lam)} has more parts than the matrix dimension")
    result = u_from_elementary(lam, elementary_values(a))
    return float(result) if result.ndim == 0 else result


def mc_expectation_u(
    n: int,
    m: int,
    nu: int,
    y: Sequence[Fraction] | None = None,
    samples: int = 100_000,
    seed: int = 0,
    engine: ZonalCoefficients | None = None,
    z_limit: float = 5.0,
    chunk: int = 50_000,
) -> dict:
    """Monte-Carlo mean of U_lam(diag(y) W) against the exact (T U)(y).

    Samples are drawn in fixed-size chunks from one Philox stream, so the
    report depends only on (seed, samples, chunk).
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    y = [Fraction(v) for v in (y if y is not None else range(1, m + 1))]
    if len(y) != m:
        raise ValueError("y must have m entries")
    data = transition_matrix(n, m, nu, engine)
    targets = data.targets(y)
    rng = make_rng(seed)
    ydiag = np.diag([float(v) for v in y])
    k = len(data.partitions)
    sums = np.zeros(k)
    sq = np.zeros(k)
    done = 0
    while done < samples:
        size = min(chunk, samples - done)
        w = sample_wishart(m, nu, rng, size)
        e = elementary_values(ydiag @ w)
        for i, lam in enumerate(data.partitions):
            vals = u_from_elementary(lam, e)
            sums[i] += vals.sum()
            sq[i] += (vals * vals).sum()
        done += size
    means = sums / samples
    var = (sq - samples * means**2) / max(samples - 1, 1)
    stderrs = np.sqrt(np.maximum(var, 0.0) / samples)
    zscores = [
        float((mu - float(t)) / se) if se > 0 else (0.0 if mu == float(t) else float("inf"))
        for mu, t, se in zip(means, targets, stderrs)
    ]
    return {
        "n": n, "m": m, "nu": nu, "y": [str(v) for v in y],
        "samples": samples, "seed": seed,
        "partitions": [list(p) for p in data.partitions],
        "targets": [str(t) for t in targets],
        "means": [float(x) for x in means],
        "stderrs": [float(x) for x in stderrs],
        "zscores": zscores,
        "pass": all(abs(z) <= z_limit for z in zscores),
    }


def verify_wishart(n: int = 4, m: int = 2, nu: int = 3, samples: int = 100_000, seed: int = 42,
                   y: Sequence[Fraction] | None = None) -> dict:
    report = mc_expectation_u(n, m, nu, y=y, samples=samples, seed=seed)
    failures = [
        {"lambda": p, "target": t, "mean": mu, "zscore": z}
        for p, t, mu, z in zip(report["partitions"], report["targets"], report["means"], report["zscores"])
        if abs(z) > 5
    ]
    return {"suite": "wishart",
            "range": {"n": n, "m": m, "nu": nu, "samples": samples, "seed": seed, "y": report["y"]},
            "checked": len(report["partitions"]), "failures": failures}
