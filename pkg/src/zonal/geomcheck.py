"""The reduced Laplace-Beltrami operator on eigenvalue space, and a check that
zonal polynomials are its eigenfunctions.

The operator is

    D f = sum_i y_i^2 f_ii + sum_{i != j} y_i^2 / (y_i - y_j) f_i

and the singular part is evaluated pairwise as
(y_i^2 f_i - y_j^2 f_j) / (y_i - y_j), an exact polynomial division that only
succeeds for symmetric input.
"""

from __future__ import annotations

from typing import Sequence

from .exactpoly import MPoly, to_m_basis
from .partitions import make_partition, partitions_of, rho
from .zonalcore import ZonalCoefficients, zonal_polynomial


def _square(i: int, m: int) -> tuple[int, ...]:
    return tuple(2 if k == i else 0 for k in range(m))


def apply_delta_y(f: MPoly, m: int | None = None) -> MPoly:
    m = f.nvars if m is None else m
    if m != f.nvars:
        raise ValueError("variable count mismatch")
    grads = [f.derivative(i) for i in range(m)]
    out = MPoly(m)
    for i in range(m):
        out = out + grads[i].derivative(i).mul_monomial(_square(i, m))
    for i in range(m):
        for j in range(i + 1, m):
            diff = grads[i].mul_monomial(_square(i, m)) - grads[j].mul_monomial(_square(j, m))
            try:
                out = out + diff.div_difference(i, j)
            except ValueError as exc:
                raise ValueError("input not symmetric") from exc
    return out


def delta_y_at(f: MPoly, point: Sequence) -> object:
    """The operator evaluated pointwise from its defining formula (distinct coordinates)."""
    m = f.nvars
    grads = [f.derivative(i) for i in range(m)]
    total = 0
    for i in range(m):
        yi = point[i]
        total += yi**2 * grads[i].derivative(i).evaluate(point)
        gi = grads[i].evaluate(point)
        for j in range(m):
            if j != i:
                total += yi**2 / (yi - point[j]) * gi
    return total


def check_eigen(lam: Sequence[int], m: int, engine: ZonalCoefficients | None = None) -> dict:
    """Whether D C_lam = (rho_lam + (m-1)|lam|) C_lam holds exactly in m variables."""
    lam = make_partition(lam)
    eigenvalue = rho(lam) + (m - 1) * sum(lam)
    poly = zonal_polynomial(lam, m, engine)
    holds = apply_delta_y(poly, m) == poly.scale(eigenvalue)
    return {"eigenvalue": eigenvalue, "holds": holds}


def verify_laplace(n_max: int = 6, m_max: int = 6, engine: ZonalCoefficients | None = None) -> dict:
    failures, checked = [], 0
    for n in range(1, n_max + 1):
        for lam in partitions_of(n):
            for m in range(len(lam), m_max + 1):
                checked += 1
                result = check_eigen(lam, m, engine)
                if not result["holds"]:
                    failures.append({"lambda": list(lam), "m": m, "eigenvalue": result["eigenvalue"]})
    return {"suite": "laplace", "range": {"n_max": n_max, "m_max": m_max},
            "checked": checked, "failures": failures}


def preserves_degree(f: MPoly) -> bool:
    """D maps a homogeneous symmetric f to a homogeneous symmetric polynomial of equal degree."""
    g = apply_delta_y(f)
    if not g:
        return True
    to_m_basis(g)
    return g.degree() == f.degree()
