"""Closed forms for families of zonal coefficients, the open diagonal formulas
for three- and four-part partitions, and checkers for the summation
certificates behind the two-part closed form.

The diagonal formulas ``conj_diag3`` / ``conj_diag4`` and the limit
``conj_limit`` are conjectures, not theorems: they are evaluated exactly and
every sweep reports per-tuple pass/fail so a counterexample would surface.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Callable, Sequence

from .partitions import Partition, make_partition
from .zonalcore import ZonalCoefficients, default_engine

HALF = Fraction(1, 2)


def poch(a: Fraction | int, k: int) -> Fraction:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1)."""
    if k < 0:
        raise ValueError("negative Pochhammer length")
    out = Fraction(1)
    a = Fraction(a)
    for i in range(k):
        out *= a + i
    return out


def rfact(k: int) -> Fraction:
    """1/k!, taken as 0 for negative k (the usual convention for WZ pairs)."""
    return Fraction(0) if k < 0 else Fraction(1, factorial(k))


def cf_row1(n: int, m: int) -> Fraction:
    """c[(n), (n-m, m)] = C(n, m) (1/2)_m / (n - m + 1/2)_m."""
    if not 0 <= 2 * m <= n:
        raise ValueError("need 0 <= m <= n/2")
    return comb(n, m) * poch(HALF, m) / poch(n - m + HALF, m)


# First-row shapes of the lexicographically largest partitions (n - |pi|, pi),
# in descending lex order for n >= 6.
LARGEST_SHAPES: tuple[Partition, ...] = ((), (1,), (2,), (1, 1), (3,), (2, 1))

_F = Fraction

_TABLE_LARGEST: dict[tuple[Partition, Partition], Callable[[int], Fraction]] = {
    ((), ()): lambda n: _F(1),
    ((), (1,)): lambda n: _F(n, 2 * n - 1),
    ((), (2,)): lambda n: _F(3 * (n - 1) * n, 2 * (2 * n - 3) * (2 * n - 1)),
    ((), (1, 1)): lambda n: _F((n - 1) * n, (2 * n - 3) * (2 * n - 1)),
    ((), (3,)): lambda n: _F(5 * (n - 2) * (n - 1) * n, 2 * (2 * n - 5) * (2 * n - 3) * (2 * n - 1)),
    ((), (2, 1)): lambda n: _F(3 * (n - 2) * (n - 1) * n, 2 * (2 * n - 5) * (2 * n - 3) * (2 * n - 1)),
    ((1,), (1,)): lambda n: _F(2 * (n - 1) * n, 2 * n - 1),
    ((1,), (2,)): lambda n: _F(2 * (n - 2) * (n - 1) * n, (2 * n - 5) * (2 * n - 1)),
    ((1,), (1, 1)): lambda n: _F(2 * n * (2 * n * n - 6 * n + 3), (2 * n - 5) * (2 * n - 1)),
    ((1,), (3,)): lambda n: _F(
        3 * (n - 3) * (n - 2) * (n - 1) * n, (2 * n - 7) * (2 * n - 5) * (2 * n - 1)
    ),
    ((1,), (2, 1)): lambda n: _F(
        (n - 2) * n * (5 * n * n - 20 * n + 11), (2 * n - 7) * (2 * n - 5) * (2 * n - 1)
    ),
    ((2,), (2,)): lambda n: _F(2 * (n - 3) * (n - 2) * (n - 1) * n, (2 * n - 5) * (2 * n - 3)),
    ((2,), (1, 1)): lambda n: _F(4 * (n - 3) * (n - 2) * (n - 1) * n, 3 * (2 * n - 5) * (2 * n - 3)),
    ((2,), (3,)): lambda n: _F(
        2 * (n - 4) * (n - 3) * (n - 2) * (n - 1) * n, (2 * n - 9) * (2 * n - 5) * (2 * n - 3)
    ),
    ((2,), (2, 1)): lambda n: _F(
        2 * (n - 3) * (n - 1) * n * (5 * n * n - 30 * n + 36),
        3 * (2 * n - 9) * (2 * n - 5) * (2 * n - 3),
    ),
    ((1, 1), (1, 1)): lambda n: _F(2 * (n - 2) * n, 3),
    ((1, 1), (3,)): lambda n: _F(0),
    ((1, 1), (2, 1)): lambda n: _F(2 * (n - 3) * (n - 2) * n, 3 * (2 * n - 7)),
    ((3,), (3,)): lambda n: _F(
        4 * (n - 5) * (n - 4) * (n - 3) * (n - 2) * (n - 1) * n,
        3 * (2 * n - 9) * (2 * n - 7) * (2 * n - 5),
    ),
    ((3,), (2, 1)): lambda n: _F(
        4 * (n - 5) * (n - 4) * (n - 3) * (n - 2) * (n - 1) * n,
        5 * (2 * n - 9) * (2 * n - 7) * (2 * n - 5),
    ),
    ((2, 1), (2, 1)): lambda n: _F(4 * (n - 4) * (n - 3) * (n - 1) * n, 5 * (2 * n - 7)),
}

LARGEST_MIN_N = 6


def cf_corner_largest(kappa_shape: Sequence[int], lam_shape: Sequence[int], n: int) -> Fraction:
    """c[(n - |pk|, pk), (n - |pl|, pl)] for shapes pk, pl among ``LARGEST_SHAPES``.

    Valid for n >= 6; smaller n is refused rather than extrapolated.
    """
    pk, pl = tuple(kappa_shape), tuple(lam_shape)
    if pk not in LARGEST_SHAPES or pl not in LARGEST_SHAPES:
        raise ValueError("no closed form stored")
    if n < LARGEST_MIN_N:
        raise ValueError(f"closed form only valid for n >= {LARGEST_MIN_N}")
    if LARGEST_SHAPES.index(pl) < LARGEST_SHAPES.index(pk):
        return Fraction(0)
    return _TABLE_LARGEST[pk, pl](n)


def largest_partition(shape: Sequence[int], n: int) -> Partition:
    return (n - sum(shape),) + tuple(shape)


def _p2(k: int) -> Fraction:
    return Fraction(2) ** k


# Keys are (a_kappa, a_lam) for kappa = (2^a_kappa, 1^(n - 2 a_kappa)).
_TABLE_SMALLEST: dict[tuple[int, int], Callable[[int], Fraction]] = {
    (4, 4): lambda n: _p2(n - 3) * (n - 6) * (n - 5) * n / 15,
    (4, 3): lambda n: _p2(n - 3) * (n - 7) * (n - 6) ** 2 * n / 15,
    (4, 2): lambda n: _p2(n - 4) * (n - 7) * (n - 6) ** 2 * (n - 5) * n / 15,
    (4, 1): lambda n: _p2(n - 4) * (n - 7) * (n - 6) ** 2 * (n - 5) * (n - 2) * n / 45,
    (4, 0): lambda n: _p2(n - 6) * (n - 7) * (n - 6) ** 2 * (n - 5) * (n - 1) * n**2 / 45,
    (3, 3): lambda n: _p2(n - 3) * (n - 4) * (n - 3) / 3,
    (3, 2): lambda n: _p2(n - 3) * (n - 5) * (n - 4) ** 2 / 3,
    (3, 1): lambda n: _p2(n - 4) * (n - 5) * (n - 4) ** 2 * (n - 3) / 3,
    (3, 0): lambda n: _p2(n - 4) * (n - 5) * (n - 4) ** 2 * (n - 3) * n / 9,
    (2, 2): lambda n: _p2(n - 1) * (n - 2) * (n - 1) / (3 * (n + 1)),
    (2, 1): lambda n: _p2(n - 1) * (n - 3) * (n - 2) ** 2 / (3 * (n + 1)),
    (2, 0): lambda n: _p2(n - 2) * (n - 3) * (n - 2) ** 2 * (n - 1) / (3 * (n + 1)),
    (1, 1): lambda n: _p2(n - 1) * n / (n + 2),
    (1, 0): lambda n: _p2(n - 1) * (n - 1) * n**2 / ((n + 1) * (n + 2)),
    (0, 0): lambda n: _p2(n) / (n + 1),
}

SMALLEST_MAX_A = 4


def smallest_partition(a: int, n: int) -> Partition:
    return (2,) * a + (1,) * (n - 2 * a)


def cf_corner_smallest(a_kappa: int, a_lam: int, n: int) -> Fraction:
    """c[(2^ak, 1^(n-2ak)), (2^al, 1^(n-2al))] for 0 <= ak, al <= 4."""
    if not (0 <= a_kappa <= SMALLEST_MAX_A and 0 <= a_lam <= SMALLEST_MAX_A):
        raise ValueError("no closed form stored")
    if n < 2 * max(a_kappa, a_lam):
        raise ValueError("n too small for these partitions")
    if a_lam > a_kappa:
        return Fraction(0)
    return Fraction(_TABLE_SMALLEST[a_kappa, a_lam](n))


def cf_two_part(a: int, b: int, d: int) -> Fraction:
    """c[(a, a-b), (a-d, a-b+d)] for 0 <= b <= a and 0 <= d <= b/2.

    b = a reads (a, 0) as the one-row partition (a).
    """
    if not (0 <= b <= a and 0 <= 2 * d <= b):
        raise ValueError("need 0 <= b <= a and 0 <= d <= b/2")
    num = factorial(2 * a - b) * (b + HALF) * poch(HALF, d)
    den = factorial(d) * factorial(a - b) * factorial(b - d) * poch(b - d + HALF, a - b + d + 1)
    return num / den


def cf_two_part_ratio(b: int, d: int) -> Fraction:
    """c[(a, a-b), (a-d, a-b+d)] / c[(a, a-b), (a, a-b)], which does not depend on a."""
    if not 0 <= 2 * d <= b:
        raise ValueError("need 0 <= d <= b/2")
    return comb(b, d) * poch(HALF, d) / poch(b - d + HALF, d)


def two_part_partition(a: int, b: int, d: int = 0) -> Partition:
    return tuple(p for p in (a - d, a - b + d) if p)


def _diag_core(n: int, deltas: Sequence[int]) -> Fraction:
    # n! / (prod delta_i! * prod_{i} (delta_i + 3/2)_{delta_{i+1}})
    den = Fraction(1)
    for x in deltas:
        den *= factorial(x)
    for x, y in zip(deltas, deltas[1:]):
        den *= poch(x + Fraction(3, 2), y)
    return factorial(n) / den


def conj_diag3(a: int, b: int, c: int) -> Fraction:
    """Conjectured c[kappa, kappa] for kappa = (a, a-b, a-c), 0 <= b <= c <= a."""
    if not 0 <= b <= c <= a:
        raise ValueError("need 0 <= b <= c <= a")
    n = 3 * a - b - c
    return Fraction(factorial(c + 1), factorial(a + 1)) * _diag_core(n, (b, c - b, a - c))


def conj_diag4(a: int, b: int, c: int, d: int) -> Fraction:
    """Conjectured c[kappa, kappa] for kappa = (a, a-b, a-c, a-d), 0 <= b <= c <= d <= a."""
    if not 0 <= b <= c <= d <= a:
        raise ValueError("need 0 <= b <= c <= d <= a")
    n = 4 * a - b - c - d
    front = Fraction(factorial(c + 1) * factorial(d - b + 1)) / (
        factorial(a - b + 1) * factorial(d + 1) * poch(d + Fraction(5, 2), a - d)
    )
    return front * _diag_core(n, (b, c - b, d - c, a - d))


def diag_partition(a: int, *offsets: int) -> Partition:
    """(a, a - offsets[0], a - offsets[1], ...) with zero parts dropped."""
    return tuple(p for p in (a, *(a - o for o in offsets)) if p)


def conj_limit(lam_tail: Sequence[int]) -> Fraction:
    """Conjectured limit of c[(n), (n - |lam'|, lam')] as n grows."""
    lam_tail = make_partition(lam_tail)
    out = Fraction(1)
    for p in lam_tail:
        out *= poch(p, p) / (factorial(p) * Fraction(2) ** (2 * p - 1))
    return out


# Summation certificates for the two-part closed form.

def gosper_f(b: int, d: int, j: int) -> Fraction:
    """Summand f(j) of the two-part row identity."""
    return comb(b, j) * (b - 2 * j) * poch(HALF, j) / (d * (2 * b - 2 * d + 1) * poch(b - j + HALF, j))


def gosper_g(b: int, d: int, j: int) -> Fraction:
    """Certificate g(j) with g(j+1) - g(j) = f(j) and g(0) = 0."""
    return comb(b, j) * j * (2 * b - 2 * j + 1) * poch(HALF, j) / (
        d * (2 * b - 2 * d + 1) * poch(b - j + HALF, j)
    )


def wz_f(a: int, b: int, d: int) -> Fraction:
    """Summand of the diagonal identity sum_{d=0}^{a-b} f(a, b, d) = 1; zero outside the range."""
    if d < 0:
        return Fraction(0)
    return (
        factorial(a) * factorial(a - b) * (b + 2 * d + HALF) * poch(HALF, d)
        * rfact(d) * rfact(a - b - d) * rfact(b + d) / poch(b + d + HALF, a - b + 1)
    )


def wz_g1(a: int, b: int, d: int) -> Fraction:
    """Certificate for the step a -> a + 1."""
    if d < 0:
        return Fraction(0)
    return -(
        factorial(a) * factorial(a - b) * poch(HALF, d)
        * rfact(d - 1) * rfact(b + d - 1) * rfact(a - b - d + 1) / poch(b + d + HALF, a - b + 1)
    )


def wz_g2(a: int, b: int, d: int) -> Fraction:
    """Certificate for the step b -> b + 1 (needs b < a)."""
    if d < 0:
        return Fraction(0)
    return (
        factorial(a) * factorial(a - b - 1) * poch(HALF, d)
        * rfact(d - 1) * rfact(b + d) * rfact(a - b - d) / poch(b + d + HALF, a - b)
    )


def diagonal_sum(a: int, b: int) -> Fraction:
    return sum((wz_f(a, b, d) for d in range(a - b + 1)), Fraction(0))


def _report(suite: str, range_: dict, checked: int, failures: list) -> dict:
    return {"suite": suite, "range": range_, "checked": checked, "failures": failures}


def verify_identities(a_max: int) -> dict:
    """Exact check of the diagonal sum, the Gosper certificate, and both WZ pairs.

    For 0 <= b <= a <= a_max: the diagonal sum equals 1; for 1 <= d <= b/2,
    g(0) = 0, g(j+1) - g(j) = f(j) for 0 <= j < d and g(d) equals the
    row ratio; both WZ relations hold for 0 <= d <= a - b + 1.
    """
    if a_max < 1:
        raise ValueError("a_max must be at least 1")
    failures: list[dict] = []
    checked = 0

    def check(ok: bool, **where) -> None:
        nonlocal checked
        checked += 1
        if not ok:
            failures.append(where)

    for a in range(a_max + 1):
        for b in range(a + 1):
            check(diagonal_sum(a, b) == 1, check="sum", a=a, b=b)
            for d in range(a - b + 2):
                check(
                    wz_f(a + 1, b, d) - wz_f(a, b, d) == wz_g1(a, b, d + 1) - wz_g1(a, b, d),
                    check="wz1", a=a, b=b, d=d,
                )
                if b < a:
                    check(
                        wz_f(a, b + 1, d) - wz_f(a, b, d) == wz_g2(a, b, d + 1) - wz_g2(a, b, d),
                        check="wz2", a=a, b=b, d=d,
                    )
    for b in range(a_max + 1):
        for d in range(1, b // 2 + 1):
            check(gosper_g(b, d, 0) == 0, check="gosper_g0", b=b, d=d)
            for j in range(d):
                check(
                    gosper_g(b, d, j + 1) - gosper_g(b, d, j) == gosper_f(b, d, j),
                    check="gosper", b=b, d=d, j=j,
                )
            check(gosper_g(b, d, d) == cf_two_part_ratio(b, d), check="gosper_total", b=b, d=d)
    return _report("identities", {"a_max": a_max}, checked, failures)


def verify_closed_forms(
    row1_n_max: int = 20,
    two_part_n_max: int = 24,
    largest_n: tuple[int, int] = (6, 18),
    smallest_n: tuple[int, int] = (8, 20),
    engine: ZonalCoefficients | None = None,
) -> dict:
    """Every stored closed form against the recurrence engine, exactly."""
    engine = engine or default_engine()
    failures: list[dict] = []
    checked = 0

    def check(name: str, value: Fraction, kappa: Partition, lam: Partition) -> None:
        nonlocal checked
        checked += 1
        expected = engine.coefficient(kappa, lam)
        if value != expected:
            failures.append({
                "form": name, "kappa": list(kappa), "lambda": list(lam),
                "closed_form": str(value), "recurrence": str(expected),
            })

    for n in range(1, row1_n_max + 1):
        for m in range(n // 2 + 1):
            check("row1", cf_row1(n, m), (n,), two_part_partition(n, n, m))
    for a in range(1, two_part_n_max + 1):
        for b in range(a + 1):
            if 2 * a - b > two_part_n_max:
                continue
            for d in range(b // 2 + 1):
                check("two_part", cf_two_part(a, b, d), two_part_partition(a, b), two_part_partition(a, b, d))
                checked += 1
                if cf_two_part(a, b, d) / cf_two_part(a, b, 0) != cf_two_part_ratio(b, d):
                    failures.append({"form": "two_part_ratio", "a": a, "b": b, "d": d})
    for n in range(largest_n[0], largest_n[1] + 1):
        for pk in LARGEST_SHAPES:
            for pl in LARGEST_SHAPES:
                check("largest", cf_corner_largest(pk, pl, n), largest_partition(pk, n), largest_partition(pl, n))
    for n in range(smallest_n[0], smallest_n[1] + 1):
        for ak in range(SMALLEST_MAX_A + 1):
            for al in range(SMALLEST_MAX_A + 1):
                check("smallest", cf_corner_smallest(ak, al, n), smallest_partition(ak, n), smallest_partition(al, n))
    return _report(
        "closed-forms",
        {"row1_n_max": row1_n_max, "two_part_n_max": two_part_n_max,
         "largest_n": list(largest_n), "smallest_n": list(smallest_n)},
        checked, failures,
    )


def verify_conjectures(
    diag3_a_max: int = 8, diag4_a_max: int = 6, engine: ZonalCoefficients | None = None
) -> dict:
    """Both diagonal conjectures against the recurrence diagonal, per tuple."""
    engine = engine or default_engine()
    failures: list[dict] = []
    checked = 0
    for a in range(1, diag3_a_max + 1):
        for c in range(a + 1):
            for b in range(c + 1):
                checked += 1
                value = conj_diag3(a, b, c)
                expected = engine.diagonal(diag_partition(a, b, c))
                if value != expected:
                    failures.append({"conjecture": "diag3", "abc": [a, b, c],
                                     "formula": str(value), "recurrence": str(expected)})
    for a in range(1, diag4_a_max + 1):
        for d in range(a + 1):
            for c in range(d + 1):
                for b in range(c + 1):
                    checked += 1
                    value = conj_diag4(a, b, c, d)
                    expected = engine.diagonal(diag_partition(a, b, c, d))
                    if value != expected:
                        failures.append({"conjecture": "diag4", "abcd": [a, b, c, d],
                                         "formula": str(value), "recurrence": str(expected)})
    return _report("conjectures", {"diag3_a_max": diag3_a_max, "diag4_a_max": diag4_a_max},
                   checked, failures)


def limit_gaps(lam_tail: Sequence[int], n_values: Sequence[int],
               engine: ZonalCoefficients | None = None) -> list[Fraction]:
    """|c[(n), (n - |lam'|, lam')] - conj_limit(lam')| for each n.

    Uses the stored first-row closed form when there is one, else the engine.
    """
    lam_tail = make_partition(lam_tail)
    engine = engine or default_engine()
    target = conj_limit(lam_tail)
    gaps = []
    for n in n_values:
        if lam_tail in LARGEST_SHAPES and n >= LARGEST_MIN_N:
            value = cf_corner_largest((), lam_tail, n)
        else:
            value = engine.coefficient((n,), largest_partition(lam_tail, n))
        gaps.append(abs(value - target))
    return gaps
