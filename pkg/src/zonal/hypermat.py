"""Generalized Pochhammer symbols and truncated hypergeometric series of scalar
and matrix argument.

Arithmetic stays exact when every input is a ``Fraction`` or ``int``; floats
anywhere make the result a float.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence, Union

from .partitions import Partition, make_partition, partitions_of
from .zonalcore import ZonalCoefficients, default_engine, m_value

Number = Union[int, Fraction, float]


def pochhammer(a: Number, k: int) -> Number:
    out: Number = 1
    for i in range(k):
        out = out * (a + i)
    return out


def gen_pochhammer(a: Number, lam: Sequence[int]) -> Number:
    """(a)_lam = prod_i (a - (i-1)/2)_{lam_i}; 1 for the empty partition."""
    lam = make_partition(lam)
    shift = Fraction(1, 2) if not isinstance(a, float) else 0.5
    out: Number = 1
    for i, part in enumerate(lam):
        out = out * pochhammer(a - i * shift, part)
    return out


@dataclass
class PfqSpec:
    upper: list[Number] = field(default_factory=list)
    lower: list[Number] = field(default_factory=list)
    order: int = 0

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError("truncation order must be nonnegative")

    def weight_ratio(self, lam: Partition) -> Number:
        num: Number = 1
        for a in self.upper:
            num = num * gen_pochhammer(a, lam)
        den: Number = 1
        for b in self.lower:
            den = den * gen_pochhammer(b, lam)
        if den == 0:
            raise ZeroDivisionError(f"lower parameter singular at partition {lam}")
        if isinstance(num, float) or isinstance(den, float):
            return num / den
        return Fraction(num) / Fraction(den)


def scalar_pfq(spec: PfqSpec, z: Number) -> Number:
    """sum_{n <= N} prod (a_i)_n / prod (b_j)_n * z^n / n!."""
    total: Number = 0
    for n in range(spec.order + 1):
        total = total + spec.weight_ratio((n,) if n else ()) * z**n / factorial(n)
    return total


def matrix_pfq(spec: PfqSpec, eigs: Sequence[Number], engine: ZonalCoefficients | None = None) -> Number:
    """Truncated pFq of a matrix argument with the given eigenvalues.

    Every partition of weight <= N with at most m = len(eigs) parts is
    included; longer partitions contribute nothing since their zonal
    polynomials vanish in m variables.
    """
    if not eigs:
        raise ValueError("empty eigenvalue list")
    engine = engine or default_engine()
    m = len(eigs)
    total: Number = 0
    for n in range(spec.order + 1):
        inner: Number = 0
        for lam in partitions_of(n):
            if len(lam) > m:
                continue
            ratio = spec.weight_ratio(lam)
            value: Number = 0
            for mu, c in engine.row(lam).items():
                if len(mu) <= m:
                    value = value + c * m_value(mu, eigs)
            inner = inner + ratio * value
        total = total + inner / factorial(n)
    return total


def parse_number(text: str, exact: bool = True) -> Number:
    text = text.strip()
    return Fraction(text) if exact else float(Fraction(text))
