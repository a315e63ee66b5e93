"""Exact sparse multivariate polynomials over the rationals and the symmetric
bases built on them.

``MPoly`` maps exponent tuples (one entry per variable) to ``Fraction``
coefficients.  The variable count is part of every value and mixing widths is
an error.  ``SymM`` stores a homogeneous symmetric polynomial by its
coordinates in the monomial-symmetric basis M_lambda.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterator, Mapping, Sequence, Union

from .partitions import Partition, make_partition, to_text

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]


class MPoly:
    """Immutable sparse polynomial in ``nvars`` variables with exact coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Scalar] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean: dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has wrong width for {nvars} variables")
            if coeff:
                clean[tuple(exp)] = Fraction(coeff)
        self.nvars = nvars
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> MPoly:
        # trusted constructor: caller guarantees widths and no zero coefficients
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, nvars: int, value: Scalar) -> MPoly:
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, i: int) -> MPoly:
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, {tuple(exp): 1})

    @classmethod
    def variables(cls, nvars: int) -> list[MPoly]:
        return [cls.variable(nvars, i) for i in range(nvars)]

    def _check(self, other: MPoly) -> None:
        if not isinstance(other, MPoly):
            raise TypeError(f"expected MPoly, got {type(other).__name__}")
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MPoly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: MPoly) -> MPoly:
        self._check(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return MPoly._raw(self.nvars, out)

    def __neg__(self) -> MPoly:
        return MPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: MPoly) -> MPoly:
        return self + (-other)

    def __mul__(self, other: MPoly | Scalar) -> MPoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                out[exp] = out.get(exp, 0) + c1 * c2
        return MPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    def __rmul__(self, other: Scalar) -> MPoly:
        return self.scale(other)

    def scale(self, factor: Scalar) -> MPoly:
        if not factor:
            return MPoly(self.nvars)
        factor = Fraction(factor)
        return MPoly._raw(self.nvars, {e: c * factor for e, c in self.terms.items()})

    def __pow__(self, k: int) -> MPoly:
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = MPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def derivative(self, i: int) -> MPoly:
        """Formal partial derivative with respect to variable ``i`` (0-based)."""
        if not 0 <= i < self.nvars:
            raise ValueError(f"variable index {i} out of range")
        out = {}
        for exp, c in self.terms.items():
            if exp[i]:
                new = list(exp)
                new[i] -= 1
                out[tuple(new)] = c * exp[i]
        return MPoly._raw(self.nvars, out)

    def mul_monomial(self, exp: Exponent, coeff: Scalar = 1) -> MPoly:
        if not coeff:
            return MPoly(self.nvars)
        coeff = Fraction(coeff)
        return MPoly._raw(
            self.nvars,
            {tuple(a + b for a, b in zip(e, exp)): c * coeff for e, c in self.terms.items()},
        )

    def div_difference(self, i: int, j: int) -> MPoly:
        """Exact quotient of this polynomial by ``(y_i - y_j)``.

        Synthetic division in ``y_i``: writing f = sum_k f_k y_i^k, the
        quotient coefficients satisfy g_{k-1} = f_k + y_j g_k.  A nonzero
        remainder raises ``ValueError("not divisible")``.
        """
        if i == j or not (0 <= i < self.nvars and 0 <= j < self.nvars):
            raise ValueError(f"bad variable pair ({i}, {j})")
        by_power: dict[int, dict[Exponent, Fraction]] = {}
        for exp, c in self.terms.items():
            rest = exp[:i] + (0,) + exp[i + 1:]
            by_power.setdefault(exp[i], {})[rest] = c
        if not by_power:
            return MPoly(self.nvars)
        top = max(by_power)
        shift = tuple(1 if v == j else 0 for v in range(self.nvars))
        quotient: dict[Exponent, Fraction] = {}
        carry: dict[Exponent, Fraction] = {}
        for k in range(top, -1, -1):
            # current = f_k + y_j * g_k, where carry holds g_k
            current = dict(by_power.get(k, {}))
            for exp, c in carry.items():
                e = tuple(a + b for a, b in zip(exp, shift))
                s = current.get(e, 0) + c
                if s:
                    current[e] = s
                else:
                    current.pop(e, None)
            if k == 0:
                if current:
                    raise ValueError("not divisible")
                break
            for exp, c in current.items():
                e = list(exp)
                e[i] = k - 1
                quotient[tuple(e)] = c
            carry = current
        return MPoly._raw(self.nvars, quotient)

    def evaluate(self, point: Sequence[Scalar | float]):
        """Value at ``point``; exact when the point is exact."""
        if len(point) != self.nvars:
            raise ValueError("point has wrong length")
        total = 0
        for exp, c in self.terms.items():
            term = c
            for x, e in zip(point, exp):
                if e:
                    term = term * x**e
            total = total + term
        return total

    def permute(self, perm: Sequence[int]) -> MPoly:
        """Rename variable ``k`` to ``perm[k]``."""
        out = {}
        for exp, c in self.terms.items():
            new = [0] * self.nvars
            for k, e in enumerate(exp):
                new[perm[k]] = e
            out[tuple(new)] = c
        return MPoly._raw(self.nvars, out)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in graded-lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def to_text(self, names: Sequence[str] | None = None) -> str:
        names = list(names) if names is not None else default_names(self.nvars)
        if len(names) != self.nvars:
            raise ValueError("wrong number of variable names")
        if not self.terms:
            return "0"
        pieces = []
        for k, (exp, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, exp) if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if k == 0:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)

    def to_json(self) -> list[dict]:
        return [
            {"exponents": list(exp), "coefficient": str(c)}
            for exp, c in self.sorted_terms()
        ]

    def __repr__(self) -> str:
        return f"MPoly({self.nvars}, {self.to_text()!r})"


def default_names(nvars: int) -> list[str]:
    return [f"y{i + 1}" for i in range(nvars)]


def partial_derivative(f: MPoly, i: int) -> MPoly:
    return f.derivative(i)


def exact_div_diff(f: MPoly, i: int, j: int) -> MPoly:
    return f.div_difference(i, j)


def distinct_permutations(items: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Distinct orderings of a multiset, in descending lexicographic order."""
    counts: dict[int, int] = {}
    for x in items:
        counts[x] = counts.get(x, 0) + 1
    values = sorted(counts, reverse=True)
    size = len(items)
    current: list[int] = []

    def walk() -> Iterator[tuple[int, ...]]:
        if len(current) == size:
            yield tuple(current)
            return
        for v in values:
            if counts[v]:
                counts[v] -= 1
                current.append(v)
                yield from walk()
                current.pop()
                counts[v] += 1

    return walk()


def monomial_orbit(lam: Sequence[int], m: int) -> Iterator[Exponent]:
    """Exponent vectors of the distinct monomials in M_lambda(y_1..y_m)."""
    if len(lam) > m:
        return iter(())
    return distinct_permutations(tuple(lam) + (0,) * (m - len(lam)))


def m_expand(lam: Sequence[int], m: int) -> MPoly:
    """Monomial symmetric polynomial M_lambda in ``m`` variables.

    Zero when lambda has more parts than there are variables.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    one = Fraction(1)
    return MPoly._raw(m, {exp: one for exp in monomial_orbit(lam, m)})


def elementary(r: int, m: int) -> MPoly:
    """Elementary symmetric polynomial e_r(y_1..y_m)."""
    terms = {}
    for idx in combinations(range(m), r):
        exp = [0] * m
        for i in idx:
            exp[i] = 1
        terms[tuple(exp)] = 1
    return MPoly(m, terms)


def u_expand(lam: Sequence[int], m: int) -> MPoly:
    """The product basis u_1^(l1-l2) u_2^(l2-l3) ... u_k^(lk) in ``m`` variables."""
    lam = make_partition(lam)
    if len(lam) > m:
        raise ValueError(f"{to_text(lam)} has more than {m} parts; U basis undefined")
    result = MPoly.constant(m, 1)
    padded = lam + (0,)
    for r in range(1, len(lam) + 1):
        power = padded[r - 1] - padded[r]
        if power:
            result = result * elementary(r, m) ** power
    return result


class SymM:
    """Homogeneous symmetric polynomial in monomial-symmetric coordinates.

    ``coeffs[lam]`` is the coefficient of M_lam; zero entries are dropped.
    """

    __slots__ = ("coeffs", "weight")

    def __init__(self, coeffs: Mapping[Partition, Scalar], weight: int | None = None):
        clean = {make_partition(k): Fraction(v) for k, v in coeffs.items() if v}
        weights = {sum(k) for k in clean}
        if len(weights) > 1:
            raise ValueError("mixed weights in SymM")
        if weight is None:
            weight = weights.pop() if weights else 0
        elif weights and weights != {weight}:
            raise ValueError("coefficient keys do not match the stated weight")
        self.coeffs = clean
        self.weight = weight

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymM):
            return NotImplemented
        return self.coeffs == other.coeffs and (
            self.weight == other.weight or not self.coeffs
        )

    def __getitem__(self, lam: Partition) -> Fraction:
        return self.coeffs.get(tuple(lam), Fraction(0))

    def items(self):
        return self.coeffs.items()

    def to_mpoly(self, m: int) -> MPoly:
        out: dict[Exponent, Fraction] = {}
        for lam, c in self.coeffs.items():
            for exp in monomial_orbit(lam, m):
                out[exp] = c
        return MPoly._raw(m, out)

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        keys = sorted(self.coeffs, reverse=True)
        return " + ".join(f"{self.coeffs[k]}*M{to_text(k)}" for k in keys)

    def to_json(self) -> list[dict]:
        keys = sorted(self.coeffs, reverse=True)
        return [{"partition": list(k), "coefficient": str(self.coeffs[k])} for k in keys]

    def __repr__(self) -> str:
        return f"SymM({self.to_text()})"


def to_m_basis(f: MPoly) -> SymM:
    """Coordinates of a homogeneous symmetric ``f`` in the M basis.

    Symmetry is checked, not assumed: every monomial of an orbit must carry
    the same coefficient.
    """
    if not f.is_homogeneous():
        raise ValueError("polynomial is not homogeneous")
    if not f.terms:
        return SymM({})
    coeffs: dict[Partition, Fraction] = {}
    for exp, c in f.terms.items():
        lam = tuple(sorted((e for e in exp if e), reverse=True))
        if lam in coeffs:
            continue
        for other in monomial_orbit(lam, f.nvars):
            if f.terms.get(other) != c:
                raise ValueError("polynomial is not symmetric")
        coeffs[lam] = c
    return SymM(coeffs, weight=f.degree())


def power_sum_of_variables(m: int, n: int) -> MPoly:
    """(y_1 + ... + y_m)^n."""
    total = MPoly(m)
    for v in MPoly.variables(m):
        total = total + v
    return total**n


def parse_scalar(text: str) -> Fraction:
    return Fraction(text.strip())
