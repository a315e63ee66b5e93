"""Zonal polynomial coefficients c[kappa, lam] and the polynomials built from them.

The engine stores each row kappa as ratios c[kappa, mu] / c[kappa, kappa],
which the move recurrence determines without knowing the diagonal.  Diagonals
come from the column-sum identity sum_kappa c[kappa, lam] = multinomial(lam),
processed in descending lexicographic order.  Entries whose partitions are not
comparable in dominance order are zero and are never computed; the
unpruned reference path ``recurrence_table`` exists to check that claim.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exactpoly import MPoly, SymM, monomial_orbit, power_sum_of_variables
from .partitions import (
    Partition,
    between,
    dominates,
    dominating,
    lex_compare,
    make_partition,
    move_weights,
    mu_moves,
    multinomial,
    partitions_of,
    rho,
    to_text,
)


def is_zero_coefficient(kappa: Sequence[int], lam: Sequence[int]) -> bool:
    """True iff c[kappa, lam] vanishes, for lam <= kappa in lex order.

    The coefficient is zero exactly when some prefix sum of kappa - lam
    (zero-padded) is negative, i.e. when kappa does not dominate lam.
    """
    if lex_compare(lam, kappa) > 0:
        raise ValueError("out of triangle")
    return not dominates(kappa, lam)


def _ratio_row(
    top: Partition, floor: Partition, known: Mapping[Partition, Fraction] | None = None
) -> dict[Partition, Fraction]:
    """Ratios c[top, nu] / c[top, top] for every nu between ``floor`` and ``top``."""
    row: dict[Partition, Fraction] = dict(known) if known else {top: Fraction(1)}
    rho_top = rho(top)
    for nu in between(floor, top):
        if nu in row:
            continue
        diff = rho_top - rho(nu)
        if diff == 0:
            # unreachable for dominance-comparable nu != top; kept as a guard
            row[nu] = Fraction(0)
            continue
        total = 0
        for mu, w in move_weights(nu).items():
            c = row.get(mu)
            if c:
                total += w * c
        row[nu] = Fraction(total) / diff
    return row


class ZonalCoefficients:
    """Lazy, memoized coefficient engine shared across weights.

    ``coefficient(kappa, lam)`` only touches the dominance interval it needs;
    ``table(n)`` forces a whole weight class.
    """

    def __init__(self) -> None:
        self._rows: dict[Partition, dict[Partition, Fraction]] = {}
        self._floors: dict[Partition, list[Partition]] = {}
        self._diag: dict[Partition, Fraction] = {}

    def _ensure_row(self, top: Partition, floor: Partition) -> dict[Partition, Fraction]:
        floors = self._floors.setdefault(top, [])
        if not any(dominates(floor, f) for f in floors):
            self._rows[top] = _ratio_row(top, floor, self._rows.get(top))
            floors[:] = [f for f in floors if not dominates(f, floor)] + [floor]
        return self._rows[top]

    def ratio(self, kappa: Partition, lam: Partition) -> Fraction:
        """c[kappa, lam] / c[kappa, kappa]."""
        if not dominates(kappa, lam):
            return Fraction(0)
        return self._ensure_row(kappa, lam)[lam]

    def diagonal(self, kappa: Partition) -> Fraction:
        kappa = make_partition(kappa)
        if kappa in self._diag:
            return self._diag[kappa]
        above = dominating(kappa)
        for top in above:
            self._ensure_row(top, kappa)
        for i, u in enumerate(above):
            if u in self._diag:
                continue
            total = Fraction(multinomial(u))
            for v in above[:i]:
                r = self._rows[v].get(u)
                if r:
                    total -= self._diag[v] * r
            self._diag[u] = total
        return self._diag[kappa]

    def coefficient(self, kappa: Sequence[int], lam: Sequence[int]) -> Fraction:
        kappa, lam = make_partition(kappa), make_partition(lam)
        if sum(kappa) != sum(lam):
            raise ValueError("weight mismatch")
        if lex_compare(lam, kappa) > 0 or not dominates(kappa, lam):
            return Fraction(0)
        return self.diagonal(kappa) * self.ratio(kappa, lam)

    def row(self, kappa: Sequence[int]) -> dict[Partition, Fraction]:
        """All nonzero c[kappa, lam], keyed by lam."""
        kappa = make_partition(kappa)
        if not kappa:
            return {(): Fraction(1)}
        d = self.diagonal(kappa)
        ratios = self._ensure_row(kappa, (1,) * sum(kappa))
        return {lam: d * r for lam, r in ratios.items() if r}

    def table(self, n: int, workers: int = 1) -> CoeffTable:
        if n < 1:
            raise ValueError("n must be positive")
        parts = partitions_of(n)
        floor = (1,) * n
        todo = [p for p in parts if not any(dominates(floor, f) for f in self._floors.get(p, []))]
        if workers > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                rows = pool.map(_ratio_row, todo, [floor] * len(todo), chunksize=4)
                for top, row in zip(todo, rows):
                    self._rows[top] = row
                    self._floors[top] = [floor]
        else:
            for top in todo:
                self._ensure_row(top, floor)
        self.diagonal(floor)
        matrix = []
        for kappa in parts:
            d = self._diag[kappa]
            ratios = self._rows[kappa]
            matrix.append([d * ratios.get(lam, 0) for lam in parts])
        return CoeffTable(n, parts, matrix)


_ENGINE = ZonalCoefficients()


def default_engine() -> ZonalCoefficients:
    return _ENGINE


@dataclass
class CoeffTable:
    """Full coefficient matrix for one weight, rows and columns in descending lex order."""

    n: int
    partitions: list[Partition]
    matrix: list[list[Fraction]]

    def __getitem__(self, key: tuple[Sequence[int], Sequence[int]]) -> Fraction:
        kappa, lam = key
        index = {p: i for i, p in enumerate(self.partitions)}
        return self.matrix[index[tuple(kappa)]][index[tuple(lam)]]

    def column_sums(self) -> list[Fraction]:
        return [sum(col, Fraction(0)) for col in zip(*self.matrix)]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "partitions": [list(p) for p in self.partitions],
            "coefficients": [[str(c) for c in row] for row in self.matrix],
        }

    def to_text(self) -> str:
        labels = [to_text(p) for p in self.partitions]
        cells = [[str(c) for c in row] for row in self.matrix]
        head_w = max(len("k\\l"), *(len(s) for s in labels))
        widths = [
            max(len(labels[j]), *(len(cells[i][j]) for i in range(len(cells))))
            for j in range(len(labels))
        ]
        lines = [
            "k\\l".ljust(head_w) + " | " + "  ".join(l.rjust(w) for l, w in zip(labels, widths))
        ]
        lines.append("-" * len(lines[0]))
        for label, row in zip(labels, cells):
            lines.append(label.ljust(head_w) + " | " + "  ".join(c.rjust(w) for c, w in zip(row, widths)))
        return "\n".join(lines)


def coefficient(kappa: Sequence[int], lam: Sequence[int], engine: ZonalCoefficients | None = None) -> Fraction:
    return (engine or _ENGINE).coefficient(kappa, lam)


def coefficient_table(n: int, workers: int = 1, engine: ZonalCoefficients | None = None) -> CoeffTable:
    return (engine or _ENGINE).table(n, workers=workers)


def recurrence_table(n: int) -> CoeffTable:
    """Reference table from the bare recurrence, with no zero pruning.

    Every lex-smaller lam is computed from the per-(r, s, t) move list, so the
    zero pattern that comes out is a genuine output rather than an input.
    """
    parts = partitions_of(n)
    index = {p: i for i, p in enumerate(parts)}
    size = len(parts)
    matrix = [[Fraction(0)] * size for _ in range(size)]
    for i, kappa in enumerate(parts):
        matrix[i][i] = multinomial(kappa) - sum((matrix[h][i] for h in range(i)), Fraction(0))
        rho_k = rho(kappa)
        for j in range(i + 1, size):
            lam = parts[j]
            total = sum(
                (mv.numerator * matrix[i][index[mv.result]] for mv in mu_moves(lam, kappa)),
                Fraction(0),
            )
            diff = rho_k - rho(lam)
            if diff == 0:
                if total:
                    raise ArithmeticError(f"nonzero sum over zero denominator at {kappa}, {lam}")
                continue
            matrix[i][j] = total / diff
    return CoeffTable(n, parts, matrix)


def zonal_polynomial_m(kappa: Sequence[int], engine: ZonalCoefficients | None = None) -> SymM:
    kappa = make_partition(kappa)
    return SymM((engine or _ENGINE).row(kappa), weight=sum(kappa))


def zonal_polynomial(kappa: Sequence[int], m: int, engine: ZonalCoefficients | None = None) -> MPoly:
    """C_kappa(y_1..y_m) as an explicit polynomial; zero if kappa has more than m parts."""
    kappa = make_partition(kappa)
    if m < 1:
        raise ValueError("m must be at least 1")
    if len(kappa) > m:
        return MPoly(m)
    return zonal_polynomial_m(kappa, engine).to_mpoly(m)


def z_normalized(kappa: Sequence[int], m: int, engine: ZonalCoefficients | None = None) -> MPoly:
    """Z_kappa = C_kappa / c[kappa, kappa], monic in the M_kappa coordinate."""
    kappa = make_partition(kappa)
    if len(kappa) > m:
        raise ValueError(f"{to_text(kappa)} has more than {m} parts")
    engine = engine or _ENGINE
    return zonal_polynomial(kappa, m, engine).scale(1 / engine.diagonal(kappa))


def express_in_zonal_basis(
    f: SymM, basis: str = "C", engine: ZonalCoefficients | None = None
) -> dict[Partition, Fraction]:
    """Coordinates of ``f`` in the C or Z zonal basis.

    Solves f[lam] = sum_{kappa >= lam} a[kappa] c[kappa, lam] from the top
    partition down; the system is triangular with a nonzero diagonal.
    """
    if basis not in ("C", "Z"):
        raise ValueError("basis must be 'C' or 'Z'")
    engine = engine or _ENGINE
    if not f.coeffs:
        return {}
    n = f.weight
    parts = partitions_of(n)
    a: dict[Partition, Fraction] = {}
    for lam in parts:
        residual = f[lam] - sum(
            (a_k * engine.coefficient(k, lam) for k, a_k in a.items()), Fraction(0)
        )
        if residual:
            a[lam] = residual / engine.diagonal(lam)
    if basis == "Z":
        a = {k: v * engine.diagonal(k) for k, v in a.items()}
    return a


def m_value(lam: Sequence[int], point: Sequence) -> object:
    """M_lam evaluated at ``point`` by direct orbit summation."""
    total = 0
    for exp in monomial_orbit(lam, len(point)):
        term = 1
        for x, e in zip(point, exp):
            if e:
                term = term * x**e
        total = total + term
    return total


def zonal_value(kappa: Sequence[int], point: Sequence, engine: ZonalCoefficients | None = None):
    """C_kappa evaluated at the eigenvalues ``point`` without building the polynomial."""
    kappa = make_partition(kappa)
    if len(kappa) > len(point):
        return 0
    total = 0
    for lam, c in (engine or _ENGINE).row(kappa).items():
        if len(lam) <= len(point):
            total = total + c * m_value(lam, point)
    return total


def zero_pattern(n: int) -> list[list[bool]]:
    """True where c[kappa, lam] = 0, rows kappa and columns lam in descending lex order."""
    parts = partitions_of(n)
    return [
        [j < i or is_zero_coefficient(kappa, lam) for j, lam in enumerate(parts)]
        for i, kappa in enumerate(parts)
    ]


def _report(suite: str, range_: dict, checked: int, failures: list) -> dict:
    return {"suite": suite, "range": range_, "checked": checked, "failures": failures}


def verify_trace(n_max: int, m_max: int, engine: ZonalCoefficients | None = None) -> dict:
    """sum over lam |- n of C_lam equals (y_1 + ... + y_m)^n exactly."""
    failures, checked = [], 0
    for n in range(1, n_max + 1):
        parts = partitions_of(n)
        for m in range(1, m_max + 1):
            total = MPoly(m)
            for lam in parts:
                total = total + zonal_polynomial(lam, m, engine)
            checked += 1
            if total != power_sum_of_variables(m, n):
                failures.append({"n": n, "m": m})
    return _report("trace", {"n_max": n_max, "m_max": m_max}, checked, failures)


def verify_zeros(n_max: int) -> dict:
    """Zero set of the unpruned recurrence against the prefix-sum predicate."""
    failures, checked = [], 0
    for n in range(1, n_max + 1):
        tab = recurrence_table(n)
        for i, kappa in enumerate(tab.partitions):
            for j in range(i, len(tab.partitions)):
                lam = tab.partitions[j]
                checked += 1
                if (tab.matrix[i][j] == 0) != is_zero_coefficient(kappa, lam):
                    failures.append({"kappa": list(kappa), "lambda": list(lam)})
    return _report("zeros", {"n_max": n_max}, checked, failures)


