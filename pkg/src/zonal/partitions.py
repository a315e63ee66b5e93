"""Integer partitions: enumeration, lexicographic order, and the move generator
used by the coefficient recurrence.

A partition is a plain tuple of positive integers in weakly decreasing order,
e.g. ``(3, 1)``.  The empty tuple is the unique partition of 0.  Comparisons
pad the shorter partition with zeros.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import accumulate
from math import comb, factorial
from typing import Iterable, Iterator, NamedTuple, Sequence

Partition = tuple[int, ...]


class MuMove(NamedTuple):
    """One (r, s, t) transfer applied to a partition.

    ``result`` is the sorted partition obtained by adding ``t`` to part ``r``
    and removing ``t`` from part ``s`` (0-based indices, ``r < s``).
    """

    result: Partition
    numerator: int
    r: int
    s: int
    t: int


def make_partition(parts: Iterable[int]) -> Partition:
    """Validate ``parts`` and return it as a partition tuple."""
    parts = tuple(int(p) for p in parts)
    if any(p < 1 for p in parts):
        raise ValueError(f"partition parts must be positive: {parts}")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"partition parts must be weakly decreasing: {parts}")
    return parts


def weight(lam: Sequence[int]) -> int:
    return sum(lam)


def partitions_of(n: int) -> list[Partition]:
    """All partitions of ``n`` in strictly descending lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(_partitions(n, n))


def _partitions(n: int, largest: int) -> Iterator[Partition]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def lex_compare(kappa: Sequence[int], lam: Sequence[int]) -> int:
    """Return 1, 0 or -1 as ``kappa`` is greater, equal or less than ``lam``.

    Both must be partitions of the same integer; the first differing part
    decides.
    """
    if sum(kappa) != sum(lam):
        raise ValueError("incomparable weights")
    for a, b in zip(_pad(kappa, len(lam)), _pad(lam, len(kappa))):
        if a != b:
            return 1 if a > b else -1
    return 0


def _pad(lam: Sequence[int], length: int) -> tuple[int, ...]:
    return tuple(lam) + (0,) * max(0, length - len(lam))


def dominates(kappa: Sequence[int], lam: Sequence[int]) -> bool:
    """True iff every prefix sum of ``kappa`` is at least that of ``lam``."""
    k = max(len(kappa), len(lam))
    return all(
        a >= b
        for a, b in zip(accumulate(_pad(kappa, k)), accumulate(_pad(lam, k)))
    )


def rho(lam: Sequence[int]) -> int:
    """sum_i lam_i * (lam_i - i) with 1-based i."""
    return sum(p * (p - i) for i, p in enumerate(lam, start=1))


def multinomial(lam: Sequence[int]) -> int:
    """n! / (lam_1! ... lam_k!)."""
    out = factorial(sum(lam))
    for p in lam:
        out //= factorial(p)
    return out


def mu_moves(lam: Sequence[int], kappa: Sequence[int]) -> list[MuMove]:
    """Every (r, s, t) move on ``lam`` whose sorted result mu has lam < mu <= kappa.

    Moves are listed per index triple: two triples that happen to produce the
    same mu are both returned, and both contribute to the recurrence.
    """
    lam = tuple(lam)
    moves = []
    for r in range(len(lam)):
        for s in range(r + 1, len(lam)):
            for t in range(1, lam[s] + 1):
                parts = list(lam)
                parts[r] += t
                parts[s] -= t
                mu = tuple(sorted((p for p in parts if p), reverse=True))
                if lex_compare(mu, lam) > 0 and lex_compare(mu, kappa) <= 0:
                    moves.append(MuMove(mu, (lam[r] + t) - (lam[s] - t), r, s, t))
    return moves


@lru_cache(maxsize=None)
def move_weights(lam: Partition) -> dict[Partition, int]:
    """Aggregate ``mu_moves`` numerators by resulting partition, with no upper bound.

    Works on distinct part values: a pair of values (p, q) occurs
    ``mult[p] * mult[q]`` times (or ``C(mult[p], 2)`` when p == q), and every
    occurrence yields the same mu and numerator.  Callers must not mutate the
    returned dict.
    """
    mult = Counter(lam)
    values = sorted(mult, reverse=True)
    out: dict[Partition, int] = {}
    for i, p in enumerate(values):
        for q in values[i:]:
            pairs = comb(mult[p], 2) if p == q else mult[p] * mult[q]
            if not pairs:
                continue
            base = mult.copy()
            base[p] -= 1
            base[q] -= 1
            for t in range(1, q + 1):
                new = base.copy()
                new[p + t] += 1
                if q - t:
                    new[q - t] += 1
                mu = tuple(sorted(new.elements(), reverse=True))
                out[mu] = out.get(mu, 0) + pairs * (p - q + 2 * t)
    return out


def between(lower: Sequence[int], upper: Sequence[int]) -> list[Partition]:
    """Partitions nu with lower <= nu <= upper in dominance order.

    Returned in descending lexicographic order; empty if ``upper`` does not
    dominate ``lower``.
    """
    n = sum(upper)
    if sum(lower) != n:
        raise ValueError("incomparable weights")
    lo = list(accumulate(lower))
    hi = list(accumulate(upper))
    out: list[Partition] = []

    def bound(prefix: list[int], i: int) -> int:
        return prefix[i] if i < len(prefix) else n

    def walk(parts: list[int], total: int, largest: int) -> None:
        if total == n:
            out.append(tuple(parts))
            return
        i = len(parts)
        low, high = bound(lo, i), bound(hi, i)
        for p in range(min(largest, n - total, high - total), 0, -1):
            if total + p < low:
                break
            parts.append(p)
            walk(parts, total + p, p)
            parts.pop()

    walk([], 0, n)
    return out


@lru_cache(maxsize=4096)
def dominating(lam: Partition) -> tuple[Partition, ...]:
    """Partitions that dominate ``lam``, ``lam`` itself included, descending lex."""
    return tuple(between(lam, (sum(lam),) if lam else ()))


def to_text(lam: Sequence[int]) -> str:
    return "(" + ",".join(str(p) for p in lam) + ")"


def parse(text: str) -> Partition:
    """Parse ``"3,1"``, ``"(3,1)"`` or ``"[3,1]"`` into a validated partition."""
    body = text.strip().strip("()[]").strip()
    if not body:
        return ()
    return make_partition(int(tok) for tok in body.split(","))
