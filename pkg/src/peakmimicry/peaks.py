"""Peak polynomials and the (-1)-evaluation sequence f_n.

A peak of a permutation ``p`` of ``1..n`` is an *interior* position ``i``
(``1 < i < n``, 1-based) with ``p[i-1] < p[i] > p[i+1]``.  Boundary maxima are
not counted; this convention reproduces the published values of f_n.

Two independent routes produce the peak polynomial P_n(t): brute-force
enumeration of S_n and the recurrence

    p(n, k) = (2k + 2) p(n-1, k) + (n - 2k) p(n-1, k-1).

The exponential generating function of P_n(t) is ``1 / (1 - T_u(z))`` with
``u = 1 - t`` and ``T_u(z) = tanh(z sqrt(u)) / sqrt(u)``; f_n = P_n(-1) is the
case ``u = 2``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .series import reciprocal, tanh_scaled, one

__all__ = [
    "DEFAULT_ENUM_BOUND",
    "PeakPolynomial",
    "FSequence",
    "max_peaks",
    "pk_count",
    "peak_polynomial_enum",
    "peak_polynomial_rec",
    "f_sequence",
    "evaluate_gf_at_t",
    "evaluate_polynomial",
]

DEFAULT_ENUM_BOUND = 10


def max_peaks(n: int) -> int:
    return max((n + 1) // 2 - 1, 0)


@dataclass(frozen=True)
class PeakPolynomial:
    """Counts of permutations of size ``n`` by number of peaks.

    ``counts[k]`` is the number of permutations with exactly ``k`` peaks, for
    ``k = 0 .. max_peaks(n)``.
    """

    n: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if len(self.counts) != max_peaks(self.n) + 1:
            raise ValueError(
                f"P_{self.n} needs {max_peaks(self.n) + 1} counts, got {len(self.counts)}"
            )

    def __call__(self, t) -> Fraction:
        return evaluate_polynomial(self, t)


@dataclass(frozen=True)
class FSequence:
    """Exact values f_0 .. f_order of f_n = P_n(-1)."""

    order: int
    values: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


def _check_permutation(perm: Sequence[int]) -> None:
    n = len(perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of 1..{n}: {list(perm)!r}")


def _peaks(p: Sequence[int]) -> int:
    return sum(1 for i in range(1, len(p) - 1) if p[i - 1] < p[i] > p[i + 1])


def pk_count(perm: Sequence[int]) -> int:
    """Number of interior peaks of ``perm``, a permutation of ``1..n``.

    >>> pk_count([1, 3, 2])
    1
    >>> pk_count([2, 4, 1, 5, 3])
    2
    """
    _check_permutation(perm)
    return _peaks(perm)


def peak_polynomial_enum(n: int, bound: int = DEFAULT_ENUM_BOUND) -> PeakPolynomial:
    """P_n(t) by iterating S_n in lexicographic order."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > bound:
        raise ValueError(f"n = {n} exceeds the enumeration bound {bound}")
    counts = [0] * (max_peaks(n) + 1)
    for p in itertools.permutations(range(1, n + 1)):
        counts[_peaks(p)] += 1
    return PeakPolynomial(n, tuple(counts))


@lru_cache(maxsize=None)
def _rec_rows(n: int) -> tuple[int, ...]:
    if n == 1:
        return (1,)
    prev = _rec_rows(n - 1)
    row = []
    for k in range(max_peaks(n) + 1):
        same = prev[k] if k < len(prev) else 0
        below = prev[k - 1] if 0 <= k - 1 < len(prev) else 0
        row.append((2 * k + 2) * same + (n - 2 * k) * below)
    return tuple(row)


def peak_polynomial_rec(n: int) -> PeakPolynomial:
    """P_n(t) from the peak recurrence (no enumeration)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    # fill the cache bottom-up so deep n does not hit the recursion limit
    for m in range(1, n + 1):
        _rec_rows(m)
    return PeakPolynomial(n, _rec_rows(n))


def evaluate_polynomial(p: PeakPolynomial, t) -> Fraction:
    t = Fraction(t)
    acc = Fraction(0)
    for c in reversed(p.counts):
        acc = acc * t + c
    return acc


def evaluate_gf_at_t(t, order: int) -> list[Fraction]:
    """P_0(t) .. P_order(t) read off ``1 / (1 - T_{1-t}(z))``; requires t < 1."""
    t = Fraction(t)
    if t >= 1:
        raise ValueError(f"t must be < 1, got {t}")
    if order < 0:
        raise ValueError(f"order must be non-negative, got {order}")
    gf = reciprocal(one(order) - tanh_scaled(1 - t, order))
    return gf.egf_values()


def f_sequence(order: int) -> FSequence:
    values = []
    for n, v in enumerate(evaluate_gf_at_t(-1, order)):
        if v.denominator != 1:
            raise ArithmeticError(f"n! [z^n] F(z) is not an integer at n = {n}: {v}")
        values.append(v.numerator)
    return FSequence(order, tuple(values))

