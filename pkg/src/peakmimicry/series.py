"""Truncated power series with exact rational coefficients.

Coefficients are ordinary ones: ``coeffs[n]`` is ``[z^n]`` of the series, so an
EGF value is recovered as ``n! * coeffs[n]``.  Binary operations truncate to the
smaller order of their operands.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

__all__ = [
    "EgfSeries",
    "add",
    "mul",
    "reciprocal",
    "derivative",
    "tanh_scaled",
    "one",
    "zero",
    "z",
]

Number = Union[int, Fraction]


@dataclass(frozen=True)
class EgfSeries:
    order: int
    coeffs: tuple[Fraction, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if self.order < 0:
            raise ValueError(f"order must be non-negative, got {self.order}")
        if len(self.coeffs) != self.order + 1:
            raise ValueError(
                f"expected {self.order + 1} coefficients, got {len(self.coeffs)}"
            )

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Number], order: int | None = None,
                    label: str = "") -> EgfSeries:
        """Build a series, zero-padding (or truncating) ``coeffs`` to ``order``."""
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            order = max(len(cs) - 1, 0)
        cs = (cs + [Fraction(0)] * (order + 1))[:order + 1]
        return cls(order, tuple(cs), label)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: EgfSeries) -> EgfSeries:
        return add(self, other)

    def __sub__(self, other: EgfSeries) -> EgfSeries:
        return add(self, other.scale(-1))

    def __neg__(self) -> EgfSeries:
        return self.scale(-1)

    def __mul__(self, other: EgfSeries) -> EgfSeries:
        return mul(self, other)

    def scale(self, c: Number) -> EgfSeries:
        c = Fraction(c)
        return EgfSeries(self.order, tuple(c * a for a in self.coeffs), self.label)

    def truncate(self, order: int) -> EgfSeries:
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return EgfSeries(order, self.coeffs[:order + 1], self.label)

    def egf_values(self) -> list[Fraction]:
        """``n! * [z^n]`` for every n up to the order."""
        out = []
        fact = 1
        for n, c in enumerate(self.coeffs):
            if n:
                fact *= n
            out.append(c * fact)
        return out


def one(order: int) -> EgfSeries:
    return EgfSeries.from_coeffs([1], order, "1")


def zero(order: int) -> EgfSeries:
    return EgfSeries.from_coeffs([], order, "0")


def z(order: int) -> EgfSeries:
    return EgfSeries.from_coeffs([0, 1], order, "z")


def add(a: EgfSeries, b: EgfSeries) -> EgfSeries:
    n = min(a.order, b.order)
    return EgfSeries(n, tuple(a.coeffs[i] + b.coeffs[i] for i in range(n + 1)))


def mul(a: EgfSeries, b: EgfSeries) -> EgfSeries:
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    out = []
    for k in range(n + 1):
        s = Fraction(0)
        for i in range(k + 1):
            if ac[i] and bc[k - i]:
                s += ac[i] * bc[k - i]
        out.append(s)
    return EgfSeries(n, tuple(out))


def reciprocal(a: EgfSeries) -> EgfSeries:
    """Multiplicative inverse of ``a`` up to its order.

    Uses b_0 = 1/a_0 and b_n = -(1/a_0) * sum_{k=1..n} a_k b_{n-k}.
    """
    a0 = a.coeffs[0]
    if a0 == 0:
        raise ValueError("series with zero constant term has no reciprocal")
    inv = 1 / a0
    b = [inv]
    for n in range(1, a.order + 1):
        s = Fraction(0)
        for k in range(1, n + 1):
            if a.coeffs[k]:
                s += a.coeffs[k] * b[n - k]
        b.append(-inv * s)
    return EgfSeries(a.order, tuple(b))


def derivative(a: EgfSeries) -> EgfSeries:
    """Formal derivative; the result has order ``a.order - 1`` (0 for constants)."""
    if a.order == 0:
        return zero(0)
    return EgfSeries(a.order - 1,
                     tuple(n * a.coeffs[n] for n in range(1, a.order + 1)))


def tanh_scaled(u: Number, order: int) -> EgfSeries:
    """Series of ``tanh(z*sqrt(u)) / sqrt(u)``, which has rational coefficients.

    Solves y' = 1 - u*y**2 with y(0) = 0 term by term:
    c_1 = 1 and (n+1) c_{n+1} = -u * sum_{i+j=n} c_i c_j for n >= 1.
    """
    u = Fraction(u)
    if u <= 0:
        raise ValueError(f"scale u must be positive, got {u}")
    if order < 0:
        raise ValueError(f"order must be non-negative, got {order}")
    c = [Fraction(0)] * (order + 1)
    if order >= 1:
        c[1] = Fraction(1)
    for n in range(1, order):
        if n % 2 == 1:
            # even-indexed coefficients vanish; c_{n+1} is even-indexed here
            continue
        # only odd i, j contribute, and i + j = n is even
        s = Fraction(0)
        for i in range(1, n, 2):
            s += c[i] * c[n - i]
        c[n + 1] = -u * s / (n + 1)
    return EgfSeries(order, tuple(c), f"tanh(z*sqrt({u}))/sqrt({u})")
