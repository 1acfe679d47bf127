"""Singularity analysis of F(z) = sqrt(2) / (sqrt(2) - tanh(z sqrt(2))).

The poles of F are

    z_k = (L + (2k+1) pi i) / (2 sqrt(2)),   L = log(3 + 2 sqrt(2)),   k in Z,

all simple with residue 1.  The dominant pair z_0, conj(z_0) gives

    f_n ~ -2 rho^-(n+1) cos((n+1) theta) n!,   rho = |z_0|, theta = arg z_0,

with an error of order |z_1|^-n n!.  Everything here is computed with mpmath
at an explicit binary precision; nothing is cached across precisions.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import mpmath
from mpmath import mpf, mpc

from .peaks import FSequence

__all__ = [
    "DEFAULT_PRECISION",
    "Singularity",
    "AsymptoticModel",
    "SignReport",
    "singularity",
    "pole_defect",
    "verify_pole",
    "residue_at",
    "model",
    "predict",
    "normalized_residual",
    "residual_decay_rate",
    "naive_sign",
    "sign_report",
    "cos_sign_exceptions",
    "first_sign_break",
    "theta_continued_fraction",
    "mpf_to_fraction",
    "convergents",
]

DEFAULT_PRECISION = 256


@dataclass(frozen=True)
class Singularity:
    index: int
    location: mpc
    modulus: mpf
    argument: mpf
    precision: int


@dataclass(frozen=True)
class AsymptoticModel:
    rho: mpf
    theta: mpf
    alpha: mpf
    pole_pairs: tuple[Singularity, ...]
    precision: int

    @property
    def decay_ratio(self) -> mpf:
        """rho * alpha = |z_0| / |z_1|, the per-step decay of the normalized error."""
        with mpmath.workprec(self.precision):
            return self.rho * self.alpha


@dataclass(frozen=True)
class SignReport:
    n: int
    f_sign: str
    naive_sign: str
    # None when |cos((n+1) theta)| is below the near-zero guard
    cos_sign: Optional[str]
    matches_naive: bool
    matches_cos: Optional[bool]

    @property
    def indeterminate(self) -> bool:
        return self.cos_sign is None


def _log_ratio() -> float:
    return math.log(3 + 2 * math.sqrt(2))


def singularity(k: int, precision: int = DEFAULT_PRECISION) -> Singularity:
    with mpmath.workprec(precision):
        s2 = mpmath.sqrt(2)
        big_l = mpmath.log(3 + 2 * s2)
        loc = mpc(big_l, (2 * k + 1) * mpmath.pi) / (2 * s2)
        return Singularity(k, loc, abs(loc), mpmath.arg(loc), precision)


def pole_defect(s: Singularity) -> mpf:
    """|tanh(z sqrt 2) - sqrt 2| at the pole location."""
    with mpmath.workprec(s.precision):
        s2 = mpmath.sqrt(2)
        return abs(mpmath.tanh(s.location * s2) - s2)


def verify_pole(s: Singularity, tolerance) -> bool:
    with mpmath.workprec(s.precision):
        return pole_defect(s) <= mpf(tolerance)


def residue_at(s: Singularity) -> mpc:
    """Residue sqrt(2) / D'(z) of F at a pole, where D(z) = sqrt(2) - tanh(z sqrt(2))."""
    guard = mpf(2) ** (-(s.precision // 2))
    if not verify_pole(s, guard):
        raise ValueError(f"location for k = {s.index} is not a pole of F")
    with mpmath.workprec(s.precision):
        s2 = mpmath.sqrt(2)
        th = mpmath.tanh(s.location * s2)
        d_prime = -s2 * (1 - th * th)
        return s2 / d_prime


def model(pole_pairs: int = 1, precision: int = DEFAULT_PRECISION) -> AsymptoticModel:
    if pole_pairs < 1:
        raise ValueError(f"need at least one pole pair, got {pole_pairs}")
    poles = tuple(singularity(k, precision) for k in range(pole_pairs))
    z0 = poles[0]
    z1 = poles[1] if pole_pairs > 1 else singularity(1, precision)
    with mpmath.workprec(precision):
        alpha = 1 / z1.modulus
    return AsymptoticModel(z0.modulus, z0.argument, alpha, poles, precision)


def predict(m: AsymptoticModel, n: int) -> mpf:
    """Pole-pair truncation -n! * sum_j 2 Re(z_j^-(n+1)) of f_n."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    with mpmath.workprec(m.precision):
        total = mpf(0)
        for s in m.pole_pairs:
            total += 2 * mpmath.re(s.location ** (-(n + 1)))
        return -mpmath.factorial(n) * total


def _guard_bits(n: int) -> int:
    # r_n shrinks like (rho/|z_1|)^n, about 1.41 bits per step
    z0 = complex(_log_ratio(), math.pi)
    z1 = complex(_log_ratio(), 3 * math.pi)
    return math.ceil(n * math.log2(abs(z1) / abs(z0))) + 32


def normalized_residual(m: AsymptoticModel, f: FSequence, n: int) -> mpf:
    """r_n = f_n rho^(n+1) / n! + 2 cos((n+1) theta).

    The result is accurate relative to its own size: rho and theta are
    re-derived with enough extra bits to cover the cancellation between the
    two terms, which grows linearly in n.
    """
    if n > f.order:
        raise ValueError(f"n = {n} exceeds the sequence order {f.order}")
    prec = m.precision + _guard_bits(n)
    z0 = singularity(0, prec)
    with mpmath.workprec(prec):
        scaled = mpf(f[n]) * z0.modulus ** (n + 1) / mpmath.factorial(n)
        r = scaled + 2 * mpmath.cos((n + 1) * z0.argument)
    with mpmath.workprec(m.precision):
        return +r


def residual_decay_rate(m: AsymptoticModel, f: FSequence, lo: int, hi: int) -> float:
    """Per-step geometric decay of |r_n| over lo..hi, by least squares on log|r_n|.

    Pointwise ratios are useless here because the next pole pair contributes an
    oscillating cosine factor; the fitted slope averages it out.
    """
    if hi - lo < 2:
        raise ValueError("need at least three points to fit a decay rate")
    xs, ys = [], []
    for n in range(lo, hi + 1):
        r = normalized_residual(m, f, n)
        if r:
            xs.append(n)
            ys.append(float(mpmath.log(abs(r))))
    slope, _ = statistics.linear_regression(xs, ys)
    return math.exp(slope)


def naive_sign(n: int) -> str:
    """Sign suggested by the apparent period-6 pattern (valid for n >= 1 up to 41)."""
    return "+" if n % 6 in (1, 2, 3) else "-"


def _sign(x) -> str:
    if x > 0:
        return "+"
    if x < 0:
        return "-"
    return "0"


def sign_report(f: FSequence, m: AsymptoticModel) -> list[SignReport]:
    if f.order < 1:
        raise ValueError("sign report needs order >= 1")
    out = []
    with mpmath.workprec(m.precision):
        cutoff = mpf(2) ** (-(m.precision // 2))
        for n in range(1, f.order + 1):
            fs = _sign(f[n])
            ns = naive_sign(n)
            c = -mpmath.cos((n + 1) * m.theta)
            cs = None if abs(c) < cutoff else _sign(c)
            out.append(SignReport(
                n=n,
                f_sign=fs,
                naive_sign=ns,
                cos_sign=cs,
                matches_naive=fs == ns,
                matches_cos=None if cs is None else fs == cs,
            ))
    return out


def cos_sign_exceptions(reports: Sequence[SignReport]) -> list[int]:
    return [r.n for r in reports if r.matches_cos is False]


def first_sign_break(f: FSequence) -> Optional[int]:
    """Smallest n >= 1 where sign(f_n) contradicts the period-6 pattern, else None."""
    for n in range(1, f.order + 1):
        if _sign(f[n]) != naive_sign(n):
            return n
    return None


def mpf_to_fraction(x: mpf) -> Fraction:
    man, exp = x.man_exp
    return Fraction(int(man)) * Fraction(2) ** int(exp)


def theta_continued_fraction(m: AsymptoticModel, terms: int) -> list[int]:
    """Leading partial quotients of theta/pi.

    theta/pi is only known to within a few ulps, so the expansion is carried
    out exactly on both ends of that interval and stops as soon as the two
    ends disagree on the next quotient.
    """
    if terms < 1:
        raise ValueError(f"terms must be >= 1, got {terms}")
    with mpmath.workprec(m.precision):
        x = mpf_to_fraction(m.theta / mpmath.pi)
    eps = Fraction(1, 2 ** (m.precision - 8))
    lo, hi = x - eps, x + eps
    out: list[int] = []
    while len(out) < terms:
        a_lo, a_hi = math.floor(lo), math.floor(hi)
        if a_lo != a_hi:
            break
        out.append(a_lo)
        lo, hi = lo - a_lo, hi - a_lo
        if lo <= 0:
            break
        lo, hi = 1 / hi, 1 / lo
    return out


def convergents(quotients: Sequence[int]) -> list[Fraction]:
    out = []
    p0, q0, p1, q1 = 0, 1, 1, 0
    for a in quotients:
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append(Fraction(p1, q1))
    return out
