"""Self-verification checks run by ``peakmimicry verify``.

Each check returns ``(ok, detail)``.  The quick level is a smoke test; the
full level covers every acceptance criterion of the project.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

import mpmath

from . import asymptotics as asy
from . import peaks
from . import report

GOLDEN_F = (1, 1, 2, 2, -8, -56, -112, 848, 9088, 25216, -310528, -4334848, -14701568)
GOLDEN_F42 = 356077960394850110410690594606123271850033152

CheckResult = tuple[bool, str]


@dataclass(frozen=True)
class Check:
    name: str
    func: Callable[[], CheckResult]


def check_enum_vs_rec(upto: int) -> CheckResult:
    f = peaks.f_sequence(upto)
    for n in range(1, upto + 1):
        e = peaks.peak_polynomial_enum(n, bound=max(upto, peaks.DEFAULT_ENUM_BOUND))
        r = peaks.peak_polynomial_rec(n)
        if e != r:
            return False, f"n={n}: enumeration {e.counts} != recurrence {r.counts}"
        if peaks.evaluate_polynomial(e, -1) != f[n]:
            return False, f"n={n}: P_n(-1) != f_n = {f[n]}"
    return True, f"1 <= n <= {upto}"


def check_f_list() -> CheckResult:
    got = peaks.f_sequence(12).values
    return got == GOLDEN_F, f"f_0..f_12 = {list(got)}"


def check_f42() -> CheckResult:
    f = peaks.f_sequence(42)
    brk = asy.first_sign_break(f)
    none41 = asy.first_sign_break(peaks.f_sequence(41))
    ok = f[42] == GOLDEN_F42 and brk == 42 and none41 is None
    return ok, f"f_42 = {f[42]}, first break {brk}, break within 41: {none41}"


def check_poles(ks, precision: int = 256, tol: str = "1e-30") -> CheckResult:
    with mpmath.workprec(precision):
        tol_v = mpmath.mpf(tol)
        worst_defect = worst_res = mpmath.mpf(0)
        for k in ks:
            s = asy.singularity(k, precision)
            worst_defect = max(worst_defect, asy.pole_defect(s))
            worst_res = max(worst_res, abs(asy.residue_at(s) - 1))
        ok = worst_defect <= tol_v and worst_res <= tol_v
        return ok, (f"k in {list(ks)}: max defect {mpmath.nstr(worst_defect, 3)}, "
                    f"max |res-1| {mpmath.nstr(worst_res, 3)}")


def check_constants() -> CheckResult:
    m = asy.model(1, 256)
    lo = asy.model(1, 128)
    with mpmath.workprec(256):
        rho4 = mpmath.nstr(m.rho, 4)
        th4 = mpmath.nstr(m.theta / (mpmath.pi / 3), 4)
        d_rho = abs(m.rho - lo.rho) / m.rho
        d_th = abs(m.theta - lo.theta) / m.theta
        bound = mpmath.mpf(2) ** -120
        ok = rho4 == "1.274" and th4 == "1.012" and d_rho < bound and d_th < bound
        return ok, (f"rho ~ {rho4}, theta/(pi/3) ~ {th4}, "
                    f"rel drift {mpmath.nstr(d_rho, 3)}, {mpmath.nstr(d_th, 3)}")


def check_error_law(lo: int = 20, hi: int = 200) -> CheckResult:
    m = asy.model(1, 256)
    f = peaks.f_sequence(hi)
    with mpmath.workprec(256):
        q = m.decay_ratio
        r_lo = abs(asy.normalized_residual(m, f, lo))
        for n in range(lo, hi + 1):
            r = abs(asy.normalized_residual(m, f, n))
            bound = 10 * r_lo * q ** (n - lo)
            if r > bound:
                return False, f"n={n}: |r_n| = {mpmath.nstr(r, 3)} > {mpmath.nstr(bound, 3)}"
        r100 = abs(asy.normalized_residual(m, f, 100))
        if r100 > mpmath.mpf("1e-30"):
            return False, f"|r_100| = {mpmath.nstr(r100, 3)}"
        return True, f"{lo} <= n <= {hi}, |r_100| = {mpmath.nstr(r100, 3)}"


def check_sign_agreement(upto: int = 300) -> CheckResult:
    reports = asy.sign_report(peaks.f_sequence(upto), asy.model(1, 256))
    bad = asy.cos_sign_exceptions(reports)
    indet = sum(r.indeterminate for r in reports)
    return not bad, f"1 <= n <= {upto}: exceptions {bad or 'none'}, indeterminate {indet}"


def check_generalized_t() -> CheckResult:
    zero = peaks.evaluate_gf_at_t(0, 12)
    for n in range(1, 13):
        if zero[n] != 2 ** (n - 1):
            return False, f"P_{n}(0) = {zero[n]}"
    polys = [peaks.peak_polynomial_enum(n) for n in range(1, 10)]
    for t in (Fraction(0), Fraction(-2), Fraction(1, 2)):
        gf = peaks.evaluate_gf_at_t(t, 9)
        for p in polys:
            if gf[p.n] != peaks.evaluate_polynomial(p, t):
                return False, f"t={t}, n={p.n}: series and enumeration disagree"
    return True, "t in {0, -2, 1/2}, n <= 9; P_n(0) = 2^(n-1) for n <= 12"


def check_determinism() -> CheckResult:
    cfgs = [
        report.RunConfig(order=42, output_format=fmt)
        for fmt in report.FORMATS
    ]
    for cfg in cfgs:
        for cmd in ("coeffs", "asymptotics", "signs"):
            a = report.render(report.BUILDERS[cmd](cfg), cfg.output_format)
            b = report.render(report.BUILDERS[cmd](cfg), cfg.output_format)
            if a != b:
                return False, f"{cmd} --format {cfg.output_format} differs between runs"
    return True, "coeffs, asymptotics, signs in all formats"


def checks(level: str) -> list[Check]:
    if level == "quick":
        return [
            Check("enum_vs_rec", lambda: check_enum_vs_rec(7)),
            Check("f_list", check_f_list),
            Check("poles_residues", lambda: check_poles(range(-1, 2))),
        ]
    if level == "full":
        return [
            Check("f_list", check_f_list),
            Check("f42_first_break", check_f42),
            Check("enum_vs_rec", lambda: check_enum_vs_rec(9)),
            Check("constants", check_constants),
            Check("poles_residues", lambda: check_poles(range(0, 3))),
            Check("error_law", check_error_law),
            Check("sign_agreement", check_sign_agreement),
            Check("generalized_t", check_generalized_t),
            Check("determinism", check_determinism),
        ]
    raise ValueError(f"unknown level {level!r}")


def run(level: str) -> Iterator[tuple[str, bool, str, float]]:
    """Yield ``(name, ok, detail, seconds)`` per check; exceptions count as failures."""
    for check in checks(level):
        start = time.perf_counter()
        try:
            ok, detail = check.func()
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        yield check.name, ok, detail, time.perf_counter() - start
