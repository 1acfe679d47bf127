import cmath
import math
from fractions import Fraction

import mpmath
import pytest

from peakmimicry import asymptotics as asy
from peakmimicry.peaks import f_sequence

L = math.log(3 + 2 * math.sqrt(2))


def pole_float(k):
    return complex(L, (2 * k + 1) * math.pi) / (2 * math.sqrt(2))


@pytest.fixture(scope="module")
def m1():
    return asy.model(1, 256)


@pytest.fixture(scope="module")
def f300():
    return f_sequence(300)


def test_singularity_locations():
    s0 = asy.singularity(0)
    assert float(s0.modulus) == pytest.approx(1.274, abs=5e-4)
    assert complex(s0.location) == pytest.approx(pole_float(0), rel=1e-15)
    sm1 = asy.singularity(-1)
    with mpmath.workprec(256):
        assert sm1.location == mpmath.conj(s0.location)
    s1 = asy.singularity(1)
    assert float(s1.modulus) == pytest.approx(abs(pole_float(1)), rel=1e-15)
    assert round(float(s1.modulus), 3) == 3.390


def test_singularity_is_closed_form():
    s = asy.singularity(2, 256)
    with mpmath.workprec(300):
        big_l = mpmath.log(3 + 2 * mpmath.sqrt(2))
        expect = mpmath.mpc(big_l, 5 * mpmath.pi) / (2 * mpmath.sqrt(2))
        assert abs(s.location - expect) < mpmath.mpf(2) ** -250
        assert abs(s.modulus - abs(expect)) < mpmath.mpf(2) ** -250


@pytest.mark.parametrize("k", range(-3, 4))
def test_verify_pole(k):
    assert asy.verify_pole(asy.singularity(k, 256), mpmath.mpf(2) ** -128)


def test_verify_pole_examples():
    assert asy.verify_pole(asy.singularity(0), "1e-30")
    assert asy.verify_pole(asy.singularity(5), "1e-30")
    s = asy.singularity(0)
    with mpmath.workprec(256):
        moved = asy.Singularity(0, s.location + mpmath.mpf("1e-5"), s.modulus,
                                s.argument, 256)
    assert not asy.verify_pole(moved, "1e-30")


def test_residues_are_one():
    with mpmath.workprec(256):
        for k in (0, 1, 2):
            assert abs(asy.residue_at(asy.singularity(k)) - 1) <= mpmath.mpf("1e-30")
        r0 = asy.residue_at(asy.singularity(0))
        rm1 = asy.residue_at(asy.singularity(-1))
        assert abs(rm1 - mpmath.conj(r0)) < mpmath.mpf("1e-70")


def test_residue_against_difference_quotient():
    # independent check: (z - z0) F(z) near z0 in double precision
    z0 = pole_float(0)
    h = 1e-7
    z = z0 + h
    F = math.sqrt(2) / (math.sqrt(2) - cmath.tanh(z * math.sqrt(2)))
    assert h * F == pytest.approx(1, abs=1e-6)


def test_residue_rejects_non_pole():
    s = asy.singularity(0)
    with mpmath.workprec(256):
        moved = asy.Singularity(0, s.location + 1, s.modulus, s.argument, 256)
    with pytest.raises(ValueError):
        asy.residue_at(moved)


def test_model_constants(m1):
    with mpmath.workprec(256):
        assert mpmath.nstr(m1.rho, 4) == "1.274"
        assert mpmath.nstr(m1.theta / (mpmath.pi / 3), 4) == "1.012"
        assert 0 < m1.alpha < 1 / m1.rho
    assert float(m1.alpha) == pytest.approx(1 / abs(pole_float(1)), rel=1e-15)
    assert float(m1.theta) == pytest.approx(math.atan(math.pi / L), rel=1e-15)
    rho_closed = math.sqrt(L * L + math.pi ** 2) / (2 * math.sqrt(2))
    assert float(m1.rho) == pytest.approx(rho_closed, rel=1e-15)


def test_precision_scaling():
    lo, hi = asy.model(1, 128), asy.model(1, 256)
    with mpmath.workprec(256):
        tol = mpmath.mpf(2) ** -120
        assert abs(lo.rho - hi.rho) / hi.rho < tol
        assert abs(lo.theta - hi.theta) / hi.theta < tol


def test_model_rejects_zero_pairs():
    with pytest.raises(ValueError):
        asy.model(0)


def test_predict_examples(f300):
    m = asy.model(1)
    p12 = asy.predict(m, 12)
    assert abs(float(p12) / f300[12] - 1) < 0.01
    assert asy.predict(m, 4) < 0 and f300[4] == -8
    m2 = asy.model(2)
    with mpmath.workprec(256):
        assert abs(asy.predict(m2, 50) - f300[50]) < abs(asy.predict(m, 50) - f300[50])


def test_predict_matches_leading_term_formula(m1):
    with mpmath.workprec(256):
        for n in (0, 7, 33):
            lead = (-2 * m1.rho ** (-(n + 1)) * mpmath.cos((n + 1) * m1.theta)
                    * mpmath.factorial(n))
            assert abs(asy.predict(m1, n) - lead) <= abs(lead) * mpmath.mpf(2) ** -240


def test_refinement_is_monotone(f300):
    with mpmath.workprec(256):
        errs = [abs(asy.predict(asy.model(k), 60) - f300[60]) for k in (1, 2, 3)]
    assert errs[0] >= errs[1] >= errs[2]


def test_normalized_residual_examples(m1, f300):
    with mpmath.workprec(256):
        assert abs(asy.normalized_residual(m1, f300, 100)) <= mpmath.mpf("1e-30")
        r0 = asy.normalized_residual(m1, f300, 0)
        assert abs(r0 - (m1.rho + 2 * mpmath.cos(m1.theta))) < mpmath.mpf(2) ** -240


def test_residual_is_next_pole_pair(m1, f300):
    # r_n is dominated by the k = 1 pair: -2 Re(z_1^-(n+1)) rho^(n+1)
    z1 = asy.singularity(1, 512)
    with mpmath.workprec(512):
        for n in (30, 80, 150):
            r = asy.normalized_residual(m1, f300, n)
            lead = -2 * mpmath.re(z1.location ** (-(n + 1))) * m1.rho ** (n + 1)
            assert abs(r - lead) < abs(m1.rho / 5.6) ** (n + 1) * 10


def test_residual_needs_guard_bits(m1, f300):
    # without extra bits r_200 would be lost in rounding noise (about 1e-75)
    with mpmath.workprec(256):
        r = asy.normalized_residual(m1, f300, 200)
        assert 0 < abs(r) < mpmath.mpf("1e-80")


def test_residual_decay_rate(m1, f300):
    rate = asy.residual_decay_rate(m1, f300, 40, 80)
    q = float(m1.decay_ratio)
    assert 0.5 < rate ** 2 / q ** 2 < 2


def test_error_law(m1, f300):
    with mpmath.workprec(256):
        q = m1.decay_ratio
        r20 = abs(asy.normalized_residual(m1, f300, 20))
        for n in range(20, 201):
            r = abs(asy.normalized_residual(m1, f300, n))
            assert r <= 10 * r20 * q ** (n - 20), n


def test_sign_report_examples(m1, f300):
    reports = asy.sign_report(f300, m1)
    assert [r.n for r in reports] == list(range(1, 301))
    r1, r7 = reports[0], reports[6]
    assert (r1.f_sign, r1.cos_sign) == ("+", "+")
    assert r7.f_sign == "+" and r7.matches_naive
    assert not reports[41].matches_naive
    assert all(r.matches_naive for r in reports[:41])


def test_sign_agreement_with_cosine(m1, f300):
    reports = asy.sign_report(f300, m1)
    assert asy.cos_sign_exceptions(reports) == []
    assert not any(r.indeterminate for r in reports)


def test_naive_density(f300):
    def frac(upto):
        return sum(asy.naive_sign(n) == ("+" if f300[n] > 0 else "-")
                   for n in range(1, upto + 1)) / upto
    assert frac(41) == 1
    assert frac(42) < 1


def test_indeterminate_guard():
    # a tiny working precision puts the guard at 2^-2, catching n with |cos| < 1/4
    f = f_sequence(30)
    m = asy.model(1, 4)
    reports = asy.sign_report(f, m)
    assert any(r.indeterminate and r.matches_cos is None for r in reports)


def test_sign_report_requires_order():
    with pytest.raises(ValueError):
        asy.sign_report(f_sequence(0), asy.model())


def test_first_sign_break():
    assert asy.first_sign_break(f_sequence(60)) == 42
    assert asy.first_sign_break(f_sequence(41)) is None
    assert asy.first_sign_break(f_sequence(1)) is None


def test_theta_continued_fraction(m1):
    cf = asy.theta_continued_fraction(m1, 40)
    assert cf[:2] == [0, 2]
    assert len(cf) == 40
    assert math.floor(math.pi / math.atan(math.pi / L)) == 2
    with mpmath.workprec(256):
        x = asy.mpf_to_fraction(m1.theta / mpmath.pi)
    for c in asy.convergents(cf)[1:]:
        assert abs(x - c) < Fraction(1, c.denominator ** 2)


def test_theta_continued_fraction_stops_at_precision():
    short = asy.theta_continued_fraction(asy.model(1, 64), 500)
    long = asy.theta_continued_fraction(asy.model(1, 256), 500)
    assert 5 < len(short) < len(long) < 500
    assert long[:len(short)] == short
