from fractions import Fraction

import mpmath
import pytest
from mpmath import mp

from cmperiods.errors import DomainError, PoleError
from cmperiods.numkernel import (Lattice, PrecisionContext, beta, delta_lattice,
                                 delta_q_terms, gamma_rational, hurwitz_zeta,
                                 log_gamma, to_mpf)


def test_context_floors():
    with pytest.raises(DomainError):
        PrecisionContext(10)
    with pytest.raises(DomainError):
        PrecisionContext(120, guard_digits=5)
    assert PrecisionContext(120).working_digits == 140


def test_lattice_validation(ctx):
    with ctx.workprec():
        with pytest.raises(DomainError):
            Lattice(mp.mpc(0, -1), mp.mpf(1))
        with pytest.raises(DomainError):
            Lattice(mp.mpc(0, 1), mp.mpf(0))


def test_log_gamma_exact_points(ctx):
    with ctx.workprec():
        assert abs(log_gamma(Fraction(1), ctx)) < ctx.eps()
        assert abs(log_gamma(Fraction(1, 2), ctx) - mp.log(mp.pi) / 2) < ctx.eps()
        assert abs(log_gamma(mp.mpf(2), ctx)) < ctx.eps()


def test_log_gamma_domain(ctx):
    with pytest.raises(DomainError):
        log_gamma(Fraction(0), ctx)
    with pytest.raises(DomainError):
        log_gamma(Fraction(-3, 2), ctx)


def test_log_gamma_against_mpmath(ctx):
    with mp.workdps(200):
        refs = {x: mpmath.loggamma(to_mpf(x)) for x in
                (Fraction(1, 3), Fraction(1, 7), Fraction(5, 2), Fraction(99, 100), 25)}
    with ctx.workprec():
        for x, ref in refs.items():
            assert abs(log_gamma(x, ctx) - ref) < ctx.eps()


def test_log_gamma_one_seventh_product_oracle():
    # Gamma(1/7) reconstructed from reflection + a doubled-precision
    # Gamma(6/7), fully independent of the Stirling path under test.
    ctx = PrecisionContext(200)
    with mp.workdps(400):
        oracle = mp.log(mp.pi / mp.sin(mp.pi / 7)) - mpmath.loggamma(mp.mpf(6) / 7)
    with ctx.workprec():
        assert abs(log_gamma(Fraction(1, 7), ctx) - oracle) < ctx.eps()


def test_gamma_rational_values(ctx):
    with ctx.workprec():
        assert abs(gamma_rational(1, 2, ctx) - mp.sqrt(mp.pi)) < ctx.eps()
        prod = gamma_rational(1, 4, ctx) * gamma_rational(3, 4, ctx)
        assert abs(prod - mp.pi * mp.sqrt(2)) < ctx.eps(3)
        full = mp.fsum(log_gamma(Fraction(a, 7), ctx) for a in range(1, 7))
        target = 3 * mp.log(2 * mp.pi) - mp.log(7) / 2
        assert abs(full - target) < ctx.eps(3)


def test_gamma_rational_domain(ctx):
    with pytest.raises(DomainError):
        gamma_rational(7, 7, ctx)
    with pytest.raises(DomainError):
        gamma_rational(2, 4, ctx)
    with pytest.raises(DomainError):
        gamma_rational(0, 5, ctx)


def test_beta_values(ctx):
    with ctx.workprec():
        assert abs(beta(mp.mpf(1), mp.mpf(1), ctx) - 1) < ctx.eps()
        assert abs(beta(Fraction(1, 2), Fraction(1, 2), ctx) - mp.pi) < ctx.eps()
        assert abs(beta(Fraction(2, 7), Fraction(3, 7), ctx)
                   - beta(Fraction(3, 7), Fraction(2, 7), ctx)) < ctx.eps()
    with pytest.raises(DomainError):
        beta(mp.mpf(0), mp.mpf(1), ctx)


def test_beta_quadrature_oracle(ctx):
    # Substituting x = u^7 removes the endpoint singularity; by symmetry
    # the integral is twice the half-range piece.
    with mp.workdps(60):
        oracle = 2 * mp.quad(lambda u: 7 * (1 - u ** 7) ** (-mp.mpf(6) / 7),
                             [0, mp.mpf(2) ** (-mp.mpf(1) / 7)])
    with ctx.workprec():
        val = beta(Fraction(1, 7), Fraction(1, 7), ctx)
        assert abs(val - oracle) < mp.mpf(10) ** -30 * val


def test_hurwitz_zeta_values(ctx):
    with ctx.workprec():
        assert abs(hurwitz_zeta(Fraction(1), mp.mpf(2), ctx) - mp.pi ** 2 / 6) < ctx.eps()
        assert abs(hurwitz_zeta(Fraction(1), mp.mpf(0), ctx) + mp.mpf(1) / 2) < ctx.eps()
        assert abs(hurwitz_zeta(Fraction(1, 2), mp.mpf(0), ctx)) < ctx.eps()
        # zeta(-1) = -1/12
        assert abs(hurwitz_zeta(Fraction(1), mp.mpf(-1), ctx) + Fraction(1, 12)) < ctx.eps()


def test_hurwitz_zeta_against_mpmath(ctx):
    points = [(Fraction(1, 3), "2.5"), (Fraction(2, 5), "-1.5"),
              (Fraction(9, 10), "0.25"), (Fraction(1, 7), "3.0")]
    with mp.workdps(200):
        refs = [mp.zeta(mp.mpf(s), to_mpf(x)) for x, s in points]
    with ctx.workprec():
        for (x, s), ref in zip(points, refs):
            assert abs(hurwitz_zeta(x, mp.mpf(s), ctx) - ref) < ctx.eps()


def test_hurwitz_zeta_pole(ctx):
    with pytest.raises(PoleError):
        hurwitz_zeta(Fraction(1, 2), mp.mpf(1), ctx)


def test_reflection_identity(ctx, rng):
    with ctx.workprec():
        tol = ctx.eps(5)
        for _ in range(200):
            den = rng.randrange(2, 500)
            num = rng.randrange(1, den)
            x = Fraction(num, den)
            lhs = mp.exp(log_gamma(x, ctx) + log_gamma(1 - x, ctx)) * mp.sinpi(to_mpf(x))
            assert abs(lhs - mp.pi) < tol


def test_duplication_identity(ctx, rng):
    with ctx.workprec():
        tol = ctx.eps(5)
        for _ in range(50):
            den = rng.randrange(3, 400)
            num = rng.randrange(1, (den - 1) // 2 + 1)
            x = Fraction(num, den)
            lhs = mp.exp(log_gamma(2 * x, ctx)) * mp.sqrt(mp.pi)
            rhs = mp.mpf(2) ** (2 * to_mpf(x) - 1) * mp.exp(
                log_gamma(x, ctx) + log_gamma(x + Fraction(1, 2), ctx))
            assert abs(lhs - rhs) < tol * abs(rhs)


def test_gauss_product(ctx):
    with ctx.workprec():
        tol = ctx.eps(10)
        for p in (7, 11, 19, 23):
            lhs = mp.fsum(log_gamma(Fraction(a, p), ctx) for a in range(1, p))
            rhs = (p - 1) / mp.mpf(2) * mp.log(2 * mp.pi) - mp.log(p) / 2
            assert abs(lhs - rhs) < tol


def test_hurwitz_jet_matches_loggamma(ctx, rng):
    # d/ds H(x,s) at s=0 is log(Gamma(x)/sqrt(2*pi)); central difference.
    hi = PrecisionContext(260)
    with hi.workprec():
        h = mp.mpf(10) ** -65
        for _ in range(20):
            den = rng.randrange(2, 200)
            num = rng.randrange(1, den)
            x = Fraction(num, den)
            diff = (hurwitz_zeta(x, h, hi) - hurwitz_zeta(x, -h, hi)) / (2 * h)
            expect = log_gamma(x, hi) - mp.log(2 * mp.pi) / 2
            assert abs(diff - expect) < mp.mpf(10) ** -(ctx.target_digits // 2)


def test_delta_known_points(ctx):
    with ctx.workprec():
        tau7 = (-1 + mp.sqrt(-7)) / 2
        val = delta_lattice(Lattice(tau7, mp.mpf(1)), ctx)
        assert mp.re(val) < 0
        assert abs(mp.im(val)) < ctx.eps(10) * abs(val)
        halved = delta_lattice(Lattice(tau7, mp.mpf(2)), ctx)
        assert abs(halved - val / 2 ** 12) < ctx.eps(10) * abs(val)
        # Delta(Z + Zi) = Gamma(1/4)^24 / (2^12 pi^6)
        vi = delta_lattice(Lattice(mp.mpc(0, 1), mp.mpf(1)), ctx)
        lemn = mp.exp(24 * log_gamma(Fraction(1, 4), ctx)) / (2 ** 12 * mp.pi ** 6)
        assert abs(vi - lemn) < ctx.eps(10) * abs(vi)


def test_delta_cutoff_stability(ctx):
    with ctx.workprec():
        for d in (7, 23, 163):
            tau = (-1 + mp.sqrt(-d)) / 2
            lat = Lattice(tau, mp.mpf(1))
            base = delta_lattice(lat, ctx)
            n = delta_q_terms(mp.im(tau), ctx.working_digits)
            again = delta_lattice(lat, ctx, terms=2 * n)
            assert abs(base - again) < ctx.eps() * max(1, abs(base))


def test_delta_complex_scale(ctx):
    with ctx.workprec():
        tau = (-1 + mp.sqrt(-7)) / 2
        base = delta_lattice(Lattice(tau, mp.mpf(1)), ctx)
        spun = delta_lattice(Lattice(tau, mp.mpc(0, 2)), ctx)
        assert abs(spun - base / 2 ** 12) < ctx.eps(10) * abs(base)
