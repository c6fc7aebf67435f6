from fractions import Fraction

import pytest
from mpmath import mp

from cmperiods.errors import DomainError
from cmperiods.lseries import (SZeroJet, dirichlet_L, dirichlet_jet, riemann_jet,
                               zetak_dlog0)
from cmperiods.numkernel import PrecisionContext, log_gamma, to_mpf
from cmperiods.quadforms import (Discriminant, class_number, is_fundamental,
                                 reduced_forms)


def test_szero_jet_dlog(ctx):
    jet = SZeroJet(value=mp.mpf(2), deriv=mp.mpf(3))
    assert jet.dlog == mp.mpf(3) / 2
    with pytest.raises(DomainError):
        SZeroJet(value=mp.mpf(0), deriv=mp.mpf(1)).dlog


def test_riemann_jet(ctx):
    jet = riemann_jet(ctx)
    with ctx.workprec():
        assert jet.value_exact == Fraction(-1, 2)
        assert jet.value == mp.mpf(-1) / 2
        assert abs(jet.deriv + mp.log(2 * mp.pi) / 2) < ctx.eps()
        assert abs(jet.dlog - mp.log(2 * mp.pi)) < ctx.eps()


def test_riemann_deriv_finite_difference(ctx):
    from cmperiods.numkernel import hurwitz_zeta
    hi = PrecisionContext(260)
    with hi.workprec():
        h = mp.mpf(10) ** -65
        diff = (hurwitz_zeta(Fraction(1), h, hi) - hurwitz_zeta(Fraction(1), -h, hi)) / (2 * h)
    jet = riemann_jet(ctx)
    assert abs(jet.deriv - diff) < mp.mpf(10) ** -(ctx.target_digits // 2)


def test_dirichlet_jet_exact_values(ctx):
    assert dirichlet_jet(Discriminant(7), ctx).value_exact == 1
    assert dirichlet_jet(Discriminant(23), ctx).value_exact == 3
    assert dirichlet_jet(Discriminant(3), ctx).value_exact == Fraction(1, 3)
    assert dirichlet_jet(Discriminant(4), ctx).value_exact == Fraction(1, 2)


def test_dirichlet_value_is_class_number(ctx):
    # L(eps,0) = 2h/w with h counted by form enumeration.
    for d in range(5, 2000):
        if not is_fundamental(d):
            continue
        disc = Discriminant(d)
        jet_value = -sum(disc.epsilon(a) * Fraction(a, d) for a in range(1, d))
        assert jet_value == Fraction(2 * class_number(disc), disc.w)


def test_dirichlet_jet_dlog_form(ctx):
    # deriv/value = (w/2h) sum eps(a) log Gamma(a/d) - log d
    for d in (7, 23):
        disc = Discriminant(d)
        jet = dirichlet_jet(disc, ctx)
        h = reduced_forms(disc).h
        with ctx.workprec():
            gsum = mp.fsum(disc.epsilon(a) * log_gamma(Fraction(a, d), ctx)
                           for a in range(1, d))
            expect = mp.mpf(disc.w) / (2 * h) * gsum - mp.log(d)
            assert abs(jet.dlog - expect) < ctx.eps(10)


def test_dirichlet_L_values(ctx):
    # independent oracle: mpmath's Hurwitz zeta at 200 digits
    for d, s in ((7, 2), (23, 2), (15, 3)):
        disc = Discriminant(d)
        with mp.workdps(200):
            ref = mp.mpf(d) ** -s * mp.fsum(
                disc.epsilon(a) * mp.zeta(s, mp.mpf(a) / d) for a in range(1, d))
        with ctx.workprec():
            val = dirichlet_L(disc, mp.mpf(s), ctx)
            assert abs(val - ref) < ctx.eps()
        assert val > 0


def test_zetak_dlog_additivity(ctx):
    for d in (7, 15, 23):
        disc = Discriminant(d)
        with ctx.workprec():
            total = zetak_dlog0(disc, ctx)
            parts = riemann_jet(ctx).dlog + dirichlet_jet(disc, ctx).dlog
            assert abs(total - parts) < ctx.eps(5)


def test_zetak_dlog_two_precision():
    lo, hi = PrecisionContext(120), PrecisionContext(240)
    for d in (7, 15):
        a = zetak_dlog0(Discriminant(d), lo)
        b = zetak_dlog0(Discriminant(d), hi)
        assert abs(a - b) < mp.mpf(10) ** -110


def test_zetak_dlog_matches_delta_side(ctx):
    # (1/12h) sum log(Delta(a) Delta(a^-1)) is the same number: the
    # Chowla-Selberg identity in dlog form.
    from cmperiods.csperiods import cs_verify
    for d in (7, 23):
        disc = Discriminant(d)
        h = reduced_forms(disc).h
        rep = cs_verify(disc, ctx)
        with ctx.workprec():
            delta_side = rep.lhs / (12 * h)
            assert abs(delta_side - zetak_dlog0(disc, ctx)) < ctx.eps(15)


def test_zetak_factorization_at_two(ctx):
    # zeta_k(2) over reduced forms equals zeta(2) L(eps,2).
    from cmperiods.epstein import epstein_continued
    for d in (7, 23):
        disc = Discriminant(d)
        group = reduced_forms(disc)
        with ctx.workprec():
            lhs = mp.fsum(epstein_continued(f, mp.mpf(2), ctx) for f in group) / disc.w
            rhs = mp.pi ** 2 / 6 * dirichlet_L(disc, mp.mpf(2), ctx)
            assert abs(lhs - rhs) < ctx.eps(10)
