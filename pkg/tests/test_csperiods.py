from fractions import Fraction

import pytest
from mpmath import mp

from cmperiods.csperiods import (IdentityReport, cs_verify, faltings_height_L,
                                 faltings_height_periods, m_invariant, make_report,
                                 period_integral)
from cmperiods.errors import DomainError
from cmperiods.numkernel import PrecisionContext, log_gamma
from cmperiods.quadforms import Discriminant, QuadForm, is_fundamental, reduced_forms


def test_make_report_thresholds(ctx):
    with ctx.workprec():
        good = make_report("x", mp.mpf(1), 1 + mp.mpf(10) ** -110, ctx)
        assert good.passed and good.digits_agreed >= 105
        bad = make_report("x", mp.mpf(1), 1 + mp.mpf(10) ** -90, ctx)
        assert not bad.passed


def test_report_as_dict(ctx):
    rep = cs_verify(Discriminant(7), ctx)
    d = rep.as_dict()
    assert set(d) == {"name", "lhs", "rhs", "abs_err", "rel_err", "digits_agreed", "pass"}
    assert d["pass"] is True
    assert d["name"] == "chowla-selberg d=7"


@pytest.mark.parametrize("d", [4, 7, 23])
def test_cs_verify_examples(ctx, d):
    rep = cs_verify(Discriminant(d), ctx)
    assert rep.passed
    assert rep.digits_agreed >= 100
    assert abs(rep.abs_err) < mp.mpf(10) ** -100


def test_cs_verify_two_precisions():
    # same identity at two targets; the logs must agree with each other
    a = cs_verify(Discriminant(7), PrecisionContext(60))
    b = cs_verify(Discriminant(7), PrecisionContext(120))
    assert a.passed and b.passed
    assert abs(a.lhs - b.lhs) < mp.mpf(10) ** -55


def test_period_integral_single_class_formula(ctx):
    with ctx.workprec():
        val = period_integral(QuadForm(1, 1, 2), Discriminant(7), ctx)
        disc = Discriminant(7)
        glog = mp.fsum(disc.epsilon(a) * log_gamma(Fraction(a, 7), ctx)
                       for a in range(1, 7))
        expect = 2 * mp.pi / 7 * mp.exp(glog)
        assert abs(val - expect) < ctx.eps(15) * expect


def test_period_integral_domain():
    ctx = PrecisionContext(60)
    with pytest.raises(DomainError):
        period_integral(QuadForm(1, 0, 1), Discriminant(4), ctx)
    with pytest.raises(DomainError):
        period_integral(QuadForm(1, 1, 4), Discriminant(15), ctx)
    with pytest.raises(DomainError):
        period_integral(QuadForm(1, 1, 2), Discriminant(23), ctx)


def test_period_product_identity(ctx):
    for p in (7, 11, 23, 31, 47):
        disc = Discriminant(p)
        group = reduced_forms(disc)
        with ctx.workprec():
            lhs = mp.fsum(mp.log(period_integral(f, disc, ctx)) for f in group)
            gsum = mp.fsum(disc.epsilon(a) * log_gamma(Fraction(a, p), ctx)
                           for a in range(1, p))
            rhs = group.h * mp.log(2 * mp.pi / p) + gsum
            assert abs(lhs - rhs) < ctx.eps(15)


def test_m_invariant_examples():
    assert m_invariant(Discriminant(7)) == 1
    assert m_invariant(Discriminant(23)) == 4
    assert m_invariant(Discriminant(11)) == 2


def test_m_invariant_closed_form():
    from cmperiods.arith import is_prime
    from cmperiods.quadforms import class_number_dirichlet
    for p in range(7, 1000):
        if p % 4 != 3 or not is_prime(p):
            continue
        disc = Discriminant(p)
        m = m_invariant(disc)
        h = class_number_dirichlet(disc)
        assert m == Fraction(p - 1, 4) - Fraction(h, 2)


def test_faltings_two_ways(ctx):
    for p in (7, 43):
        with ctx.workprec():
            hp = faltings_height_periods(Discriminant(p), ctx)
            hl = faltings_height_L(Discriminant(p), ctx)
            assert abs(hp - hl) < ctx.eps(20)


def test_faltings_zetak_form(ctx):
    # -(1/2) zetak_dlog0 - (1/4) log p is the same height
    from cmperiods.lseries import zetak_dlog0
    p = 7
    with ctx.workprec():
        alt = -zetak_dlog0(Discriminant(p), ctx) / 2 - mp.log(p) / 4
        hl = faltings_height_L(Discriminant(p), ctx)
        assert abs(alt - hl) < ctx.eps(10)
