"""Chowla-Selberg products, CM period integrals, and Faltings heights.

The central identity, in logarithmic form: over the h ideal classes of
the order of discriminant -d,

    sum_i log(Delta(a_i) Delta(a_i^-1))
        = 12 h log(2 pi / d) + 6 w sum_a eps(a) log Gamma(a/d),

with eps the quadratic character mod d and w the number of units.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from mpmath import mp

from .errors import ConsistencyError, DomainError
from .lseries import dirichlet_jet
from .numkernel import PrecisionContext, delta_lattice, log_gamma
from .quadforms import (Discriminant, QuadForm, class_number_dirichlet,
                        form_to_lattice, inverse_ideal_lattice, reduced_forms)


@dataclass(frozen=True)
class IdentityReport:
    """Two-sided comparison of an identity, with agreement bookkeeping."""

    name: str
    lhs: Any
    rhs: Any
    abs_err: Any
    rel_err: Any
    digits_agreed: int
    passed: bool

    def as_dict(self, digits: int = 30) -> dict:
        return {
            "name": self.name,
            "lhs": mp.nstr(self.lhs, digits),
            "rhs": mp.nstr(self.rhs, digits),
            "abs_err": mp.nstr(self.abs_err, 8),
            "rel_err": mp.nstr(self.rel_err, 8),
            "digits_agreed": self.digits_agreed,
            "pass": self.passed,
        }


def make_report(name: str, lhs, rhs, ctx: PrecisionContext) -> IdentityReport:
    """Compare lhs and rhs; passing means agreement to target - 20 digits."""
    with ctx.workprec():
        abs_err = abs(lhs - rhs)
        scale = max(abs(lhs), abs(rhs))
        rel_err = abs_err / scale if scale > 0 else abs_err
        if rel_err == 0:
            digits = ctx.working_digits
        else:
            digits = min(ctx.working_digits, max(0, int(-mp.log10(rel_err))))
        passed = rel_err < mp.mpf(10) ** (20 - ctx.target_digits)
        return IdentityReport(name=name, lhs=+lhs, rhs=+rhs, abs_err=+abs_err,
                              rel_err=+rel_err, digits_agreed=digits, passed=passed)


def _disc(d) -> Discriminant:
    return d if isinstance(d, Discriminant) else Discriminant(d)


def cs_verify(d, ctx: PrecisionContext) -> IdentityReport:
    """Check the Chowla-Selberg identity at fundamental discriminant -d."""
    disc = _disc(d)
    d = disc.d
    group = reduced_forms(disc)
    with ctx.workprec():
        im_tol = mp.mpf(10) ** (5 - ctx.target_digits)
        lhs = mp.mpf(0)
        for f in group:
            z = (delta_lattice(form_to_lattice(f, ctx), ctx)
                 * delta_lattice(inverse_ideal_lattice(f, ctx), ctx))
            if not (abs(mp.im(z)) <= im_tol * abs(z) and mp.re(z) > 0):
                raise ConsistencyError(
                    f"Delta(a) Delta(a^-1) is not positive real for {f.tuple()}")
            lhs += mp.log(mp.re(z))
        gsum = mp.mpf(0)
        for a in range(1, d):
            e = disc.epsilon(a)
            if e:
                gsum += e * log_gamma(Fraction(a, d), ctx)
        rhs = 12 * group.h * mp.log(2 * mp.pi / d) + 6 * disc.w * gsum
    return make_report(f"chowla-selberg d={d}", lhs, rhs, ctx)


def _prime_disc(p) -> Discriminant:
    disc = _disc(p)
    if not disc.is_prime_3mod4 or disc.d == 3:
        raise DomainError("the period formulas need a prime p = 3 mod 4, p > 3")
    return disc


def period_integral(f: QuadForm, p, ctx: PrecisionContext):
    """Real period attached to the ideal class of f, p = 3 mod 4 prime > 3."""
    disc = _prime_disc(p)
    if f.disc != -disc.d:
        raise DomainError("form discriminant does not match p")
    p = disc.d
    with ctx.workprec():
        delta = delta_lattice(form_to_lattice(f, ctx), ctx)
        sixth = mp.mpf(1) / 6
        return mp.power(abs(delta) / p ** 3, sixth) * f.a * mp.sqrt(p)


def m_invariant(p) -> Fraction:
    """m = sum of a/p over quadratic residues a; equals (p-1)/4 - h/2."""
    disc = _prime_disc(p)
    p = disc.d
    m = sum((Fraction(a, p) for a in range(1, p) if disc.epsilon(a) == 1),
            Fraction(0))
    h = class_number_dirichlet(disc)
    if m != Fraction(p - 1, 4) - Fraction(h, 2):
        raise ConsistencyError(f"m-invariant {m} != (p-1)/4 - h/2 at p={p}")
    return m


def faltings_height_periods(p, ctx: PrecisionContext):
    """Faltings height from the period integrals over the class group."""
    disc = _prime_disc(p)
    p = disc.d
    group = reduced_forms(disc)
    with ctx.workprec():
        total = mp.mpf(0)
        for f in group:
            total += mp.log(period_integral(f, disc, ctx))
        return -total / (2 * group.h) - mp.log(p) / 4


def faltings_height_L(p, ctx: PrecisionContext):
    """The same height via the logarithmic derivative of L(eps, s) at 0."""
    disc = _prime_disc(p)
    p = disc.d
    jet = dirichlet_jet(disc, ctx)
    with ctx.workprec():
        return -jet.dlog / 2 - mp.log(p) / 4 - mp.log(2 * mp.pi) / 2
