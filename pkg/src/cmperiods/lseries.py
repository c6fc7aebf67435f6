"""Jets at s = 0 of zeta(s), L(epsilon, s) and their product zeta_k(s).

Values come from Lerch's constant term H(x, 0) = 1/2 - x, exactly in
rational arithmetic; derivatives from H_s'(x, 0) = log(Gamma(x)/sqrt(2*pi)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from mpmath import mp

from .errors import DomainError
from .numkernel import PrecisionContext, hurwitz_zeta, log_gamma, to_mpf
from .quadforms import Discriminant, class_number_dirichlet


@dataclass(frozen=True)
class SZeroJet:
    """Value and first s-derivative of a Dirichlet series at s = 0."""

    value: Any
    deriv: Any
    value_exact: Fraction | None = None

    @property
    def dlog(self):
        if self.value == 0:
            raise DomainError("dlog at 0 needs a nonzero value")
        return self.deriv / self.value


def _disc(d) -> Discriminant:
    return d if isinstance(d, Discriminant) else Discriminant(d)


def riemann_jet(ctx: PrecisionContext) -> SZeroJet:
    """zeta(0) = -1/2, zeta'(0) = -(1/2) log(2 pi)."""
    with ctx.workprec():
        return SZeroJet(value=mp.mpf(-1) / 2, deriv=-mp.log(2 * mp.pi) / 2,
                        value_exact=Fraction(-1, 2))


def dirichlet_jet(d, ctx: PrecisionContext) -> SZeroJet:
    """Jet of L(epsilon, s) = d^(-s) * sum_a epsilon(a) H(a/d, s) at s = 0."""
    disc = _disc(d)
    d = disc.d
    value = -sum(Fraction(disc.epsilon(a) * a, d) for a in range(1, d))
    with ctx.workprec():
        # the log sqrt(2*pi) terms cancel over the character sum; keeping
        # them exercises sum(epsilon) = 0 numerically
        log_sqrt_2pi = mp.log(2 * mp.pi) / 2
        gsum = mp.mpf(0)
        for a in range(1, d):
            e = disc.epsilon(a)
            if e:
                gsum += e * (log_gamma(Fraction(a, d), ctx) - log_sqrt_2pi)
        deriv = -mp.log(d) * to_mpf(value) + gsum
        return SZeroJet(value=to_mpf(value), deriv=deriv, value_exact=value)


def dirichlet_L(d, s, ctx: PrecisionContext):
    """L(epsilon, s) for real s != 1, by the finite Hurwitz expansion."""
    disc = _disc(d)
    d = disc.d
    with ctx.workprec():
        sv = to_mpf(s)
        total = mp.mpf(0)
        for a in range(1, d):
            e = disc.epsilon(a)
            if e:
                total += e * hurwitz_zeta(Fraction(a, d), sv, ctx)
        return mp.power(d, -sv) * total


def zetak_dlog0(d, ctx: PrecisionContext):
    """dlog zeta_k(s) at s = 0: log(2 pi) - log d + (w/2h) sum eps(a) log Gamma(a/d)."""
    disc = _disc(d)
    d = disc.d
    h = class_number_dirichlet(disc)
    with ctx.workprec():
        gsum = mp.mpf(0)
        for a in range(1, d):
            e = disc.epsilon(a)
            if e:
                gsum += e * log_gamma(Fraction(a, d), ctx)
        return mp.log(2 * mp.pi) - mp.log(d) + mp.mpf(disc.w) / (2 * h) * gsum
