"""Arbitrary-precision numeric kernel.

Everything downstream funnels through the handful of special functions
defined here: log-gamma, gamma at rationals, the beta function, the Hurwitz
zeta function, and the discriminant cusp form on complex lattices.  All of
them take an explicit :class:`PrecisionContext` and guarantee an absolute
error below ``10**-target_digits``.

Arithmetic is backed by mpmath (mpf/mpc); the special functions themselves
are implemented here: Stirling's series with argument shifting for
log-gamma, Euler-Maclaurin for Hurwitz zeta, and the q-product for the
modular discriminant.  Every function is pure, so callers may fan work out
across processes freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from mpmath import mp

from .errors import DomainError, PoleError, PrecisionError

__all__ = [
    "PrecisionContext",
    "Lattice",
    "log_gamma",
    "gamma_rational",
    "beta",
    "hurwitz_zeta",
    "delta_lattice",
]

_LN10 = 2.302585092994046


@dataclass(frozen=True)
class PrecisionContext:
    """Requested accuracy: results carry absolute error < 10**-target_digits.

    ``guard_digits`` extra digits are used internally to absorb rounding.
    """

    target_digits: int = 120
    guard_digits: int = 20

    def __post_init__(self):
        if self.target_digits < 30:
            raise DomainError("target_digits must be at least 30")
        if self.guard_digits < 10:
            raise DomainError("guard_digits must be at least 10")

    @property
    def working_digits(self) -> int:
        return self.target_digits + self.guard_digits

    def workprec(self, extra: int = 0):
        """Context manager setting mpmath's decimal precision."""
        return mp.workdps(self.working_digits + extra)

    def eps(self, shift: int = 0):
        """10**-(target_digits - shift) as an mpf."""
        return mp.mpf(10) ** (-(self.target_digits - shift))


@dataclass(frozen=True)
class Lattice:
    """Complex lattice scale*(Z + Z*tau) with tau in the upper half plane."""

    tau: object
    scale: object

    def __post_init__(self):
        if not (mp.im(self.tau) > 0):
            raise DomainError("lattice tau must have positive imaginary part")
        if mp.mpc(self.scale) == 0:
            raise DomainError("lattice scale must be nonzero")


def to_mpf(x):
    """Convert int/Fraction/str/mpf to mpf at the current precision."""
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


def _stirling_log_gamma(z, budget):
    # Asymptotic series at large real z; remainder after the k-th Bernoulli
    # term is bounded by the next term for z > 0, so stop once below budget.
    acc = (z - mp.mpf(1) / 2) * mp.log(z) - z + mp.log(2 * mp.pi) / 2
    zsq = z * z
    zpow = z
    for k in range(1, 4 * mp.dps):
        term = mp.bernoulli(2 * k) / ((2 * k) * (2 * k - 1) * zpow)
        acc += term
        if abs(term) < budget:
            return acc
        zpow *= zsq
    raise PrecisionError("Stirling series did not reach the error budget")


def log_gamma(x, ctx: PrecisionContext):
    """log Gamma(x) for real x > 0, absolute error < 10**-target_digits."""
    with ctx.workprec(10):
        xv = to_mpf(x)
        if not xv > 0:
            raise DomainError("log_gamma requires x > 0")
        budget = mp.mpf(10) ** (-(ctx.working_digits + 5))
        # Shift the argument up past ~1.2*working digits, then apply
        # Stirling; the shift product is folded back in with one log.
        shift = int(ceil(1.2 * mp.dps - xv)) if xv < 1.2 * mp.dps else 0
        prod = mp.mpf(1)
        for j in range(shift):
            prod *= xv + j
        return _stirling_log_gamma(xv + shift, budget) - mp.log(prod)


def gamma_rational(a: int, d: int, ctx: PrecisionContext):
    """Gamma(a/d) for integers 0 < a < d with gcd(a, d) = 1."""
    from math import gcd

    if not (0 < a < d):
        raise DomainError("gamma_rational requires 0 < a < d")
    if gcd(a, d) != 1:
        raise DomainError("gamma_rational requires gcd(a, d) = 1")
    with ctx.workprec(10):
        return mp.exp(log_gamma(Fraction(a, d), ctx))


def beta(u, v, ctx: PrecisionContext):
    """Euler beta B(u, v) = Gamma(u)Gamma(v)/Gamma(u+v) for u, v > 0."""
    with ctx.workprec(10):
        uv, vv = to_mpf(u), to_mpf(v)
        if not (uv > 0 and vv > 0):
            raise DomainError("beta requires positive arguments")
        return mp.exp(log_gamma(uv, ctx) + log_gamma(vv, ctx) - log_gamma(uv + vv, ctx))


def hurwitz_zeta(x, s, ctx: PrecisionContext):
    """H(x, s) = sum_{n>=0} (n+x)^-s continued via Euler-Maclaurin.

    Valid for 0 < x <= 1 and any real s != 1 (the continuation is used
    below s = 1; s = 1 raises PoleError).
    """
    with ctx.workprec(10):
        xv = to_mpf(x)
        sv = to_mpf(s)
        if not (0 < xv <= 1):
            raise DomainError("hurwitz_zeta requires 0 < x <= 1")
        if sv == 1:
            raise PoleError("hurwitz_zeta has a pole at s = 1")
        wp = mp.dps
        budget = mp.mpf(10) ** (-(wp + 5))
        m_terms = ceil(wp / 3)
        n_cut = int(1.6 * wp) + 16
        for _attempt in range(4):
            total = mp.mpf(0)
            for n in range(n_cut):
                total += (n + xv) ** (-sv)
            t = n_cut + xv
            total += t ** (1 - sv) / (sv - 1) + t ** (-sv) / 2
            # Correction terms B_2k/(2k)! * (s)_{2k-1} * t^(-s-2k+1).
            rising = sv
            tpow = t ** (-sv - 1)
            tsq = t * t
            last = mp.inf
            for k in range(1, m_terms + 1):
                term = mp.bernoulli(2 * k) / mp.factorial(2 * k) * rising * tpow
                total += term
                last = abs(term)
                if last < budget:
                    break
                rising *= (sv + 2 * k - 1) * (sv + 2 * k)
                tpow /= tsq
            if last < budget:
                return total
            n_cut = 2 * n_cut  # enlarge the direct block and retry
        raise PrecisionError("Euler-Maclaurin tail did not reach the budget")


def delta_q_terms(im_tau, working_digits: int) -> int:
    """Number of q-product factors needed for the given tau height."""
    return int(ceil((working_digits + 10) * _LN10 / (2 * mp.pi * im_tau))) + 1


def delta_lattice(lattice: Lattice, ctx: PrecisionContext, terms: int | None = None):
    """Modular discriminant of scale*(Z + Z*tau).

    Computed as scale^-12 * (2*pi)^12 * q * prod(1-q^n)^24 with
    q = exp(2*pi*i*tau); the product is cut once the tail of
    24*sum log(1-q^n) is below the error budget.
    """
    with ctx.workprec(10):
        tau = mp.mpc(lattice.tau)
        scale = mp.mpc(lattice.scale)
        if terms is None:
            terms = delta_q_terms(mp.im(tau), mp.dps)
        q = mp.exp(2j * mp.pi * tau)
        prod = mp.mpc(1)
        qp = mp.mpc(1)
        for _ in range(terms):
            qp *= q
            prod *= 1 - qp
        return scale ** (-12) * (2 * mp.pi) ** 12 * q * prod ** 24
