"""Epstein zeta functions of positive definite binary quadratic forms.

Z_Q(s) = sum over nonzero (x, y) in Z^2 of Q(x, y)^(-s).

The continuation comes from splitting the Mellin integral of the theta
series at the Poisson-symmetric point t0 = 2*pi/sqrt(d):

    Gamma(s) Z_Q(s) = sum_{n>=1} r(n) [ n^(-s) G(s, n*t0)
                      + t0^(2s-1) n^(s-1) G(1-s, n*t0) ]
                      + t0^s (1/(s-1) - 1/s),

where r(n) = #{(x, y) != 0 : Q(x, y) = n} and G is the upper incomplete
gamma function.  The dual form (c, -b, a) produced by the modular flip
represents the same integers as Q via (x, y) -> (y, -x), so one count
array serves both sums.  Everything decays like e^(-n*t0), giving any
real s off the poles at full working precision.
"""

from __future__ import annotations

from math import isqrt, log10

from mpmath import mp

from .errors import DomainError, PrecisionError
from .lseries import SZeroJet
from .numkernel import PrecisionContext, log_gamma, to_mpf
from .quadforms import QuadForm

_LOG10E = 0.4342944819032518
_CF_MIN_X = 40.0
_SERIES_CAP = 300000
_CF_CAP = 300000
_DIRECT_RADIUS_CAP = 3_000_000


def theta_counts(f: QuadForm, limit: int) -> list[int]:
    """Representation counts r(n) = #{(x, y) != (0, 0) : Q(x, y) = n} for n <= limit."""
    a, b, c = f.a, f.b, f.c
    d = -f.disc
    counts = [0] * (limit + 1)
    x = 1
    while a * x * x <= limit:
        counts[a * x * x] += 2
        x += 1
    y = 1
    while d * y * y <= 4 * a * limit:
        r = isqrt(4 * a * limit - d * y * y)
        lo = -((b * y + r) // (2 * a))
        hi = (r - b * y) // (2 * a)
        for x in range(lo, hi + 1):
            q = (a * x + b * y) * x + c * y * y
            if q <= limit:
                counts[q] += 2
        y += 1
    return counts


def _gamma_at(s):
    """Gamma(s) at ambient precision, real s not a nonpositive integer."""
    ctx = PrecisionContext(target_digits=mp.dps, guard_digits=10)
    if s > 0.5:
        return mp.exp(log_gamma(s, ctx))
    k = int(mp.ceil(mp.mpf(3) / 2 - s))
    den = mp.mpf(1)
    for j in range(k):
        den *= s + j
    return mp.exp(log_gamma(s + k, ctx)) / den


def _upper_gamma_cf(s, x, expmx):
    """Lentz evaluation of the Legendre continued fraction, large x."""
    dps = mp.dps
    with mp.workdps(dps + 10):
        tiny = mp.mpf(10) ** (-2 * (dps + 10))
        tol = mp.mpf(10) ** (-(dps + 6))
        f = x + 1 - s
        if f == 0:
            f = tiny
        c = f
        d = mp.mpf(0)
        for j in range(1, _CF_CAP):
            aj = -j * (j - s)
            bj = x + 2 * j + 1 - s
            d = bj + aj * d
            if d == 0:
                d = tiny
            d = 1 / d
            c = bj + aj / c
            if c == 0:
                c = tiny
            delta = c * d
            f *= delta
            if abs(delta - 1) < tol:
                return mp.exp(s * mp.log(x)) * expmx / f
    raise PrecisionError("incomplete gamma continued fraction stalled")


def _upper_gamma_series(s, x):
    """Gamma(s, x) = [Gamma(s) - x^s/s] - x^s sum_{k>=1} (-x)^k/(k! (s+k)).

    The partial sums swing up to e^x while the result is ~e^(-x), so the
    sum runs with about 2*x*log10(e) extra digits; a further guard covers
    the head cancellation when s is close to 0.
    """
    dps = mp.dps
    cancel = int(2 * float(x) * _LOG10E) + 12
    small_s = s != 0 and abs(s) < mp.mpf(3) / 4
    if small_s:
        cancel += max(0, int(-mp.log10(abs(s)))) + 5
    with mp.workdps(dps + cancel):
        if s == 0:
            head = -mp.euler - mp.log(x)
        elif small_s:
            ctx = PrecisionContext(target_digits=mp.dps, guard_digits=10)
            head = (mp.exp(log_gamma(s + 1, ctx)) - mp.exp(s * mp.log(x))) / s
        else:
            head = _gamma_at(s) - mp.exp(s * mp.log(x)) / s
        floor_mag = mp.mpf(10) ** (-(dps + cancel))
        term = mp.mpf(1)
        total = mp.mpf(0)
        xf = float(x)
        for k in range(1, _SERIES_CAP):
            term *= -x / k
            total += term / (s + k)
            if k > xf and abs(term) * k < floor_mag:
                return head - mp.exp(s * mp.log(x)) * total
    raise PrecisionError("incomplete gamma series did not converge")


def _upper_gamma(s, x, expmx):
    """Upper incomplete Gamma(s, x) for real s and x > 0 at ambient precision."""
    if x >= _CF_MIN_X and x >= 2 * abs(s):
        return _upper_gamma_cf(s, x, expmx)
    if s <= mp.mpf(-1) / 2:
        if mp.isint(s):
            k, top = int(-s), mp.mpf(0)
        else:
            k = int(mp.ceil(mp.mpf(1) / 2 - s))
            top = s + k
        # each step cancels ~log10(x / |t - 1|) digits when x dominates t
        lost = sum(max(0.0, log10(float(x) / abs(float(top) - 1 - j)))
                   for j in range(k))
        with mp.workdps(mp.dps + 12 + int(lost)):
            em = mp.exp(-x)
            g = _upper_gamma(top, x, em)
            lx = mp.log(x)
            for j in range(k):
                t = top - j
                g = (g - mp.exp((t - 1) * lx) * em) / (t - 1)
        return +g
    return _upper_gamma_series(s, x)


def _z_values(f: QuadForm, svals, wp: int):
    """Z_Q at each s in svals, computed at wp digits off a shared count array.

    svals must avoid s = 1 and the nonpositive integers.  Work on the
    n-th term runs at a precision reduced by its e^(-n*t0) weight.
    """
    d = -f.disc
    with mp.workdps(wp):
        t0 = 2 * mp.pi / mp.sqrt(d)
        t0f = float(t0)
        smax = max(abs(float(s) - 1) for s in svals)
        limit = int((wp + 12) * 2.302586 / t0f) + 2
        limit += int(smax * mp.log(limit + 1) / t0f) + 2
        counts = theta_counts(f, limit)
        e1 = mp.exp(-t0)
        logt0 = mp.log(t0)
        spow = [mp.exp((2 * s - 1) * logt0) for s in svals]
        sums = [mp.mpf(0) for _ in svals]
        expmx = mp.mpf(1)
        for n in range(1, limit + 1):
            expmx *= e1
            r = counts[n]
            if not r:
                continue
            dps_n = max(25, wp + 12 - int(n * t0f * _LOG10E))
            with mp.workdps(dps_n):
                x = n * t0
                lx = mp.log(x)
                ln = mp.log(n)
                cache = {}
                terms = []
                for i, s in enumerate(svals):
                    gs = cache.get(s)
                    if gs is None:
                        gs = cache[s] = _upper_gamma(s, x, expmx)
                    gneg = cache.get(-s)
                    if gneg is None:
                        gneg = cache[-s] = _upper_gamma(-s, x, expmx)
                    g1ms = -s * gneg + mp.exp(-s * lx) * expmx
                    terms.append(r * (mp.exp(-s * ln) * gs
                                      + spow[i] * mp.exp((s - 1) * ln) * g1ms))
            for i, term in enumerate(terms):
                sums[i] += term
        out = []
        for i, s in enumerate(svals):
            pole = mp.exp(s * logt0) * (1 / (s - 1) - 1 / s)
            out.append((sums[i] + pole) / _gamma_at(s))
        return out


def epstein_continued(f: QuadForm, s, ctx: PrecisionContext):
    """Z_Q(s) for real s != 0, 1 by the incomplete-gamma continuation."""
    with mp.workdps(ctx.working_digits + 10):
        sv = to_mpf(s)
        if sv == 1:
            raise DomainError("Z_Q has a pole at s = 1")
        if sv == 0:
            raise DomainError("use epstein_jet for the value at s = 0")
        if mp.isint(sv) and sv < 0:
            return mp.mpf(0)
        val = _z_values(f, [sv], mp.dps)[0]
    with ctx.workprec():
        return +val


def epstein_jet(f: QuadForm, ctx: PrecisionContext) -> SZeroJet:
    """Jet (Z_Q(0), Z_Q'(0)) by Richardson-extrapolated central differences.

    Four evaluations at +-h and +-h/2 with h = 10^-(target/2 + 5), run at
    a precision inflated by the same amount so the difference quotient
    keeps ~target + guard correct digits.
    """
    hexp = ctx.target_digits // 2 + 5
    wp = ctx.working_digits + hexp + 15
    with mp.workdps(wp):
        h = mp.mpf(10) ** (-hexp)
        zp, zm, zp2, zm2 = _z_values(f, [h, -h, h / 2, -h / 2], wp)
        value = (4 * (zp2 + zm2) / 2 - (zp + zm) / 2) / 3
        deriv = (4 * (zp2 - zm2) / h - (zp - zm) / (2 * h)) / 3
    with ctx.workprec():
        return SZeroJet(value=+value, deriv=+deriv)


def direct_tail_bound(f: QuadForm, s, radius):
    """Conservative truncation-error estimate for epstein_direct at this radius.

    Twice the main term (2*pi/sqrt(d)) * R^(1-s) / (s-1) of the tail, the
    doubling absorbing the boundary fluctuation for radii above ~100.
    """
    with mp.extradps(10):
        sv = to_mpf(s)
        return 4 * mp.pi / mp.sqrt(-f.disc) * mp.power(radius, 1 - sv) / (sv - 1)


def epstein_direct(f: QuadForm, s, ctx: PrecisionContext, radius=None):
    """Z_Q(s) by bucketed lattice summation over Q(x, y) <= radius.

    Only sensible well right of the abscissa: s > 1.1 is required, and
    with radius=None a radius meeting the target accuracy is derived from
    the tail bound.  PrecisionError (reporting the digits a capped radius
    would certify) when the target is out of reach; pass an explicit
    radius to sum anyway and judge the error with direct_tail_bound.
    """
    with ctx.workprec(10):
        sv = to_mpf(s)
        if sv <= mp.mpf('1.1'):
            raise DomainError("direct summation needs s > 1.1; use the continuation")
        if radius is None:
            eps = mp.mpf(10) ** (-ctx.target_digits)
            need = mp.power(4 * mp.pi / (mp.sqrt(-f.disc) * (sv - 1) * eps),
                            1 / (sv - 1))
            if need > _DIRECT_RADIUS_CAP:
                ach = -mp.log10(direct_tail_bound(f, sv, _DIRECT_RADIUS_CAP))
                raise PrecisionError(
                    "direct summation hits the radius cap before "
                    f"{ctx.target_digits} digits",
                    achieved_digits=max(0, int(ach)))
            radius = int(need) + 1
        radius = int(radius)
        if radius < 1:
            raise DomainError("radius must be a positive integer")
        counts = theta_counts(f, radius)
        total = mp.mpf(0)
        for n in range(1, radius + 1):
            if counts[n]:
                total += counts[n] * mp.power(n, -sv)
        return +total
