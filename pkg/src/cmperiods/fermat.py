"""CM types of Fermat quotients and their period certificates.

For a prime p = 3 mod 4 and a triple (r, s, t) with r + s + t = 0 mod p,
the exponents a with <ar/p> + <as/p> + <at/p> = 1 form a CM type.  The
associated period products are Euler beta values; their comparison with
products of Gamma(a/p) yields ratios that are exactly rational, or
rational multiples of sqrt(p), and the certificates here pin those down.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from mpmath import mp

from .arith import is_prime
from .csperiods import m_invariant
from .errors import ConsistencyError, DomainError
from .numkernel import PrecisionContext, log_gamma
from .quadforms import Discriminant, class_number_dirichlet
from .relint import recognize_rational, recognize_sqrtp

_MAX_DEN = 10 ** 12


def frac(x) -> Fraction:
    """Fractional part <x> in [0, 1), exact on rationals."""
    f = Fraction(x)
    return f - (f.numerator // f.denominator)


@dataclass(frozen=True)
class CMTypeRecord:
    p: int
    rst: tuple
    phi: tuple
    u: int
    v: int


@dataclass(frozen=True)
class RatioCertificate:
    """A period ratio, its recognized exact value, and a re-verification bit.

    kind is "rational" (ratio = recognized) or "sqrtp" (ratio =
    recognized * sqrt(p)).  height is max(|numerator|, denominator).
    """

    name: str
    ratio: Any
    kind: str
    recognized: Fraction | None
    height: int
    m: Fraction | None
    passed: bool


def _check_triple(p, r, s, t):
    if not (is_prime(p) and p % 4 == 3 and p > 3):
        raise DomainError("p must be a prime = 3 mod 4 with p > 3")
    r, s, t = r % p, s % p, t % p
    if 0 in (r, s, t):
        raise DomainError("r, s, t must be nonzero mod p")
    if (r + s + t) % p != 0:
        raise DomainError("r + s + t must vanish mod p")
    return r, s, t


def epsilon_rst(p, r, s, t) -> int:
    """eps(r) + eps(s) + eps(t) in {-3, -1, 1, 3}."""
    r, s, t = _check_triple(p, r, s, t)
    disc = Discriminant(p)
    return disc.epsilon(r) + disc.epsilon(s) + disc.epsilon(t)


def cm_type(p, r, s, t) -> CMTypeRecord:
    """The set phi = {a : <ar/p> + <as/p> + <at/p> = 1} with its QR split."""
    r, s, t = _check_triple(p, r, s, t)
    phi = tuple(a for a in range(1, p)
                if (a * r % p) + (a * s % p) + (a * t % p) == p)
    disc = Discriminant(p)
    u = sum(1 for a in phi if disc.epsilon(a) == 1)
    v = len(phi) - u
    if u + v != (p - 1) // 2:
        raise ConsistencyError(f"CM type at p={p} has size {u + v} != (p-1)/2")
    h = class_number_dirichlet(disc)
    if u - v != h * epsilon_rst(p, r, s, t):
        raise ConsistencyError(f"u - v != h * eps at p={p}, rst={(r, s, t)}")
    return CMTypeRecord(p=p, rst=(r, s, t), phi=phi, u=u, v=v)


def beta_period(p, r, s, t, ctx: PrecisionContext):
    """log of prod over QRs a of B(<ar/p>, <as/p>).

    The beta factor is Gamma(u)Gamma(v)/Gamma(u+v) with the true sum
    u + v, which may lie in (1, 2); reducing it mod 1 would silently
    drop the rational factor this module is after.
    """
    r, s, t = _check_triple(p, r, s, t)
    disc = Discriminant(p)
    with ctx.workprec():
        total = mp.mpf(0)
        for a in range(1, p):
            if disc.epsilon(a) != 1:
                continue
            u = frac(Fraction(a * r, p))
            v = frac(Fraction(a * s, p))
            total += (log_gamma(u, ctx) + log_gamma(v, ctx)
                      - log_gamma(u + v, ctx))
        return total


def gamma_period(p, r, s, t, ctx: PrecisionContext):
    """log of (2 pi)^(-(p-1)/2) prod over QRs a of Gamma(<ar/p>)Gamma(<as/p>)Gamma(<at/p>)."""
    r, s, t = _check_triple(p, r, s, t)
    disc = Discriminant(p)
    with ctx.workprec():
        total = -mp.mpf(p - 1) / 2 * mp.log(2 * mp.pi)
        for a in range(1, p):
            if disc.epsilon(a) != 1:
                continue
            for m in (r, s, t):
                total += log_gamma(frac(Fraction(a * m, p)), ctx)
        return total


def _qr_gamma_log(p, disc, ctx):
    total = mp.mpf(0)
    for a in range(1, p):
        if disc.epsilon(a) == 1:
            total += log_gamma(Fraction(a, p), ctx)
    return total


def _certify(name, log_ratio, kind, p, m, ctx) -> RatioCertificate:
    with ctx.workprec():
        ratio = mp.exp(log_ratio)
        if kind == "rational":
            rec = recognize_rational(ratio, _MAX_DEN, ctx)
            exact = None if rec is None else mp.mpf(rec.numerator) / rec.denominator
        else:
            rec = recognize_sqrtp(ratio, p, _MAX_DEN, ctx)
            exact = None if rec is None else (mp.mpf(rec.numerator) / rec.denominator
                                              * mp.sqrt(p))
        passed = False
        height = 0
        if rec is not None:
            height = max(abs(rec.numerator), rec.denominator)
            tol = mp.mpf(10) ** (20 - ctx.target_digits)
            passed = abs(ratio - exact) < tol * abs(ratio)
        return RatioCertificate(name=name, ratio=+ratio, kind=kind,
                                recognized=rec, height=height, m=m, passed=passed)


def residue_twist_certificate(p, r, ctx: PrecisionContext) -> RatioCertificate:
    """Certify prod Gamma(<ar/p>) over QRs a against the untwisted product.

    For eps(r) = +1 the twist permutes the residues, so the plain ratio
    is 1.  For eps(r) = -1 it lands on the non-residues, and by the
    Gamma multiplication formula the certified combination is sqrt(p)/p.
    """
    if not (is_prime(p) and p % 4 == 3 and p > 3):
        raise DomainError("p must be a prime = 3 mod 4 with p > 3")
    r = r % p
    if r == 0:
        raise DomainError("r must be nonzero mod p")
    disc = Discriminant(p)
    with ctx.workprec():
        num = mp.mpf(0)
        for a in range(1, p):
            if disc.epsilon(a) == 1:
                num += log_gamma(frac(Fraction(a * r, p)), ctx)
        qr = _qr_gamma_log(p, disc, ctx)
        if disc.epsilon(r) == 1:
            return _certify(f"residue-twist p={p} r={r}", num - qr,
                            "rational", p, None, ctx)
        log_ratio = num + qr - mp.mpf(p - 1) / 2 * mp.log(2 * mp.pi)
        return _certify(f"residue-twist p={p} r={r}", log_ratio,
                        "sqrtp", p, None, ctx)


def tate_twist_certificate(p, r, s, t, ctx: PrecisionContext) -> RatioCertificate:
    """Certify the beta period against the QR Gamma product.

    Needs a mixed triple, eps(r) + eps(s) + eps(t) = +-1.  At +1 the
    ratio is rational; at -1 it is rational * sqrt(p).  The m-invariant
    rides along as the twist exponent the comparison is taken at.
    """
    r, s, t = _check_triple(p, r, s, t)
    e = epsilon_rst(p, r, s, t)
    if abs(e) != 1:
        raise DomainError("tate certificate needs eps(r)+eps(s)+eps(t) = +-1")
    disc = Discriminant(p)
    m = m_invariant(p)
    name = f"tate-twist p={p} rst={r},{s},{t}"
    with ctx.workprec():
        logb = beta_period(p, r, s, t, ctx)
        qr = _qr_gamma_log(p, disc, ctx)
        if e == 1:
            return _certify(name, logb - qr, "rational", p, m, ctx)
        log_ratio = logb + qr - mp.mpf(p - 1) / 2 * mp.log(2 * mp.pi)
        return _certify(name, log_ratio, "sqrtp", p, m, ctx)
