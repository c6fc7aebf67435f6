"""Binary quadratic forms of negative discriminant and the class group.

A form (a, b, c) with a > 0 and b^2 - 4ac = -d < 0 corresponds to the
ideal [a, (-b + sqrt(-d))/2] of the imaginary quadratic order, i.e. to
the complex lattice a * (Z + Z*tau) with tau = (-b + i*sqrt(d)) / (2a).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from mpmath import mp

from .arith import divisors, factorize, is_prime, is_square, solve_linmod, sqrt_mod
from .errors import ConsistencyError, DomainError
from .numkernel import Lattice, PrecisionContext


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D | n)."""
    if n == 0:
        return 1 if D in (1, -1) else 0
    if D % 2 == 0 and n % 2 == 0:
        return 0
    sign = 1
    if n < 0:
        n = -n
        if D < 0:
            sign = -sign
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t % 2 == 1 and D % 8 in (3, 5):
        sign = -sign
    # Jacobi symbol (D | n) for odd n > 0, by quadratic reciprocity
    D %= n
    while D:
        t = 0
        while D % 2 == 0:
            D //= 2
            t += 1
        if t % 2 == 1 and n % 8 in (3, 5):
            sign = -sign
        if D % 4 == 3 and n % 4 == 3:
            sign = -sign
        D, n = n % D, D
    return sign if n == 1 else 0


def is_fundamental(d: int) -> bool:
    """True if -d is a fundamental imaginary quadratic discriminant."""
    if d <= 0:
        return False
    if d % 4 == 3:
        return all(e == 1 for e in factorize(d).values())
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (1, 2) and all(e == 1 for e in factorize(m).values())
    return False


@dataclass(frozen=True)
class Discriminant:
    """The field Q(sqrt(-d)); d > 0 with -d fundamental."""

    d: int

    def __post_init__(self) -> None:
        if not is_fundamental(self.d):
            raise DomainError(f"-{self.d} is not a fundamental discriminant")

    @property
    def w(self) -> int:
        """Number of roots of unity in the field."""
        if self.d == 3:
            return 6
        if self.d == 4:
            return 4
        return 2

    @property
    def is_prime_3mod4(self) -> bool:
        return self.d % 4 == 3 and is_prime(self.d)

    def epsilon(self, a: int) -> int:
        """The quadratic character (-d | a)."""
        return kronecker(-self.d, a)


def _dval(d) -> int:
    return d.d if isinstance(d, Discriminant) else int(d)


def kronecker_epsilon(a: int, d) -> int:
    """Character value epsilon(a) = (-d | a); d may be a Discriminant or int."""
    return kronecker(-_dval(d), a)


@dataclass(frozen=True)
class QuadForm:
    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if self.a <= 0:
            raise DomainError(f"form {self.tuple()} must have a > 0")
        if self.disc >= 0:
            raise DomainError(f"form {self.tuple()} must have negative discriminant")

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def value(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    @property
    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        return b >= 0 if (abs(b) == a or a == c) else True


def principal_form(d: int) -> QuadForm:
    b = d % 2
    return QuadForm(1, b, (d + b * b) // 4)


def reduce_form(f: QuadForm) -> QuadForm:
    a, b, c = f.a, f.b, f.c
    while True:
        if c < a or (c == a and b < 0):
            a, b, c = c, -b, a
            continue
        if b > a or b <= -a:
            r = b % (2 * a)
            if r > a:
                r -= 2 * a
            c += (r * r - b * b) // (4 * a)
            b = r
            continue
        if b < 0 and a == c:
            b = -b
            continue
        return QuadForm(a, b, c)


def compose(f: QuadForm, g: QuadForm) -> QuadForm:
    """Gauss composition of classes; the result is reduced."""
    if f.disc != g.disc:
        raise DomainError("cannot compose forms of different discriminants")
    a1, b1, c1 = f.tuple()
    a2, b2, _ = g.tuple()
    gg = (b1 + b2) // 2
    h = (b2 - b1) // 2
    w = gcd(gcd(a1, a2), gg)
    s, t, u = a1 // w, a2 // w, gg // w
    k0, step = solve_linmod(t * u, h * u + s * c1, s * t)
    n, _ = solve_linmod(t * step, h - t * k0, s)
    k = k0 + step * n
    l = (t * k - h) // s
    m = (t * u * k - h * u - s * c1) // (s * t)
    return reduce_form(QuadForm(s * t, w * u - (k * t + l * s), k * l - w * m))


def inverse(f: QuadForm) -> QuadForm:
    return reduce_form(QuadForm(f.a, -f.b, f.c))


def form_pow(f: QuadForm, n: int) -> QuadForm:
    if n < 0:
        return form_pow(inverse(f), -n)
    acc = principal_form(-f.disc)
    base = reduce_form(f)
    while n:
        if n & 1:
            acc = compose(acc, base)
        base = compose(base, base)
        n >>= 1
    return acc


@dataclass(frozen=True)
class ClassGroup:
    d: Discriminant
    forms: tuple[QuadForm, ...]

    @property
    def h(self) -> int:
        return len(self.forms)

    @property
    def principal(self) -> QuadForm:
        return self.forms[0]

    def __iter__(self):
        return iter(self.forms)

    def __len__(self) -> int:
        return len(self.forms)

    def __getitem__(self, i: int) -> QuadForm:
        return self.forms[i]


def reduced_forms(d) -> ClassGroup:
    """The class group of discriminant -d as reduced forms, principal first."""
    disc = d if isinstance(d, Discriminant) else Discriminant(d)
    d = disc.d
    out = []
    b = d % 2
    while b * b <= d // 3:
        m4 = b * b + d
        if m4 % 4 == 0:
            m = m4 // 4
            for a in divisors(m):
                if a * a > m:
                    break
                c = m // a
                if b <= a and gcd(gcd(a, b), c) == 1:
                    out.append(QuadForm(a, b, c))
                    if 0 < b < a < c:
                        out.append(QuadForm(a, -b, c))
        b += 2
    out.sort(key=lambda f: (f.a, abs(f.b), -f.b))
    if out[0] != principal_form(d):
        raise ConsistencyError(f"principal form missing for d={d}")
    return ClassGroup(disc, tuple(out))


def class_number(d: int) -> int:
    return reduced_forms(d).h


def class_number_dirichlet(d) -> int:
    """h(-d) by the finite character sum; exact rational arithmetic."""
    disc = d if isinstance(d, Discriminant) else Discriminant(d)
    d = disc.d
    s = sum(Fraction(disc.epsilon(a) * a, d) for a in range(1, d))
    h = -Fraction(disc.w, 2) * s
    if h.denominator != 1 or h <= 0:
        raise ConsistencyError(f"character sum gave h(-{d}) = {h}")
    return int(h)


def form_to_lattice(f: QuadForm, ctx: PrecisionContext) -> Lattice:
    """The ideal lattice a*(Z + Z*tau), tau = (-b + i*sqrt(d)) / (2a)."""
    d = -f.disc
    with ctx.workprec():
        tau = (-f.b + mp.mpc(0, 1) * mp.sqrt(d)) / (2 * f.a)
        return Lattice(tau=tau, scale=mp.mpf(f.a))


def inverse_ideal_lattice(f: QuadForm, ctx: PrecisionContext) -> Lattice:
    """The lattice of the inverse ideal, Z + Z*(b + i*sqrt(d))/(2a)."""
    d = -f.disc
    with ctx.workprec():
        tau = (f.b + mp.mpc(0, 1) * mp.sqrt(d)) / (2 * f.a)
        return Lattice(tau=tau, scale=mp.mpf(1))


@dataclass(frozen=True)
class QuadInteger:
    """(x + y*sqrt(-d))/2, integral in the maximal order of Q(sqrt(-d))."""

    x: int
    y: int
    d: int

    def __post_init__(self) -> None:
        if self.d <= 0:
            raise DomainError("QuadInteger requires d > 0")
        if (self.x - self.y * self.d) % 2 or (self.x * self.x + self.d * self.y * self.y) % 4:
            raise DomainError(f"({self.x} + {self.y}*sqrt(-{self.d}))/2 is not integral")

    @property
    def norm(self) -> int:
        return (self.x * self.x + self.d * self.y * self.y) // 4

    def conj(self) -> "QuadInteger":
        return QuadInteger(self.x, -self.y, self.d)

    def __neg__(self) -> "QuadInteger":
        return QuadInteger(-self.x, -self.y, self.d)

    def __mul__(self, other: "QuadInteger") -> "QuadInteger":
        if self.d != other.d:
            raise DomainError("mixed fields")
        x = (self.x * other.x - self.d * self.y * other.y) // 2
        y = (self.x * other.y + self.y * other.x) // 2
        return QuadInteger(x, y, self.d)

    def __pow__(self, n: int) -> "QuadInteger":
        if n < 0:
            raise DomainError("negative powers leave the order")
        acc = QuadInteger(2, 0, self.d)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc


def _cornacchia_primitive(d: int, m: int) -> list[tuple[int, int]]:
    # primitive solutions x^2 + d*y^2 = m, x,y >= 0, gcd(x,y) = 1
    sols = set()
    if m == 1:
        sols.add((1, 0))
    if m == d:
        sols.add((0, 1))
    for r in sqrt_mod(-d % m, m):
        if 2 * r > m:
            continue
        a, b = m, r
        while b * b >= m:
            a, b = b, a % b
        rem = m - b * b
        if rem % d == 0 and is_square(rem // d):
            y = isqrt(rem // d)
            if gcd(b, y) == 1:
                sols.add((b, y))
    return sorted(sols)


def cornacchia_all(d, n: int) -> list[QuadInteger]:
    """All elements (x + y*sqrt(-d))/2 of norm n with x, y >= 0.

    Solves x^2 + d*y^2 = 4n over each square divisor g^2 | 4n by root
    enumeration mod 4n/g^2 plus Euclidean descent.  Primitive solutions
    come first, then by increasing x.
    """
    d = _dval(d)
    if d <= 0 or n <= 0:
        raise DomainError("cornacchia needs d > 0 and n > 0")
    m = 4 * n
    sols = set()
    sq = 1
    for p, e in factorize(m).items():
        sq *= p ** (e // 2)
    for g in divisors(sq):
        for (x, y) in _cornacchia_primitive(d, m // (g * g)):
            sols.add((g * x, g * y))
    ordered = sorted(sols, key=lambda s: (0 if gcd(s[0], s[1]) == 1 else 1, s[0]))
    return [QuadInteger(x, y, d) for (x, y) in ordered]


def cornacchia(d, n: int) -> QuadInteger | None:
    """An element of norm n (first of cornacchia_all), or None."""
    sols = cornacchia_all(d, n)
    return sols[0] if sols else None
