"""
Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(m)-1),
reduced modulo the m-th cyclotomic polynomial, so two elements are equal
exactly when their coefficient vectors agree. The polynomial arithmetic
itself is delegated to FLINT (``fmpq_poly``); certified numerics use Arb
balls.

Embeddings are the Galois automorphisms zeta -> zeta^k followed by the
standard complex embedding zeta_m = exp(2 pi i / m). All of them commute
with complex conjugation, since the Galois group is abelian.

    >>> z = zeta(8)
    >>> (z + z.conjugate())**2
    CyclotomicNumber(8, [2, 0, 0, 0])
"""

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from flint import acb, acb_poly, arb, ctx, fmpq, fmpq_poly, fmpz_poly

from .errors import ConductorMismatchError, RefinementBudgetExceeded

__all__ = [
    "CyclotomicNumber",
    "Embedding",
    "CertifiedInterval",
    "zeta",
    "euler_phi",
    "cyclotomic_polynomial",
    "embeddings_G0",
    "embed_numeric",
    "real_sign",
    "lift_to_compositum",
    "common_conductor",
    "default_precision",
    "DEFAULT_MAX_REFINE",
]

DEFAULT_MAX_REFINE = 14


def default_precision():
    """Starting working precision in bits (env ``WITTSIG_PRECISION_START``)."""
    return int(os.environ.get("WITTSIG_PRECISION_START", "64"))


def lcm(*args):
    out = 1
    for a in args:
        out = out * a // gcd(out, a)
    return out


def common_conductor(*ms):
    return lcm(*ms)


@lru_cache(maxsize=None)
def euler_phi(m):
    if m < 1:
        raise ValueError("conductor must be positive")
    result, n, p = m, m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m):
    """Phi_m as an ``fmpq_poly``."""
    return fmpq_poly(fmpz_poly.cyclotomic(m))


def to_fraction(x):
    """Convert ints, Fractions, fmpq and "p/q" strings to ``Fraction``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, fmpq):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


def _fmpq(x):
    x = to_fraction(x)
    return fmpq(x.numerator, x.denominator)


class CyclotomicNumber:
    """An element of Q(zeta_m) in the reduced power basis.

    ``coeffs`` may be any sequence of rationals; it is read as
    sum c_i zeta^i and reduced modulo Phi_m, so it need not have length
    phi(m) on input. Instances are immutable.
    """

    __slots__ = ("m", "_poly")

    def __init__(self, m, coeffs=()):
        m = int(m)
        if m < 1:
            raise ValueError("conductor must be a positive integer")
        if isinstance(coeffs, fmpq_poly):
            poly = coeffs
        else:
            poly = fmpq_poly([_fmpq(c) for c in coeffs])
        self.m = m
        self._poly = poly % cyclotomic_polynomial(m) if poly.degree() >= euler_phi(m) else poly

    @classmethod
    def _raw(cls, m, poly):
        obj = cls.__new__(cls)
        obj.m = m
        obj._poly = poly
        return obj

    @classmethod
    def rational(cls, m, q):
        return cls._raw(m, fmpq_poly([_fmpq(q)]))

    @property
    def phi(self):
        return euler_phi(self.m)

    @property
    def coeffs(self):
        """Exactly phi(m) Fractions."""
        cs = [to_fraction(c) for c in self._poly.coeffs()]
        return tuple(cs + [Fraction(0)] * (self.phi - len(cs)))

    def is_zero(self):
        return self._poly.is_zero()

    def __bool__(self):
        return not self._poly.is_zero()

    def is_rational(self):
        return self._poly.degree() <= 0

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return to_fraction(self._poly.coeffs()[0]) if not self.is_zero() else Fraction(0)

    def is_real(self):
        """True when fixed by complex conjugation."""
        return self == self.conjugate()

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.m != self.m:
                raise ConductorMismatchError(
                    f"conductors {self.m} and {other.m} differ; lift both to "
                    f"Q(zeta_{lcm(self.m, other.m)}) first"
                )
            return other._poly
        if isinstance(other, (int, Fraction, fmpq)):
            return fmpq_poly([_fmpq(other)])
        return NotImplemented

    def __add__(self, other):
        p = self._coerce(other)
        if p is NotImplemented:
            return p
        return CyclotomicNumber._raw(self.m, self._poly + p)

    __radd__ = __add__

    def __sub__(self, other):
        p = self._coerce(other)
        if p is NotImplemented:
            return p
        return CyclotomicNumber._raw(self.m, self._poly - p)

    def __rsub__(self, other):
        p = self._coerce(other)
        if p is NotImplemented:
            return p
        return CyclotomicNumber._raw(self.m, p - self._poly)

    def __neg__(self):
        return CyclotomicNumber._raw(self.m, -self._poly)

    def __pos__(self):
        return self

    def __mul__(self, other):
        p = self._coerce(other)
        if p is NotImplemented:
            return p
        prod = self._poly * p
        if prod.degree() >= self.phi:
            prod = prod % cyclotomic_polynomial(self.m)
        return CyclotomicNumber._raw(self.m, prod)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self._poly.degree() == 0:
            return CyclotomicNumber._raw(self.m, fmpq_poly([1 / self._poly.coeffs()[0]]))
        g, s, _ = self._poly.xgcd(cyclotomic_polynomial(self.m))
        # Phi_m is irreducible, so g is a nonzero constant.
        return CyclotomicNumber._raw(self.m, (s / g.coeffs()[0]) % cyclotomic_polynomial(self.m))

    def __truediv__(self, other):
        if isinstance(other, CyclotomicNumber):
            self._coerce(other)
            return self * other.inverse()
        if isinstance(other, (int, Fraction, fmpq)):
            if other == 0:
                raise ZeroDivisionError("division by zero in a cyclotomic field")
            return CyclotomicNumber._raw(self.m, self._poly / _fmpq(other))
        return NotImplemented

    def __rtruediv__(self, other):
        p = self._coerce(other)
        if p is NotImplemented:
            return p
        return CyclotomicNumber._raw(self.m, p) * self.inverse()

    def __pow__(self, e):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        result = CyclotomicNumber._raw(self.m, fmpq_poly([1]))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CyclotomicNumber) and other.m != self.m:
            return False
        p = self._coerce(other)
        if p is NotImplemented:
            return p
        return self._poly == p

    def __hash__(self):
        return hash((self.m, tuple((int(c.p), int(c.q)) for c in self._poly.coeffs())))

    def __repr__(self):
        return f"CyclotomicNumber({self.m}, [{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "z" if i == 1 else f"z^{i}"
                terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"({c})*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def galois(self, k):
        """Image under the automorphism zeta -> zeta^k (gcd(k, m) = 1)."""
        m = self.m
        k %= m
        if m <= 2 or k == 1:
            return self
        if gcd(k, m) != 1:
            raise ValueError(f"exponent {k} is not a unit modulo {m}")
        cs = self._poly.coeffs()
        if len(cs) <= 1:
            return self
        out = [fmpq(0)] * m
        for i, c in enumerate(cs):
            if c != 0:
                out[(i * k) % m] += c
        return CyclotomicNumber(m, fmpq_poly(out))

    def conjugate(self):
        return self.galois(-1)

    def lift(self, m2):
        """The same element viewed in Q(zeta_m2); requires m | m2."""
        m2 = int(m2)
        if m2 % self.m:
            raise ValueError(f"cannot lift from Q(zeta_{self.m}) to Q(zeta_{m2}): {self.m} does not divide {m2}")
        if m2 == self.m:
            return self
        s = m2 // self.m
        cs = self._poly.coeffs()
        if len(cs) <= 1:
            return CyclotomicNumber._raw(m2, self._poly)
        out = [fmpq(0)] * ((len(cs) - 1) * s + 1)
        for i, c in enumerate(cs):
            out[i * s] = c
        return CyclotomicNumber(m2, fmpq_poly(out))

    def to_acb(self, prec, k=1):
        """Arb ball containing sigma_k(self) under zeta_m = exp(2 pi i/m)."""
        with ctx.workprec(prec):
            cs = self._poly.coeffs()
            if len(cs) <= 1:
                return acb(cs[0]) if cs else acb(0)
            z = _zeta_ball(self.m, k % self.m, prec)
            return acb_poly(cs)(z)

    def __complex__(self):
        v = self.to_acb(64)
        return complex(float(v.real.mid()), float(v.imag.mid()))


@lru_cache(maxsize=4096)
def _zeta_ball(m, k, prec):
    with ctx.workprec(prec + 10):
        s, c = arb.sin_cos_pi_fmpq(fmpq(2 * k, m))
        return acb(c, s)


def zeta(m, k=1):
    """zeta_m^k as a CyclotomicNumber."""
    m = int(m)
    return _zeta_power(m, k % m)


@lru_cache(maxsize=65536)
def _zeta_power(m, e):
    if e >= euler_phi(m):
        return CyclotomicNumber(m, fmpq_poly([0] * e + [1]))
    return CyclotomicNumber._raw(m, fmpq_poly([0] * e + [1]))


def lift_to_compositum(x, m2):
    return x.lift(m2)


@dataclass(frozen=True, order=True)
class Embedding:
    """The embedding rho_k: zeta_m -> zeta_m^k of Q(zeta_m) into C."""

    conductor: int
    exponent: int

    def __post_init__(self):
        m = self.conductor
        if m < 1:
            raise ValueError("conductor must be positive")
        k = 1 if m <= 2 else self.exponent % m
        if gcd(k, m) != 1:
            raise ValueError(f"exponent {self.exponent} is not coprime to {m}")
        object.__setattr__(self, "exponent", k)

    def conjugate(self):
        return Embedding(self.conductor, -self.exponent)

    def __call__(self, x):
        """Exact image sigma_k(x), read through the standard embedding."""
        if x.m != self.conductor:
            raise ConductorMismatchError(f"embedding of Q(zeta_{self.conductor}) applied to element of Q(zeta_{x.m})")
        return x.galois(self.exponent)

    def extend(self, m2):
        """An embedding of Q(zeta_m2) restricting to this one on Q(zeta_m)."""
        if m2 % self.conductor:
            raise ValueError("extension field must contain this one")
        k = self.exponent
        while gcd(k, m2) != 1:
            k += self.conductor
        return Embedding(m2, k)


def embeddings_G0(m):
    """One embedding from each complex-conjugate pair, smallest exponent first."""
    if m <= 2:
        return [Embedding(m, 1)]
    return [Embedding(m, k) for k in range(1, m) if gcd(k, m) == 1 and k < m - k]


def _arb_endpoint(a):
    man, exp = a.man_exp()
    man, exp = int(man), int(exp)
    return Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2 ** (-exp))


def arb_to_fractions(a):
    """(midpoint, radius) of an arb ball as exact Fractions."""
    return _arb_endpoint(a.mid()), _arb_endpoint(a.rad())


def arb_bounds(a):
    """Exact rational lower and upper bounds of an arb ball."""
    return _arb_endpoint(a.lower()), _arb_endpoint(a.upper())


@dataclass(frozen=True)
class CertifiedInterval:
    """A rectangle in C (rational centre and radii) containing a true value."""

    re_mid: Fraction
    re_rad: Fraction
    im_mid: Fraction
    im_rad: Fraction
    precision: int = 0

    @classmethod
    def from_acb(cls, z, precision=0):
        rm, rr = arb_to_fractions(z.real)
        im, ir = arb_to_fractions(z.imag)
        return cls(rm, rr, im, ir, precision)

    @classmethod
    def exact(cls, re, im=0):
        return cls(to_fraction(re), Fraction(0), to_fraction(im), Fraction(0))

    def to_acb(self):
        with ctx.workprec(max(self.precision, 64) + 20):
            re = arb(_fmpq(self.re_mid), _fmpq(self.re_rad))
            im = arb(_fmpq(self.im_mid), _fmpq(self.im_rad))
            return acb(re, im)

    @property
    def radius(self):
        return max(self.re_rad, self.im_rad)

    def contains(self, value):
        if isinstance(value, CertifiedInterval):
            return (abs(value.re_mid - self.re_mid) + value.re_rad <= self.re_rad
                    and abs(value.im_mid - self.im_mid) + value.im_rad <= self.im_rad)
        value = complex(value)
        return (abs(value.real - float(self.re_mid)) <= float(self.re_rad) * (1 + 1e-12) + 1e-300
                and abs(value.imag - float(self.im_mid)) <= float(self.im_rad) * (1 + 1e-12) + 1e-300)

    def overlaps(self, other):
        return (abs(self.re_mid - other.re_mid) <= self.re_rad + other.re_rad
                and abs(self.im_mid - other.im_mid) <= self.im_rad + other.im_rad)

    def contains_zero(self):
        return abs(self.re_mid) <= self.re_rad and abs(self.im_mid) <= self.im_rad

    def __complex__(self):
        return complex(float(self.re_mid), float(self.im_mid))


def embed_numeric(x, rho, precision=None):
    """Certified rectangle around rho(x)."""
    if x.m != rho.conductor:
        raise ConductorMismatchError(f"embedding of Q(zeta_{rho.conductor}) applied to element of Q(zeta_{x.m})")
    precision = precision or default_precision()
    if x.is_zero():
        return CertifiedInterval.exact(0)
    return CertifiedInterval.from_acb(x.to_acb(precision, rho.exponent), precision)


def real_sign(x, rho=None, precision=None, max_refine=DEFAULT_MAX_REFINE, check=True):
    """Exact sign of the real number rho(x), for conjugation-fixed x.

    Zero is decided by the canonical representation; otherwise precision
    doubles until the Arb ball around rho(x) excludes zero.
    """
    if x.is_zero():
        return 0
    k = 1 if rho is None else rho.exponent
    if rho is not None and rho.conductor != x.m:
        raise ConductorMismatchError(f"embedding of Q(zeta_{rho.conductor}) applied to element of Q(zeta_{x.m})")
    if x.is_rational():
        return 1 if x.to_fraction() > 0 else -1
    if check and not x.is_real():
        raise ValueError(f"{x!r} is not fixed by complex conjugation")
    prec = precision or default_precision()
    for _ in range(max_refine + 1):
        v = x.to_acb(prec, k).real
        if v > 0:
            return 1
        if v < 0:
            return -1
        prec *= 2
    raise RefinementBudgetExceeded(f"could not determine the sign of {x!r} at {prec // 2} bits")
