"""
Certified location of the unit-circle roots of a polynomial with
cyclotomic coefficients.

Approximate roots come from mpmath; every claim made from them is then
certified in Arb ball arithmetic with Gerschgorin disks built from the
Weierstrass corrections: for a squarefree p of degree n and pairwise
distinct approximations z_1..z_n, every root lies in the union of the
disks D(z_j - W_j, (n - 1)|W_j|), W_j = p(z_j) / (lc(p) prod_{i != j}(z_j - z_i)),
and a connected union of k disks holds exactly k roots. Precision doubles
until the disks are disjoint and the angular shadows of the disks meeting
the unit circle are disjoint too.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath
from flint import acb, acb_poly, arb, ctx, fmpq

from .errors import RefinementBudgetExceeded
from .field import DEFAULT_MAX_REFINE, arb_bounds, default_precision, lcm, zeta

# Largest order N tried when recognising a certified root as zeta_N^j.
ROOT_OF_UNITY_BOUND = 720
# Skip the exact check when the compositum would be larger than this.
MAX_EXACT_CONDUCTOR = 20000


@dataclass(frozen=True)
class ExactPoint:
    """The root of unity t = zeta_N^j, stored in lowest terms (j in [0, N))."""

    N: int
    j: int

    def __post_init__(self):
        N, j = int(self.N), int(self.j) % int(self.N)
        g = gcd(j, N)
        object.__setattr__(self, "N", N // g)
        object.__setattr__(self, "j", j // g)

    @classmethod
    def from_angle(cls, turns):
        turns = Fraction(turns) % 1
        return cls(turns.denominator, turns.numerator)

    @property
    def angle(self):
        return Fraction(self.j, self.N)

    @property
    def lo(self):
        return self.angle

    @property
    def hi(self):
        return self.angle

    def to_json(self):
        return {"type": "exact", "N": self.N, "j": self.j}

    def __str__(self):
        return "t=1" if self.N == 1 else f"t=zeta_{self.N}^{self.j}"


@dataclass(frozen=True)
class IsolatedPoint:
    """An angle interval [lo, hi] (in turns, 0 <= lo < 1, hi - lo < 1/2)
    that contains exactly one root of ``polynomial`` near the circle."""

    lo: Fraction
    hi: Fraction
    polynomial: str = ""

    @property
    def angle(self):
        return (self.lo + self.hi) / 2

    def to_json(self):
        return {"type": "isolated", "angle_lo": str(self.lo), "angle_hi": str(self.hi)}

    def __str__(self):
        return f"t=exp(2 pi i x), x in [{float(self.lo):.12g}, {float(self.hi):.12g}]"


def _mpf(a):
    man, exp = a.mid().man_exp()
    return mpmath.mpf((int(man), int(exp)))


def _to_acb(z):
    def conv(x):
        sign, man, exp, _ = x._mpf_
        man, exp = (-int(man) if sign else int(man)), int(exp)
        return fmpq(man * 2**exp) if exp >= 0 else fmpq(man, 2 ** (-exp))
    z = mpmath.mpc(z)
    return acb(arb(conv(z.real)), arb(conv(z.imag)))


def _approximate_roots(coeffs, prec):
    """Approximate roots of the polynomial with acb coefficient balls (low degree first)."""
    with mpmath.workprec(prec):
        cs = [mpmath.mpc(_mpf(c.real), _mpf(c.imag)) for c in reversed(coeffs)]
        steps = 50 + 10 * len(cs)
        for _ in range(4):
            try:
                return mpmath.polyroots(cs, maxsteps=steps, extraprec=prec)
            except mpmath.libmp.NoConvergence:
                steps *= 4
    return None


@dataclass
class _Disk:
    center: acb       # exact midpoint
    radius: arb       # upper bound, exact
    abs_center: arb


def _certify(coeffs, approx, prec):
    n = len(coeffs) - 1
    with ctx.workprec(prec):
        poly = acb_poly(coeffs)
        lc = coeffs[-1]
        zs = [_to_acb(z) for z in approx]
        disks = []
        for j, z in enumerate(zs):
            denom = lc
            for i, y in enumerate(zs):
                if i != j:
                    denom = denom * (z - y)
            if denom.contains(0):
                return None
            w = poly(z) / denom
            c = z - w
            mid = c.mid()
            r = (abs(c - mid) + (n - 1) * abs(w)).upper()
            disks.append(_Disk(mid, arb(r), abs(mid)))
        for a in range(n):
            for b in range(a + 1, n):
                if not abs(disks[a].center - disks[b].center) > disks[a].radius + disks[b].radius:
                    return None
    return disks


def _meets_circle(d):
    return not (d.abs_center - 1 > d.radius or 1 - d.abs_center > d.radius)


def _shadow(d, prec):
    """Outward rational bounds (turns) on the arguments of points of the disk."""
    with ctx.workprec(prec):
        if not d.abs_center > 2 * d.radius:
            return None
        two_pi = 2 * arb.pi()
        mid = d.center.arg() / two_pi
        half = (d.radius / d.abs_center).asin() / two_pi
        lo = arb_bounds(mid - half)[0]
        hi = arb_bounds(mid + half)[1]
    if hi - lo >= Fraction(1, 2):
        return None
    if lo < 0:
        lo, hi = lo + 1, hi + 1
    return lo, hi


def _cyclic_disjoint(intervals):
    s = sorted(intervals)
    for (lo1, hi1), (lo2, _) in zip(s, s[1:]):
        if not hi1 < lo2:
            return False
    return len(s) < 2 or s[-1][1] < s[0][0] + 1


def _exact_root(poly, N, j):
    """Is zeta_N^j a root of the dense polynomial ``poly`` (exactly)?"""
    m = poly[0].m
    M = lcm(m, N)
    if M > MAX_EXACT_CONDUCTOR:
        return False
    z = zeta(M, (j * (M // N)) % M)
    acc = poly[-1].lift(M)
    for c in reversed(poly[:-1]):
        acc = acc * z + c.lift(M)
    return acc.is_zero()


def _in_interval(x, lo, hi):
    x = Fraction(x) % 1
    return lo <= x <= hi or lo <= x + 1 <= hi


def circle_candidates(poly, label="", precision=None, max_refine=DEFAULT_MAX_REFINE,
                      bound=ROOT_OF_UNITY_BOUND):
    """Points of S^1 covering every unit-circle root of the squarefree ``poly``.

    ``poly`` is a dense list of CyclotomicNumbers (low degree first, nonzero
    constant term) already twisted by the embedding. Roots recognised as
    roots of unity become ExactPoints; any other root whose Gerschgorin disk
    meets the circle becomes an IsolatedPoint. Sorted by angle.
    """
    n = len(poly) - 1
    if n <= 0:
        return []
    prec = max(precision or default_precision(), 53)
    for _ in range(max_refine + 1):
        coeffs = [c.to_acb(prec) for c in poly]
        approx = _approximate_roots(coeffs, prec)
        disks = _certify(coeffs, approx, prec) if approx is not None else None
        if disks is not None:
            on = [d for d in disks if _meets_circle(d)]
            shadows = [_shadow(d, prec) for d in on]
            if all(s is not None for s in shadows) and _cyclic_disjoint(shadows):
                return _build_points(poly, on, shadows, label, bound)
        prec *= 2
    raise RefinementBudgetExceeded(f"could not isolate the roots of {label or poly} at {prec // 2} bits")


def _build_points(poly, disks, shadows, label, bound):
    points = []
    for d, (lo, hi) in zip(disks, shadows):
        guess = Fraction(float((d.center.arg() / (2 * arb.pi())).mid())).limit_denominator(bound) % 1
        if _in_interval(guess, lo, hi) and _exact_root(poly, guess.denominator, guess.numerator):
            points.append(ExactPoint(guess.denominator, guess.numerator))
        else:
            points.append(IsolatedPoint(lo, hi, label))
    return sorted(points, key=lambda p: p.lo)
