"""
Laurent polynomials and rational functions over Q(zeta_m).

The involution ("bar") conjugates coefficients and sends t to 1/t, so on
the unit circle ``bar(a)(z) == conj(a(z))``. Rational functions are kept in
a canonical form: the denominator is a monic polynomial with nonzero
constant term, coprime to the numerator, and any power of t is moved into
the (Laurent) numerator. Equality is therefore structural.

Dense polynomials over the field are plain lists of CyclotomicNumber,
lowest degree first, without trailing zeros; the helpers ``poly_*`` below
operate on that representation.
"""

import re
from fractions import Fraction

from flint import acb, ctx

from .errors import ConductorMismatchError, IndeterminateError, PoleError
from .field import (
    CertifiedInterval,
    CyclotomicNumber,
    default_precision,
    lcm,
    zeta,
)

__all__ = [
    "LaurentPoly",
    "RationalFunction",
    "parse_expr",
    "eval_root_of_unity",
    "eval_numeric",
    "poly_mul",
    "poly_divmod",
    "poly_gcd",
    "poly_squarefree",
    "poly_lcm",
]


def _as_field(m, c):
    if isinstance(c, CyclotomicNumber):
        if c.m != m:
            raise ConductorMismatchError(f"coefficient in Q(zeta_{c.m}) used over Q(zeta_{m})")
        return c
    return CyclotomicNumber.rational(m, c)


# ---------------------------------------------------------------------------
# dense polynomials over Q(zeta_m)


def poly_trim(p):
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def poly_add(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return poly_trim(out)


def poly_sub(p, q):
    return poly_add(p, [-c for c in q])


def poly_scale(p, c):
    if c.is_zero():
        return []
    return [a * c for a in p]


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [None] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            term = a * b
            out[i + j] = term if out[i + j] is None else out[i + j] + term
    zero = p[0] * 0
    return poly_trim([zero if c is None else c for c in out])


def poly_divmod(p, q):
    q = poly_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    inv = q[-1].inverse()
    dq = len(q) - 1
    if len(r) <= dq:
        return [], poly_trim(r)
    quot = [None] * (len(r) - dq)
    for k in range(len(r) - 1, dq - 1, -1):
        c = r[k] * inv
        quot[k - dq] = c
        if c.is_zero():
            continue
        for i in range(dq + 1):
            r[k - dq + i] = r[k - dq + i] - c * q[i]
    return poly_trim(quot), poly_trim(r[:dq])


def poly_monic(p):
    if not p:
        return []
    inv = p[-1].inverse()
    return [c * inv for c in p]


def poly_gcd(p, q):
    """Monic gcd; gcd(0, 0) = 0."""
    a, b = poly_trim(p), poly_trim(q)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return poly_monic(a)


def poly_deriv(p):
    return poly_trim([c * i for i, c in enumerate(p)][1:])


def poly_squarefree(p):
    """Monic squarefree part (product of the distinct irreducible factors)."""
    p = poly_trim(p)
    if len(p) <= 1:
        return poly_monic(p)
    g = poly_gcd(p, poly_deriv(p))
    return poly_monic(poly_divmod(p, g)[0])


def poly_lcm(p, q):
    if not p or not q:
        return []
    g = poly_gcd(p, q)
    return poly_monic(poly_mul(poly_divmod(p, g)[0], q))


def poly_eval(p, x):
    acc = x * 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_galois(p, k):
    return [c.galois(k) for c in p]


# ---------------------------------------------------------------------------


class LaurentPoly:
    """Finite sum of c_e t^e with coefficients in Q(zeta_m); sparse by exponent."""

    __slots__ = ("m", "terms")

    def __init__(self, m, terms=None):
        self.m = int(m)
        clean = {}
        for e, c in (terms or {}).items():
            c = _as_field(self.m, c)
            if not c.is_zero():
                clean[int(e)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, m, terms):
        obj = cls.__new__(cls)
        obj.m = m
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, m, c):
        return cls(m, {0: c})

    @classmethod
    def monomial(cls, m, e, c=1):
        return cls(m, {e: c})

    @classmethod
    def from_dense(cls, m, p, shift=0):
        return cls._raw(m, {i + shift: c for i, c in enumerate(p) if not c.is_zero()})

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or set(self.terms) == {0}

    def constant_term(self):
        return self.terms.get(0, CyclotomicNumber(self.m))

    def valuation(self):
        return min(self.terms) if self.terms else None

    def degree(self):
        return max(self.terms) if self.terms else None

    def to_dense(self):
        """(shift, p) with self = t^shift * p(t) and p(0) != 0."""
        if not self.terms:
            return 0, []
        lo, hi = self.valuation(), self.degree()
        zero = CyclotomicNumber(self.m)
        return lo, [self.terms.get(e, zero) for e in range(lo, hi + 1)]

    def _check(self, other):
        if isinstance(other, LaurentPoly):
            if other.m != self.m:
                raise ConductorMismatchError(f"conductors {self.m} and {other.m} differ")
            return other
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return LaurentPoly.constant(self.m, other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out[e] + c if e in out else c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return LaurentPoly._raw(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.m, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return LaurentPoly._raw(self.m, {e: c for e, c in out.items() if not c.is_zero()})

    __rmul__ = __mul__

    def shift(self, k):
        return LaurentPoly._raw(self.m, {e + k: c for e, c in self.terms.items()})

    def bar(self):
        return LaurentPoly._raw(self.m, {-e: c.conjugate() for e, c in self.terms.items()})

    def galois(self, k):
        return LaurentPoly._raw(self.m, {e: c.galois(k) for e, c in self.terms.items()})

    def lift(self, m2):
        return LaurentPoly._raw(m2, {e: c.lift(m2) for e, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.m == other.m and self.terms == other.terms
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return self == LaurentPoly.constant(self.m, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def eval_root_of_unity(self, N, j):
        """Value at t = zeta_N^j, in Q(zeta_lcm(m, N))."""
        M = lcm(self.m, N)
        step = (j * (M // N)) % M
        acc = CyclotomicNumber(M)
        for e, c in self.terms.items():
            acc = acc + c.lift(M) * zeta(M, e * step)
        return acc

    def eval_ball(self, z, k=1, prec=None):
        """Arb ball for sigma_k(self) at the ball z."""
        prec = prec or default_precision()
        with ctx.workprec(prec):
            acc = acb(0)
            zinv = None
            for e, c in self.terms.items():
                if e < 0 and zinv is None:
                    if z.contains(0):
                        raise IndeterminateError("evaluation point ball contains 0")
                    zinv = 1 / z
                acc += c.to_acb(prec, k) * (z ** e if e >= 0 else zinv ** (-e))
            return acc

    def __repr__(self):
        return f"LaurentPoly({self.m}, {{{', '.join(f'{e}: {c}' for e, c in sorted(self.terms.items()))}}})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            cs = str(c)
            coef = cs if c.is_rational() else f"({cs})"
            if e == 0:
                parts.append(coef)
            else:
                mono = "t" if e == 1 else f"t^{e}"
                parts.append(mono if cs == "1" else f"-{mono}" if cs == "-1" else f"{coef}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


class RationalFunction:
    """num/den over Q(zeta_m), stored in canonical form."""

    __slots__ = ("m", "num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, LaurentPoly):
            raise TypeError("numerator must be a LaurentPoly; use RationalFunction.constant")
        m = num.m
        if den is None:
            den = LaurentPoly.constant(m, 1)
        if den.m != m:
            raise ConductorMismatchError("numerator and denominator conductors differ")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.m = m
        self.num, self.den = _canonical(num, den)

    @classmethod
    def _raw(cls, num, den):
        obj = cls.__new__(cls)
        obj.m = num.m
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def constant(cls, m, c):
        return cls._raw(LaurentPoly.constant(m, c), LaurentPoly.constant(m, 1))

    @classmethod
    def laurent(cls, p):
        return cls._raw(p, LaurentPoly.constant(p.m, 1))

    @classmethod
    def t(cls, m, e=1):
        return cls.laurent(LaurentPoly.monomial(m, e))

    def _check(self, other):
        if isinstance(other, RationalFunction):
            if other.m != self.m:
                raise ConductorMismatchError(f"conductors {self.m} and {other.m} differ")
            return other
        if isinstance(other, LaurentPoly):
            return RationalFunction.laurent(other)
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return RationalFunction.constant(self.m, other)
        return NotImplemented

    def is_laurent(self):
        return self.den.is_constant()

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.constant_term()

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if self.is_laurent() and other.is_laurent():
            return RationalFunction.laurent(self.num + other.num)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if self.is_laurent() and other.is_laurent():
            return RationalFunction.laurent(self.num * other.num)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e):
        e = int(e)
        base = self if e >= 0 else self.inverse()
        out = RationalFunction.constant(self.m, 1)
        for _ in range(abs(e)):
            out = out * base
        return out

    def bar(self):
        if self.is_laurent():
            return RationalFunction.laurent(self.num.bar())
        return RationalFunction(self.num.bar(), self.den.bar())

    def galois(self, k):
        # sigma_k preserves monic-ness and coprimality, so the form stays canonical.
        return RationalFunction._raw(self.num.galois(k), self.den.galois(k))

    def lift(self, m2):
        return RationalFunction._raw(self.num.lift(m2), self.den.lift(m2))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber, LaurentPoly)):
            other = self._check(other)
        if isinstance(other, RationalFunction):
            return self.m == other.m and self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def denominator_poly(self):
        """Dense monic denominator (its roots are exactly the poles)."""
        return self.den.to_dense()[1]

    def eval_root_of_unity(self, N, j):
        return eval_root_of_unity(self, N, j)

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.is_laurent():
            return str(self.num)
        return f"({self.num})/({self.den})"


def _canonical(num, den):
    m = num.m
    if num.is_zero():
        return num, LaurentPoly.constant(m, 1)
    if den.is_constant():
        c = den.constant_term()
        if c == 1:
            return num, den
        inv = c.inverse()
        return LaurentPoly._raw(m, {e: a * inv for e, a in num.terms.items()}), LaurentPoly.constant(m, 1)
    a, n0 = num.to_dense()
    b, d0 = den.to_dense()
    g = poly_gcd(n0, d0)
    if len(g) > 1:
        n0 = poly_divmod(n0, g)[0]
        d0 = poly_divmod(d0, g)[0]
    inv = d0[-1].inverse()
    n0 = [c * inv for c in n0]
    d0 = [c * inv for c in d0]
    return LaurentPoly.from_dense(m, n0, a - b), LaurentPoly.from_dense(m, d0)


def eval_root_of_unity(a, N, j):
    """Exact value of a at t = zeta_N^j, an element of Q(zeta_lcm(m, N))."""
    N = int(N)
    if N < 1:
        raise ValueError("order N must be positive")
    j %= N
    d = a.den.eval_root_of_unity(N, j)
    if d.is_zero():
        raise PoleError(f"pole at t = zeta_{N}^{j}", point=(N, j))
    n = a.num.eval_root_of_unity(N, j)
    return n if a.is_laurent() else n / d


def eval_numeric(a, rho, z, precision=None):
    """Certified rectangle containing rho(a)(z) for a point rectangle z."""
    precision = precision or default_precision()
    zb = z.to_acb() if isinstance(z, CertifiedInterval) else z
    k = 1 if rho is None else rho.exponent
    num = a.num.eval_ball(zb, k, precision)
    if a.is_laurent():
        return CertifiedInterval.from_acb(num, precision)
    den = a.den.eval_ball(zb, k, precision)
    if den.contains(0):
        raise IndeterminateError("denominator ball contains zero; refine the evaluation point")
    with ctx.workprec(precision):
        return CertifiedInterval.from_acb(num / den, precision)


# ---------------------------------------------------------------------------
# a small expression language for hand-written entries: t, z (= zeta_m),
# i (= zeta_4, needs 4 | m), integers, + - * / ^ and parentheses.

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)|(\*\*|[-+*/^()]))")


def parse_expr(text, m):
    """Parse e.g. ``"z + z^-1"`` or ``"i*(1-t^-1)/(1-i)"`` over Q(zeta_m)."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        tokens.append(mt.group(1) or mt.group(2) or ("^" if mt.group(3) == "**" else mt.group(3)))
        pos = mt.end()
    tokens.append(None)
    idx = [0]

    def peek():
        return tokens[idx[0]]

    def take(expected=None):
        tok = tokens[idx[0]]
        if expected is not None and tok != expected:
            raise ValueError(f"expected {expected!r} in {text!r}, found {tok!r}")
        idx[0] += 1
        return tok

    def expr():
        val = term()
        while peek() in ("+", "-"):
            val = val + term() if take() == "+" else val - term()
        return val

    def term():
        val = factor()
        while peek() in ("*", "/"):
            val = val * factor() if take() == "*" else val / factor()
        return val

    def factor():
        if peek() == "-":
            take()
            return -factor()
        if peek() == "+":
            take()
            return factor()
        return power()

    def power():
        base = atom()
        if peek() == "^":
            take()
            sign = 1
            while peek() in ("-", "+"):
                sign = -sign if take() == "-" else sign
            if peek() == "(":
                take()
                sign2 = -1 if peek() == "-" else 1
                if peek() in ("-", "+"):
                    take()
                e = sign2 * int(take())
                take(")")
            else:
                e = int(take())
            return base ** (sign * e)
        return base

    def atom():
        tok = take()
        if tok is None:
            raise ValueError(f"unexpected end of {text!r}")
        if tok == "(":
            val = expr()
            take(")")
            return val
        if tok.isdigit():
            return RationalFunction.constant(m, int(tok))
        if tok == "t":
            return RationalFunction.t(m)
        if tok in ("z", "zeta"):
            return RationalFunction.constant(m, zeta(m))
        if tok == "i":
            if m % 4:
                raise ValueError(f"i is not in Q(zeta_{m})")
            return RationalFunction.constant(m, zeta(m, m // 4))
        raise ValueError(f"unknown symbol {tok!r} in {text!r}")

    out = expr()
    if peek() is not None:
        raise ValueError(f"trailing input in {text!r}")
    return out
