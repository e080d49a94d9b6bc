"""
Hermitian forms over Q(zeta_m) and Q(zeta_m)(t), formal Witt classes,
and the structural maps between forms, isometry triples and forms over
residue fields F[t, 1/t]/p(t).

Conventions
-----------
A gram matrix G represents theta(v, w) = v^* G w: conjugate-linear in the
first slot, linear in the second. A form is epsilon-hermitian when
``bar(G)^T == epsilon * G``. Signatures of skew-hermitian (epsilon = -1)
forms are taken of ``i * G`` after embedding, never of a symbolic twist.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import linalg
from .errors import (
    ConductorMismatchError,
    ConsistencyError,
    HermitianViolation,
    SingularFormError,
    UnsupportedPolynomialError,
)
from .field import (
    CyclotomicNumber,
    embeddings_G0,
    euler_phi,
    lcm,
    real_sign,
    to_fraction,
    zeta,
)
from .funcfield import (
    LaurentPoly,
    RationalFunction,
    parse_expr,
    poly_divmod,
    poly_lcm,
    poly_mul,
    poly_sub,
)

__all__ = [
    "HermitianForm",
    "WittElement",
    "IsometryTriple",
    "EigenComponent",
    "SupportedPoly",
    "ValidationReport",
    "validate",
    "direct_sum",
    "scale",
    "diagonalize_constant",
    "signature_constant",
    "signature_vector",
    "extend_constant",
    "split_form",
    "trace_form_rp",
    "triple_to_fp_form",
    "mu_component",
    "sigma_component",
    "make_metabolic",
    "metabolic_form",
    "make_canonical",
    "canonical_block",
    "determinant_numerator",
]


def _entry(m, x):
    if isinstance(x, RationalFunction):
        if x.m != m:
            raise ConductorMismatchError(f"entry over Q(zeta_{x.m}) in a form over Q(zeta_{m})")
        return x
    if isinstance(x, LaurentPoly):
        return RationalFunction.laurent(x)
    if isinstance(x, str):
        return parse_expr(x, m)
    return RationalFunction.constant(m, x)


class HermitianForm:
    """An n x n gram matrix of rational functions over Q(zeta_m)."""

    __slots__ = ("m", "epsilon", "gram", "_images")

    def __init__(self, m, gram, epsilon=1):
        if epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        self._images = {}
        self.m = int(m)
        self.epsilon = epsilon
        self.gram = tuple(tuple(_entry(self.m, x) for x in row) for row in gram)
        if any(len(row) != len(self.gram) for row in self.gram):
            raise ValueError("gram matrix must be square")

    @classmethod
    def constant(cls, m, gram, epsilon=1):
        return cls(m, gram, epsilon)

    @classmethod
    def diagonal(cls, m, entries, epsilon=1):
        n = len(entries)
        return cls(m, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], epsilon)

    @property
    def n(self):
        return len(self.gram)

    def is_constant(self):
        return all(x.is_constant() for row in self.gram for x in row)

    def constant_gram(self):
        """Gram matrix as CyclotomicNumbers; the form must be constant."""
        return [[x.constant_value() for x in row] for row in self.gram]

    def galois(self, k):
        k %= self.m
        if k == 1 or self.m <= 2:
            return self
        # sampling every arc of every embedding asks for the same images
        image = self._images.get(k)
        if image is None:
            image = HermitianForm._from_rows(self.m, [[x.galois(k) for x in row] for row in self.gram], self.epsilon)
            self._images[k] = image
        return image

    def lift(self, m2):
        return HermitianForm._from_rows(m2, [[x.lift(m2) for x in row] for row in self.gram], self.epsilon)

    @classmethod
    def _from_rows(cls, m, rows, epsilon):
        obj = cls.__new__(cls)
        obj._images = {}
        obj.m = m
        obj.epsilon = epsilon
        obj.gram = tuple(tuple(r) for r in rows)
        return obj

    def evaluate(self, N, j):
        """Entrywise value at t = zeta_N^j over Q(zeta_lcm(m, N))."""
        return [[x.eval_root_of_unity(N, j) for x in row] for row in self.gram]

    def congruent(self, P):
        """The form bar(P)^T G P for a matrix P of rational functions."""
        P = [[_entry(self.m, x) for x in row] for row in P]
        G = [list(row) for row in self.gram]
        rows = linalg.mat_mul(linalg.mat_mul(linalg.star(P, lambda x: x.bar()), G), P)
        return HermitianForm._from_rows(self.m, rows, self.epsilon)

    def __neg__(self):
        return HermitianForm._from_rows(self.m, [[-x for x in row] for row in self.gram], self.epsilon)

    def block_sum(self, other):
        """Orthogonal direct sum as a single gram matrix."""
        if (self.m, self.epsilon) != (other.m, other.epsilon):
            raise ConductorMismatchError("block sum needs equal conductor and epsilon")
        zero = RationalFunction.constant(self.m, 0)
        n, k = self.n, other.n
        rows = [list(r) + [zero] * k for r in self.gram] + [[zero] * n + list(r) for r in other.gram]
        return HermitianForm._from_rows(self.m, rows, self.epsilon)

    def __eq__(self, other):
        return (isinstance(other, HermitianForm) and self.m == other.m
                and self.epsilon == other.epsilon and self.gram == other.gram)

    def __hash__(self):
        return hash((self.m, self.epsilon, self.gram))

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.gram)
        return f"HermitianForm(m={self.m}, eps={self.epsilon:+d}, [{body}])"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    entry: tuple = None
    message: str = ""

    def __bool__(self):
        return self.ok


def validate(form, nonsingular=False):
    """Check epsilon-hermitian symmetry (and optionally nonsingularity).

    The first violating entry is reported with 1-based (row, column).
    """
    n = form.n
    for i in range(n):
        for j in range(i, n):
            a, b = form.gram[i][j], form.gram[j][i]
            if b.bar() != a * form.epsilon:
                return ValidationReport(
                    False, (i + 1, j + 1),
                    f"entry ({i + 1},{j + 1}) = {a} but bar of entry ({j + 1},{i + 1}) is {b.bar()}",
                )
    if nonsingular:
        if n and not determinant_numerator(form)[0]:
            return ValidationReport(False, None, "form is singular (determinant vanishes identically)")
    return ValidationReport(True)


def check_hermitian(form):
    report = validate(form)
    if not report:
        raise HermitianViolation(report.message, report.entry)
    return form


# ---------------------------------------------------------------------------
# formal Witt classes


class WittElement:
    """A formal rational combination sum r_i [form_i] of epsilon-hermitian forms."""

    __slots__ = ("m", "epsilon", "summands")

    def __init__(self, m, epsilon=1, summands=()):
        self.m = int(m)
        self.epsilon = epsilon
        out = []
        for form, coeff in summands:
            if form.m != self.m or form.epsilon != epsilon:
                raise ConductorMismatchError(
                    f"summand over (m={form.m}, eps={form.epsilon}) in an element over (m={self.m}, eps={epsilon})")
            coeff = to_fraction(coeff)
            if coeff != 0:
                out.append((form, coeff))
        self.summands = tuple(out)

    @classmethod
    def from_form(cls, form, coeff=1):
        return cls(form.m, form.epsilon, [(form, coeff)])

    def is_empty(self):
        return not self.summands

    def __add__(self, other):
        return direct_sum(self, other)

    def __neg__(self):
        return scale(self, -1)

    def __sub__(self, other):
        return direct_sum(self, scale(other, -1))

    def __mul__(self, r):
        return scale(self, r)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, WittElement) and (self.m, self.epsilon, self.summands)
                == (other.m, other.epsilon, other.summands))

    def __hash__(self):
        return hash((self.m, self.epsilon, self.summands))

    def __repr__(self):
        return f"WittElement(m={self.m}, eps={self.epsilon:+d}, {len(self.summands)} summands)"


def direct_sum(a, b):
    if (a.m, a.epsilon) != (b.m, b.epsilon):
        raise ConductorMismatchError(
            f"cannot add classes over (m={a.m}, eps={a.epsilon}) and (m={b.m}, eps={b.epsilon})")
    return WittElement(a.m, a.epsilon, a.summands + b.summands)


def scale(a, r):
    r = to_fraction(r)
    return WittElement(a.m, a.epsilon, [(f, c * r) for f, c in a.summands])


# ---------------------------------------------------------------------------
# constant forms: congruence diagonalization and signatures


def _lift_matrix(G, m2):
    return [[x.lift(m2) for x in row] for row in G]


def diagonalize_constant(form):
    """Diagonal entries of a hermitian matrix over Q(zeta_M) up to congruence.

    Accepts a constant HermitianForm (epsilon = +1) or a square matrix of
    CyclotomicNumbers. Pivots on the first nonzero diagonal entry; when the
    remaining diagonal vanishes it pivots on v_i + v_j, or on v_i + i v_j
    (lifting to contain i) if that vector is isotropic too. Every returned
    entry is fixed by conjugation; their number equals the rank of the input
    plus the number of zero entries.
    """
    if isinstance(form, HermitianForm):
        G = form.constant_gram()
    else:
        G = [list(row) for row in form]
    n = len(G)
    if n == 0:
        return []
    M = G[0][0].m
    H = [list(row) for row in G]
    diag = []
    while H:
        k = len(H)
        piv = next((i for i in range(k) if not H[i][i].is_zero()), None)
        if piv is None:
            pair = next(((i, j) for i in range(k) for j in range(i + 1, k) if not H[i][j].is_zero()), None)
            if pair is None:
                diag.extend([H[0][0] * 0] * k)
                break
            i, j = pair
            c = H[0][0] * 0 + 1
            if (H[i][j] + H[i][j].conjugate()).is_zero():
                if M % 4:
                    M = lcm(M, 4)
                    H = _lift_matrix(H, M)
                c = zeta(M, M // 4)
            # e_i -> e_i + c e_j
            cc = c.conjugate()
            H[i] = [x + cc * y for x, y in zip(H[i], H[j])]
            for row in H:
                row[i] = row[i] + c * row[j]
            piv = i
        if piv != 0:
            H[0], H[piv] = H[piv], H[0]
            for row in H:
                row[0], row[piv] = row[piv], row[0]
        d = H[0][0]
        diag.append(d)
        inv = d.inverse()
        rest = []
        for r in range(1, k):
            f = H[r][0] * inv
            rest.append([H[r][c] - f * H[0][c] for c in range(1, k)])
        H = rest
    return diag


def _twisted_embedded_matrix(G, epsilon, k):
    """sigma_k(G), multiplied by i when epsilon = -1 (lifting to contain i)."""
    G = [[x.galois(k) for x in row] for row in G]
    if epsilon == -1:
        M = lcm(G[0][0].m, 4)
        i = zeta(M, M // 4)
        G = [[x.lift(M) * i for x in row] for row in G]
    return G


def signature_of_matrix(G, epsilon=1, rho=None):
    """Signature of the constant (epsilon-)hermitian matrix G under rho."""
    if not G:
        return 0
    k = 1 if rho is None else rho.exponent
    if rho is not None and rho.conductor != G[0][0].m:
        raise ConductorMismatchError("embedding and matrix live over different fields")
    return _inertia(_twisted_embedded_matrix(G, epsilon, k))


def _inertia(G):
    """Signature of a hermitian matrix by division-free elimination.

    After pivoting on d the block d*H - col*row equals d times the Schur
    complement, so its signature is sign(d) times the complement's; carrying
    that sign along avoids field inversions, which are costly in large
    cyclotomic fields.
    """
    H = [list(row) for row in G]
    M = H[0][0].m
    sig, mult = 0, 1
    while H:
        k = len(H)
        piv = next((i for i in range(k) if not H[i][i].is_zero()), None)
        if piv is None:
            pair = next(((i, j) for i in range(k) for j in range(i + 1, k) if not H[i][j].is_zero()), None)
            if pair is None:
                raise SingularFormError("constant form is singular")
            i, j = pair
            c = H[0][0] * 0 + 1
            if (H[i][j] + H[i][j].conjugate()).is_zero():
                if M % 4:
                    M = lcm(M, 4)
                    H = _lift_matrix(H, M)
                c = zeta(M, M // 4)
            cc = c.conjugate()
            H[i] = [x + cc * y for x, y in zip(H[i], H[j])]
            for row in H:
                row[i] = row[i] + c * row[j]
            piv = i
        if piv != 0:
            H[0], H[piv] = H[piv], H[0]
            for row in H:
                row[0], row[piv] = row[piv], row[0]
        d = H[0][0]
        s = real_sign(d, check=False)
        sig += mult * s
        mult *= s
        H = [[d * H[r][c] - H[r][0] * H[0][c] for c in range(1, k)] for r in range(1, k)]
    return sig


def signature_constant(form, rho=None):
    """dim V+ - dim V- of rho(form) (of i * rho(form) when epsilon = -1)."""
    if not form.is_constant():
        raise ValueError("signature_constant needs a constant form; evaluate first")
    return signature_of_matrix(form.constant_gram(), form.epsilon, rho)


def signature_vector(form):
    """Signatures at every embedding of G0(m), in the order of embeddings_G0."""
    return {rho: signature_constant(form, rho) for rho in embeddings_G0(form.m)}


def extend_constant(form):
    """A form over F viewed over F(t) (the gram is reused verbatim)."""
    if isinstance(form, HermitianForm):
        if not form.is_constant():
            raise ValueError("extend_constant expects a constant form")
        return form
    return HermitianForm(form[0][0].m if form else 1, form)


# ---------------------------------------------------------------------------
# determinants over F[t]


def cleared_matrix(form):
    """(P, L, s) with gram = t^s / L(t) * P(t), P a matrix of dense polynomials.

    L is the monic lcm of the entry denominators, so its roots contain every
    pole of every entry.
    """
    m = form.m
    one = CyclotomicNumber.rational(m, 1)
    L = [one]
    for row in form.gram:
        for x in row:
            if not x.is_laurent():
                L = poly_lcm(L, x.denominator_poly())
    Lp = LaurentPoly.from_dense(m, L)
    scaled = []
    lo = None
    for row in form.gram:
        out = []
        for x in row:
            if x.is_laurent():
                p = x.num * Lp
            else:
                q, r = poly_divmod(L, x.denominator_poly())
                assert not r
                p = x.num * LaurentPoly.from_dense(m, q)
            out.append(p)
            if not p.is_zero():
                v = p.valuation()
                lo = v if lo is None else min(lo, v)
        scaled.append(out)
    lo = lo or 0
    P = []
    for row in scaled:
        prow = []
        for p in row:
            if p.is_zero():
                prow.append([])
            else:
                shift, dense = p.to_dense()
                prow.append([CyclotomicNumber(m)] * (shift - lo) + dense)
        P.append(prow)
    return P, L, lo


def poly_det(P):
    """Fraction-free (Bareiss) determinant of a matrix of dense polynomials."""
    n = len(P)
    if n == 0:
        return None
    M = [list(r) for r in P]
    prev = None
    sign = 1
    for k in range(n - 1):
        if not M[k][k]:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return []
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = poly_sub(poly_mul(M[k][k], M[i][j]), poly_mul(M[i][k], M[k][j]))
                if prev is not None and num:
                    num, r = poly_divmod(num, prev)
                    if r:
                        raise ConsistencyError("Bareiss division was not exact")
                M[i][j] = num
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return [-c for c in d] if sign < 0 else d


def determinant_numerator(form):
    """(D, L): det(gram) = t^e D(t) / L(t)^n for some integer e, D(0) != 0.

    D == [] means the form is singular over F(t).
    """
    P, L, _ = cleared_matrix(form)
    D = poly_det(P)
    while D and D[0].is_zero():
        D = D[1:]
    return D, L


# ---------------------------------------------------------------------------
# isometry triples and the splitting map


def _const_matrix(m, rows):
    return [[x if isinstance(x, CyclotomicNumber) else CyclotomicNumber.rational(m, x) for x in row] for row in rows]


@dataclass(frozen=True)
class IsometryTriple:
    """(V, theta, f): f an isometry of the epsilon-hermitian theta, with f and
    f - 1 both invertible."""

    m: int
    epsilon: int
    theta: tuple
    f: tuple

    def __post_init__(self):
        theta = _const_matrix(self.m, self.theta)
        f = _const_matrix(self.m, self.f)
        object.__setattr__(self, "theta", tuple(tuple(r) for r in theta))
        object.__setattr__(self, "f", tuple(tuple(r) for r in f))
        n = len(theta)
        if any(len(r) != n for r in theta) or len(f) != n or any(len(r) != n for r in f):
            raise ValueError("theta and f must be square of the same size")
        if linalg.star(theta) != [[x * self.epsilon for x in r] for r in theta]:
            raise HermitianViolation(f"theta is not {self.epsilon:+d}-hermitian")
        if linalg.mat_mul(linalg.mat_mul(linalg.star(f), theta), f) != [list(r) for r in theta]:
            raise ValueError("f is not an isometry of theta")
        one = CyclotomicNumber.rational(self.m, 1)
        if linalg.det(f).is_zero():
            raise SingularFormError("f is not invertible")
        f1 = [[x - one if i == j else x for j, x in enumerate(r)] for i, r in enumerate(f)]
        if linalg.det(f1).is_zero():
            raise SingularFormError("f - 1 is not invertible (the triple is not fibered)")

    @property
    def n(self):
        return len(self.theta)


def split_form(triple, target_epsilon=1):
    """The epsilon-hermitian form over F(t) attached to a fibered triple.

    With Theta_L = theta (1 - f)^{-1}, the gram matrix is
    (1 - t^{-1}) Theta_L + epsilon (1 - t) bar(Theta_L)^T.
    """
    if triple.epsilon != -target_epsilon:
        raise ValueError("the triple must be (-epsilon)-hermitian for an epsilon-hermitian image")
    m = triple.m
    n = triple.n
    one = CyclotomicNumber.rational(m, 1)
    one_minus_f = [[(one if i == j else 0) - triple.f[i][j] for j in range(n)] for i in range(n)]
    theta_l = linalg.mat_mul([list(r) for r in triple.theta], linalg.inverse(one_minus_f))
    a = LaurentPoly(m, {0: 1, -1: -1})
    b = LaurentPoly(m, {0: target_epsilon, 1: -target_epsilon})
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(RationalFunction.laurent(a * theta_l[i][j] + b * theta_l[j][i].conjugate()))
        rows.append(row)
    return HermitianForm(m, rows, target_epsilon)


# ---------------------------------------------------------------------------
# residue fields F_p = F[t, 1/t]/p(t)


def _mobius(n):
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


def ramanujan_sum(d, i):
    """Trace of zeta_d^i from Q(zeta_d) down to Q."""
    g = gcd(i, d)
    return sum(_mobius(d // e) * e for e in range(1, g + 1) if g % e == 0)


class SupportedPoly:
    """An irreducible, involution-stable p(t) whose residue field is cyclotomic.

    Two families: ``cyclotomic(d)`` is Phi_d over F = Q (residue field
    Q(zeta_d), t -> zeta_d); ``linear(m, a)`` is t - zeta_m^a over
    F = Q(zeta_m) (residue field F itself, t -> zeta_m^a).
    """

    def __init__(self, kind, base_m, fp_m, degree, t_value, coeffs, label):
        self.kind = kind
        self.base_m = base_m
        self.fp_m = fp_m
        self.degree = degree
        self.t_value = t_value
        self.coeffs = coeffs
        self.label = label

    @classmethod
    def cyclotomic(cls, d):
        if d < 2:
            raise UnsupportedPolynomialError("Phi_1 = t - 1 is excluded")
        from flint import fmpz_poly
        cs = [CyclotomicNumber.rational(1, int(c)) for c in fmpz_poly.cyclotomic(d).coeffs()]
        return cls("cyclotomic", 1, d, euler_phi(d), zeta(d), cs, f"Phi_{d}")

    @classmethod
    def linear(cls, m, a):
        z = zeta(m, a)
        if z == 1:
            raise UnsupportedPolynomialError("t - 1 is excluded")
        one = CyclotomicNumber.rational(m, 1)
        return cls("linear", m, m, 1, z, [-z, one], f"t - zeta_{m}^{a % m}")

    def __repr__(self):
        return f"SupportedPoly({self.label})"

    def coords(self, x):
        """Coordinates of x in F_p over F in the basis 1, t, ..., t^(deg-1)."""
        if self.kind == "linear":
            return [x]
        return [CyclotomicNumber.rational(1, c) for c in x.coeffs]

    def from_coords(self, cs):
        if self.kind == "linear":
            return cs[0]
        return CyclotomicNumber(self.fp_m, [c.to_fraction() for c in cs])

    def base_to_fp(self, c):
        return c if self.kind == "linear" else CyclotomicNumber.rational(self.fp_m, c.to_fraction())

    def trace(self, x):
        if self.kind == "linear":
            return x
        d = self.fp_m
        return CyclotomicNumber.rational(1, sum(c * ramanujan_sum(d, i) for i, c in enumerate(x.coeffs)))

    def evaluate_embedded(self, x, rho, point):
        """rho_z(x) = sum rho(a_i) z^i for x = sum a_i t^i in F_p."""
        N, j = point
        M = lcm(self.base_m, N)
        acc = CyclotomicNumber(M)
        k = rho.exponent
        for i, a in enumerate(self.coords(x)):
            if not a.is_zero():
                acc = acc + a.galois(k).lift(M) * zeta(M, (i * j * (M // N)) % M)
        return acc

    def is_root(self, rho, point):
        N, j = point
        M = lcm(self.base_m, N)
        acc = CyclotomicNumber(M)
        for i, a in enumerate(self.coeffs):
            acc = acc + a.galois(rho.exponent).lift(M) * zeta(M, (i * j * (M // N)) % M)
        return acc.is_zero()

    def circle_roots(self, rho):
        """All roots of rho(p) as (N, j) with t = zeta_N^j."""
        if self.kind == "cyclotomic":
            d = self.fp_m
            return [(d, j) for j in range(1, d) if gcd(j, d) == 1]
        a = next(e for e in range(self.base_m) if zeta(self.base_m, e) == self.t_value)
        return [(self.base_m, (a * rho.exponent) % self.base_m)]


def _fp_form_matrix(form):
    G = form.constant_gram() if isinstance(form, HermitianForm) else [list(r) for r in form]
    return G


def trace_form_rp(form, p):
    """Fibered triple (V over F, tr o theta, multiplication by t) of a form over F_p."""
    G = _fp_form_matrix(form)
    n, deg = len(G), p.degree
    powers = {}

    def tpow(e):
        if e not in powers:
            powers[e] = p.t_value ** e
        return powers[e]

    size = n * deg
    theta = [[None] * size for _ in range(size)]
    for k in range(n):
        for s in range(deg):
            for l in range(n):
                for u in range(deg):
                    theta[k * deg + s][l * deg + u] = p.trace(tpow(u - s) * G[k][l])
    zero = CyclotomicNumber(p.base_m)
    f = [[zero] * size for _ in range(size)]
    for k in range(n):
        for s in range(deg):
            col = p.coords(tpow(s + 1))
            for r, c in enumerate(col):
                f[k * deg + r][k * deg + s] = c
    return IsometryTriple(p.base_m, form.epsilon if isinstance(form, HermitianForm) else 1, theta, f)


def _span_contains(basis, v):
    if not basis:
        return all(x.is_zero() for x in v)
    return linalg.rank(linalg.columns_to_matrix(basis + [v])) == linalg.rank(linalg.columns_to_matrix(basis))


def triple_to_fp_form(triple, p, normalization="dual"):
    """Form over F_p on Ker p(f), with t acting through f.

    ``normalization="dual"`` recovers theta exactly from its trace form by
    pairing with the trace-dual basis of 1, t, ..., t^(deg-1); this is the
    inverse of :func:`trace_form_rp`. ``"power"`` uses the plain sum
    sum_i theta(a, f^i b) t^{-i}, which agrees with the dual version up to
    the positive factor deg(p) when p = Phi_{2^k} but is not hermitian in
    general.
    """
    if triple.m != p.base_m:
        raise ConductorMismatchError("triple and polynomial live over different base fields")
    n = triple.n
    f = [list(r) for r in triple.f]
    theta = [list(r) for r in triple.theta]
    zero = CyclotomicNumber(triple.m)
    one = zero + 1
    pf = [[zero] * n for _ in range(n)]
    fk = linalg.identity(n, zero, one)
    for c in p.coeffs:
        pf = linalg.mat_add(pf, [[c * x for x in r] for r in fk])
        fk = linalg.mat_mul(f, fk)
    K = linalg.kernel(pf) if n else []
    if len(K) % p.degree:
        raise ConsistencyError("Ker p(f) has dimension not divisible by deg p")

    def apply(mat, v):
        return [sum((mat[i][j] * v[j] for j in range(n)), zero) for i in range(n)]

    gens, span = [], []
    for v in K:
        if _span_contains(span, v):
            continue
        gens.append(v)
        w = v
        for _ in range(p.degree):
            span.append(w)
            w = apply(f, w)
    if len(span) != len(K):
        raise ConsistencyError("failed to find an F_p-basis of Ker p(f)")

    deg = p.degree
    if normalization == "dual":
        T = [[p.trace(p.t_value ** (i + j)) for j in range(deg)] for i in range(deg)]
        Tinv = linalg.inverse(T)
        duals = []
        for i in range(deg):
            acc = p.base_to_fp(zero) if p.kind == "linear" else CyclotomicNumber(p.fp_m)
            for j in range(deg):
                acc = acc + p.base_to_fp(Tinv[i][j]) * p.t_value ** j
            duals.append(acc)
    elif normalization == "power":
        duals = [p.t_value ** (-i) for i in range(deg)]
    else:
        raise ValueError(f"unknown normalization {normalization!r}")

    def theta_f(a, b):
        return sum((a[i].conjugate() * theta[i][j] * b[j] for i in range(n) for j in range(n)
                    if not a[i].is_zero() and not b[j].is_zero()), zero)

    r = len(gens)
    gram = [[None] * r for _ in range(r)]
    for x in range(r):
        for y in range(r):
            acc = CyclotomicNumber(p.fp_m)
            w = gens[y]
            for i in range(deg):
                acc = acc + p.base_to_fp(theta_f(gens[x], w)) * duals[i]
                w = apply(f, w)
            gram[x][y] = acc
    return HermitianForm(p.fp_m, gram, triple.epsilon)


def mu_component(form, p, rho, point):
    """The constant form rho_z(theta) over Q(zeta_lcm(m, N)), z = zeta_N^j."""
    N, j = point
    if j % N == 0:
        raise ValueError("z = 1 is excluded")
    if not p.is_root(rho, point):
        raise ValueError(f"zeta_{N}^{j} is not a root of rho({p.label})")
    G = _fp_form_matrix(form)
    M = lcm(p.base_m, N)
    rows = [[p.evaluate_embedded(x, rho, point) for x in row] for row in G]
    return HermitianForm(M, rows, form.epsilon)


@dataclass
class EigenComponent:
    """Ker(f - z) inside V (x) Q(zeta_M) with the restricted trace form."""

    point: tuple
    basis: list
    gram: list
    epsilon: int = 1
    conductor: int = field(default=1)

    def signature(self):
        return signature_of_matrix(self.gram, self.epsilon)


def sigma_component(form, p, rho, point):
    """Restrict the embedded trace form to the z-eigenspace of t."""
    N, j = point
    if j % N == 0:
        raise ValueError("z = 1 is excluded")
    if not p.is_root(rho, point):
        raise ValueError(f"zeta_{N}^{j} is not a root of rho({p.label})")
    triple = trace_form_rp(form, p)
    M = lcm(p.base_m, N)
    k = rho.exponent
    theta = [[x.galois(k).lift(M) for x in r] for r in triple.theta]
    f = [[x.galois(k).lift(M) for x in r] for r in triple.f]
    z = zeta(M, (j * (M // N)) % M)
    A = [[x - z if a == b else x for b, x in enumerate(r)] for a, r in enumerate(f)]
    K = linalg.kernel(A)
    n = len(_fp_form_matrix(form))
    if len(K) != n:
        raise ConsistencyError(f"eigenspace has dimension {len(K)}, expected {n}")
    B = linalg.columns_to_matrix(K)
    gram = linalg.mat_mul(linalg.mat_mul(linalg.star(B), theta), B)
    return EigenComponent(point, B, gram, form.epsilon, M)


# ---------------------------------------------------------------------------
# generators


def metabolic_form(X, Y, m=None, epsilon=1):
    """[[0, X], [epsilon bar(X)^T, Y]]; Y must satisfy bar(Y)^T = epsilon Y."""
    if m is None:
        m = next(x.m for row in X for x in row if hasattr(x, "m"))
    X = [[_entry(m, x) for x in row] for row in X]
    Y = [[_entry(m, x) for x in row] for row in Y]
    n = len(X)
    zero = RationalFunction.constant(m, 0)
    Xs = linalg.star(X, lambda x: x.bar() * epsilon)
    rows = [[zero] * n + list(X[i]) for i in range(n)] + [list(Xs[i]) + list(Y[i]) for i in range(n)]
    return HermitianForm(m, rows, epsilon)


def _random_coeff(rng, m, nonzero=False):
    while True:
        c = CyclotomicNumber.rational(m, rng.randint(-3, 3))
        if m > 2 and rng.random() < 0.5:
            c = c + rng.randint(-2, 2) * zeta(m, rng.randrange(m))
        if not nonzero or not c.is_zero():
            return c


def _random_laurent(rng, m, span=1):
    return LaurentPoly(m, {e: _random_coeff(rng, m) for e in range(-span, span + 1) if rng.random() < 0.7})


def make_metabolic(n, seed=0, m=1, epsilon=1):
    """Random 2n x 2n form with a vanishing n x n upper-left block.

    X has Laurent entries in t^-1, 1, t with small coefficients and is redrawn
    until det X(2) != 0 (so X is invertible over F(t)); Y is a random
    epsilon-hermitian matrix.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = random.Random(seed)
    two = CyclotomicNumber.rational(m, 2)
    while True:
        X = [[_random_laurent(rng, m) for _ in range(n)] for _ in range(n)]
        at_two = [[sum((c * two ** e for e, c in x.terms.items()), CyclotomicNumber(m)) for x in row] for row in X]
        if not linalg.det(at_two).is_zero():
            break
    Y = [[None] * n for _ in range(n)]
    for i in range(n):
        c = _random_coeff(rng, m)
        if epsilon == 1:
            a = CyclotomicNumber.rational(m, rng.randint(-3, 3))
            Y[i][i] = LaurentPoly(m, {0: a, 1: c, -1: c.conjugate()})
        else:
            Y[i][i] = LaurentPoly(m, {1: c, -1: -c.conjugate()})
        for j in range(i + 1, n):
            Y[i][j] = _random_laurent(rng, m)
            Y[j][i] = Y[i][j].bar() * epsilon
    return metabolic_form(X, Y, m, epsilon)


def _root_order(point):
    N, j = point
    return N // gcd(N, j % N) if j % N else 1


def canonical_block(point, m):
    """split_form of the skew line (<i>, f = z) with z = zeta_N^j, over Q(zeta_m)(t)."""
    N, j = point
    if m % 4 or m % N:
        raise ValueError(f"Q(zeta_{m}) must contain i and zeta_{N}")
    z = zeta(m, (j * (m // N)) % m)
    if z == 1:
        raise ValueError("z = 1 is excluded from canonical blocks")
    i = zeta(m, m // 4)
    return split_form(IsometryTriple(m, -1, [[i]], [[z]]), 1)


def make_canonical(r0, blocks=(), m=None):
    """<1> (x) r0 plus one split block per (z_j, r_j), z_j = zeta_N^j != 1 distinct.

    The conductor is lcm(4, orders of the z_j) unless given.
    """
    pts = []
    for point, _ in blocks:
        N, j = point
        if j % N == 0:
            raise ValueError("z = 1 is excluded from canonical blocks")
        pts.append(Fraction(j % N, N))
    if len(set(pts)) != len(pts):
        raise ValueError("block points must be distinct")
    if m is None:
        m = lcm(4, *[_root_order(pt) for pt, _ in blocks]) if blocks else 4
    summands = []
    if to_fraction(r0) != 0:
        summands.append((HermitianForm(m, [[1]]), r0))
    for point, r in blocks:
        summands.append((canonical_block(point, m), r))
    return WittElement(m, 1, summands)
