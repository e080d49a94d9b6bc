"""
Signature step functions z -> sign(rho(tau)(z)) on the unit circle.

The function of a Witt class is locally constant away from the unit-circle
zeros of each summand's determinant and the poles of its entries. Those
candidates are located (exactly when they are roots of unity, otherwise by
certified angle intervals), each open arc between consecutive candidates is
sampled at a root of unity, and the exact signature there is the value on
the whole arc. Evaluating at algebraic points extends the transcendental
evaluation used for the decision theorem; by local constancy the two agree
on every arc.
"""

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from flint import acb, ctx

from .errors import IndeterminateError, PoleError, SingularFormError
from .field import DEFAULT_MAX_REFINE, Embedding, _zeta_ball, default_precision
from .forms import determinant_numerator, signature_of_matrix
from .funcfield import eval_numeric, poly_galois, poly_lcm, poly_squarefree
from .rootiso import ExactPoint, IsolatedPoint, circle_candidates

__all__ = [
    "ExactPoint",
    "IsolatedPoint",
    "SignatureStepFunction",
    "candidate_polynomial",
    "jump_candidates",
    "signature_step_function",
    "jumps",
    "evaluate_class_at",
    "numeric_signature",
    "numeric_class_signature",
]

SAMPLE_START = 8


def _as_point(z):
    if isinstance(z, (ExactPoint, IsolatedPoint)):
        return z
    N, j = z
    return ExactPoint(N, j)


def _check_embedding(w, rho):
    if rho is None:
        return Embedding(w.m, 1)
    if not isinstance(rho, Embedding):
        rho = Embedding(w.m, rho)
    if rho.conductor != w.m:
        raise ValueError(f"embedding of Q(zeta_{rho.conductor}) used for a class over Q(zeta_{w.m})")
    return rho


@dataclass
class SignatureStepFunction:
    """Arc values of the signature function under one embedding.

    ``arc_values[i]`` is the value on the open arc running counterclockwise
    from ``candidates[i]`` to the next candidate; ``samples[i]`` is the root
    of unity where it was computed. With no candidates there is one arc (the
    whole circle) and no jumps.
    """

    embedding: Embedding
    candidates: list
    arc_values: list
    jumps: list
    samples: list = field(default_factory=list)

    def is_zero(self):
        return all(v == 0 for v in self.arc_values)

    def arcs(self):
        """(start, end, value) in turns; the last arc may end past 1."""
        c = self.candidates
        if not c:
            return [(Fraction(0), Fraction(1), self.arc_values[0])]
        out = []
        for i, v in enumerate(self.arc_values):
            start = c[i].hi
            end = c[(i + 1) % len(c)].lo
            if end <= start:
                end += 1
            out.append((start, end, v))
        return out

    def value_at(self, turns):
        """Value at a point of an open arc, given as a rational angle in turns."""
        x = Fraction(turns) % 1
        for start, end, v in self.arcs():
            if start < x < end or start < x + 1 < end or (not self.candidates):
                return v
        raise ValueError(f"angle {x} is not inside an open arc")

    def merged(self):
        """Candidates with nonzero jump and the arc values between them.

        Two step functions describe the same function iff their merged
        forms agree, regardless of spurious candidates.
        """
        keep = [i for i, jmp in enumerate(self.jumps) if jmp != 0]
        if not keep:
            return ((), (self.arc_values[0],))
        return (tuple(self.candidates[i] for i in keep), tuple(self.arc_values[i] for i in keep))

    def to_json(self):
        return {
            "embedding_k": self.embedding.exponent,
            "m": self.embedding.conductor,
            "candidates": [c.to_json() for c in self.candidates],
            "arc_values": [str(v) for v in self.arc_values],
            "jumps": [str(v) for v in self.jumps],
            "samples": [{"N": s.N, "j": s.j} for s in self.samples],
        }

    def to_csv(self):
        """Rows (angle_turns_lo, angle_turns_hi, value); wrapping arcs are split at 1."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["angle_turns_lo", "angle_turns_hi", "value"])
        rows = []
        for start, end, v in self.arcs():
            if end > 1 and start < 1:
                rows.append((Fraction(0), end - 1, v))
                rows.append((start, Fraction(1), v))
            elif start >= 1:
                rows.append((start - 1, end - 1, v))
            else:
                rows.append((start, end, v))
        for lo, hi, v in sorted(rows):
            writer.writerow([str(lo), str(hi), str(v)])
        return buf.getvalue()


@lru_cache(maxsize=256)
def _form_candidate_poly(form):
    D, L = determinant_numerator(form)
    if not D:
        raise SingularFormError(f"determinant of {form!r} vanishes identically")
    return tuple(poly_lcm(poly_squarefree(D), poly_squarefree(L)))


@lru_cache(maxsize=64)
def _class_candidate_poly(w):
    Q = None
    for idx, (form, _) in enumerate(w.summands, 1):
        try:
            q = list(_form_candidate_poly(form))
        except SingularFormError as exc:
            raise SingularFormError(f"summand {idx}: {exc}") from None
        Q = q if Q is None else poly_lcm(Q, q)
    if Q is None:
        return ()
    while len(Q) > 1 and Q[0].is_zero():
        Q = Q[1:]
    return tuple(Q)


def candidate_polynomial(w):
    """Squarefree polynomial over F whose roots hold every determinant zero
    and every entry pole of every summand (factors of t removed)."""
    return list(_class_candidate_poly(w))


def jump_candidates(w, rho=None, extra_candidates=(), precision=None, max_refine=DEFAULT_MAX_REFINE):
    """Sorted CirclePoints covering every possible jump of the step function under rho.

    ``extra_candidates`` (roots of unity, as ExactPoint or (N, j)) are added
    on top; this can only split arcs, never change values.
    """
    rho = _check_embedding(w, rho)
    Q = candidate_polynomial(w)
    if len(Q) <= 1:
        points = []
    else:
        label = "rho_%d(candidate polynomial of degree %d)" % (rho.exponent, len(Q) - 1)
        points = circle_candidates(poly_galois(Q, rho.exponent), label, precision, max_refine)
    for e in extra_candidates:
        e = _as_point(e)
        if any(p == e for p in points):
            continue
        if any(isinstance(p, IsolatedPoint) and (p.lo <= e.angle <= p.hi or p.lo <= e.angle + 1 <= p.hi)
               for p in points):
            continue
        points.append(e)
    return sorted(points, key=lambda p: p.lo)


def _pick_sample(start, end):
    """Smallest N in 8, 16, 32, ... with some j/N strictly inside (start, end); smallest such j/N."""
    N = SAMPLE_START
    while True:
        j = (start * N).__floor__() + 1
        if Fraction(j, N) < end:
            return ExactPoint(N, j)
        N *= 2


def _summand_signature(form, rho, point, index=None):
    g = form.galois(rho.exponent)
    try:
        G = g.evaluate(point.N, point.j)
    except PoleError as exc:
        where = f"summand {index}: " if index else ""
        raise PoleError(f"{where}pole at {point}", point=(point.N, point.j)) from exc
    try:
        return signature_of_matrix(G, form.epsilon)
    except SingularFormError:
        where = f"summand {index} " if index else "form "
        raise SingularFormError(f"{where}is singular at {point}") from None


def evaluate_class_at(w, rho, z):
    """sum r_i sign(rho(form_i)(z)) at a root of unity z = zeta_N^j (exact).

    For epsilon = -1 the signature is that of i * rho(form)(z).
    """
    rho = _check_embedding(w, rho)
    point = _as_point(z)
    total = Fraction(0)
    for idx, (form, r) in enumerate(w.summands, 1):
        total += r * _summand_signature(form, rho, point, idx)
    return total


def signature_step_function(w, rho=None, extra_candidates=(), precision=None,
                            max_refine=DEFAULT_MAX_REFINE):
    """The step function of w under rho, exact on every arc."""
    rho = _check_embedding(w, rho)
    cands = jump_candidates(w, rho, extra_candidates, precision, max_refine)
    if not cands:
        samples = [ExactPoint(1, 0)]
    else:
        samples = []
        for i, c in enumerate(cands):
            nxt = cands[(i + 1) % len(cands)]
            start, end = c.hi, nxt.lo
            if end <= start:
                end += 1
            samples.append(_pick_sample(start, end))
    values = [evaluate_class_at(w, rho, s) for s in samples]
    jmp = [values[i] - values[i - 1] for i in range(len(values))] if cands else []
    return SignatureStepFunction(rho, cands, values, jmp, samples)


def jumps(s):
    """(candidate, jump) pairs with nonzero jump."""
    return [(c, j) for c, j in zip(s.candidates, s.jumps) if j != 0]


# ---------------------------------------------------------------------------
# interval shadow of the exact signature


def _interval_ldl_signature(H, prec):
    """Signature of a hermitian matrix of acb balls, or None if undecided."""
    H = [list(r) for r in H]
    sig = 0
    with ctx.workprec(prec):
        while H:
            best, best_lower = None, None
            for i in range(len(H)):
                d = H[i][i].real
                if d > 0 or d < 0:
                    low = abs(d).lower()
                    if best is None or low > best_lower:
                        best, best_lower = i, low
            if best is None:
                return None
            H[0], H[best] = H[best], H[0]
            for r in H:
                r[0], r[best] = r[best], r[0]
            d = H[0][0].real
            sig += 1 if d > 0 else -1
            H = [[H[r][c] - H[r][0] * H[0][c] / d for c in range(1, len(H))] for r in range(1, len(H))]
    return sig


def numeric_signature(form, rho, z, precision=None):
    """Interval-arithmetic signature of rho(form) at z = zeta_N^j, or None.

    None means the balls were not sign-decisive at this precision.
    """
    point = _as_point(z)
    prec = precision or default_precision()
    k = 1 if rho is None else rho.exponent
    zb = _zeta_ball(point.N, point.j, prec)
    rho = Embedding(form.m, k)
    try:
        H = [[eval_numeric(x, rho, zb, prec).to_acb() for x in row] for row in form.gram]
    except IndeterminateError:
        return None
    if form.epsilon == -1:
        with ctx.workprec(prec):
            H = [[x * acb(0, 1) for x in row] for row in H]
    return _interval_ldl_signature(H, prec)


def numeric_class_signature(w, rho, z, precision=None):
    total = Fraction(0)
    for form, r in w.summands:
        s = numeric_signature(form, rho, z, precision)
        if s is None:
            return None
        total += r * s
    return total
