"""Random Witt classes for property tests and the acceptance run."""

import random
from fractions import Fraction

from hypothesis import strategies as st

from wittsig.field import CyclotomicNumber, euler_phi
from wittsig.forms import HermitianForm, WittElement, determinant_numerator
from wittsig.funcfield import parse_expr


def random_class(rng, m):
    """One or two summands of rank <= 2 with Laurent entries of degree <= 1."""
    summands = []
    for _ in range(rng.randint(1, 2)):
        n = rng.randint(1, 2)
        gram = [[None] * n for _ in range(n)]
        for i in range(n):
            c = CyclotomicNumber(m, [rng.randint(-2, 2) for _ in range(euler_phi(m))])
            a = rng.randint(-3, 3)
            gram[i][i] = parse_expr(f"{a}", m) + parse_expr("t", m) * c + parse_expr("t^-1", m) * c.conjugate()
            for j in range(i + 1, n):
                e = CyclotomicNumber(m, [rng.randint(-2, 2) for _ in range(euler_phi(m))])
                gram[i][j] = parse_expr("1", m) * e + parse_expr("t", m) * rng.randint(-1, 1)
                gram[j][i] = gram[i][j].bar()
        f = HermitianForm(m, gram)
        if not determinant_numerator(f)[0]:
            continue
        summands.append((f, Fraction(rng.randint(-3, 3), rng.randint(1, 2))))
    return WittElement(m, 1, summands)


@st.composite
def small_class(draw):
    m = draw(st.sampled_from([1, 3, 4, 5]))
    return random_class(random.Random(draw(st.integers(0, 10**6))), m)
