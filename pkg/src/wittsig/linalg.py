"""Dense exact linear algebra over any field whose elements support
``+ - * /`` and ``is_zero()`` (CyclotomicNumber, RationalFunction)."""

from .errors import SingularFormError


def zeros(n, k, zero):
    return [[zero for _ in range(k)] for _ in range(n)]


def identity(n, zero, one):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, p = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = None
            for l in range(k):
                x, y = a[i][l], b[l][j]
                if x.is_zero() or y.is_zero():
                    continue
                acc = x * y if acc is None else acc + x * y
            row.append(acc if acc is not None else a[i][0] * 0)
        out.append(row)
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_map(a, fn):
    return [[fn(x) for x in row] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def star(a, conj=None):
    """Conjugate transpose; ``conj`` defaults to ``x.conjugate()``."""
    conj = conj or (lambda x: x.conjugate())
    return [[conj(a[j][i]) for j in range(len(a))] for i in range(len(a[0]))] if a else []


def row_echelon(a):
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in a]
    rows, cols = len(m), len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a):
    return len(row_echelon(a)[1])


def kernel(a):
    """Basis of the right kernel {x : a x = 0}, as a list of column vectors."""
    cols = len(a[0])
    red, pivots = row_echelon(a)
    zero = a[0][0] * 0
    one = zero + 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * cols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def inverse(a):
    n = len(a)
    zero = a[0][0] * 0
    aug = [list(a[i]) + [zero + (1 if i == j else 0) for j in range(n)] for i in range(n)]
    red, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)):
        raise SingularFormError("matrix is singular")
    return [row[n:] for row in red]


def det(a):
    n = len(a)
    m = [list(r) for r in a]
    result = m[0][0] * 0 + 1
    for c in range(n):
        piv = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
        if piv is None:
            return result * 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        result = result * m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if not m[i][c].is_zero():
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def columns_to_matrix(vectors):
    """Stack column vectors into an n x k matrix."""
    return [list(row) for row in zip(*vectors)]
