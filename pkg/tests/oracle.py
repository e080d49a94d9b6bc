"""Independent floating-point oracles (numpy/cmath only, no wittsig numerics).

Used to cross-check exact results: entries are evaluated from hand-written
closed forms and signatures come from numpy's hermitian eigenvalues.
"""

import cmath
import math

import numpy as np


def root_of_unity(N, j):
    return cmath.exp(2j * math.pi * j / N)


def eig_signature(H, tol=1e-9):
    """Signature of a hermitian complex matrix, or None if an eigenvalue is ~0."""
    H = np.asarray(H, dtype=complex)
    ev = np.linalg.eigvalsh((H + H.conj().T) / 2)
    if np.any(np.abs(ev) < tol):
        return None
    return int(np.sum(ev > 0) - np.sum(ev < 0))


def canonical_block_value(t, z):
    """i(1 - 1/t)/(1 - z) - i(1 - t)/(1 - conj(z)) at the complex point t."""
    return (1j * (1 - 1 / t) / (1 - z) - 1j * (1 - t) / (1 - z.conjugate())).real


def canonical_oracle_value(r0, blocks, angle):
    """r0 + sum r_j sign(block_j(e^{2 pi i angle})) with blocks ((N, j), r)."""
    t = cmath.exp(2j * math.pi * angle)
    total = r0
    for (N, j), r in blocks:
        v = canonical_block_value(t, root_of_unity(N, j))
        total += r * (1 if v > 0 else -1)
    return total


def complex_value(x, k=1):
    """sigma_k(x) for a CyclotomicNumber, from its coefficient list alone."""
    zeta = root_of_unity(x.m, k)
    return sum(float(c) * zeta ** i for i, c in enumerate(x.coeffs))
