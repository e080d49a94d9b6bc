"""
Deciding whether a rational Witt class vanishes
===============================================

A class vanishes exactly when every embedding's step function is
identically zero. Nonzero arcs give witnesses.
"""

from fractions import Fraction

from wittsig import (
    HermitianForm,
    WittElement,
    decide_batch,
    direct_sum,
    extend_constant,
    is_trivial,
    make_canonical,
    make_metabolic,
    scale,
    zeta,
)

# a metabolic form: zero upper-left block of half rank
met = make_metabolic(2, seed=7, m=5)
print("metabolic rank", met.n, "trivial:", is_trivial(WittElement.from_form(met)).trivial)

# the block for z = i is not
d = is_trivial(make_canonical(0, [((4, 1), 1)]))
print("block trivial:", d.trivial)
for wit in d.witnesses:
    print(f"  k={wit.embedding.exponent} at zeta_{wit.sample.N}^{wit.sample.j}: {wit.value}")

# <2 cos(2 pi/5)> is positive at one embedding and negative at the other,
# so it survives even though its total signature is zero
c5 = WittElement.from_form(extend_constant(HermitianForm.diagonal(5, [zeta(5) + zeta(5, 4)])))
print("<zeta5 + zeta5^-1>:", [(w.embedding.exponent, int(w.value)) for w in is_trivial(c5).witnesses])

# equality of classes reduces to vanishing of a difference
a = make_canonical(Fraction(1, 2), [((3, 1), 2)])
print("a - a trivial:", is_trivial(direct_sum(a, scale(a, -1))).trivial)

# batches keep going past bad inputs
singular = WittElement(1, 1, [(HermitianForm(1, [[0]]), Fraction(1))])
for r in decide_batch([c5, singular]):
    print(" ", r.to_json(include_step_functions=False))
