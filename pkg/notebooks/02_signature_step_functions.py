"""
Signature step functions on the unit circle
===========================================

A hermitian form over Q(zeta_m)(t) gives, for each embedding, a function
on the unit circle: evaluate the form at t = z and take the signature.
It is locally constant and only jumps where the determinant vanishes or
an entry has a pole.
"""

from wittsig import (
    HermitianForm,
    WittElement,
    evaluate_class_at,
    jump_candidates,
    jumps,
    make_canonical,
    signature_step_function,
)

# the basic block for z = i: a 1x1 form over Q(i)(t)
block = make_canonical(0, [((4, 1), 1)])
print("entry:", block.summands[0][0].gram[0][0])

# candidates are exact roots of unity here: t = 1 and t = -i
print("candidates:", [str(c) for c in jump_candidates(block)])

s = signature_step_function(block)
for start, end, value in s.arcs():
    print(f"  arc ({start}, {end}) turns: {value}")
print("jumps:", [(str(c), int(j)) for c, j in jumps(s)])

# values at a few points, exactly
for N, j in [(2, 1), (4, 1), (8, 7)]:
    print(f"  value at zeta_{N}^{j}:", evaluate_class_at(block, None, (N, j)))

# tripling the multiplicity triples every jump
s3 = signature_step_function(make_canonical(0, [((4, 1), 3)]))
print("jumps with r = 3:", [int(j) for _, j in jumps(s3)])

# a determinant with zeros off the roots of unity: 2 cos(theta) + 1/2
w = WittElement.from_form(HermitianForm(1, [["t + t^-1 + 1/2"]]))
for c in signature_step_function(w).candidates:
    print("isolated zero in", (float(c.lo), float(c.hi)), "turns")

# plotting data
print(s.to_csv())
