"""
Exact arithmetic in Q(zeta_m) and its embeddings
================================================

Elements of a cyclotomic field are stored in the reduced power basis, so
equality is exact. Signs of real elements are decided with certified
interval arithmetic.
"""

from wittsig import CyclotomicNumber, Embedding, embeddings_G0, real_sign, zeta

# zeta_8 + zeta_8^-1 is sqrt(2)
s2 = zeta(8) + zeta(8) ** -1
print("sqrt(2)^2 =", s2 * s2)

# 2 cos(2 pi / 5) is fixed by complex conjugation
x = zeta(5) + zeta(5, 4)
print("x =", x, " real:", x.is_real())

# one embedding from each conjugate pair
G0 = embeddings_G0(5)
print("G0(5):", [rho.exponent for rho in G0])

# the two real embeddings of x disagree in sign
for rho in G0:
    print(f"  sign of sigma_{rho.exponent}(x):", real_sign(x, rho))

# subfields lift into larger cyclotomic fields
print("i in Q(zeta_12):", zeta(4).lift(12) == zeta(12, 3))

# a number very close to zero still gets a certified sign
close = s2 - CyclotomicNumber.rational(8, "1393/985")
print("sign(sqrt(2) - 1393/985) =", real_sign(close, Embedding(8, 1)))
