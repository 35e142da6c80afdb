"""Walk through a degeneration of two-term complexes over the A2 quiver.

M = (P2 -> P1 + P2) with the split differential is a disk plus the stalk P1.
N uses the arrow a instead.  We compare Hom dimensions, look for a witness Z,
check the certificate, and move along the one-parameter family from N to M.

Run:  python demos/a2_degeneration.py
"""
from comproj import corpus
from comproj.complexes import minimize
from comproj.degen import degeneration_report, riedtmann_member, search_witness, total_dim
from comproj.exactlin import Field
from comproj.homcalc import hom_dim, hom_order_leq, is_isomorphic

A = corpus.a2(Field.rationals())
M, N = corpus.a2_pair(A)
print("M =", M.describe())
print("N =", N.describe())

print("\nHom dimensions in the homotopy category")
for name, X, Y, k in (("N,M,0", N, M, 0), ("N,N,0", N, N, 0), ("N,N,1", N, N, 1), ("M,M,1", M, M, 1)):
    print(f"  hom_dim({name}) = {hom_dim(X, Y, k)}")

print("\nminimal part of M:", minimize(M).complex.describe())
print("hom order test M <= N consistent:", hom_order_leq(M, N).consistent)

zb = {1: (0, 1), 0: (1, 0)}
res = search_witness(M, N, zb, coeffs=(-1, 0, 1))
c = res.certificate
print(f"\nwitness after {res.maps_tried} maps: Z =", c.Z.describe())

print("\nfamily N_t, t = 0 .. dim Z + 1")
for t in range(total_dim(c.Z) + 2):
    Nt = riedtmann_member(c, t)
    print(f"  t={t}: ≅ N {is_isomorphic(Nt, N).status}, ≅ M {is_isomorphic(Nt, M).status}")

print("\nreport for M <= N:", degeneration_report(M, N, zb, coeffs=(-1, 0, 1)).verdict)
rev = degeneration_report(N, M, zb, coeffs=(-1, 0, 1), names=("N", "M"))
print("report for N <= M:", rev.verdict, "-", rev.reason)
