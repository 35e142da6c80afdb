"""Rigid complexes over the two-loop algebra 1 -a-> 2 -b-> 1 with aba = bab = 0.

T and S share a dimension array.  T is a sum of two tilting pieces, S splits
off a disk.  Both are rigid, yet they are not isomorphic, and a census over
F2 shows rigid two-term complexes are unique in each small slot.

Run:  python demos/twoloop_tilting.py
"""
from comproj import corpus
from comproj.census import two_term_census
from comproj.complexes import format_array, minimize
from comproj.exactlin import Field
from comproj.homcalc import hom_dim, is_isomorphic, is_rigid, tangent_dims

A = corpus.two_loop()
U = corpus.two_loop_U(A)
print("U =", U.describe())
for k in (1, 2):
    print(f"  hom_dim(U,U,{k}) = {hom_dim(U, U, k)}")

T, S = corpus.two_loop_T(A), corpus.two_loop_S(A)
print("\nT =", T.describe())
print("S =", S.describe())
print("arrays:", format_array(T.array()), "and", format_array(S.array()))
print("T ≅ S:", is_isomorphic(T, S).status)
print("rigid:", is_rigid(T), is_rigid(S))
print("tangent dims (scheme, orbit):", tangent_dims(T), tangent_dims(S))
print("minimal part of S:", minimize(S).complex.describe())

print("\ncensus over F2 of P1 + P2 -> P1 + P2")
for line in two_term_census(corpus.two_loop(Field.prime(2)), (1, 2), (1, 2)).lines()[-3:]:
    print(" ", line)
