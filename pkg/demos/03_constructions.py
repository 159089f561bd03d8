"""
Explicit constructions that compete with the prime multiples
============================================================

Two families built from products of primes. The first swaps the top prime
block for pairwise products; the second covers the composites with two
prime factors from the low and high ranges plus one special element.
"""

from coprime_extremal.constructions import build_theorem1, build_theorem4
from coprime_extremal.primes import table_with_primes

table = table_with_primes(3000)

# t=8, l=1 works for every n from 23^2 up to 19*29 - 1
for n in (529, 540, 550):
    rep = build_theorem1(table, 8, 1, n)
    print(f"n={n}: |A|={len(rep.A)}  |E|={len(rep.E)}  delta={rep.delta}  ok={rep.ok}")
    print("   C =", rep.C.members(), " D =", rep.D.members())

# a larger block: l=2 at t=27 gives delta = -3
rep = build_theorem1(table, 27, 2, 12769)
print("t=27, l=2:", rep.delta, rep.ok)

# the second family never contains k+1 pairwise coprime members yet escapes E_k
for k in (1, 2, 3):
    for n in (2310, 10**5):
        rep = build_theorem4(table, k, n)
        print(f"k={k} n={n}: special={rep.special}  gap={rep.gap}  normalized={rep.normalized_gap:.4f}  ok={rep.ok}")
