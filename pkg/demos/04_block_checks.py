"""
Residue blocks and coprime counts
=================================

Sweep the built-in block statements over many blocks, break one on
purpose, and check the CRT product formulas against direct scans.
"""

from coprime_extremal.primes import build_prime_table
from coprime_extremal.verification import (
    BlockLemma,
    bound_spec,
    builtin_block_lemmas,
    count_consecutive_coprime,
    count_pattern_direct,
    crt_count_pattern,
    verify_block_lemma,
    verify_proposition,
)

for lemma in builtin_block_lemmas():
    res = verify_block_lemma(lemma, 0, 500)
    extra = f" with {lemma.external}" if lemma.external else ""
    print(f"{lemma.name}: every {lemma.threshold} of {sorted(lemma.offsets)} mod {lemma.modulus}{extra} "
          f"hold {lemma.target} coprime -> {res.holds}")

# four of six consecutive integers are not enough for three coprime ones
weak = BlockLemma("weak", 6, frozenset(range(6)), 4, 3)
print("weakened:", verify_block_lemma(weak, 0, 10).counterexample)

# consecutive pairs coprime to a: product of (q - 2) over primes q | a
for a in (15, 105, 1155):
    print(a, count_consecutive_coprime(a), crt_count_pattern(a, (0, 1)))
print("35 with offsets 0,1,2,3,5:", crt_count_pattern(35, (0, 1, 2, 3, 5)),
      count_pattern_direct(35, (0, 1, 2, 3, 5)))

# the linear bound for sets holding a fixed element coprime to P_k
table = build_prime_table(100)
spec = bound_spec(table, 2, 7)
print("k=2, a=7 bound:", spec.coefficient, "* n +", spec.constant)
r = verify_proposition(table, 2, 7, 24)
print("largest set holding 7 at n=24:", r.forced_max, "<=", r.bound, r.holds)
