"""
Prime tables and gap witnesses
==============================

Build a prime table, look at primorials and totients, then search for
indices where one prime gap is large compared with the gaps before it.
"""

from coprime_extremal.primes import (
    build_prime_table,
    euler_phi,
    find_lemma1_witnesses,
    gap_ratio,
    lemma1_conditions,
    primorial,
    table_with_primes,
)

# a table holds the primes up to a limit together with consecutive gaps
table = build_prime_table(100)
print("first ten primes:", table.first(10))
print("first ten gaps:  ", table.gaps[:10])

# primorials and their totients stay exact integers
for k in range(1, 6):
    P = primorial(table, k)
    print(f"P_{k} = {P:5d}   phi = {euler_phi(P)}")

# t qualifies when p_t * p_{t+2l} beats the square of p_{t+2l-1}; the strict
# version also asks p_t^2 > p_{t+2l} and 2 p_t > p_{t+2l}
big = table_with_primes(2000)
for l in (1, 2, 3):
    found = find_lemma1_witnesses(big, l, True, 1500)
    print(f"l={l}: {len(found)} strict witnesses, first few {found[:5]}")

t, l = 8, 1
print("conditions at t=8:", lemma1_conditions(big, t, l))
print("gap ratio at t=8:", gap_ratio(big, t, l))
