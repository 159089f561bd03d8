"""
Largest sets without k+1 pairwise coprime members
=================================================

Compare the exact optimum with the multiples of the first k primes, and
look at the best sets forced to leave that family.
"""

from coprime_extremal.canonical import build_Ek
from coprime_extremal.coprime import max_pairwise_coprime
from coprime_extremal.primes import build_prime_table
from coprime_extremal.solver import f_bruteforce, solve, theorem3_gap

table = build_prime_table(200)

# the optimum agrees with the multiples of 2, 3, 5 on this range
for n in (10, 20, 30):
    res = solve(n, 3)
    ek = build_Ek(table, 3, n)
    print(f"n={n}: optimum {res.value}, multiples of 2/3/5 give {ek.size}, nodes {res.nodes_explored}")

# the brute-force oracle is exhaustive and only used for small n
print("oracle at n=16, k=2:", f_bruteforce(16, 2), "solver:", solve(16, 2).value)

# a canonical witness is the lexicographically least optimal set
w = solve(12, 2, canonical_witness=True).witness
print("canonical witness n=12, k=2:", w.members())
print("its largest pairwise coprime subset:", max_pairwise_coprime(w).elements)

# sets that must contain something coprime to 2*3 pay a price
for n in (6, 12, 24, 30):
    esc = solve(n, 2, escape_Ek=True)
    print(f"n={n}: best escaping set {esc.witness.members()}  gap {theorem3_gap(table, n, 2)}")

# a tight budget returns bounds instead of a value
tight = solve(40, 3, node_budget=5)
print("budget run:", tight.status, tight.bounds)
