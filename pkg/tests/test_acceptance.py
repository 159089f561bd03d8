"""Acceptance criteria, one test each.

Run directly (``python3 tests/test_acceptance.py``) or through pytest; in
both cases the terminal summary lists a PASS/FAIL line per criterion.
"""

import random
import sys
from math import gcd

import pytest

from coprime_extremal.canonical import Ek
from coprime_extremal.constructions import build_theorem1, build_theorem4, loglog
from coprime_extremal.coprime import clique_upper_bound_by_prime_cover, max_pairwise_coprime
from coprime_extremal.intset import IntSet
from coprime_extremal.primes import find_lemma1_witnesses, lemma1_conditions, prime_factors
from coprime_extremal.solver import f, f_bruteforce, solve, theorem3_gap
from coprime_extremal.verification import (
    BlockLemma,
    builtin_block_lemmas,
    count_consecutive_coprime,
    count_pattern_direct,
    crt_count_pattern,
    verify_block_lemma,
    verify_proposition,
)

# largest gap * loglog(n) / n over the construction grid below, computed once
GRID_MAX_NORMALIZED_GAP = 1.3962722664902572
GRID_N = (2310, 10**4, 10**5, 10**6)


def squarefree(a):
    return all(e == 1 for e in _exponents(a))


def _exponents(a):
    out, q = [], 2
    while q * q <= a:
        e = 0
        while a % q == 0:
            a //= q
            e += 1
        if e:
            out.append(e)
        q += 1
    if a > 1:
        out.append(1)
    return out


def test_ac01_proved_cases(table):
    bad = []
    bad += [(n, 1) for n in range(2, 41) if f(n, 1) != n // 2]
    bad += [(n, 2) for n in range(3, 37) if f(n, 2) != len(Ek(table, 2, n))]
    bad += [(n, 3) for n in range(5, 31) if f(n, 3) != len(Ek(table, 3, n))]
    assert bad == []


def test_ac02_oracle_equivalence():
    bad = [
        (n, k, esc)
        for n in range(1, 19)
        for k in (1, 2, 3)
        for esc in (False, True)
        if solve(n, k, escape_Ek=esc).value != f_bruteforce(n, k, esc)
    ]
    assert bad == []


def test_ac03_small_n_threshold(table):
    cases = [(n, k) for k in range(1, 6) for n in range(1, 11) if n < table.p(k)]
    assert cases
    for n, k in cases:
        assert f(n, k) == n == len(Ek(table, k, n)) + 1


def test_ac04_theorem1_structure(table):
    for n in range(529, 551):
        rep = build_theorem1(table, 8, 1, n)
        assert all(rep.checks.values()), (n, rep.checks)
        assert rep.delta == -2 == 1 * (1 - 5) // 2


def test_ac05_lemma1_witness_search(big_table):
    l = 1
    t_max = len(big_table) - 2 * l
    found = find_lemma1_witnesses(big_table, l, True, t_max)
    assert found
    for t in found:
        assert all(lemma1_conditions(big_table, t, l).values()), t
    assert found[0] == 8, f"first strict witness is t={found[0]}"


def test_ac06_block_lemmas():
    for lemma in builtin_block_lemmas():
        res = verify_block_lemma(lemma, 0, 500)
        assert res.holds, (lemma.name, res.counterexample)
    weak = BlockLemma("L5-weak", 6, frozenset(range(6)), 4, 3)
    res = verify_block_lemma(weak, 0, 500)
    assert not res.holds and res.counterexample[0] <= 1


def test_ac07_counting_identities():
    for a in range(1, 3001, 2):
        if squarefree(a):
            expected = 1
            for q in prime_factors(a):
                expected *= q - 2
            assert count_consecutive_coprime(a) == expected, a
    offsets = (0, 1, 2, 3, 5)
    for a in range(1, 3001):
        if gcd(a, 6) == 1 and squarefree(a):
            assert crt_count_pattern(a, offsets) == count_pattern_direct(a, offsets), a


def test_ac08_proposition_bounds(table):
    grid = [(1, a, 30) for a in range(1, 16, 2)]
    grid += [(2, a, 24) for a in (1, 5, 7, 11, 13)]
    grid += [(3, a, 30) for a in (7, 11, 13)]
    bad = []
    for k, a, n_max in grid:
        for n in range(a, n_max + 1):
            r = verify_proposition(table, k, a, n)
            if not r.holds:
                bad.append((k, a, n, r.forced_max, r.bound))
    assert bad == []


def test_ac09_theorem3_gap_positivity(table):
    assert theorem3_gap(table, 3, 1) == 0
    zero_k1 = [n for n in range(4, 41) if theorem3_gap(table, n, 1) < 1]
    zero_k2 = [n for n in range(6, 31) if theorem3_gap(table, n, 2) < 1]
    assert zero_k1 == [] and zero_k2 == [], f"non-positive gaps: k=1 {zero_k1}, k=2 {zero_k2}"


def test_ac10_theorem4_regression(big_table):
    seen = []
    for k in (1, 2, 3):
        for n in GRID_N:
            rep = build_theorem4(big_table, k, n)
            assert all(rep.checks.values()), (k, n, rep.checks)
            assert rep.gap > 0
            assert rep.gap * loglog(n) / n == rep.normalized_gap
            seen.append(rep.normalized_gap)
    assert max(seen) <= 2 * GRID_MAX_NORMALIZED_GAP


def _random_cover(rng, members):
    cover = set()
    for m in members:
        if m > 1:
            cover.add(rng.choice(prime_factors(m)))
    extras = [q for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59) if rng.random() < 0.1]
    return sorted(cover | set(extras))


def test_ac11_certificate_soundness():
    rng = random.Random(20261014)
    for _ in range(50):
        members = rng.sample(range(1, 61), rng.randrange(1, 40))
        S = IntSet.from_iterable(60, members)
        cover = _random_cover(rng, members)
        assert clique_upper_bound_by_prime_cover(S, cover) >= max_pairwise_coprime(S).size


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
