from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from coprime_extremal.errors import InvalidArgument, OutOfRange
from coprime_extremal.primes import (
    build_prime_table,
    euler_phi,
    factorize,
    find_lemma1_witnesses,
    gap_ratio,
    lemma1_conditions,
    nth_prime,
    primorial,
    radical,
    radicals_upto,
)


def trial_division_primes(limit):
    return [m for m in range(2, limit + 1) if all(m % d for d in range(2, int(m**0.5) + 1))]


def test_small_tables():
    assert build_prime_table(10).primes == (2, 3, 5, 7)
    t40 = build_prime_table(40)
    assert t40.primes == tuple(trial_division_primes(40))
    assert len(t40) == 12 and t40.primes[-1] == 37
    with pytest.raises(InvalidArgument):
        build_prime_table(1)


def test_table_invariants(table):
    assert table.primes == tuple(trial_division_primes(table.limit))
    assert table.p(1) == 2 and table.p(2) == 3
    for i in range(1, len(table)):
        assert table.p(i + 1) - table.p(i) == table.d(i)
    assert all(sympy.isprime(q) for q in table.primes[:200])


def test_nth_prime(table):
    assert nth_prime(table, 1) == 2
    assert nth_prime(table, 8) == 19
    assert nth_prime(table, 12) == 37
    with pytest.raises(OutOfRange):
        nth_prime(build_prime_table(10), 5)


def test_primorial(table):
    assert primorial(table, 0) == 1
    assert primorial(table, 3) == 30
    assert primorial(table, 5) == 2310
    for k in range(1, 40):
        assert primorial(table, k) == primorial(table, k - 1) * nth_prime(table, k)
    with pytest.raises(OutOfRange):
        primorial(build_prime_table(10), 5)


def test_euler_phi_examples():
    assert euler_phi(1) == 1
    assert euler_phi(30) == 8
    assert euler_phi(2310) == 480


def test_euler_phi_against_sympy():
    for n in range(1, 10_001):
        assert euler_phi(n) == sympy.totient(n)


def test_phi_of_primorial(table):
    prod = 1
    for k in range(1, 15):
        prod *= table.p(k) - 1
        assert euler_phi(primorial(table, k)) == prod


@given(st.integers(1, 10**9))
def test_factorize_roundtrip(n):
    out = 1
    for q, e in factorize(n).items():
        assert sympy.isprime(q)
        out *= q**e
    assert out == n


def test_radicals_table():
    rad = radicals_upto(500)
    assert [int(rad[m]) for m in range(1, 501)] == [radical(m) for m in range(1, 501)]


def test_gap_ratio(table):
    assert gap_ratio(table, 8, 1) == Fraction(3, 2)
    assert gap_ratio(table, 1, 1) == 2
    assert gap_ratio(table, 1, 2) == 2
    with pytest.raises(OutOfRange):
        gap_ratio(build_prime_table(10), 1, 2)


def test_lemma1_examples(table):
    loose = find_lemma1_witnesses(table, 1, False, 10)
    assert 1 in loose and 8 in loose
    strict = find_lemma1_witnesses(table, 1, True, 10)
    assert 1 not in strict and 3 not in strict and 8 in strict
    with pytest.raises(OutOfRange):
        find_lemma1_witnesses(build_prime_table(5), 1, False, 2)


@settings(max_examples=30, deadline=None)
@given(l=st.integers(1, 4), strict=st.booleans(), t_max=st.integers(1, 250))
def test_witnesses_are_exactly_the_solutions(table, l, strict, t_max):
    found = set(find_lemma1_witnesses(table, l, strict, t_max))
    for t in range(1, t_max + 1):
        pt, a, b = table.p(t), table.p(t + 2 * l - 1), table.p(t + 2 * l)
        ok = pt * b > a * a and (not strict or (pt * pt > b and 2 * pt > b))
        assert (t in found) == ok
        assert all(lemma1_conditions(table, t, l).values()) == (pt * b > a * a and pt * pt > b and 2 * pt > b)


def test_strict_witnesses_below_ten(table):
    # direct check of the three inequalities for t = 1..10
    assert find_lemma1_witnesses(table, 1, True, 10) == [5, 7, 8, 10]
