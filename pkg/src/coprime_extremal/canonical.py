"""The sets E_k(n) and B_k(n), their sizes and their densities.

``E_k(n)`` holds the integers up to n divisible by one of the first k
primes; ``B_k(n)`` swaps ``p_k`` for ``p_{k+1}``. Sizes are always
computed twice, by marking multiples and by inclusion-exclusion, and the
two counts must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from bisect import bisect_right
from math import gcd, lcm

from .errors import InvalidArgument
from .intset import IntSet
from .primes import PrimeTable, euler_phi


@dataclass(frozen=True)
class CanonicalSetReport:
    kind: str
    k: int
    n: int
    primes: tuple[int, ...]
    set: IntSet
    size: int
    density_exact: Fraction
    prefix_density: Fraction


def count_multiples(n: int, divisors: list[int] | tuple[int, ...]) -> int:
    """Number of ``m <= n`` divisible by some entry of ``divisors``, by inclusion-exclusion.

    For pairwise coprime divisors the alternating sum is grouped as
    Legendre's recursion ``phi(x, i) = x - sum_j phi(x // d_j, j - 1)``
    (``phi`` counts survivors of the first i divisors), memoised on
    ``(x, i)``. Otherwise subsets are walked directly, cutting those whose
    lcm exceeds n.
    """
    divs = sorted(set(divisors))
    if any(d < 1 for d in divs):
        raise InvalidArgument("divisors must be positive")
    if all(gcd(a, b) == 1 for i, a in enumerate(divs) for b in divs[i + 1 :]):
        return n - _survivors(n, tuple(divs))
    total = 0

    def walk(start: int, current: int, parity: int) -> None:
        nonlocal total
        for i in range(start, len(divs)):
            nxt = lcm(current, divs[i])
            if nxt > n:
                continue
            total += parity * (n // nxt)
            walk(i + 1, nxt, -parity)

    walk(0, 1, 1)
    return total


def _survivors(n: int, divs: tuple[int, ...]) -> int:
    memo: dict[tuple[int, int], int] = {}

    def phi(x: int, i: int) -> int:
        # divisors above x cannot divide anything up to x
        i = min(i, bisect_right(divs, x))
        if i == 0 or x == 0:
            return x
        key = (x, i)
        hit = memo.get(key)
        if hit is None:
            # unrolled over the first argument so recursion depth stays logarithmic in x
            hit = x - sum(phi(x // divs[j], j) for j in range(i))
            memo[key] = hit
        return hit

    return phi(n, len(divs))


def density_of_prime_multiples(primes: tuple[int, ...] | list[int]) -> Fraction:
    """Asymptotic density of the integers divisible by at least one of ``primes``."""
    modulus = 1
    for q in primes:
        modulus *= q
    return 1 - Fraction(euler_phi(modulus), modulus)


def _report(kind: str, k: int, n: int, primes: tuple[int, ...]) -> CanonicalSetReport:
    if n < 1:
        raise InvalidArgument(f"n must be positive, got {n}")
    s = IntSet.multiples(n, [q for q in primes if q <= n])
    size = len(s)
    check = count_multiples(n, primes)
    if size != check:
        raise AssertionError(f"{kind}_{k}({n}): marked {size} but inclusion-exclusion gives {check}")
    return CanonicalSetReport(
        kind=kind,
        k=k,
        n=n,
        primes=primes,
        set=s,
        size=size,
        density_exact=density_of_prime_multiples(primes),
        prefix_density=Fraction(size, n),
    )


def build_Ek(table: PrimeTable, k: int, n: int) -> CanonicalSetReport:
    if k < 1:
        raise InvalidArgument(f"k must be positive, got {k}")
    return _report("E", k, n, table.first(k))


def build_Bk(table: PrimeTable, k: int, n: int) -> CanonicalSetReport:
    if k < 1:
        raise InvalidArgument(f"k must be positive, got {k}")
    primes = table.first(k - 1) + (table.p(k + 1),)
    return _report("B", k, n, primes)


def Ek(table: PrimeTable, k: int, n: int) -> IntSet:
    return build_Ek(table, k, n).set


def density_Ek(table: PrimeTable, k: int) -> Fraction:
    """``1 - phi(P_k) / P_k``; zero for k = 0."""
    if k < 0:
        raise InvalidArgument(f"k must be >= 0, got {k}")
    return density_of_prime_multiples(table.first(k))
