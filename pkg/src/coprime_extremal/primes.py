"""Prime tables, primorials, totients and prime-gap witnesses.

Everything in here is exact integer arithmetic. A :class:`PrimeTable` is
built once from a sieve bound and never grows; asking for an index beyond
it raises :class:`~coprime_extremal.errors.OutOfRange`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

import numpy as np

from .errors import InvalidArgument, OutOfRange


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to ``limit``.

    Indexing follows the usual number-theory convention: ``p(1) == 2``,
    and ``d(i) == p(i + 1) - p(i)``. The tuples ``primes`` and ``gaps`` are
    stored 0-based, so ``primes[i - 1] == p(i)``.
    """

    limit: int
    primes: tuple[int, ...]
    gaps: tuple[int, ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.primes)

    def p(self, i: int) -> int:
        if i < 1:
            raise InvalidArgument(f"prime index must be >= 1, got {i}")
        if i > len(self.primes):
            raise OutOfRange(
                f"p_{i} requested but table (limit={self.limit}) holds {len(self.primes)} primes"
            )
        return self.primes[i - 1]

    def d(self, i: int) -> int:
        if i < 1:
            raise InvalidArgument(f"gap index must be >= 1, got {i}")
        if i > len(self.gaps):
            raise OutOfRange(
                f"d_{i} needs p_{i + 1} but table (limit={self.limit}) holds {len(self.primes)} primes"
            )
        return self.gaps[i - 1]

    def first(self, k: int) -> tuple[int, ...]:
        """Return ``(p_1, ..., p_k)``."""
        if k < 0:
            raise InvalidArgument(f"k must be >= 0, got {k}")
        if k > len(self.primes):
            raise OutOfRange(f"{k} primes requested, table holds {len(self.primes)}")
        return self.primes[:k]


def sieve(limit: int) -> np.ndarray:
    """Boolean array ``is_prime[0..limit]``."""
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for q in range(2, isqrt(limit) + 1):
        if is_prime[q]:
            is_prime[q * q :: q] = False
    return is_prime


def build_prime_table(limit: int) -> PrimeTable:
    if limit < 2:
        raise InvalidArgument(f"sieve limit must be >= 2, got {limit}")
    primes = tuple(int(q) for q in np.flatnonzero(sieve(limit)))
    gaps = tuple(b - a for a, b in zip(primes, primes[1:]))
    return PrimeTable(limit=limit, primes=primes, gaps=gaps)


def table_with_primes(count: int) -> PrimeTable:
    """Smallest-effort table guaranteed to contain at least ``count`` primes."""
    limit = 16
    while True:
        table = build_prime_table(limit)
        if len(table) >= count:
            return table
        limit *= 2


def nth_prime(table: PrimeTable, i: int) -> int:
    return table.p(i)


def primorial(table: PrimeTable, k: int) -> int:
    """``P_k = p_1 p_2 ... p_k``, with ``P_0 = 1``."""
    out = 1
    for q in table.first(k):
        out *= q
    return out


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if n < 1:
        raise InvalidArgument(f"cannot factor {n}")
    out: dict[int, int] = {}
    for q in (2, 3):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    q, step = 5, 2
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += step
        step = 6 - step
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_factors(n: int) -> tuple[int, ...]:
    return tuple(sorted(factorize(n)))


def radical(n: int) -> int:
    out = 1
    for q in factorize(n):
        out *= q
    return out


def is_squarefree(n: int) -> bool:
    return all(e == 1 for e in factorize(n).values())


def euler_phi(n: int) -> int:
    if n < 1:
        raise InvalidArgument(f"euler_phi needs n >= 1, got {n}")
    out = n
    for q in factorize(n):
        out = out // q * (q - 1)
    return out


def gap_ratio(table: PrimeTable, t: int, l: int) -> Fraction:
    """``d_{t+2l-1} / max(d_t, ..., d_{t+2l-2})`` as an exact fraction."""
    if t < 1 or l < 1:
        raise InvalidArgument(f"t and l must be positive, got t={t}, l={l}")
    # d_{t+2l-1} needs p_{t+2l}; we insist on one more so the window is fully inside the table
    table.p(t + 2 * l + 1)
    denom = max(table.d(i) for i in range(t, t + 2 * l - 1))
    return Fraction(table.d(t + 2 * l - 1), denom)


def lemma1_conditions(table: PrimeTable, t: int, l: int) -> dict[str, bool]:
    """Evaluate the three prime-gap inequalities at index ``t``.

    ``product`` is ``p_t p_{t+2l} > p_{t+2l-1}^2``; ``square`` is
    ``p_t^2 > p_{t+2l}``; ``half`` is ``2 p_t > p_{t+2l}``.
    """
    pt, q_last, q_prev = table.p(t), table.p(t + 2 * l), table.p(t + 2 * l - 1)
    return {
        "product": pt * q_last > q_prev * q_prev,
        "square": pt * pt > q_last,
        "half": 2 * pt > q_last,
    }


def find_lemma1_witnesses(table: PrimeTable, l: int, strict: bool, t_max: int) -> list[int]:
    """All ``t <= t_max`` with ``p_t p_{t+2l} > p_{t+2l-1}^2``.

    With ``strict`` the extra conditions ``p_t^2 > p_{t+2l}`` and
    ``2 p_t > p_{t+2l}`` are required as well.
    """
    if l < 1 or t_max < 1:
        raise InvalidArgument(f"l and t_max must be positive, got l={l}, t_max={t_max}")
    table.p(t_max + 2 * l)
    ps = table.primes
    out = []
    for t in range(1, t_max + 1):
        pt, q_last, q_prev = ps[t - 1], ps[t + 2 * l - 1], ps[t + 2 * l - 2]
        if pt * q_last <= q_prev * q_prev:
            continue
        if strict and not (pt * pt > q_last and 2 * pt > q_last):
            continue
        out.append(t)
    return out


def radicals_upto(n: int) -> np.ndarray:
    """``rad[m]`` for ``0 <= m <= n`` (``rad[0]`` is 0, ``rad[1]`` is 1)."""
    rad = np.ones(n + 1, dtype=np.int64)
    rad[0] = 0
    if n >= 2:
        for q in np.flatnonzero(sieve(n)):
            q = int(q)
            rad[q::q] *= q
    return rad
