"""Explicit large members of C_k(n).

Two families are built here, each with a certificate that it really has
no k+1 pairwise coprime elements:

* the prime-gap construction, which beats ``|E_k(n)|`` by ``l(l-5)/2``
  once a suitable index t is available (``build_theorem1``);
* a set escaping ``E_k(n)`` that is only ``O_k(n / loglog n)`` smaller than
  it (``build_theorem4``).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, log

import networkx as nx
import numpy as np

from .canonical import Ek
from .coprime import clique_upper_bound_by_prime_cover
from .errors import InvalidArgument, PreconditionViolated
from .intset import IntSet
from .primes import PrimeTable, factorize, lemma1_conditions, primorial

LOGLOG_MIN_N = 16


@dataclass(frozen=True)
class Theorem1Report:
    t: int
    l: int
    n: int
    k: int
    B: IntSet
    C: IntSet
    D: IntSet
    Dprime: IntSet
    A: IntSet
    E: IntSet
    delta: int
    clique_bound: int
    A_not_subset_E: bool
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


@dataclass(frozen=True)
class Theorem4Report:
    k: int
    n: int
    l: int
    A: IntSet
    special: int
    E_size: int
    gap: int
    normalized_gap: float
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def loglog(n: int) -> float:
    if n < LOGLOG_MIN_N:
        raise InvalidArgument(f"loglog is only used for n >= {LOGLOG_MIN_N}, got {n}")
    return log(log(n))


def theorem1_preconditions(table: PrimeTable, t: int, l: int, n: int) -> dict[str, bool]:
    conds = lemma1_conditions(table, t, l)
    q_prev = table.p(t + 2 * l - 1)
    conds["n_at_least_square"] = q_prev * q_prev <= n
    conds["n_below_product"] = n < table.p(t) * table.p(t + 2 * l)
    return conds


def _pair_products(table: PrimeTable, t: int, pairs) -> list[int]:
    return [table.p(t + i) * table.p(t + j) for i, j in pairs]


def max_pair_matching(elements: list[int], index_primes: list[int]) -> int:
    """Largest number of pairwise coprime entries of ``elements``.

    Every entry must be a product of two distinct primes from
    ``index_primes``; coprime entries are then vertex-disjoint edges, so
    the answer is a maximum matching.
    """
    pos = {q: i for i, q in enumerate(index_primes)}
    g = nx.Graph()
    g.add_nodes_from(range(len(index_primes)))
    for m in elements:
        fac = factorize(m)
        qs = sorted(fac)
        if len(qs) != 2 or any(e != 1 for e in fac.values()) or not all(q in pos for q in qs):
            raise InvalidArgument(f"{m} is not a product of two distinct indexed primes")
        g.add_edge(pos[qs[0]], pos[qs[1]])
    return len(nx.max_weight_matching(g, maxcardinality=True))


def build_theorem1(table: PrimeTable, t: int, l: int, n: int) -> Theorem1Report:
    """Decompose ``E_{t+l-1}(n)`` as ``B + C + D`` and swap ``D`` for ``D'``.

    ``B`` is the part with a prime factor below ``p_t``; ``C`` holds the
    products ``p_{t+i} p_{t+j}`` with ``i < l``; ``D`` the primes
    ``p_t..p_{t+l-1}`` and their squares; ``D'`` the products with both
    indices in ``[l, 2l-1]``.
    """
    if t < 1 or l < 1:
        raise InvalidArgument(f"t and l must be positive, got t={t}, l={l}")
    pre = theorem1_preconditions(table, t, l, n)
    failed = [name for name, ok in pre.items() if not ok]
    if failed:
        raise PreconditionViolated(f"t={t}, l={l}, n={n}: failed {', '.join(failed)}")

    k = t + l - 1
    E = Ek(table, k, n)
    B = IntSet.multiples(n, [q for q in table.first(t - 1) if q <= n])
    c_pairs = [(i, j) for i in range(l) for j in range(i + 1, 2 * l)]
    d_pairs = [(i, j) for i in range(l, 2 * l - 1) for j in range(i + 1, 2 * l)]
    C = IntSet.from_iterable(n, _pair_products(table, t, c_pairs))
    Dprime = IntSet.from_iterable(n, _pair_products(table, t, d_pairs))
    d_vals = [table.p(t + i) for i in range(l)] + [table.p(t + i) ** 2 for i in range(l)]
    D = IntSet.from_iterable(n, d_vals)
    A = B | C | Dprime

    disjoint = B.isdisjoint(C) and B.isdisjoint(D) and C.isdisjoint(D)
    covers = (B | C | D) == E

    # clique(A) <= clique(B) + clique(C u D'): cover bound on B, matching bound on the products
    b_bound = clique_upper_bound_by_prime_cover(B, table.first(t - 1))
    index_primes = [table.p(t + i) for i in range(2 * l)]
    m_bound = max_pair_matching((C | Dprime).members(), index_primes)
    bound = b_bound + m_bound

    delta = len(A) - len(E)
    checks = {
        "preconditions_hold": True,
        "decomposition_disjoint": disjoint and B.isdisjoint(Dprime),
        "decomposition_covers_E": covers,
        "A_in_Ck": bound <= k,
        # D' is exactly what A gains outside E; it is empty when l = 1
        "A_escapes_E": (A - E) == Dprime,
        "delta_matches_formula": 2 * delta == l * (l - 5),
    }
    return Theorem1Report(
        t=t, l=l, n=n, k=k, B=B, C=C, D=D, Dprime=Dprime, A=A, E=E,
        delta=delta, clique_bound=bound, A_not_subset_E=len(A - E) > 0, checks=checks,
    )


def primorial_bracket(table: PrimeTable, n: int) -> int:
    """The l with ``P_{l+1} <= n < P_{l+2}``."""
    if n < 2:
        raise InvalidArgument(f"n must be >= 2, got {n}")
    l = -1
    while primorial(table, l + 2) <= n:
        l += 1
    return l


def build_theorem4(table: PrimeTable, k: int, n: int) -> Theorem4Report:
    """Multiples of ``p_i p_j`` (``i <= k < j <= l``) together with ``p_{k+1}...p_l``."""
    if k < 1:
        raise InvalidArgument(f"k must be positive, got {k}")
    floor = primorial(table, k + 2)
    if n < floor:
        raise PreconditionViolated(f"n={n} is below p_1...p_{k + 2} = {floor}")
    l = primorial_bracket(table, n)
    low = table.first(k)
    high = [table.p(j) for j in range(k + 1, l + 1)]
    special = 1
    for q in high:
        special *= q

    body = IntSet.multiples(n, [a * b for a in low for b in high if a * b <= n])
    A = body.with_members([special]) if special <= n else body
    E_size = len(Ek(table, k, n))

    others = np.asarray(body.members(), dtype=np.int64)
    special_hits_all = bool(np.all(np.gcd(others, special) > 1)) if others.size else True
    try:
        cover_ok = clique_upper_bound_by_prime_cover(body, low) <= k
    except Exception:
        cover_ok = False
    Pk = primorial(table, k)
    checks = {
        "bracket_holds": primorial(table, l + 1) <= n < primorial(table, l + 2) and l >= k + 1,
        "A_in_Ck": cover_ok and special_hits_all and special not in body,
        "A_escapes_E": special in A and gcd(special, Pk) == 1,
    }
    gap = E_size - len(A)
    return Theorem4Report(
        k=k, n=n, l=l, A=A, special=special, E_size=E_size, gap=gap,
        normalized_gap=gap * loglog(n) / n, checks=checks,
    )
