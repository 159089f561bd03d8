"""Pairwise-coprime cliques inside a set of integers.

Two integers are adjacent when their gcd is 1, so a pairwise coprime
subset is a clique in this "coprimality graph". Integers sharing a
radical have identical neighbourhoods and are never adjacent to each
other (unless the radical is 1, which only the integer 1 has), so the
search runs over radical classes and picks the smallest member of each
class as its representative.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from itertools import combinations
from math import gcd

import numpy as np

from .errors import CoverInvalid, InvalidArgument, SearchBudgetExceeded
from .intset import IntSet
from .primes import prime_factors, radicals_upto

DEFAULT_NODE_BUDGET = 10**8


@dataclass(frozen=True)
class CliqueWitness:
    elements: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.elements)


def pairwise_coprime(values: Iterable[int]) -> bool:
    return all(gcd(a, b) == 1 for a, b in combinations(list(values), 2))


def coprime_adjacency(values: list[int]) -> list[int]:
    """Bitmask rows: bit ``j`` of row ``i`` is set iff ``gcd(values[i], values[j]) == 1``, ``i != j``."""
    arr = np.asarray(values, dtype=np.int64)
    weights = [1 << j for j in range(len(values))]
    rows = []
    for i, v in enumerate(values):
        hits = np.flatnonzero(np.gcd(arr, v) == 1)
        row = 0
        for j in hits:
            if j != i:
                row |= weights[j]
        rows.append(row)
    return rows


def iter_cliques(adj: list[int], candidates: int, size: int, required: int = 0) -> Iterator[int]:
    """Yield every clique of exactly ``size`` vertices inside ``candidates`` as a bitmask.

    Cliques are produced in lexicographic order of their vertex indices.
    """

    def grow(chosen: int, pool: int, need: int) -> Iterator[int]:
        if need == 0:
            yield chosen
            return
        while pool:
            if pool.bit_count() < need:
                return
            low = pool & -pool
            v = low.bit_length() - 1
            pool ^= low
            yield from grow(chosen | low, pool & adj[v], need - 1)

    yield from grow(0, candidates, size)


def _greedy_colouring(adj: list[int], pool: int) -> list[tuple[int, int]]:
    """Sequential colouring of ``pool``; returns ``(vertex, colour)`` with colours nondecreasing."""
    out = []
    colour = 0
    remaining = pool
    while remaining:
        colour += 1
        avail = remaining
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            avail &= ~adj[v] & ~low
            remaining &= ~low
            out.append((v, colour))
    return out


class _CliqueSearch:
    def __init__(self, adj: list[int], budget: int, stop_at: int | None = None):
        self.adj = adj
        self.budget = budget
        self.stop_at = stop_at
        self.nodes = 0
        self.best = 0
        self.best_mask = 0

    def _tick(self, upper: int) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(
                "max clique search exceeded its node budget", self.best, upper, self.nodes
            )

    def maximum(self, pool: int) -> tuple[int, int]:
        self.root_upper = max((c for _, c in _greedy_colouring(self.adj, pool)), default=0)
        self._expand(0, 0, pool)
        return self.best, self.best_mask

    def _expand(self, chosen: int, depth: int, pool: int) -> bool:
        self._tick(self.root_upper)
        order = _greedy_colouring(self.adj, pool)
        for v, colour in reversed(order):
            if depth + colour <= self.best:
                return False
            bit = 1 << v
            sub = pool & self.adj[v]
            if sub:
                if self._expand(chosen | bit, depth + 1, sub):
                    return True
            elif depth + 1 > self.best:
                self.best, self.best_mask = depth + 1, chosen | bit
                if self.stop_at is not None and self.best >= self.stop_at:
                    return True
            pool &= ~bit
        return False

    def first_of_size(self, pool: int, target: int) -> int:
        """Lexicographically first clique with ``target`` vertices (vertex index order)."""

        def dfs(chosen: int, depth: int, cand: int) -> int | None:
            self._tick(target)
            if depth == target:
                return chosen
            while cand:
                if depth + cand.bit_count() < target:
                    return None
                colours = _greedy_colouring(self.adj, cand)
                if depth + colours[-1][1] < target:
                    return None
                low = cand & -cand
                v = low.bit_length() - 1
                cand ^= low
                found = dfs(chosen | low, depth + 1, cand & self.adj[v])
                if found is not None:
                    return found
            return None

        if target == 0:
            return 0
        found = dfs(0, 0, pool)
        if found is None:
            raise AssertionError("no clique of the requested size")
        return found


def _radical_classes(S: IntSet) -> tuple[list[int], list[int]]:
    """Distinct radicals present in ``S`` and the smallest member of each, sorted by that member."""
    members = np.flatnonzero(S.mask)
    if members.size == 0:
        return [], []
    rad = radicals_upto(S.n)[members]
    _, first = np.unique(rad, return_index=True)
    first.sort()
    reps = [int(m) for m in members[first]]
    rads = [int(r) for r in rad[first]]
    return rads, reps


def _minimal_classes(rads: list[int]) -> list[int]:
    """Indices of radicals with no proper divisor > 1 among the others.

    A radical r is replaceable in any clique by such a divisor d (the
    divisor is coprime to everything r is), so only minimal ones matter
    for the clique number.
    """
    present = set(rads)
    keep = []
    for i, r in enumerate(rads):
        if r == 1:
            keep.append(i)
            continue
        qs = prime_factors(r)
        dominated = False
        for size in range(1, len(qs)):
            for combo in combinations(qs, size):
                d = 1
                for q in combo:
                    d *= q
                if d in present:
                    dominated = True
                    break
            if dominated:
                break
        if not dominated:
            keep.append(i)
    return keep


def max_pairwise_coprime(
    S: IntSet, *, canonical: bool = False, node_budget: int = DEFAULT_NODE_BUDGET
) -> CliqueWitness:
    """A largest pairwise coprime subset of ``S``.

    With ``canonical`` the witness is the lexicographically smallest
    maximum subset; otherwise it is some maximum subset (the size never
    depends on the flag).
    """
    rads, reps = _radical_classes(S)
    if not rads:
        return CliqueWitness(())
    keep = _minimal_classes(rads)
    adj = coprime_adjacency([rads[i] for i in keep])
    size, mask = _CliqueSearch(adj, node_budget).maximum((1 << len(keep)) - 1)
    if not canonical:
        return CliqueWitness(tuple(sorted(reps[keep[j]] for j in range(len(keep)) if mask >> j & 1)))
    # replacing a class by a dominating divisor class can raise the representative, so the
    # lexicographic search must see every class
    adj = coprime_adjacency(rads)
    mask = _CliqueSearch(adj, node_budget).first_of_size((1 << len(rads)) - 1, size)
    return CliqueWitness(tuple(sorted(reps[j] for j in range(len(rads)) if mask >> j & 1)))


def clique_number(S: IntSet, *, node_budget: int = DEFAULT_NODE_BUDGET, stop_at: int | None = None) -> int:
    """Size of the largest pairwise coprime subset; stops early once ``stop_at`` is reached."""
    rads, _ = _radical_classes(S)
    if not rads:
        return 0
    keep = _minimal_classes(rads)
    adj = coprime_adjacency([rads[i] for i in keep])
    size, _ = _CliqueSearch(adj, node_budget, stop_at).maximum((1 << len(keep)) - 1)
    return size


def is_in_Ck(S: IntSet, k: int, *, node_budget: int = DEFAULT_NODE_BUDGET) -> bool:
    """True iff ``S`` contains no ``k + 1`` pairwise coprime integers."""
    if k < 0:
        raise InvalidArgument(f"k must be >= 0, got {k}")
    return clique_number(S, node_budget=node_budget, stop_at=k + 1) <= k


def clique_upper_bound_by_prime_cover(S: IntSet, cover_primes: Iterable[int]) -> int:
    """Pigeonhole bound on the clique number of ``S``.

    Pairwise coprime elements > 1 need pairwise distinct cover primes, and
    1 can join any clique, so the bound is ``|cover| + [1 in S]``.
    """
    cover = sorted(set(cover_primes))
    for q in cover:
        if q < 2 or prime_factors(q) != (q,):
            raise InvalidArgument(f"cover entry {q} is not a prime")
    covered = IntSet.multiples(S.n, [q for q in cover if q <= S.n]) if S.n else IntSet(0)
    stray = [m for m in (S - covered) if m != 1]
    if stray:
        raise CoverInvalid(f"{stray[0]} has no divisor among {cover}")
    return len(cover) + (1 if 1 in S else 0)
