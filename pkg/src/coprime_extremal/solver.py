"""Exact values of f(n, k) and its constrained variants.

``f(n, k)`` is the largest size of a subset of ``[1, n]`` with no k+1
pairwise coprime members. The search deletes as little weight as
possible from ``[1, n]`` so that every (k+1)-clique of the coprimality
graph loses a vertex.

Two facts make the search small. First, integers with the same radical
are interchangeable: an optimum contains a radical class entirely or not
at all, so the vertices are the squarefree ``r <= n``, weighted by class
size. Second, if ``r | s`` with ``r > 1`` then any feasible set holding r
stays feasible after adding s's class, so optimal sets are closed upward
under divisibility of radicals. Branches that keep r but delete s are
dropped.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import numpy as np

from .coprime import clique_number, coprime_adjacency, iter_cliques
from .errors import InfeasibleForced, InvalidArgument, SearchBudgetExceeded
from .intset import IntSet
from .primes import PrimeTable, primorial, radicals_upto

DEFAULT_NODE_BUDGET = 10**8
BRUTEFORCE_MAX_N = 20

EXACT = "exact"
BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class SolveRequest:
    n: int
    k: int
    forced: tuple[int, ...] = ()
    escape_Ek: bool = False
    node_budget: int = DEFAULT_NODE_BUDGET
    canonical_witness: bool = False

    def __post_init__(self):
        object.__setattr__(self, "forced", tuple(sorted(set(int(m) for m in self.forced))))
        if self.n < 1 or self.k < 1:
            raise InvalidArgument(f"need n >= 1 and k >= 1, got n={self.n}, k={self.k}")
        if self.node_budget < 1:
            raise InvalidArgument("node_budget must be positive")
        for m in self.forced:
            if not 1 <= m <= self.n:
                raise InvalidArgument(f"forced element {m} is outside [1, {self.n}]")

    def canonical_key(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "forced": list(self.forced),
            "escape_Ek": self.escape_Ek,
            "node_budget": self.node_budget,
            "canonical_witness": self.canonical_witness,
        }


@dataclass(frozen=True)
class SolveResult:
    value: int
    witness: IntSet
    nodes_explored: int
    status: str
    bounds: tuple[int, int] | None = None

    def require_exact(self) -> SolveResult:
        if self.status != EXACT:
            lo, hi = self.bounds
            raise SearchBudgetExceeded("solver exceeded its node budget", lo, hi, self.nodes_explored)
        return self


class _BudgetOut(Exception):
    pass


@dataclass
class _Incumbent:
    value: int = -1
    mask: int | None = None
    members: tuple[int, ...] | None = field(default=None, repr=False)


class _ClassProblem:
    """Weighted hitting-set search over radical classes of ``[1, n]``."""

    def __init__(self, n: int, k: int, budget: int, canonical: bool):
        rad = radicals_upto(n)[1:]
        values, counts = np.unique(rad, return_counts=True)
        self.n = n
        self.k = k
        self.rads = [int(v) for v in values]
        self.weights = [int(c) for c in counts]
        self.index = {r: i for i, r in enumerate(self.rads)}
        self.adj = coprime_adjacency(self.rads)
        self.full = (1 << len(self.rads)) - 1
        self.up = []
        for r in self.rads:
            row = 0
            if r > 1:
                for j, s in enumerate(self.rads):
                    if s != r and s % r == 0:
                        row |= 1 << j
            self.up.append(row)
        self.budget = budget
        self.canonical = canonical
        self.nodes = 0
        self.best = _Incumbent()
        self.members_of = None

    # ---- helpers -------------------------------------------------------

    def weight(self, mask: int) -> int:
        total = 0
        w = self.weights
        while mask:
            low = mask & -mask
            total += w[low.bit_length() - 1]
            mask ^= low
        return total

    def closure(self, keep: int) -> int:
        out = keep
        m = keep
        while m:
            low = m & -m
            out |= self.up[low.bit_length() - 1]
            m ^= low
        return out

    def members(self, mask: int) -> tuple[int, ...]:
        rad = radicals_upto(self.n)
        chosen = np.zeros(self.n + 1, dtype=bool)
        for i, r in enumerate(self.rads):
            if mask >> i & 1:
                chosen |= rad == r
        chosen[0] = False
        return tuple(int(m) for m in np.flatnonzero(chosen))

    def feasible(self, mask: int) -> bool:
        return next(iter_cliques(self.adj, mask, self.k + 1), None) is None

    def class_of(self, m: int) -> int:
        return self.index[int(radicals_upto(self.n)[m])]

    def offer(self, mask: int) -> None:
        value = self.weight(mask)
        if value > self.best.value:
            self.best = _Incumbent(value, mask)
        elif value == self.best.value and self.canonical:
            if self.best.members is None:
                self.best.members = self.members(self.best.mask)
            cand = self.members(mask)
            if cand < self.best.members:
                self.best = _Incumbent(value, mask, cand)

    def root_upper(self) -> int:
        used, lb = 0, 0
        for c in iter_cliques(self.adj, self.full, self.k + 1):
            if c & used == 0:
                used |= c
                lb += self._min_weight(c)
        return self.weight(self.full) - lb

    def _min_weight(self, mask: int) -> int:
        best = None
        while mask:
            low = mask & -mask
            w = self.weights[low.bit_length() - 1]
            best = w if best is None or w < best else best
            mask ^= low
        return best

    # ---- search --------------------------------------------------------

    def solve(self, keep: int) -> None:
        keep = self.closure(keep)
        self._node(self.full, keep)

    def _node(self, alive: int, keep: int) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetOut
        size = self.k + 1
        while True:
            unit = 0
            used, lb = 0, 0
            hits = {}
            any_clique = False
            for c in iter_cliques(self.adj, alive, size):
                any_clique = True
                free = c & ~keep
                if free == 0:
                    return
                if free & (free - 1) == 0:
                    unit |= free
                if free & used == 0:
                    used |= free
                    lb += self._min_weight(free)
                m = free
                while m:
                    low = m & -m
                    hits[low] = hits.get(low, 0) + 1
                    m ^= low
            if not unit:
                break
            alive &= ~unit
        if not any_clique:
            self.offer(alive)
            return
        upper = self.weight(alive) - lb
        if upper < self.best.value or (upper == self.best.value and not self.canonical):
            return
        # most-hit undecided class first, smallest radical on ties
        pick = max(hits, key=lambda b: (hits[b], -b.bit_length()))
        v = pick.bit_length() - 1
        self._node(alive & ~pick, keep)
        grown = self.closure(keep | pick)
        if grown & ~alive == 0:
            self._node(alive, grown)


def f_exact(request: SolveRequest) -> SolveResult:
    """Exact optimum for ``request``; ``status`` says whether the budget sufficed."""
    n, k = request.n, request.k
    if request.forced:
        forced_set = IntSet.from_iterable(n, request.forced)
        if clique_number(forced_set, stop_at=k + 1) > k:
            raise InfeasibleForced(f"forced elements {list(request.forced)} hold {k + 1} pairwise coprime")
    prob = _ClassProblem(n, k, request.node_budget, request.canonical_witness)
    forced_mask = 0
    for m in request.forced:
        forced_mask |= 1 << prob.class_of(m)

    Pk = 1
    q, found = 2, 0
    while found < k:
        if all(q % d for d in range(2, int(q**0.5) + 1)):
            Pk *= q
            found += 1
        q += 1
    in_E = 0
    for i, r in enumerate(prob.rads):
        if gcd(r, Pk) > 1:
            in_E |= 1 << i

    if request.escape_Ek:
        starts = [forced_mask | (1 << i) for i, r in enumerate(prob.rads) if gcd(r, Pk) == 1]
    else:
        starts = [forced_mask]
        seed = prob.closure(in_E | forced_mask)
        if prob.feasible(seed):
            prob.offer(seed)
    # a start whose own closure already holds a (k+1)-clique is infeasible
    starts = [s for s in starts if prob.feasible(prob.closure(s))]

    try:
        for s in starts:
            prob.solve(s)
    except _BudgetOut:
        upper = max(prob.best.value, prob.root_upper())
        lower = max(prob.best.value, 0)
        witness = IntSet.from_iterable(n, prob.members(prob.best.mask)) if prob.best.mask is not None else IntSet(n)
        return SolveResult(lower, witness, prob.nodes - 1, BUDGET_EXCEEDED, (lower, upper))

    if prob.best.mask is None:
        raise InfeasibleForced("no set satisfies the forced elements together with the escape requirement")
    witness = IntSet.from_iterable(n, prob.members(prob.best.mask))
    return SolveResult(prob.best.value, witness, prob.nodes, EXACT)


def solve(
    n: int,
    k: int,
    forced: Iterable[int] = (),
    escape_Ek: bool = False,
    node_budget: int = DEFAULT_NODE_BUDGET,
    canonical_witness: bool = False,
) -> SolveResult:
    return f_exact(SolveRequest(n, k, tuple(forced), escape_Ek, node_budget, canonical_witness))


def f(n: int, k: int, node_budget: int = DEFAULT_NODE_BUDGET) -> int:
    """``f(n, k)``; raises if the budget runs out."""
    return solve(n, k, node_budget=node_budget).require_exact().value


# ---- brute-force oracle -------------------------------------------------


def _first_primes_product(k: int) -> int:
    out, q, found = 1, 2, 0
    while found < k:
        if all(q % d for d in range(2, q)):
            out *= q
            found += 1
        q += 1
    return out


@lru_cache(maxsize=None)
def _enumerate_all(n: int, k: int) -> tuple[int, int]:
    """Walk every subset of ``[1, n]`` with no k+1 pairwise coprime members.

    Returns ``(best, best_escaping)`` where the second maximum only counts
    sets holding an element coprime to ``P_k`` (-1 if there is none).
    Subsets containing a forbidden clique are skipped together with all
    their supersets, which is exact because the family is closed under
    taking subsets.
    """
    adj = [0] * (n + 1)
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            if a != b and gcd(a, b) == 1:
                adj[a] |= 1 << b
    Pk = _first_primes_product(k)
    escaper = [gcd(m, Pk) == 1 for m in range(n + 1)]

    def has_clique(mask: int, size: int) -> bool:
        if size == 0:
            return True
        while mask:
            if bin(mask).count("1") < size:
                return False
            low = mask & -mask
            mask ^= low
            if has_clique(mask & adj[low.bit_length() - 1], size - 1):
                return True
        return False

    best = [0, -1]

    def walk(m: int, chosen: int, count: int, escapes: bool) -> None:
        if m > n:
            if count > best[0]:
                best[0] = count
            if escapes and count > best[1]:
                best[1] = count
            return
        if not has_clique(chosen & adj[m], k):
            walk(m + 1, chosen | (1 << m), count + 1, escapes or escaper[m])
        walk(m + 1, chosen, count, escapes)

    walk(1, 0, 0, False)
    return best[0], best[1]


def f_bruteforce(n: int, k: int, escape_Ek: bool = False) -> int:
    """Test oracle: exhaustive enumeration, refused above n = 20."""
    if n < 1 or k < 1:
        raise InvalidArgument(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    if n > BRUTEFORCE_MAX_N:
        raise InvalidArgument(f"brute force refuses n={n} > {BRUTEFORCE_MAX_N}")
    plain, escaping = _enumerate_all(n, k)
    return escaping if escape_Ek else plain


def theorem3_gap(
    table: PrimeTable, n: int, k: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> int:
    """``|E_k(n)|`` minus the largest member of ``C_k(n)`` that is not inside ``E_k(n)``."""
    Pk = primorial(table, k)
    e_size = sum(1 for m in range(1, n + 1) if gcd(m, Pk) > 1)
    best = solve(n, k, escape_Ek=True, node_budget=node_budget).require_exact()
    return e_size - best.value
