"""Finite checks: residue-block lemmas, CRT counting identities and the
linear upper bounds for sets that escape E_k.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

import numpy as np

from .coprime import coprime_adjacency, iter_cliques
from .errors import InvalidArgument
from .primes import PrimeTable, euler_phi, factorize, is_squarefree, primorial
from .solver import DEFAULT_NODE_BUDGET, solve


# ---- block lemmas ------------------------------------------------------


@dataclass(frozen=True)
class LiteralExternal:
    """A concrete integer that joins every block in the clique search."""

    value: int


@dataclass(frozen=True)
class AbstractExternal:
    """An unnamed element coprime to the block entries at ``coprime_offsets`` and to nothing else there."""

    coprime_offsets: frozenset[int]


@dataclass(frozen=True)
class BlockLemma:
    """Every ``threshold``-subset of ``{modulus*k + o : o in offsets}`` (plus
    the external element, if any) holds ``target`` pairwise coprime integers.
    """

    name: str
    modulus: int
    offsets: frozenset[int]
    threshold: int
    target: int
    external: LiteralExternal | AbstractExternal | None = None

    def __post_init__(self):
        object.__setattr__(self, "offsets", frozenset(self.offsets))
        if not self.offsets:
            raise InvalidArgument("offsets must be nonempty")
        if any(not 0 <= o <= self.modulus for o in self.offsets):
            raise InvalidArgument(f"offsets must lie in [0, {self.modulus}]")
        if not 1 <= self.threshold <= len(self.offsets):
            raise InvalidArgument("threshold must be between 1 and the number of offsets")
        if isinstance(self.external, AbstractExternal) and not self.external.coprime_offsets <= self.offsets:
            raise InvalidArgument("abstract coprime offsets must be among the block offsets")


@dataclass(frozen=True)
class BlockLemmaResult:
    lemma: str
    k_min: int
    k_max: int
    holds: bool
    counterexample: tuple[int, tuple[int, ...]] | None = None


def builtin_block_lemmas() -> list[BlockLemma]:
    six = frozenset(range(6))
    return [
        BlockLemma("L2a", 30, frozenset({1, 3, 4, 5, 7, 8, 11, 13}), 5, 4),
        BlockLemma("L2b", 30, frozenset({17, 19, 22, 23, 25, 26, 27, 29}), 5, 4),
        BlockLemma("L3", 7, frozenset(range(1, 8)), 6, 4, LiteralExternal(7)),
        BlockLemma("L4", 13, frozenset(range(1, 14)), 10, 4, LiteralExternal(13)),
        BlockLemma("L5", 6, six, 5, 3),
        BlockLemma("L7", 6, six, 4, 3, AbstractExternal(frozenset({0, 1, 2, 3, 5}))),
    ]


def lemma_by_name(name: str) -> BlockLemma:
    for lemma in builtin_block_lemmas():
        if lemma.name == name:
            return lemma
    raise InvalidArgument(f"unknown block lemma {name!r}")


def _check_block(lemma: BlockLemma, k: int) -> tuple[int, ...] | None:
    """First threshold-subset at block ``k`` lacking the target clique, or None."""
    # value 0 is not a positive integer and never belongs to a block
    block = [(lemma.modulus * k + o, o) for o in sorted(lemma.offsets) if lemma.modulus * k + o >= 1]
    if len(block) < lemma.threshold:
        return None
    values = [v for v, _ in block]
    ext = lemma.external
    if isinstance(ext, LiteralExternal) and ext.value not in values:
        adj = coprime_adjacency(values + [ext.value])
        ext_bit = 1 << len(values)
    elif isinstance(ext, AbstractExternal):
        adj = coprime_adjacency(values) + [0]
        ext_bit = 1 << len(values)
        for i, (_, o) in enumerate(block):
            if o in ext.coprime_offsets:
                adj[i] |= ext_bit
                adj[-1] |= 1 << i
    elif isinstance(ext, LiteralExternal):
        # the literal is also a block entry: T u {e} collapses, and e stays in every union
        adj = coprime_adjacency(values)
        ext_bit = 1 << values.index(ext.value)
    else:
        adj = coprime_adjacency(values)
        ext_bit = 0
    everything = (1 << len(values)) - 1 | ext_bit
    cliques = list(iter_cliques(adj, everything, lemma.target))
    # containing a target clique is monotone, so subsets of exactly the threshold size suffice
    for chosen in combinations(range(len(values)), lemma.threshold):
        mask = ext_bit
        for i in chosen:
            mask |= 1 << i
        if not any(c & ~mask == 0 for c in cliques):
            return tuple(values[i] for i in chosen)
    return None


def verify_block_lemma(lemma: BlockLemma, k_min: int, k_max: int) -> BlockLemmaResult:
    if k_min < 0 or k_max < k_min:
        raise InvalidArgument(f"invalid block range [{k_min}, {k_max}]")
    for k in range(k_min, k_max + 1):
        bad = _check_block(lemma, k)
        if bad is not None:
            return BlockLemmaResult(lemma.name, k_min, k_max, False, (k, bad))
    return BlockLemmaResult(lemma.name, k_min, k_max, True)


# ---- counting identities -----------------------------------------------


def crt_count_pattern(a: int, offsets) -> int:
    """``#{m in [1, a] : gcd(m + i, a) = 1 for all i in offsets}`` via CRT.

    Modulo each prime ``q | a`` the forbidden residues are ``-i mod q``,
    so the count is ``prod (q - r_q)`` with ``r_q`` the number of distinct
    forbidden residues.
    """
    if a < 1:
        raise InvalidArgument(f"a must be positive, got {a}")
    if not is_squarefree(a):
        raise InvalidArgument(f"{a} is not squarefree; the product formula does not apply")
    offsets = set(offsets)
    if any(i < 0 for i in offsets):
        raise InvalidArgument("offsets must be nonnegative")
    out = 1
    for q in factorize(a):
        out *= q - len({(-i) % q for i in offsets})
    return out


def count_pattern_direct(a: int, offsets, n: int | None = None, step: int = 1) -> int:
    """Scan ``m`` in ``[1, n]`` (default ``n = a``), multiples of ``step`` only."""
    n = a if n is None else n
    m = np.arange(step, n + 1, step, dtype=np.int64)
    ok = np.ones(m.shape, dtype=bool)
    for i in offsets:
        ok &= np.gcd(m + i, a) == 1
    return int(np.count_nonzero(ok))


def count_consecutive_coprime(a: int) -> int:
    """``#{m in [1, a] : gcd(m, a) = gcd(m + 1, a) = 1}`` by direct scan."""
    if a < 1:
        raise InvalidArgument(f"a must be positive, got {a}")
    return count_pattern_direct(a, (0, 1))


SIX_OFFSETS = (0, 1, 2, 3, 5)


def count_admissible_six(a: int, n: int) -> int:
    """Multiples m of 6 in ``[1, n]`` with ``m, m+1, m+2, m+3, m+5`` all coprime to ``a``."""
    if a < 1 or n < 0:
        raise InvalidArgument(f"need a >= 1 and n >= 0, got a={a}, n={n}")
    if gcd(a, 6) != 1:
        raise InvalidArgument(f"gcd({a}, 6) != 1")
    return count_pattern_direct(a, SIX_OFFSETS, n, step=6)


# ---- linear bounds for escaping sets -----------------------------------

BOUND_CONSTANTS = {1: Fraction(3, 2), 2: Fraction(11, 3), 3: Fraction(176, 15)}


@dataclass(frozen=True)
class BoundSpec:
    k: int
    a: int
    coefficient: Fraction
    constant: Fraction | None


def bound_coefficient(table: PrimeTable, k: int, a: int) -> Fraction:
    """``((P_k - phi(P_k)) a - phi(P_{k-1}) (p_{k+1} - p_k)) / (P_k a)``."""
    if k < 1 or a < 1:
        raise InvalidArgument(f"need k >= 1 and a >= 1, got k={k}, a={a}")
    Pk = primorial(table, k)
    if gcd(a, Pk) != 1:
        raise InvalidArgument(f"gcd({a}, P_{k}) != 1")
    num = (Pk - euler_phi(Pk)) * a - euler_phi(primorial(table, k - 1)) * (table.p(k + 1) - table.p(k))
    return Fraction(num, Pk * a)


def bound_spec(table: PrimeTable, k: int, a: int) -> BoundSpec:
    return BoundSpec(k, a, bound_coefficient(table, k, a), BOUND_CONSTANTS.get(k))


@dataclass(frozen=True)
class PropositionResult:
    k: int
    a: int
    n: int
    forced_max: int
    bound: Fraction
    holds: bool
    witness: tuple[int, ...]


def verify_proposition(
    table: PrimeTable, k: int, a: int, n: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> PropositionResult:
    """Compare the largest ``A in C_k(n)`` containing ``a`` with the linear bound."""
    if k not in BOUND_CONSTANTS:
        raise InvalidArgument(f"bounds are only known for k in {sorted(BOUND_CONSTANTS)}, got {k}")
    if not 1 <= a <= n:
        raise InvalidArgument(f"need 1 <= a <= n, got a={a}, n={n}")
    coef = bound_coefficient(table, k, a)
    bound = coef * n + BOUND_CONSTANTS[k]
    res = solve(n, k, forced=[a], node_budget=node_budget).require_exact()
    return PropositionResult(k, a, n, res.value, bound, res.value <= bound, tuple(res.witness.members()))
