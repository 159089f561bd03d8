"""Exact computations around sets of integers without k+1 pairwise coprime elements."""

__version__ = "0.1.0"

from .canonical import build_Bk, build_Ek, density_Ek
from .constructions import build_theorem1, build_theorem4
from .coprime import CliqueWitness, clique_upper_bound_by_prime_cover, is_in_Ck, max_pairwise_coprime
from .errors import (
    CoverInvalid,
    InfeasibleForced,
    InvalidArgument,
    OutOfRange,
    PreconditionViolated,
    SearchBudgetExceeded,
)
from .intset import IntSet
from .primes import (
    PrimeTable,
    build_prime_table,
    euler_phi,
    find_lemma1_witnesses,
    gap_ratio,
    nth_prime,
    primorial,
)
from .solver import SolveRequest, SolveResult, f, f_bruteforce, f_exact, solve, theorem3_gap
from .verification import (
    BlockLemma,
    bound_coefficient,
    builtin_block_lemmas,
    count_admissible_six,
    count_consecutive_coprime,
    crt_count_pattern,
    verify_block_lemma,
    verify_proposition,
)
