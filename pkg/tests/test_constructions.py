import pytest

from coprime_extremal.canonical import Ek
from coprime_extremal.constructions import (
    build_theorem1,
    build_theorem4,
    loglog,
    max_pair_matching,
    primorial_bracket,
)
from coprime_extremal.coprime import is_in_Ck
from coprime_extremal.errors import InvalidArgument, PreconditionViolated
from coprime_extremal.primes import find_lemma1_witnesses, primorial

# max normalised gap per k over n in {2310, 1e4, 1e5, 1e6}, computed once and frozen
FITTED_NORMALIZED_GAP = {1: 0.5077287056227544, 2: 1.0154818459490857, 3: 1.3962722664902572}


def test_theorem1_example(table):
    rep = build_theorem1(table, 8, 1, 529)
    assert rep.C.members() == [437]
    assert rep.D.members() == [19, 361]
    assert rep.Dprime.members() == []
    assert rep.delta == -2
    assert (rep.E - rep.B).members() == [19, 361, 437]
    assert rep.ok


def test_theorem1_boundary(table):
    with pytest.raises(PreconditionViolated, match="n_below_product"):
        build_theorem1(table, 8, 1, 551)
    with pytest.raises(PreconditionViolated, match="n_at_least_square"):
        build_theorem1(table, 8, 1, 528)
    with pytest.raises(PreconditionViolated, match="half"):
        build_theorem1(table, 3, 1, 49)


@pytest.mark.parametrize("l", [1, 2, 3])
def test_theorem1_structure_over_witnesses(big_table, l):
    # keep the universe below 2e7 so the dense sets stay small
    ts = [t for t in find_lemma1_witnesses(big_table, l, True, 2000)
          if big_table.p(t) * big_table.p(t + 2 * l) < 2 * 10**7][:3]
    assert ts
    for t in ts:
        lo = big_table.p(t + 2 * l - 1) ** 2
        hi = big_table.p(t) * big_table.p(t + 2 * l) - 1
        for n in sorted({lo, (lo + hi) // 2, hi}):
            rep = build_theorem1(big_table, t, l, n)
            assert rep.ok, rep.checks
            assert len(rep.Dprime) - len(rep.D) == l * (l - 1) // 2 - 2 * l == rep.delta
            assert rep.B.isdisjoint(rep.C | rep.D | rep.Dprime)
            assert rep.A == rep.B | rep.C | rep.Dprime
            assert rep.A_not_subset_E == (l >= 2)


def test_theorem1_certificate_cross_checked(table):
    for n in (529, 540, 550):
        rep = build_theorem1(table, 8, 1, n)
        assert is_in_Ck(rep.A, rep.k)
    rep = build_theorem1(table, 5, 1, 169)
    assert rep.ok and is_in_Ck(rep.A, rep.k)


def test_matching_bound():
    assert max_pair_matching([6, 10, 15], [2, 3, 5]) == 1
    assert max_pair_matching([6, 35], [2, 3, 5, 7]) == 2
    with pytest.raises(InvalidArgument):
        max_pair_matching([12], [2, 3])


def test_theorem4_example_k1(table):
    rep = build_theorem4(table, 1, 2310)
    assert rep.l == 4 and rep.special == 105
    # multiples of 6, 10 or 14 up to 2310, plus 105
    assert len(rep.A) == 385 + 231 + 165 - 77 - 55 - 33 + 11 + 1 == 628
    assert rep.E_size == 1155 and rep.gap == 527
    assert rep.ok


def test_theorem4_example_k2(table):
    rep = build_theorem4(table, 2, 2310)
    assert rep.l == 4 and rep.special == 35
    assert rep.ok and 35 in rep.A and 35 not in Ek(table, 2, 2310)


def test_theorem4_precondition(table):
    with pytest.raises(PreconditionViolated):
        build_theorem4(table, 1, 29)
    build_theorem4(table, 1, 30)


def test_theorem4_shape(table):
    for k in (1, 2, 3):
        for n in (primorial(table, k + 2), 5000, 30030, 50_000):
            rep = build_theorem4(table, k, n)
            assert primorial(table, rep.l + 1) <= n < primorial(table, rep.l + 2)
            low = table.first(k)
            high = [table.p(j) for j in range(k + 1, rep.l + 1)]
            for m in rep.A:
                if m != rep.special:
                    assert any(m % (a * b) == 0 for a in low for b in high)
            assert rep.gap > 0


def test_theorem4_cross_validated_by_clique_search(table):
    checked = 0
    for k in (1, 2, 3):
        for n in range(primorial(table, k + 2), 6000, 397):
            rep = build_theorem4(table, k, n)
            if len(rep.A) <= 2000:
                assert rep.ok and is_in_Ck(rep.A, k)
                checked += 1
    assert checked > 10


def test_theorem4_gap_against_fitted_constant(table):
    import random

    rng = random.Random(3)
    for k in (1, 2, 3):
        lo = primorial(table, k + 2)
        for n in [lo] + [rng.randint(lo, 10**6) for _ in range(12)]:
            rep = build_theorem4(table, k, n)
            assert rep.gap > 0
            assert rep.gap <= 2 * FITTED_NORMALIZED_GAP[k] * n / loglog(n)


def test_primorial_bracket(table):
    assert primorial_bracket(table, 2310) == 4
    assert primorial_bracket(table, 2309) == 3
    with pytest.raises(InvalidArgument):
        loglog(15)
