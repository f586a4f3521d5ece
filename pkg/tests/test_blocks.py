import random

import pytest

from cbrank import blocks
from cbrank.blocks import (
    CASE_CLASSICAL,
    CASE_QUANTUM,
    CASE_ZERO,
    RankQuery,
    check_factorization,
    check_monotonicity,
    decomposition_witness,
    in_lambda,
    lambda_witness,
    rank,
    symmetric_rank,
    verify_classification,
)
from cbrank.partitions import (
    GrassmannianContext,
    Partition,
    SlnWeight,
    enumerate_weights,
    normalize_sln,
    partition_to_weight,
)
from cbrank.quantum import qcoefficient_of, qmul, qpower, quantum_class

from oracles import quantum_multiply_element


def test_family_weights_have_rank_one():
    # (level-m)*w_i + m*w_{i+1} gives rank one for every 0<=m<=level
    for n, level in [(4, 2), (5, 3), (6, 2)]:
        for i in range(0, n):
            for m in range(0, level + 1):
                parts = [level] * i + [m]
                lam = normalize_sln(Partition(parts), n)
                result = symmetric_rank(n, level, lam)
                assert result.rank == 1, (n, level, i, m, lam)


def test_row_weights_use_classical_case():
    # (m*w_1)^n with m <= level lands in the s <= 0 branch
    for n, m, level in [(4, 1, 2), (5, 2, 3), (3, 2, 2)]:
        result = symmetric_rank(n, level, (m,))
        assert result.rank == 1
        assert result.dictionary_case == CASE_CLASSICAL
        assert result.s == m - level
        assert result.context_used == GrassmannianContext(n, n + m)


def test_sl7_omega3_level2():
    result = symmetric_rank(7, 2, (1, 1, 1))
    assert result.dictionary_case == CASE_QUANTUM
    assert result.s == 1
    assert result.rank >= 3
    assert result.rank == 85  # engine value, reproduced by the oracle below

    acc = {(0, ()): 1}
    for _ in range(7):
        acc = quantum_multiply_element(acc, (1, 1, 1), 7, 9)
    acc = quantum_multiply_element(acc, (2,), 7, 9)
    assert acc.get((1, (2,) * 7), 0) == 85


def test_zero_by_congruence():
    w = SlnWeight(4, (1, 0, 0))
    result = rank(RankQuery(4, 2, (w, w, w)))
    assert result.rank == 0
    assert result.dictionary_case == CASE_ZERO
    assert result.context_used is None


def test_rank_zero_without_congruence_obstruction():
    # three level-2 sl_2 weights (2): the fusion 1x1 truncates to spin 0,
    # so no invariant exists even though 2 divides the total size
    w = SlnWeight(2, (2,))
    result = rank(RankQuery(2, 2, (w, w, w)))
    assert result.rank == 0
    assert result.dictionary_case == CASE_QUANTUM


def test_fusion_rule_cross_checks():
    # values derivable from sl_2 / sl_3 fusion rules
    w1 = SlnWeight(2, (1,))
    assert rank(RankQuery(2, 1, (w1,) * 4)).rank == 1
    assert rank(RankQuery(2, 1, (w1,) * 3)).rank == 0  # odd spin count
    w2 = SlnWeight(2, (2,))
    assert rank(RankQuery(2, 2, (w1, w1, w2, w2))).rank == 1
    a1 = SlnWeight(3, (1, 0))
    a2 = SlnWeight(3, (0, 1))
    assert rank(RankQuery(3, 1, (a1, a2))).rank == 1  # dual pair
    assert rank(RankQuery(3, 1, (a1, a1))).rank == 0
    assert rank(RankQuery(3, 1, (a1,) * 3)).rank == 1  # det of C^3
    assert rank(RankQuery(3, 1, (a1,) * 6)).rank == 1  # Z_3 fusion


def test_single_point_queries():
    assert rank(RankQuery.symmetric(3, 1, (), count=1)).rank == 1
    assert rank(RankQuery.symmetric(2, 2, (2,), count=1)).rank == 0


def test_trivial_weights_rank_one():
    result = symmetric_rank(5, 3, ())
    assert result.rank == 1
    assert result.context_used is None


def test_query_validation():
    with pytest.raises(ValueError):
        RankQuery(1, 1, (SlnWeight(2, (1,)),))
    with pytest.raises(ValueError):
        RankQuery(2, 0, (SlnWeight(2, (0,)),))
    with pytest.raises(ValueError):
        RankQuery(2, 1, ())
    with pytest.raises(ValueError):
        RankQuery(2, 1, (SlnWeight(2, (2,)),))  # level too high
    with pytest.raises(ValueError):
        RankQuery(3, 1, (SlnWeight(2, (1,)),))  # wrong algebra
    with pytest.raises(ValueError):
        RankQuery.symmetric(3, 1, (1,), count=0)


def test_lambda_witness_examples():
    # m = 0: a rectangle of full rows
    assert lambda_witness((2, 2, 2), 5, 2) == (3, 0)
    # prefix of full rows plus one shorter row
    assert lambda_witness((3, 3, 1), 5, 3) == (2, 1)
    # three distinct values never qualify
    assert lambda_witness((3, 2, 1), 5, 3) is None
    # single row is m*w_1
    assert lambda_witness((2,), 5, 3) == (0, 2)
    # full-height rectangle absorbs a w_n column
    assert lambda_witness((1, 1, 1, 1), 5, 3) == (4, 2)
    assert lambda_witness((), 4, 2) == (0, 0)
    # same diagram, different level: (2,1) is in the family only at level 2
    assert lambda_witness((2, 1), 5, 2) == (1, 1)
    assert lambda_witness((2, 1), 5, 3) is None


def test_lambda_witness_reconstructs_weight():
    for n in (4, 5, 6):
        for level in (1, 2, 3):
            for w in enumerate_weights(n, level):
                member, witness = in_lambda(w, level)
                if not member:
                    continue
                i, m = witness
                parts = [level] * i + [m]
                rebuilt = normalize_sln(Partition(sorted(parts, reverse=True)), n)
                assert rebuilt == w.partition(), (n, level, witness)


def test_lambda_membership_matches_brute_force():
    for n in (3, 4, 5, 6):
        for level in (1, 2, 3, 4):
            family = set()
            for i in range(0, n):
                for m in range(0, level + 1):
                    parts = [level] * i + [m]
                    family.add(normalize_sln(Partition(sorted(parts, reverse=True)), n))
            for w in enumerate_weights(n, level):
                member, _ = in_lambda(w, level)
                assert member == (w.partition() in family), (n, level, w)


def test_verify_classification_level_one_all_pass():
    report = verify_classification(4, 1)
    assert report["verdict"] == "PASS"
    assert report["weight_count"] == 4
    assert all(r["in_lambda"] and r["rank_or_bound"] == 1 for r in report["records"])


def test_verify_classification_level_two_flags_omega2():
    report = verify_classification(4, 2)
    assert report["verdict"] == "PASS"
    by_partition = {tuple(r["partition"]): r for r in report["records"]}
    omega2 = by_partition[(1, 1)]
    assert not omega2["in_lambda"]
    assert omega2["rank_or_bound"] > 1


def test_verify_classification_mixed_weight():
    report = verify_classification(5, 2, early_exit=False)
    assert report["verdict"] == "PASS"
    by_partition = {tuple(r["partition"]): r for r in report["records"]}
    rec = by_partition[(2, 1, 1)]  # w_1 + w_3
    assert not rec["in_lambda"]
    assert rec["rank_or_bound"] > 1
    assert rec["exact"]


def test_dictionary_case_consistency_at_s_zero():
    # when |lam| equals the level, the classical point coefficient must
    # agree with the q^0 point coefficient of the quantum power
    for n, lam, level in [(4, (1, 1), 2), (5, (2, 1), 3), (4, (2,), 2)]:
        result = symmetric_rank(n, level, lam)
        assert result.s == 0
        ctx = GrassmannianContext(n, n + level)
        power = qpower(quantum_class(ctx, lam), n)
        assert result.rank == qcoefficient_of(power, 0, (level,) * n)


def test_duality_of_fundamental_weights():
    for n in (5, 6, 7):
        for level in (1, 2):
            for i in range(1, n):
                a = symmetric_rank(n, level, (1,) * i).rank
                b = symmetric_rank(n, level, (1,) * (n - i)).rank
                assert a == b, (n, level, i)


def test_factorization_examples():
    assert check_factorization((2, 1), 4, 2)
    assert check_factorization((2, 2), 4, 2)
    assert check_factorization((2, 2, 1), 5, 2)
    assert check_factorization((3, 2, 1), 5, 3)
    with pytest.raises(ValueError):
        check_factorization((1, 1), 4, 2)  # first part below the level
    with pytest.raises(ValueError):
        check_factorization((2, 2, 2, 2), 4, 2)  # too many rows
    with pytest.raises(ValueError):
        check_factorization((), 4, 2)


def test_monotonicity_examples():
    assert check_monotonicity((1, 1), 4, 1, 1)
    assert check_monotonicity((1, 1, 1), 7, 2, 1)
    assert check_monotonicity((2, 1), 5, 2, 2)
    with pytest.raises(ValueError):
        check_monotonicity((2, 1), 5, 1, 1)  # weight level above the level
    with pytest.raises(ValueError):
        check_monotonicity((1,), 4, 1, 0)


def test_decomposition_witness():
    rep = decomposition_witness(5, 3, 1, 2)
    assert rep["all_rank_one"]
    assert rep["ranks"] == [1, 1, 1]
    assert decomposition_witness(4, 2, 1, 1)["all_rank_one"]
    assert decomposition_witness(4, 2, 0, 2)["all_rank_one"]  # m = 0 degenerate
    assert decomposition_witness(4, 2, 2, 3)["all_rank_one"]  # i + 1 = n
    with pytest.raises(ValueError):
        decomposition_witness(4, 2, 3, 1)
    with pytest.raises(ValueError):
        decomposition_witness(4, 2, 1, 4)


def test_early_exit_gives_sound_bounds():
    blocks.clear_rank_cache()
    bound = symmetric_rank(4, 2, (2, 1, 1), early_exit_above=1)
    assert not bound.exact
    assert bound.rank == 2
    blocks.clear_rank_cache()
    exact = symmetric_rank(4, 2, (2, 1, 1))
    assert exact.exact
    assert exact.rank >= bound.rank
    # exact results are cached and reused by later early-exit calls
    again = symmetric_rank(4, 2, (2, 1, 1), early_exit_above=1)
    assert again.exact and again.rank == exact.rank


def test_early_exit_agrees_with_full_run():
    for n, level in [(4, 1), (4, 2), (5, 2)]:
        fast = verify_classification(n, level, early_exit=True)
        blocks.clear_rank_cache()
        slow = verify_classification(n, level, early_exit=False)
        assert fast["verdict"] == slow["verdict"]
        for a, b in zip(fast["records"], slow["records"]):
            assert a["partition"] == b["partition"]
            assert a["in_lambda"] == b["in_lambda"]
            assert (a["rank_or_bound"] == 1) == (b["rank_or_bound"] == 1)
            assert a["ok"] == b["ok"]


def test_monotonicity_random_samples():
    rng = random.Random(41)
    checked = 0
    while checked < 40:
        n = rng.randint(3, 6)
        level = rng.randint(1, 3)
        c = rng.randint(1, 2)
        lam = normalize_sln(
            Partition(sorted((rng.randint(0, level) for _ in range(n - 1)), reverse=True)),
            n,
        )
        assert check_monotonicity(lam, n, level, c)
        checked += 1
