import random

import pytest

from cbrank.partitions import (
    GrassmannianContext,
    Partition,
    SlnWeight,
    count_weights,
    enumerate_weights,
    normalize_sln,
    parse_partition,
    parse_weight,
    partition_to_weight,
    partitions_in_box,
    weight_to_partition,
)


def test_canonical_form_strips_trailing_zeros():
    assert Partition((2, 1, 0, 0)) == Partition((2, 1))
    assert Partition(()) == Partition((0, 0))
    assert hash(Partition((3, 1, 0))) == hash(Partition((3, 1)))
    assert tuple(Partition((2, 1, 0))) == (2, 1)


def test_invalid_partitions_rejected():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, -1))
    with pytest.raises(ValueError):
        Partition((2.0, 1))


def test_size():
    assert Partition((2, 1, 1)).size() == 4
    assert Partition().size() == 0
    assert Partition((3,) * 5).size() == 15


def test_part_indexing():
    lam = Partition((3, 1))
    assert lam.part(1) == 3
    assert lam.part(2) == 1
    assert lam.part(3) == 0


def test_conjugate_is_involution_and_preserves_size():
    for lam in partitions_in_box(4, 4):
        conj = lam.conjugate()
        assert conj.conjugate() == lam
        assert conj.size() == lam.size()
    assert Partition((4, 3, 1)).conjugate() == Partition((3, 2, 2, 1))


def test_fits_in_box():
    assert Partition((2, 2)).fits_in_box(GrassmannianContext(2, 4))
    assert not Partition((3,)).fits_in_box(GrassmannianContext(2, 4))
    assert not Partition((1, 1, 1)).fits_in_box(GrassmannianContext(2, 5))


def test_context_validation():
    with pytest.raises(ValueError):
        GrassmannianContext(0, 4)
    with pytest.raises(ValueError):
        GrassmannianContext(4, 4)
    assert GrassmannianContext(3, 5).width == 2


def test_parse_and_str_roundtrip():
    for text in ("[]", "[1]", "[2,2,1]", "[5,3,3,1]"):
        assert str(parse_partition(text)) == text
    with pytest.raises(ValueError):
        parse_partition("2,1")
    with pytest.raises(ValueError):
        parse_partition("[a]")
    with pytest.raises(ValueError):
        parse_partition("[1,2]")


def test_weight_to_partition_examples():
    assert weight_to_partition(SlnWeight(4, (0, 1, 0))) == Partition((1, 1))
    # coefficients (0,2,1,0) for sl_5: parts are suffix sums
    assert weight_to_partition(SlnWeight(5, (0, 2, 1, 0))) == Partition((3, 3, 1))
    assert weight_to_partition(SlnWeight(4, (1, 0, 0))) == Partition((1,))


def test_weight_partition_roundtrip():
    for n in (2, 3, 4, 5):
        for lam in partitions_in_box(n - 1, 3):
            w = partition_to_weight(lam, n)
            assert weight_to_partition(w) == lam
            assert w.level() == (lam[0] if lam else 0)


def test_weight_validation():
    with pytest.raises(ValueError):
        SlnWeight(4, (1, 0))  # wrong length
    with pytest.raises(ValueError):
        SlnWeight(4, (1, -1, 0))


def test_normalize_sln():
    assert normalize_sln(Partition((3, 2, 2, 2)), 4) == Partition((1,))
    assert normalize_sln(Partition((1, 1)), 4) == Partition((1, 1))
    assert normalize_sln(Partition((3, 3, 3)), 3) == Partition()
    with pytest.raises(ValueError):
        normalize_sln(Partition((1, 1, 1, 1, 1)), 4)


def test_normalize_is_idempotent_and_preserves_size_mod_n():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(2, 6)
        parts = sorted((rng.randint(0, 5) for _ in range(n)), reverse=True)
        lam = Partition(parts)
        norm = normalize_sln(lam, n)
        assert normalize_sln(norm, n) == norm
        assert norm.size() % n == lam.size() % n
        assert len(norm) <= n - 1


def test_enumerate_weights_small_cases():
    weights = {weight_to_partition(w) for w in enumerate_weights(3, 1)}
    assert weights == {Partition(), Partition((1,)), Partition((1, 1))}
    weights = {weight_to_partition(w) for w in enumerate_weights(2, 2)}
    assert weights == {Partition(), Partition((1,)), Partition((2,))}
    assert sum(1 for _ in enumerate_weights(4, 2)) == 10


def test_enumerate_weights_counts_match_binomial():
    for n in range(2, 9):
        for level in range(1, 6):
            seen = list(enumerate_weights(n, level))
            assert len(seen) == count_weights(n, level)
            assert len({w.partition() for w in seen}) == len(seen)
            assert all(w.level() <= level for w in seen)


def test_parse_weight_forms():
    assert parse_weight("w_3", 5) == SlnWeight(5, (0, 0, 1, 0))
    assert parse_weight("2*w_1+w_4", 5) == SlnWeight(5, (2, 0, 0, 1))
    assert parse_weight("w(0,2,1,0)", 5) == SlnWeight(5, (0, 2, 1, 0))
    assert parse_weight("[3,3,1]", 5) == SlnWeight(5, (0, 2, 1, 0))
    assert parse_weight("0", 4) == SlnWeight(4, (0, 0, 0))
    # w_0 and w_n denote the zero weight
    assert parse_weight("w_5", 5) == SlnWeight(5, (0, 0, 0, 0))
    with pytest.raises(ValueError):
        parse_weight("w_7", 5)
    with pytest.raises(ValueError):
        parse_weight("3w_1", 5)
