from collections import Counter

import pytest

from jointspan.rng import DEFAULT_SEED, SplitMix64, pair_seed


def test_reference_output():
    assert SplitMix64(1234567).next() == 0x599ED017FB08FC85


def test_equal_seeds_equal_streams():
    a, b = SplitMix64(7), SplitMix64(7)
    assert [a.next() for _ in range(10)] == [b.next() for _ in range(10)]


def test_below_is_in_range_and_roughly_uniform():
    rng = SplitMix64(DEFAULT_SEED)
    counts = Counter(rng.below(3) for _ in range(3000))
    assert set(counts) == {0, 1, 2}
    assert all(900 < c < 1100 for c in counts.values())


def test_below_rejects_empty_range():
    with pytest.raises(ValueError):
        SplitMix64(1).below(0)


def test_pair_seed():
    assert pair_seed(42, 0) == 42
    assert pair_seed(42, 3) == 42 ^ 3
    assert pair_seed(-1, 0) == 2 ** 64 - 1
