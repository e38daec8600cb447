import random
from itertools import combinations

import pytest

from egz.oracle import GuardError, dp_zero_sum_witness, sequence_avoids
from egz.types import GroupSequence, ZeroSumWitness


def test_total_sum_zero():
    # text "01" sets coordinate 2, i.e. int 2
    s = GroupSequence(2, (2, 2, 1, 1))
    w = dp_zero_sum_witness(s, 4)
    assert w is not None and w.indices == (0, 1, 2, 3)


def test_three_element_witness():
    s = GroupSequence(2, (2, 1, 3))  # 01, 10, 11
    w = dp_zero_sum_witness(s, 3)
    assert w is not None and w.indices == (0, 1, 2)
    assert w.xor_over(s) == 0


def test_no_pair_witness():
    s = GroupSequence(2, (2, 1, 3))
    assert dp_zero_sum_witness(s, 2) is None


def test_r_zero_is_empty_witness():
    s = GroupSequence(2, (1,))
    assert dp_zero_sum_witness(s, 0) == ZeroSumWitness(())


def test_r_exceeding_length():
    assert dp_zero_sum_witness(GroupSequence(1, (1,)), 2) is None


def _brute_lex_min(elements, r):
    best = None
    for idxs in combinations(range(len(elements)), r):
        acc = 0
        for i in idxs:
            acc ^= elements[i]
        if acc == 0:
            best = idxs  # combinations yields in lex order; first hit is minimal
            break
    return best


def test_matches_brute_force_and_is_lex_minimal():
    rng = random.Random(42)
    for _ in range(300):
        d = rng.randint(1, 4)
        n = rng.randint(1, 9)
        r = rng.randint(1, n)
        elements = tuple(rng.randrange(1 << d) for _ in range(n))
        s = GroupSequence(d, elements)
        w = dp_zero_sum_witness(s, r)
        expect = _brute_lex_min(elements, r)
        if expect is None:
            assert w is None
        else:
            assert w is not None and w.indices == expect


def test_guard_rejects_huge_state():
    with pytest.raises(GuardError):
        dp_zero_sum_witness(GroupSequence(25, (0,) * 30), 4)


def test_sequence_avoids():
    s = GroupSequence(3, (1, 2, 4))  # basis: no zero-sum subsequence at all
    assert sequence_avoids(s, [1, 2, 3])
    assert not sequence_avoids(GroupSequence(3, (5, 5)), [2])
