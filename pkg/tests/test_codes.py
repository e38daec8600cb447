import math
import random

import pytest

from egz.codes import (
    LinearCode,
    WeightDistribution,
    dual,
    find_unbalanced_dual_word,
    hamming_bound_holds,
    min_distance,
    n_table,
    verify_macwilliams,
    weight_distribution,
)
from egz.gf2 import BitMatrix, BitVector, rank


def _code_from_parity_rows(rows, n):
    return LinearCode(BitMatrix.from_rows([BitVector.from_text(r) for r in rows], n))


def test_weight_distribution_repetition_code():
    # parity check {110, 011} cuts out {000, 111}
    c = _code_from_parity_rows(["110", "011"], 3)
    assert weight_distribution(c).counts == (1, 0, 0, 1)


def test_weight_distribution_trivial_code():
    c = LinearCode(BitMatrix.identity(4))  # k = 0
    assert weight_distribution(c).counts == (1, 0, 0, 0, 0)


def test_weight_distribution_even_weight_code():
    c = _code_from_parity_rows(["111"], 3)
    assert weight_distribution(c).counts == (1, 0, 3, 0)


def test_dual_of_even_weight_code():
    c = _code_from_parity_rows(["111"], 3)
    assert dual(c).word_set() == frozenset({0, 0b111})


def test_dual_of_full_space_is_zero_code():
    full = LinearCode(BitMatrix.zeros(0, 3))
    d = dual(full)
    assert d.word_set() == frozenset({0})
    assert d.redundancy == 3


def test_dual_dimensions_and_involution():
    rng = random.Random(1)
    for _ in range(50):
        n = rng.randint(2, 8)
        r = rng.randint(0, n)
        rows = [rng.randrange(1 << n) for _ in range(r)]
        m = BitMatrix.from_rows(rows, n)
        if rank(m) != r:
            continue
        c = LinearCode(m)
        d = dual(c)
        assert c.dimension + d.dimension == n
        assert dual(d).word_set() == c.word_set()


def test_min_distance_examples():
    c = _code_from_parity_rows(["110", "011"], 3)  # span{111}
    assert min_distance(c) == 3
    trivial = LinearCode(BitMatrix.identity(3))
    assert min_distance(trivial) == math.inf
    spanned = LinearCode.from_generators(
        [BitVector.from_text("1110"), BitVector.from_text("0111")]
    )
    assert min_distance(spanned) == 2


def test_min_distance_equals_first_nonzero_count():
    rng = random.Random(2)
    for _ in range(50):
        n = rng.randint(2, 9)
        r = rng.randint(1, n)
        m = BitMatrix.from_rows([rng.randrange(1 << n) for _ in range(r)], n)
        if rank(m) != r:
            continue
        c = LinearCode(m)
        wd = weight_distribution(c)
        dist = min_distance(c)
        nonzero = [j for j in range(1, n + 1) if wd.counts[j] > 0]
        assert dist == (nonzero[0] if nonzero else math.inf)


def test_macwilliams_hand_example():
    a = WeightDistribution(3, (1, 0, 0, 1))
    b = WeightDistribution(3, (1, 0, 3, 0))
    assert verify_macwilliams(a, b, 3, 1)


def test_macwilliams_empty_length():
    assert verify_macwilliams(WeightDistribution(0, (1,)), WeightDistribution(0, (1,)), 0, 0)


def test_macwilliams_detects_perturbation():
    a = WeightDistribution(3, (1, 0, 0, 1))
    b = WeightDistribution(3, (1, 1, 3, 0))
    assert not verify_macwilliams(a, b, 3, 1)


def test_macwilliams_random_codes():
    rng = random.Random(3)
    done = 0
    while done < 100:
        n = rng.randint(2, 12)
        k = rng.randint(0, min(6, n))
        r = n - k
        m = BitMatrix.from_rows([rng.randrange(1 << n) for _ in range(r)], n)
        if rank(m) != r:
            continue
        c = LinearCode(m)
        a = weight_distribution(c)
        b = weight_distribution(dual(c))
        assert verify_macwilliams(a, b, n, c.dimension)
        done += 1


def test_hamming_bound():
    assert hamming_bound_holds(4, 2, 5)  # 1+5+10 = 16 <= 16, boundary tight
    assert not hamming_bound_holds(4, 2, 6)  # 22 > 16
    assert hamming_bound_holds(0, 0, 12345)


def test_n_table():
    e = n_table(8, 5)
    assert (e.lower, e.upper) == (17, 17) and e.is_exact
    e = n_table(11, 5)
    assert (e.lower, e.upper) == (47, 57) and not e.is_exact
    e = n_table(4, 3)
    assert (e.lower, e.upper) == (15, 15)
    with pytest.raises(ValueError):
        n_table(3, 5)
    with pytest.raises(ValueError):
        n_table(8, 7)


def test_n_table_consistent_with_hamming_bound():
    for r in range(4, 15):
        e = n_table(r, 5)
        assert hamming_bound_holds(r, 2, e.upper)


def test_unbalanced_dual_word_span_instance():
    # C = span{1111110000}: dual contains the all-ones word (weight 10)
    c = LinearCode.from_generators([BitVector.from_text("1111110000")])
    w = find_unbalanced_dual_word(c)
    assert abs(2 * w.weight() - 10) >= 4
    # membership in the dual: orthogonal to the generator
    assert (w.bits & 0b0000111111).bit_count() % 2 == 0


def test_unbalanced_dual_word_zero_code():
    c = LinearCode(BitMatrix.identity(10))  # zero code; dual is everything
    w = find_unbalanced_dual_word(c)
    assert w.weight() == 10  # maximizes |l - n/2|


def test_unbalanced_rejects_weight2_word():
    # two equal parity-check columns <=> a weight-2 word
    cols = [1, 1] + [1 << i for i in range(1, 9)] + [0b111]
    m = BitMatrix.from_columns(cols, rows=9)
    c = LinearCode(m)
    with pytest.raises(ValueError):
        find_unbalanced_dual_word(c)


def _random_no24_code(rng, n):
    """Random parity check whose code has no weight-2/4 words (distinct
    pairwise column XORs), with full row rank."""
    r = 8
    while True:
        cols = []
        xors = set()
        pool = list(range(1, 1 << r))
        rng.shuffle(pool)
        for cand in pool:
            if len(cols) == n:
                break
            ok = True
            new = set()
            for c in cols:
                x = c ^ cand
                if x == 0 or x in xors or x in new:
                    ok = False
                    break
                new.add(x)
            if ok:
                cols.append(cand)
                xors |= new
        if len(cols) < n:
            continue
        m = BitMatrix.from_columns(cols, rows=r)
        if rank(m) == r:
            return LinearCode(m)


def test_unbalanced_dual_word_random_instances():
    rng = random.Random(17)
    for trial in range(60):
        n = rng.randint(10, 14)
        c = _random_no24_code(rng, n)
        w = find_unbalanced_dual_word(c)
        assert w.bits != 0
        assert abs(2 * w.weight() - n) >= 4
        # the word lies in the dual = row space of the parity check
        assert all(
            (w.bits & col_mask).bit_count() % 2 == 0
            for col_mask in _codeword_generators(c)
        )


def _codeword_generators(code):
    from egz.gf2 import nullspace_basis

    return [v.bits for v in nullspace_basis(code.parity_check)]
