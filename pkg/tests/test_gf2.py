import random

import pytest

from egz.gf2 import (
    BitMatrix,
    BitVector,
    MatrixEditor,
    OpLog,
    int_from_hex_le,
    int_to_hex_le,
    nullspace_basis,
    rank,
    solve_linear,
)


def test_rank_identity():
    assert rank(BitMatrix.identity(3)) == 3


def test_rank_equal_rows():
    m = BitMatrix.from_rows([0b1010, 0b1010], 4)
    assert rank(m) == 1


def test_rank_dependent_rows():
    # rows 1110, 0111, 1001: third = first + second
    m = BitMatrix.from_rows(
        [BitVector.from_text("1110"), BitVector.from_text("0111"), BitVector.from_text("1001")], 4
    )
    assert rank(m) == 2


def test_solve_identity():
    m = BitMatrix.identity(4)
    t = BitVector(4, 0b1011)
    assert solve_linear(m, t) == t


def test_solve_free_variable_zero():
    m = BitMatrix.from_rows([0b11], 2)  # [[1,1]]
    x = solve_linear(m, BitVector(1, 1))
    assert x == BitVector(2, 0b01)  # (1,0): free variable forced to 0


def test_solve_inconsistent():
    m = BitMatrix.from_rows([0b11, 0b00], 2)
    assert solve_linear(m, BitVector(2, 0b10)) is None


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve_linear(BitMatrix.identity(3), BitVector(2, 1))


def test_nullspace_identity_empty():
    assert nullspace_basis(BitMatrix.identity(5)) == []


def test_nullspace_all_ones_row():
    m = BitMatrix.from_rows([0b111], 3)
    basis = nullspace_basis(m)
    assert len(basis) == 2
    for v in basis:
        assert v.weight() % 2 == 0 and v.weight() > 0
    # enumeration oracle: the nullspace is exactly the even-weight vectors
    span = {0}
    for v in basis:
        span |= {s ^ v.bits for s in span}
    assert span == {x for x in range(8) if bin(x).count("1") % 2 == 0}


def test_nullspace_zero_matrix():
    assert len(nullspace_basis(BitMatrix.zeros(2, 3))) == 3


def test_solve_random_systems():
    rng = random.Random(7)
    for _ in range(200):
        r, c = rng.randint(1, 6), rng.randint(1, 7)
        m = BitMatrix.from_rows([rng.randrange(1 << c) for _ in range(r)], c)
        t = BitVector(r, rng.randrange(1 << r))
        x = solve_linear(m, t)
        brute_solvable = any(
            _apply(m, bits) == t.bits for bits in range(1 << c)
        )
        assert (x is not None) == brute_solvable
        if x is not None:
            assert _apply(m, x.bits) == t.bits


def _apply(m, xbits):
    out = 0
    for i in range(m.rows):
        if (m.row_words[i] & xbits).bit_count() % 2:
            out |= 1 << i
    return out


def test_nullspace_size_matches_rank():
    rng = random.Random(11)
    for _ in range(100):
        r, c = rng.randint(1, 6), rng.randint(1, 8)
        m = BitMatrix.from_rows([rng.randrange(1 << c) for _ in range(r)], c)
        basis = nullspace_basis(m)
        assert len(basis) == c - rank(m)
        for v in basis:
            assert _apply(m, v.bits) == 0


def _random_log(rng, rows, cols):
    ed = MatrixEditor(BitMatrix.zeros(rows, cols))
    for _ in range(rng.randint(1, 12)):
        kind = rng.choice(["swap-cols", "swap-rows", "add-row", "add-col-vector"])
        if kind == "swap-cols" and cols >= 2:
            i, j = rng.sample(range(cols), 2)
            ed.swap_cols(i, j)
        elif kind == "swap-rows" and rows >= 2:
            i, j = rng.sample(range(rows), 2)
            ed.swap_rows(i, j)
        elif kind == "add-row" and rows >= 2:
            i, j = rng.sample(range(rows), 2)
            ed.add_row(i, j)
        else:
            ed.add_col_vector(rng.randrange(1 << rows))
    return ed.log()


def test_oplog_round_trip():
    rng = random.Random(3)
    for _ in range(100):
        rows, cols = rng.randint(2, 5), rng.randint(2, 7)
        m = BitMatrix.from_rows([rng.randrange(1 << cols) for _ in range(rows)], cols)
        log = _random_log(rng, rows, cols)
        assert log.inverse().apply(log.apply(m)) == m


def test_oplog_row_ops_preserve_rank():
    rng = random.Random(5)
    for _ in range(100):
        rows, cols = rng.randint(2, 5), rng.randint(2, 7)
        m = BitMatrix.from_rows([rng.randrange(1 << cols) for _ in range(rows)], cols)
        ed = MatrixEditor(m)
        for _ in range(rng.randint(1, 10)):
            if rng.random() < 0.5 and rows >= 2:
                i, j = rng.sample(range(rows), 2)
                ed.add_row(i, j)
            else:
                i, j = rng.sample(range(rows), 2) if rows >= 2 else (0, 0)
                ed.swap_rows(i, j)
        assert rank(ed.matrix()) == rank(m)


def test_oplog_column_index_maps_are_inverse():
    rng = random.Random(9)
    for _ in range(50):
        cols = rng.randint(2, 8)
        log = _random_log(rng, 3, cols)
        idx = tuple(rng.sample(range(cols), rng.randint(1, cols)))
        fwd = log.push_forward_columns(idx)
        assert log.pull_back_columns(fwd) == idx


def test_oplog_pull_back_tracks_columns():
    m = BitMatrix.from_rows([0b001, 0b010], 3)
    ed = MatrixEditor(m)
    ed.swap_cols(0, 2)
    ed.swap_cols(1, 2)
    # transformed column j should equal source column pull_back(j)
    t = ed.matrix()
    log = ed.log()
    for j in range(3):
        (src,) = log.pull_back_columns((j,))
        assert t.column_int(j) == m.column_int(src)


def test_matrix_text_round_trip():
    m = BitMatrix.from_rows([0b1101, 0b0110, 0b0011], 4)
    again = BitMatrix.from_text(m.to_text())
    assert again == m
    assert m.to_text().splitlines()[0] == "3 4"


def test_vector_text_and_hex():
    v = BitVector.from_text("1110")
    assert v.bits == 0b0111 and v.dim == 4
    assert str(v) == "1110"
    assert v.to_hex() == "7"
    assert BitVector.from_hex("7", 4) == v
    e8 = BitVector.unit(8, 7)
    assert e8.to_hex() == "08"
    assert int_from_hex_le(int_to_hex_le(e8.bits, 8), 8) == e8.bits


def test_bitvector_mask_enforced():
    with pytest.raises(ValueError):
        BitVector(3, 0b1000)


def test_matrix_column_row_consistency():
    m = BitMatrix.from_columns([0b01, 0b10, 0b11], rows=2)
    assert m.rows == 2 and m.cols == 3
    assert [m.column_int(j) for j in range(3)] == [1, 2, 3]
    assert m.row_words == (0b101, 0b110)
