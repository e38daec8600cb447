"""Constructive zero-sum witness extraction.

Implements the structural route: translate so the total vanishes, split
on rank, bring the matrix to binormal form, and assemble the zero-sum
columns by pair selection; the odd and even widths need their own
combinatorial endgames (row triples and digraph type anomalies).  Every
"without loss of generality" permutation is a logged operation, so the
final witness is pulled back to original column indices mechanically and
revalidated against the input sequence.
"""

from __future__ import annotations

from .binormal import (
    BinormalMatrix,
    PairProfile,
    find_row_triple,
    find_type_anomaly,
    is_binormal,
    select_pair_columns,
    subset_type,
    to_binormal_form,
)
from .constants import closed_form_s
from .gf2 import BitMatrix, BitVector, MatrixEditor, rank
from .oracle import dp_zero_sum_witness
from .types import GroupSequence, ZeroSumWitness

__all__ = [
    "ExtractionError",
    "NoZeroSumWitness",
    "extract_via_enomoto",
    "extract_odd_case",
    "extract_even_case",
    "extract_zero_sum",
]


class ExtractionError(RuntimeError):
    pass


class NoZeroSumWitness(Exception):
    """No zero-sum subsequence of the demanded length exists (certified)."""

    def __init__(self, message: str, certified: bool = True):
        super().__init__(message)
        self.certified = certified


def _editor_profile(ed: MatrixEditor, pairs: int) -> PairProfile:
    even_cols = [ed.column_int(2 * j) for j in range(pairs)]
    rows = []
    for i in range(pairs):
        w = 0
        for j in range(pairs):
            if i != j and (even_cols[j] >> i) & 1:
                w |= 1 << j
        rows.append(w)
    return PairProfile(BitMatrix(pairs, pairs, tuple(rows)))


def _move_rows_with_pairs(ed: MatrixEditor, moves: list[tuple[int, int]]) -> None:
    """Permute rows (and their column pairs in lock step) by labeled moves.

    `moves` lists (current_row, target_row) pairs relative to the state at
    call time; simultaneous row/pair swaps preserve binormal form.
    """
    nr = ed.nrows
    who = list(range(nr))
    where = list(range(nr))
    for label, target in moves:
        cur = where[label]
        if cur == target:
            continue
        other = who[target]
        ed.swap_rows(cur, target)
        ed.swap_cols(2 * cur, 2 * target)
        ed.swap_cols(2 * cur + 1, 2 * target + 1)
        who[cur], who[target] = other, label
        where[label], where[other] = target, cur


def _xor_columns(ed: MatrixEditor, indices) -> int:
    acc = 0
    for j in indices:
        acc ^= ed.column_int(j)
    return acc


def extract_via_enomoto(m: BitMatrix) -> ZeroSumWitness:
    """k columns of a qualifying k x n matrix whose sum is zero.

    Preconditions are those of the binormal reduction: odd n > 2k, full
    row rank, zero row sums.
    """
    b = to_binormal_form(m)
    cols = b.matrix.column_ints()
    sel = select_pair_columns(cols, b.pairs, 0)
    original = sorted(b.log.pull_back_columns(sel))
    acc = 0
    for j in original:
        acc ^= m.column_int(j)
    if acc != 0:
        raise AssertionError("pulled-back selection does not sum to zero")
    return ZeroSumWitness(tuple(original))


def extract_odd_case(m: BitMatrix, mm: int) -> ZeroSumWitness:
    """2m zero-sum columns of a binormal (2m+1) x (4m+5) matrix, m odd."""
    if mm < 1 or mm % 2 != 1:
        raise ValueError("this extractor needs odd m")
    k = 2 * mm  # number of columns to select
    nr = k + 1
    n = 2 * k + 5
    if m.rows != nr or m.cols != n:
        raise ValueError(f"expected a {nr} x {n} matrix")
    if not is_binormal(m, nr):
        raise ValueError("matrix is not in binormal form")

    ed = MatrixEditor(m)
    prof = _editor_profile(ed, nr)
    even_row = next((i for i in range(nr) if prof.row_offdiag_parity(i) == 0), None)

    if even_row is not None:
        # park the balanced row last; the k x 2k prefix stays binormal and
        # its zero selection is silent on the last row
        _move_rows_with_pairs(ed, [(even_row, nr - 1)])
        sel = select_pair_columns(ed.col_ints(), k, 0)
    else:
        i, j, l = find_row_triple(prof)
        _move_rows_with_pairs(ed, [(i, k - 2), (j, k - 1), (l, k)])
        prof = _editor_profile(ed, nr)
        assert prof.entry(k - 2, k - 1) ^ prof.entry(k - 2, k) == 1
        assert prof.entry(k - 1, k - 2) ^ prof.entry(k - 1, k) == 1
        low_mask = (1 << (k - 2)) - 1
        x = (prof.matrix.row_words[k] & low_mask).bit_count() & 1
        # two "special" columns among the 9 rightmost whose sum restricted
        # to the last three rows is (0, 0, x)
        window = range(n - 9, n)
        shift = k - 2
        restricted = {j2: (ed.column_int(j2) >> shift) & 7 for j2 in window}
        special = None
        if x == 0:
            for a_pos, a in enumerate(window):
                for b in list(window)[a_pos + 1 :]:
                    if restricted[a] == restricted[b]:
                        special = (a, b)
                        break
                if special:
                    break
        else:
            special = (2 * k, 2 * k + 1)  # the pair of the last row differs in it
        if special is None:
            raise AssertionError("nine columns with eight patterns must collide")
        sa, sb = special
        assert (restricted[sa] ^ restricted[sb]) == (x << 2)
        y = ed.column_int(sa) ^ ed.column_int(sb)
        sel = select_pair_columns(ed.col_ints(), k - 2, y & low_mask) + [sa, sb]

    if _xor_columns(ed, sel) != 0:
        raise AssertionError("selected columns do not sum to zero")
    original = sorted(ed.log().pull_back_columns(sel))
    return ZeroSumWitness(tuple(original))


def _even_core(m: BitMatrix) -> ZeroSumWitness:
    """nn-1 zero-sum columns of a binormal nn x 2nn matrix, nn = 1 mod 4."""
    nn = m.rows
    if m.cols != 2 * nn:
        raise ValueError(f"expected a {nn} x {2 * nn} matrix")
    if not is_binormal(m, nn):
        raise ValueError("matrix is not in binormal form")
    ed = MatrixEditor(m)
    prof = _editor_profile(ed, nn)
    even_row = next((i for i in range(nn) if prof.row_offdiag_parity(i) == 0), None)
    if even_row is not None:
        _move_rows_with_pairs(ed, [(even_row, nn - 1)])
        sel = select_pair_columns(ed.col_ints(), nn - 1, 0)
    else:
        anomaly = find_type_anomaly(prof)
        t = (len(anomaly) + 1) // 2
        ones = [i for i in anomaly if _sigma(prof, anomaly, i) == 1]
        zeros = [i for i in anomaly if _sigma(prof, anomaly, i) == 0]
        assert len(ones) == t and len(zeros) == t - 1
        first = nn - 2 * t + 1
        moves = [(lab, first + pos) for pos, lab in enumerate(ones + zeros)]
        _move_rows_with_pairs(ed, moves)
        prof = _editor_profile(ed, nn)
        tail = tuple(range(first, nn))
        assert subset_type(prof, tail) == t
        kk = nn - 2 * t + 1
        sel = select_pair_columns(ed.col_ints(), kk, 0)
        # both members of each of the last t-1 pairs add the unit vectors
        # that cancel the leftover rows
        for r in range(nn - t + 1, nn):
            sel += [2 * r, 2 * r + 1]
    if _xor_columns(ed, sel) != 0:
        raise AssertionError("even-width selection does not sum to zero")
    original = sorted(ed.log().pull_back_columns(sel))
    return ZeroSumWitness(tuple(original))


def _sigma(prof: PairProfile, subset, i: int) -> int:
    mask = 0
    for j in subset:
        if j != i:
            mask |= 1 << j
    return (prof.matrix.row_words[i] & mask).bit_count() & 1


def _submatrix_columns(ed: MatrixEditor, upto: int) -> BitMatrix:
    mask = (1 << upto) - 1
    return BitMatrix(ed.nrows, upto, tuple(w & mask for w in ed.rows))


def extract_even_case(
    m: BitMatrix, mm: int, duplicate_pair: tuple[int, int] | None = None, _depth: int = 0
) -> ZeroSumWitness:
    """2m zero-sum columns of a binormal (2m+1)-row matrix, m even.

    Width 4m+2 uses the digraph type-anomaly assembly directly.  Width
    4m+3 additionally needs two identical columns (given 0-based) and a
    zero total column sum; the returned witness then contains at most one
    of the two identical columns.
    """
    if mm < 2 or mm % 2 != 0:
        raise ValueError("this extractor needs even m >= 2")
    nn = 2 * mm + 1
    if m.rows != nn:
        raise ValueError(f"expected {nn} rows")
    if m.cols == 4 * mm + 2:
        return _even_core(m)
    if m.cols != 4 * mm + 3:
        raise ValueError(f"expected width {4 * mm + 2} or {4 * mm + 3}")
    if duplicate_pair is None:
        raise ValueError("the odd-width variant needs the identical column pair")
    i0, j0 = sorted(duplicate_pair)
    if m.column_int(i0) != m.column_int(j0):
        raise ValueError("declared duplicate columns are not identical")
    total = 0
    for j in range(m.cols):
        total ^= m.column_int(j)
    if total != 0:
        raise ValueError("the odd-width variant needs zero total column sum")
    if not is_binormal(m, nn):
        raise ValueError("matrix is not in binormal form")
    if _depth > 3:
        raise AssertionError("binormality fallback looped; this is a bug")

    last = 2 * nn  # 0-based index of the unpaired column
    if j0 == last or i0 == last:
        # one duplicate is the unpaired column: the even-width core on the
        # paired part never touches it
        return _even_core(_submatrix_columns(MatrixEditor(m), 2 * nn))

    ed = MatrixEditor(m)
    pa, pb = i0 // 2, j0 // 2
    if pa == pb:
        raise ValueError("identical columns cannot share a pair")
    _move_rows_with_pairs(ed, [(pa, nn - 2), (pb, nn - 1)])
    for pos in ed.log().push_forward_columns((i0, j0)):
        if pos % 2 == 0:
            ed.swap_cols(pos, pos + 1)
    dup_now = sorted(ed.log().push_forward_columns((i0, j0)))
    assert dup_now == [2 * nn - 3, 2 * nn - 1], "duplicates not parked at the pair tails"
    assert ed.column_int(2 * nn - 3) == ed.column_int(2 * nn - 1)

    all_ones = (1 << nn) - 1
    for _guard in range(4):
        prof = _editor_profile(ed, nn)
        c_n_nm1 = prof.entry(nn - 1, nn - 2)
        c_nm1_n = prof.entry(nn - 2, nn - 1)
        if c_n_nm1 == 1:
            # align the unpaired all-ones column with pair nn-1, then swap
            # it in: the duplicate at 2nn-1 leaves the paired range
            assert ed.column_int(2 * nn) == all_ones
            diffmask = (ed.column_int(2 * nn - 2) ^ ed.column_int(2 * nn)) & ((1 << (nn - 1)) - 1)
            for i in range(nn - 1):
                if (diffmask >> i) & 1:
                    ed.add_row(nn - 1, i)
            ed.swap_cols(2 * nn - 1, 2 * nn)
            if not is_binormal(ed.matrix(), nn):
                # fall back to a fresh reduction; ops so far preserved the
                # duplicates, the zero total, rank, and row parity
                fresh = to_binormal_form(ed.matrix())
                chain = ed.log().then(fresh.log)
                new_dup = tuple(sorted(chain.push_forward_columns((i0, j0))))
                inner = extract_even_case(fresh.matrix, mm, new_dup, _depth + 1)
                back = sorted(chain.pull_back_columns(inner.indices))
                return ZeroSumWitness(tuple(back))
            inner = _even_core(_submatrix_columns(ed, 2 * nn))
            sel = list(inner.indices)
            break
        if c_nm1_n == 1:
            _move_rows_with_pairs(ed, [(nn - 2, nn - 1)])
            continue
        # both zero: try the full pair selection, else flip the two tail
        # pairs, else close with the all-ones column
        low = (1 << (nn - 2)) - 1
        s_n = (prof.matrix.row_words[nn - 1] & low).bit_count() & 1
        s_nm1 = (prof.matrix.row_words[nn - 2] & low).bit_count() & 1
        if s_n == 0:
            sel = select_pair_columns(ed.col_ints(), nn - 1, 0)
            break
        if s_nm1 == 0:
            _move_rows_with_pairs(ed, [(nn - 2, nn - 1)])
            continue
        assert ed.column_int(2 * nn) == all_ones
        sel = select_pair_columns(ed.col_ints(), nn - 2, low) + [2 * nn]
        break
    else:
        raise AssertionError("case analysis failed to settle")

    if _xor_columns(ed, sel) != 0:
        raise AssertionError("odd-width selection does not sum to zero")
    back = sorted(ed.log().pull_back_columns(sel))
    if i0 in back and j0 in back:
        raise AssertionError("witness used both identical columns")
    return ZeroSumWitness(tuple(back))


# ---------------------------------------------------------------------------
# The sequence-level driver


def extract_zero_sum(seq: GroupSequence, mm: int) -> ZeroSumWitness:
    """A zero-sum subsequence of length 2m, constructively when possible.

    Dispatch: d < 2m and d > 2m+1 go to the DP oracle; d = 2m translates
    by the total and selects through the binormal reduction; d = 2m+1
    splits on the parity of m.  Sequences below the guaranteed threshold
    fall back to the DP oracle, which certifies absence.  The result is
    always revalidated against the input.
    """
    if mm < 1:
        raise ValueError("need m >= 1")
    if seq.dim < 1:
        raise ValueError("need dimension >= 1")
    r = 2 * mm
    d = seq.dim
    n = len(seq)
    structured = d in (2 * mm, 2 * mm + 1)
    if structured:
        threshold = closed_form_s(mm, d).value
        structured = n >= threshold
    if not structured:
        w = dp_zero_sum_witness(seq, r)
        if w is None:
            raise NoZeroSumWitness(
                f"no zero-sum subsequence of length {r} exists (DP-certified)"
            )
        return w
    prefix = GroupSequence(d, seq.elements[:threshold])
    idxs = _structured_route(prefix, mm)
    wit = ZeroSumWitness(tuple(sorted(idxs)))
    if not wit.validates(seq, r):
        raise AssertionError("extracted witness failed revalidation")
    return wit


def _structured_route(seq: GroupSequence, mm: int) -> list[int]:
    d = seq.dim
    n = len(seq)
    total = seq.total()
    if d == 2 * mm:
        translated = tuple(e ^ total for e in seq.elements)
        work = GroupSequence(d, translated)
        m0 = work.to_matrix()
        if rank(m0) < d:
            return _drop_dependent_row_and_recurse(work, mm)
        return list(extract_via_enomoto(m0).indices)
    if mm % 2 == 1:
        translated = tuple(e ^ total for e in seq.elements)
        work = GroupSequence(d, translated)
        m0 = work.to_matrix()
        if rank(m0) < d:
            return _drop_dependent_row_and_recurse(work, mm)
        b = to_binormal_form(m0)
        inner = extract_odd_case(b.matrix, mm)
        return list(b.log.pull_back_columns(inner.indices))
    # d = 2m+1, m even
    if rank(seq.to_matrix()) < d:
        return _drop_dependent_row_and_recurse(seq, mm)
    y = total ^ seq.elements[-1]
    translated = tuple(e ^ y for e in seq.elements)
    work = GroupSequence(d, translated)
    if rank(work.to_matrix()) < d:
        # a linear functional equal to 1 on every element kills the rank
        # after translation; the dependent-row route still applies because
        # even-size zero sums are translation-invariant
        return _drop_dependent_row_and_recurse(work, mm)
    extended = GroupSequence(d, translated + (total,))
    b = to_binormal_form(extended.to_matrix())
    dup = tuple(sorted(b.log.push_forward_columns((n - 1, n))))
    inner = extract_even_case(b.matrix, mm, duplicate_pair=dup)
    back = list(b.log.pull_back_columns(inner.indices))
    if n in back:
        # the appended total-sum column is interchangeable with its twin,
        # the translated final element
        assert n - 1 not in back
        back[back.index(n)] = n - 1
    return back


def _drop_dependent_row_and_recurse(seq: GroupSequence, mm: int) -> list[int]:
    """Zero a dependent coordinate and solve the smaller instance.

    If a column subset sums to zero on the independent rows it also sums
    to zero on any dependent row, so the witness transfers unchanged.
    """
    matrix = seq.to_matrix()
    basis: list[tuple[int, int]] = []  # (reduced row, original index mask)
    drop = None
    for i in range(matrix.rows):
        v = matrix.row_words[i]
        for bv, _ in basis:
            v = min(v, v ^ bv)
        if v == 0:
            drop = i
            break
        basis.append((v, i))
        basis.sort(reverse=True)
    if drop is None:
        raise AssertionError("rank was reported deficient but no dependent row found")
    low = (1 << drop) - 1
    reduced = tuple((e & low) | ((e >> (drop + 1)) << drop) for e in seq.elements)
    inner = extract_zero_sum(GroupSequence(seq.dim - 1, reduced), mm)
    return list(inner.indices)
