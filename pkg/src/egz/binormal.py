"""Binormal-form reduction and its combinatorial selection lemmas.

A k x n matrix (n >= 2k) is in binormal form when column pair (2i-1, 2i)
differs exactly in row i and agrees everywhere else; equivalently, the
XOR-difference of pair i is the unit vector e_i.  A full-rank matrix with
odd column count and zero row sums can always be brought to this form by
column permutations and row additions.

The reduction here searches for k disjoint column pairs whose
XOR-differences are linearly independent (greedy pairing with full
backtracking), permutes them into place, and normalizes the differences
to e_1..e_k with row additions that only ever use source rows at or
beyond the current pair index, so earlier pairs stay intact.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .gf2 import BitMatrix, BitVector, MatrixEditor, OpLog, rank

__all__ = [
    "BinormalMatrix",
    "PairProfile",
    "is_binormal",
    "to_binormal_form",
    "binormal_select",
    "select_pair_columns",
    "profile",
    "find_row_triple",
    "find_type_anomaly",
    "subset_type",
    "switch_vertex",
]


def is_binormal(m: BitMatrix, pairs: int) -> bool:
    """Both defining conditions at once: pair i's difference equals e_i."""
    if m.cols < 2 * pairs or pairs > m.rows:
        return False
    cols = m.column_ints()
    return all(cols[2 * i] ^ cols[2 * i + 1] == (1 << i) for i in range(pairs))


@dataclass(frozen=True)
class BinormalMatrix:
    """A matrix in binormal form plus the log that produced it."""

    matrix: BitMatrix
    pairs: int
    log: OpLog

    def __post_init__(self) -> None:
        if not is_binormal(self.matrix, self.pairs):
            raise ValueError("matrix is not in binormal form")


@dataclass(frozen=True)
class PairProfile:
    """The k x k matrix of shared pair values c_ij (diagonal fixed to 0)."""

    matrix: BitMatrix

    def __post_init__(self) -> None:
        if self.matrix.rows != self.matrix.cols:
            raise ValueError("pair profile must be square")
        for i in range(self.matrix.rows):
            if self.matrix.entry(i, i):
                raise ValueError("pair profile diagonal must be zero")

    @property
    def size(self) -> int:
        return self.matrix.rows

    def entry(self, i: int, j: int) -> int:
        return self.matrix.entry(i, j)

    def row_offdiag_parity(self, i: int) -> int:
        return (self.matrix.row_words[i].bit_count()) & 1  # diagonal is zero


def _pairing_search(cols: list[int], k: int) -> list[tuple[int, int]] | None:
    """k disjoint column pairs with linearly independent XOR-differences."""
    n = len(cols)

    basis: list[int] = []  # echelon basis of chosen differences

    def reduce(v: int) -> int:
        for b in basis:
            v = min(v, v ^ b)
        return v

    pairs: list[tuple[int, int]] = []
    skipped: list[int] = []

    def search(free: list[int]) -> bool:
        if len(pairs) == k:
            return True
        if len(free) < 2 * (k - len(pairs)):
            return False
        c = free[0]
        rest = free[1:]
        for idx, q in enumerate(rest):
            d = reduce(cols[c] ^ cols[q])
            if d == 0:
                continue
            basis.append(d)
            basis.sort(reverse=True)
            pairs.append((c, q))
            if search(rest[:idx] + rest[idx + 1 :]):
                return True
            pairs.pop()
            basis.remove(d)
        # leave c unpaired
        skipped.append(c)
        if search(rest):
            return True
        skipped.pop()
        return False

    if search(list(range(n))):
        return pairs
    return None


def to_binormal_form(m: BitMatrix) -> BinormalMatrix:
    """Bring a full-rank matrix with odd width and zero row sums to binormal form.

    Preconditions are reported specifically: column-count parity, width
    versus 2k, rank, and row sums.
    """
    k, n = m.rows, m.cols
    if n % 2 == 0:
        raise ValueError("column count must be odd")
    if 2 * k >= n:
        raise ValueError("need strictly more than 2k columns")
    if rank(m) != k:
        raise ValueError("matrix must have full row rank")
    for i in range(k):
        if m.row_words[i].bit_count() % 2 != 0:
            raise ValueError(f"row {i} does not sum to zero")

    pairs = _pairing_search(m.column_ints(), k)
    if pairs is None:  # the hypotheses guarantee existence
        raise AssertionError("no independent pairing found; precondition bug")

    ed = MatrixEditor(m)
    # place pair i at columns (2i, 2i+1); the remaining columns drift right
    placed = list(range(n))  # placed[pos] = original column currently there

    def move(orig: int, pos: int) -> None:
        cur = placed.index(orig)
        if cur != pos:
            ed.swap_cols(cur, pos)
            placed[cur], placed[pos] = placed[pos], placed[cur]

    for i, (p, q) in enumerate(pairs):
        move(p, 2 * i)
        move(q, 2 * i + 1)

    # normalize difference of pair j to e_j using only source rows >= j,
    # which keeps the already-normalized differences e_0..e_{j-1} intact
    for j in range(k):
        diff = ed.column_int(2 * j) ^ ed.column_int(2 * j + 1)
        if not (diff >> j) & 1:
            src = None
            for i in range(j + 1, k):
                if (diff >> i) & 1:
                    src = i
                    break
            if src is None:
                raise AssertionError("pair differences lost independence")
            ed.add_row(src, j)
            diff = ed.column_int(2 * j) ^ ed.column_int(2 * j + 1)
        for i in range(k):
            if i != j and (diff >> i) & 1:
                ed.add_row(j, i)

    out = ed.matrix()
    if not is_binormal(out, k):
        raise AssertionError("normalization failed to reach binormal form")
    return BinormalMatrix(out, k, ed.log())


def select_pair_columns(col_ints: list[int], kk: int, target_bits: int) -> list[int]:
    """Columns j_i in {2i, 2i+1} whose sum equals target on the first kk rows.

    Flipping within pair i toggles exactly row i of the running sum, so
    the unique choice falls out of one XOR.
    """
    mask = (1 << kk) - 1
    base = 0
    for i in range(kk):
        base ^= col_ints[2 * i]
    flips = (base ^ target_bits) & mask
    return [2 * i + ((flips >> i) & 1) for i in range(kk)]


def binormal_select(b: BinormalMatrix, x: BitVector) -> list[int]:
    """The unique one-column-per-pair selection summing to x (0-based)."""
    if x.dim != b.pairs:
        raise ValueError("target dimension must equal the pair count")
    cols = b.matrix.column_ints()
    sel = select_pair_columns(cols, b.pairs, x.bits)
    check = 0
    for j in sel:
        check ^= cols[j] & ((1 << b.pairs) - 1)
    assert check == x.bits, "pair selection failed; binormal structure broken"
    return sel


def profile(b: BinormalMatrix) -> PairProfile:
    """c_ij = the shared value of pair j in row i (diagonal set to 0)."""
    k = b.pairs
    cols = b.matrix.column_ints()
    rows = []
    for i in range(k):
        w = 0
        for j in range(k):
            if i != j and (cols[2 * j] >> i) & 1:
                w |= 1 << j
        rows.append(w)
    return PairProfile(BitMatrix(k, k, tuple(rows)))


def find_row_triple(c: PairProfile) -> tuple[int, int, int]:
    """Distinct rows (i, j, k) with c_ij + c_ik = 1 and c_ji + c_jk = 1.

    Requires that no row has all off-diagonal entries equal; returns the
    lexicographically least triple from an exhaustive scan.
    """
    t = c.size
    for i in range(t):
        off = [c.entry(i, j) for j in range(t) if j != i]
        if len(set(off)) <= 1:
            raise ValueError(f"row {i} has constant off-diagonal entries")
    for i in range(t):
        for j in range(t):
            if j == i:
                continue
            for k in range(t):
                if k == i or k == j:
                    continue
                if (c.entry(i, j) ^ c.entry(i, k)) == 1 and (c.entry(j, i) ^ c.entry(j, k)) == 1:
                    return (i, j, k)
    raise AssertionError("no valid row triple; this contradicts the guarantee")


def subset_type(c: PairProfile, subset) -> int:
    """Number of i in the subset whose profile row sums to 1 over the rest."""
    members = sorted(subset)
    mask = 0
    for i in members:
        mask |= 1 << i
    t = 0
    for i in members:
        if (c.matrix.row_words[i] & (mask ^ (1 << i))).bit_count() & 1:
            t += 1
    return t


def switch_vertex(c: PairProfile, i: int) -> PairProfile:
    """Complement all off-diagonal entries of row i (digraph switching)."""
    k = c.size
    rows = list(c.matrix.row_words)
    rows[i] ^= ((1 << k) - 1) ^ (1 << i)
    return PairProfile(BitMatrix(k, k, tuple(rows)))


def find_type_anomaly(c: PairProfile) -> tuple[int, ...]:
    """A subset I with |I| = 2 t(I) - 1: a type-2 triple or type-3 quintuple.

    Requires size congruent to 1 mod 4 and odd off-diagonal sum in every
    row (all out-degrees odd); existence is then guaranteed.  Returns the
    lexicographically least subset, triples scanned before quintuples.
    """
    n = c.size
    if n % 4 != 1:
        raise ValueError("profile size must be 1 mod 4")
    for i in range(n):
        if c.row_offdiag_parity(i) != 1:
            raise ValueError(f"row {i} has even off-diagonal sum")
    for size in (3, 5):
        for subset in combinations(range(n), size):
            if 2 * subset_type(c, subset) - 1 == size:
                return subset
    raise AssertionError("no type anomaly found; this contradicts the guarantee")
