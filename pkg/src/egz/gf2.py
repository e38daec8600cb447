"""Bit-packed exact linear algebra over GF(2).

Vectors and matrices keep their bits in plain Python ints: coordinate i
of a vector is bit i-1 of the int, so the first character of the text
form "110" is coordinate 1.  All values are immutable.  Matrix
transformations go through a :class:`MatrixEditor`, which records an
operation log (:class:`OpLog`) that can be replayed, inverted, and used
to translate column indices between the transformed matrix and its
source.  Column swaps are the only index-renaming operations, which is
what makes witness pull-back mechanical.
"""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = [
    "BitVector",
    "BitMatrix",
    "OpLog",
    "MatrixEditor",
    "rank",
    "solve_linear",
    "nullspace_basis",
    "int_to_hex_le",
    "int_from_hex_le",
]


def _mask(n: int) -> int:
    return (1 << n) - 1


def int_to_hex_le(bits: int, dim: int) -> str:
    """Hex-encode a bit-packed vector, least significant nibble first."""
    nibbles = max(1, (dim + 3) // 4)
    return "".join("0123456789abcdef"[(bits >> (4 * i)) & 15] for i in range(nibbles))


def int_from_hex_le(text: str, dim: int) -> int:
    bits = 0
    for i, ch in enumerate(text.strip().lower()):
        bits |= int(ch, 16) << (4 * i)
    if bits >> dim:
        raise ValueError(f"hex vector {text!r} does not fit in {dim} coordinates")
    return bits


@dataclass(frozen=True)
class BitVector:
    """An element of Z_2^dim / a word of F_2^dim, bit-packed into an int."""

    dim: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise ValueError("dimension must be non-negative")
        if not 0 <= self.bits <= _mask(self.dim):
            raise ValueError("bits beyond position dim must be zero")

    @classmethod
    def zero(cls, dim: int) -> "BitVector":
        return cls(dim, 0)

    @classmethod
    def ones(cls, dim: int) -> "BitVector":
        return cls(dim, _mask(dim))

    @classmethod
    def unit(cls, dim: int, i: int) -> "BitVector":
        if not 0 <= i < dim:
            raise ValueError("unit index out of range")
        return cls(dim, 1 << i)

    @classmethod
    def from_text(cls, line: str) -> "BitVector":
        line = line.strip()
        if line and set(line) - {"0", "1"}:
            raise ValueError(f"not a 0/1 line: {line!r}")
        bits = 0
        for i, ch in enumerate(line):
            if ch == "1":
                bits |= 1 << i
        return cls(len(line), bits)

    def bit(self, i: int) -> int:
        return (self.bits >> i) & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return BitVector(self.dim, self.bits ^ other.bits)

    def __str__(self) -> str:
        return "".join("1" if self.bit(i) else "0" for i in range(self.dim))

    def to_hex(self) -> str:
        return int_to_hex_le(self.bits, self.dim)

    @classmethod
    def from_hex(cls, text: str, dim: int) -> "BitVector":
        return cls(dim, int_from_hex_le(text, dim))


@dataclass(frozen=True)
class BitMatrix:
    """A rows x cols matrix over GF(2), stored as one int per row.

    A zero-row matrix is allowed: it is the parity-check matrix of the
    full space (a redundancy-0 code).
    """

    rows: int
    cols: int
    row_words: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative shape")
        if len(self.row_words) != self.rows:
            raise ValueError("row count does not match content")
        top = _mask(self.cols)
        for w in self.row_words:
            if not 0 <= w <= top:
                raise ValueError("row content exceeds column count")

    @classmethod
    def from_rows(cls, words, cols: int) -> "BitMatrix":
        out = []
        for w in words:
            out.append(w.bits if isinstance(w, BitVector) else int(w))
        return cls(len(out), cols, tuple(out))

    @classmethod
    def from_columns(cls, col_words, rows: int) -> "BitMatrix":
        cols = len(col_words)
        rws = [0] * rows
        for j, c in enumerate(col_words):
            c = c.bits if isinstance(c, BitVector) else int(c)
            for i in range(rows):
                if (c >> i) & 1:
                    rws[i] |= 1 << j
        return cls(rows, cols, tuple(rws))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.row_words[i])

    def entry(self, i: int, j: int) -> int:
        return (self.row_words[i] >> j) & 1

    def column_int(self, j: int) -> int:
        c = 0
        for i in range(self.rows):
            c |= ((self.row_words[i] >> j) & 1) << i
        return c

    def column(self, j: int) -> BitVector:
        return BitVector(self.rows, self.column_int(j))

    def column_ints(self) -> list[int]:
        return [self.column_int(j) for j in range(self.cols)]

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        for i in range(self.rows):
            lines.append(str(self.row(i)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix file")
        head = lines[0].split()
        if len(head) != 2:
            raise ValueError("first line must be 'rows cols'")
        rows, cols = int(head[0]), int(head[1])
        if len(lines) - 1 != rows:
            raise ValueError(f"expected {rows} matrix lines, got {len(lines) - 1}")
        words = []
        for ln in lines[1 : rows + 1]:
            v = BitVector.from_text(ln)
            if v.dim != cols:
                raise ValueError(f"row of length {v.dim}, expected {cols}")
            words.append(v.bits)
        return cls(rows, cols, tuple(words))


# ---------------------------------------------------------------------------
# Operation log


_SELF_INVERSE = {"swap-cols", "swap-rows", "add-row", "add-col-vector", "flip-row-offdiag"}


def _apply_op(rows: list[int], cols: int, op: tuple) -> None:
    kind = op[0]
    if kind == "swap-cols":
        _, i, j = op
        for r in range(len(rows)):
            bi = (rows[r] >> i) & 1
            bj = (rows[r] >> j) & 1
            if bi != bj:
                rows[r] ^= (1 << i) | (1 << j)
    elif kind == "swap-rows":
        _, i, j = op
        rows[i], rows[j] = rows[j], rows[i]
    elif kind == "add-row":
        _, src, dst = op
        rows[dst] ^= rows[src]
    elif kind == "add-col-vector":
        _, bits = op
        full = _mask(cols)
        for r in range(len(rows)):
            if (bits >> r) & 1:
                rows[r] ^= full
    elif kind == "flip-row-offdiag":
        _, i = op
        rows[i] ^= _mask(cols) ^ (1 << i)
    else:  # pragma: no cover - defensive
        raise ValueError(f"unknown operation {kind!r}")


@dataclass(frozen=True)
class OpLog:
    """Ordered record of elementary operations applied to a matrix.

    Every operation in the alphabet is its own inverse over GF(2), so
    the inverse log is simply the reversed op sequence.
    """

    ops: tuple[tuple, ...] = ()

    def __len__(self) -> int:
        return len(self.ops)

    def apply(self, m: BitMatrix) -> BitMatrix:
        rows = list(m.row_words)
        for op in self.ops:
            _apply_op(rows, m.cols, op)
        return BitMatrix(m.rows, m.cols, tuple(rows))

    def inverse(self) -> "OpLog":
        return OpLog(tuple(reversed(self.ops)))

    def then(self, other: "OpLog") -> "OpLog":
        return OpLog(self.ops + other.ops)

    def pull_back_columns(self, indices) -> tuple[int, ...]:
        """Map column indices of the transformed matrix back to the source."""
        idx = list(indices)
        for op in reversed(self.ops):
            if op[0] == "swap-cols":
                _, i, j = op
                idx = [j if x == i else i if x == j else x for x in idx]
        return tuple(idx)

    def push_forward_columns(self, indices) -> tuple[int, ...]:
        """Map source column indices to their positions after the log."""
        idx = list(indices)
        for op in self.ops:
            if op[0] == "swap-cols":
                _, i, j = op
                idx = [j if x == i else i if x == j else x for x in idx]
        return tuple(idx)


class MatrixEditor:
    """Mutable working copy of a matrix that logs every elementary op."""

    def __init__(self, m: BitMatrix):
        self.source = m
        self.nrows = m.rows
        self.cols = m.cols
        self.rows = list(m.row_words)
        self._ops: list[tuple] = []

    def swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        op = ("swap-cols", i, j)
        _apply_op(self.rows, self.cols, op)
        self._ops.append(op)

    def swap_rows(self, i: int, j: int) -> None:
        if i == j:
            return
        op = ("swap-rows", i, j)
        _apply_op(self.rows, self.cols, op)
        self._ops.append(op)

    def add_row(self, src: int, dst: int) -> None:
        if src == dst:
            raise ValueError("cannot add a row to itself")
        op = ("add-row", src, dst)
        _apply_op(self.rows, self.cols, op)
        self._ops.append(op)

    def add_col_vector(self, bits: int) -> None:
        if bits == 0:
            return
        op = ("add-col-vector", bits)
        _apply_op(self.rows, self.cols, op)
        self._ops.append(op)

    def flip_row_offdiag(self, i: int) -> None:
        if self.nrows != self.cols:
            raise ValueError("off-diagonal flip needs a square matrix")
        op = ("flip-row-offdiag", i)
        _apply_op(self.rows, self.cols, op)
        self._ops.append(op)

    def column_int(self, j: int) -> int:
        c = 0
        for i in range(self.nrows):
            c |= ((self.rows[i] >> j) & 1) << i
        return c

    def col_ints(self) -> list[int]:
        return [self.column_int(j) for j in range(self.cols)]

    def matrix(self) -> BitMatrix:
        return BitMatrix(self.nrows, self.cols, tuple(self.rows))

    def log(self) -> OpLog:
        return OpLog(tuple(self._ops))


# ---------------------------------------------------------------------------
# Elimination


def rank(m: BitMatrix) -> int:
    """GF(2) rank via Gaussian elimination; the input is not modified."""
    work = list(m.row_words)
    r = 0
    for col in range(m.cols):
        pivot = None
        for i in range(r, len(work)):
            if (work[i] >> col) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and (work[i] >> col) & 1:
                work[i] ^= work[r]
        r += 1
        if r == len(work):
            break
    return r


def _rref_augmented(m: BitMatrix, aug_bits: int | None) -> tuple[list[int], list[int]]:
    """Reduced row echelon form of [M | t]; returns (rows, pivot columns)."""
    n = m.cols
    work = list(m.row_words)
    if aug_bits is not None:
        work = [w | (((aug_bits >> i) & 1) << n) for i, w in enumerate(work)]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        pivot = None
        for i in range(r, len(work)):
            if (work[i] >> col) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and (work[i] >> col) & 1:
                work[i] ^= work[r]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work, pivots


def solve_linear(m: BitMatrix, target: BitVector) -> BitVector | None:
    """Solve M x = target; absent if unsolvable.

    Deterministic: all free variables are set to 0, so witnesses built on
    top of this are reproducible.
    """
    if target.dim != m.rows:
        raise ValueError(f"target has dim {target.dim}, matrix has {m.rows} rows")
    work, pivots = _rref_augmented(m, target.bits)
    n = m.cols
    for i in range(len(pivots), m.rows):
        if work[i]:  # row 0...0 | 1
            return None
    x = 0
    for r, col in enumerate(pivots):
        if (work[r] >> n) & 1:
            x |= 1 << col
    return BitVector(n, x)


def nullspace_basis(m: BitMatrix) -> list[BitVector]:
    """Basis of {x : M x = 0}; size equals cols - rank(M)."""
    work, pivots = _rref_augmented(m, None)
    n = m.cols
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        x = 1 << free
        for r, col in enumerate(pivots):
            if (work[r] >> free) & 1:
                x |= 1 << col
        basis.append(BitVector(n, x))
    return basis
