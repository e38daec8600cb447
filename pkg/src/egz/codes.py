"""Linear binary code analytics.

Codes are represented by their parity-check matrices (every argument in
this project is parity-check-side); generator-side views are derived on
demand through the nullspace.  Weight distributions are exact counts by
full enumeration, guarded to dimension 24.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .gf2 import BitMatrix, BitVector, nullspace_basis, rank

__all__ = [
    "LinearCode",
    "WeightDistribution",
    "CodeTableEntry",
    "weight_distribution",
    "dual",
    "min_distance",
    "verify_macwilliams",
    "hamming_bound_holds",
    "n_table",
    "find_unbalanced_dual_word",
]

_ENUM_DIM_LIMIT = 24


@dataclass(frozen=True)
class LinearCode:
    """The code {x : H x = 0} for a full-row-rank parity-check matrix H."""

    parity_check: BitMatrix

    def __post_init__(self) -> None:
        h = self.parity_check
        if rank(h) != h.rows:
            raise ValueError("parity-check matrix must have full row rank")

    @property
    def length(self) -> int:
        return self.parity_check.cols

    @property
    def redundancy(self) -> int:
        return self.parity_check.rows

    @property
    def dimension(self) -> int:
        return self.length - self.redundancy

    @classmethod
    def from_parity_check(cls, m: BitMatrix) -> "LinearCode":
        return cls(m)

    @classmethod
    def from_generators(cls, vectors: list[BitVector]) -> "LinearCode":
        """Code spanned by the given words (dependent generators allowed)."""
        if not vectors:
            raise ValueError("need at least one generator to fix the length")
        n = vectors[0].dim
        g = BitMatrix.from_rows(vectors, n)
        h_rows = nullspace_basis(g)
        return cls(BitMatrix.from_rows(h_rows, n))

    def words(self) -> list[int]:
        """All codewords as bit-packed ints (guarded enumeration)."""
        basis = nullspace_basis(self.parity_check)
        if len(basis) > _ENUM_DIM_LIMIT:
            raise ValueError(f"code dimension {len(basis)} exceeds enumeration guard")
        out = [0]
        w = 0
        for i in range(1, 1 << len(basis)):
            w ^= basis[(i & -i).bit_length() - 1].bits  # Gray-code step
            out.append(w)
        return out

    def word_set(self) -> frozenset[int]:
        return frozenset(self.words())


@dataclass(frozen=True)
class WeightDistribution:
    """counts[j] = number of codewords of Hamming weight j."""

    n: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != self.n + 1:
            raise ValueError("need n+1 weight counts")
        if self.counts[0] < 1:
            raise ValueError("the zero word is always present")


@dataclass(frozen=True)
class CodeTableEntry:
    """Best-known bounds on N(r, delta); lower == upper when exact."""

    redundancy: int
    distance: int
    lower: int
    upper: int

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ValueError("inconsistent table entry")

    @property
    def is_exact(self) -> bool:
        return self.lower == self.upper


def weight_distribution(code: LinearCode) -> WeightDistribution:
    counts = [0] * (code.length + 1)
    for w in code.words():
        counts[w.bit_count()] += 1
    return WeightDistribution(code.length, tuple(counts))


def dual(code: LinearCode) -> LinearCode:
    """The orthogonal-complement code; its parity check is a generator basis."""
    basis = nullspace_basis(code.parity_check)
    return LinearCode(BitMatrix.from_rows(basis, code.length))


def min_distance(code: LinearCode):
    """Smallest nonzero-word weight; math.inf for the zero-dimensional code."""
    best = None
    for w in code.words():
        if w == 0:
            continue
        wt = w.bit_count()
        if best is None or wt < best:
            best = wt
    return math.inf if best is None else best


def verify_macwilliams(a: WeightDistribution, b: WeightDistribution, n: int, k: int) -> bool:
    """Check the weight-distribution identities tying a code to its dual.

    For every lambda:
      2^(n-k) * sum_j C(n-j, lambda-j) A_j  ==  2^lambda * sum_j C(n-j, lambda) B_j
    evaluated in exact integer arithmetic.
    """
    if a.n != n or b.n != n:
        raise ValueError("distribution length mismatch")
    for lam in range(n + 1):
        lhs = (1 << (n - k)) * sum(
            math.comb(n - j, lam - j) * a.counts[j] for j in range(lam + 1)
        )
        rhs = (1 << lam) * sum(
            math.comb(n - j, lam) * b.counts[j] for j in range(n - lam + 1)
        )
        if lhs != rhs:
            return False
    return True


def hamming_bound_holds(r: int, t: int, n: int) -> bool:
    """Sphere-packing check: sum_{i<=t} C(n,i) <= 2^r."""
    if r < 0 or t < 0 or n < 0:
        raise ValueError("arguments must be non-negative")
    return sum(math.comb(n, i) for i in range(t + 1)) <= (1 << r)


# Best-known N(r,5) for 4 <= r <= 14; exact up to r=10, open intervals after.
_N5_TABLE = {
    4: (5, 5),
    5: (6, 6),
    6: (8, 8),
    7: (11, 11),
    8: (17, 17),
    9: (23, 23),
    10: (33, 33),
    11: (47, 57),
    12: (65, 88),
    13: (81, 124),
    14: (128, 179),
}


def n_table(r: int, delta: int) -> CodeTableEntry:
    """Reference bounds on the maximal code length N(r, delta).

    Only delta=5 (tabulated, 4 <= r <= 14) and delta=3 (closed form
    2^r - 1) are supported; anything else is an out-of-table query.
    """
    if delta == 3:
        if r < 1:
            raise ValueError("redundancy must be positive")
        v = (1 << r) - 1
        return CodeTableEntry(r, 3, v, v)
    if delta == 5:
        if r not in _N5_TABLE:
            raise ValueError(f"N({r},5) is outside the tabulated range 4..14")
        lo, hi = _N5_TABLE[r]
        return CodeTableEntry(r, 5, lo, hi)
    raise ValueError(f"no table for distance {delta}")


def _has_weight_word(code: LinearCode, w: int) -> bool:
    """Does the code contain a word of weight exactly w?

    A weight-w word selects w parity-check columns XORing to zero, so this
    is a small column-subset scan rather than a 2^k enumeration.
    """
    cols = code.parity_check.column_ints()
    for subset in combinations(range(code.length), w):
        acc = 0
        for j in subset:
            acc ^= cols[j]
        if acc == 0:
            return True
    return False


def find_unbalanced_dual_word(code: LinearCode) -> BitVector:
    """A nonzero dual word whose weight l satisfies |l - n/2| >= 2.

    Guaranteed to exist whenever n >= 10 and the code has no words of
    weight 2 or 4.  Deterministic choice: maximize |2l - n|, then take the
    lexicographically smallest word (coordinate 1 compared first).
    """
    n = code.length
    if n < 10:
        raise ValueError("need length at least 10")
    if code.redundancy > _ENUM_DIM_LIMIT:
        raise ValueError("dual dimension exceeds enumeration guard")
    for w in (2, 4):
        if _has_weight_word(code, w):
            raise ValueError(f"code has a word of weight {w}")
    h_rows = code.parity_check.row_words
    best_word = None
    best_score = -1
    word = 0
    # Gray-code walk over the dual (= row space of the parity check).
    for i in range(1, 1 << code.redundancy):
        word ^= h_rows[(i & -i).bit_length() - 1]
        score = abs(2 * word.bit_count() - n)
        if score > best_score:
            best_score = score
            best_word = word
        elif score == best_score and best_word is not None:
            if _lex_key(word, n) < _lex_key(best_word, n):
                best_word = word
    if best_word is None or best_score < 4:  # |2l - n| >= 4  <=>  |l - n/2| >= 2
        raise AssertionError("no unbalanced dual word found; precondition bug")
    return BitVector(n, best_word)


def _lex_key(word: int, n: int) -> tuple[int, ...]:
    return tuple((word >> i) & 1 for i in range(n))
