"""Exact subset-sum oracle over Z_2^d with witness reconstruction.

The feasible-sum sets are kept as big-int bitmasks of width 2^d (bit g is
set when group element g is reachable), so one DP layer costs a handful
of word operations.  Witnesses are reconstructed greedily against a
suffix-feasibility table, which yields the lexicographically smallest
index set.
"""

from __future__ import annotations

from functools import lru_cache

from .types import GroupSequence, ZeroSumWitness

__all__ = ["GuardError", "dp_zero_sum_witness", "sequence_avoids", "set_avoids"]

# 2^d * (r+1) bits of state per DP layer; the suffix table multiplies this
# by the sequence length, so keep the per-layer figure small.
_STATE_BIT_LIMIT = 1 << 28
_DIM_LIMIT = 24


class GuardError(ValueError):
    """Raised when a computation would exceed its memory/size guard."""


@lru_cache(maxsize=None)
def _low_masks(dim: int) -> tuple[int, ...]:
    """For each bit b < dim: mask of positions whose b-th index bit is 0."""
    size = 1 << dim
    masks = []
    for b in range(dim):
        s = 1 << b
        m = (1 << s) - 1
        shift = 2 * s
        while shift < size:
            m |= m << shift
            shift <<= 1
        masks.append(m)
    return tuple(masks)


def _xor_shift(bitmask: int, g: int, dim: int) -> int:
    """Permute a 2^dim-bit reachability mask by XOR with group element g."""
    masks = _low_masks(dim)
    b = 0
    while g:
        if g & 1:
            s = 1 << b
            low = masks[b]
            bitmask = ((bitmask & low) << s) | ((bitmask >> s) & low)
        g >>= 1
        b += 1
    return bitmask


def _suffix_table(elements: tuple[int, ...], r: int, dim: int) -> list[list[int]]:
    """feas[i][c] = bitmask of sums reachable with exactly c of elements[i:]."""
    n = len(elements)
    feas = [[0] * (r + 1) for _ in range(n + 1)]
    feas[n][0] = 1  # only the empty choice, sum 0
    for i in range(n - 1, -1, -1):
        nxt = feas[i + 1]
        cur = feas[i]
        cur[0] = 1
        e = elements[i]
        for c in range(1, r + 1):
            cur[c] = nxt[c] | _xor_shift(nxt[c - 1], e, dim)
    return feas


def dp_zero_sum_witness(seq: GroupSequence, r: int) -> ZeroSumWitness | None:
    """Exact search for r positions of seq whose elements XOR to zero.

    Returns the lexicographically smallest such index set, or None when
    none exists (the DP is exhaustive, so None is a certificate).
    """
    if r < 0:
        raise ValueError("subsequence length must be non-negative")
    if r == 0:
        return ZeroSumWitness(())
    n = len(seq)
    if r > n:
        return None
    if seq.dim > _DIM_LIMIT or ((r + 1) << seq.dim) > _STATE_BIT_LIMIT:
        raise GuardError(f"DP state 2^{seq.dim} x {r + 1} exceeds the memory guard")
    feas = _suffix_table(seq.elements, r, seq.dim)
    if not feas[0][r] & 1:  # bit 0 = sum zero
        return None
    picked = []
    x = 0  # XOR of picked elements; the remainder must also reach x
    need = r
    for i in range(n):
        if need == 0:
            break
        e = seq.elements[i]
        if (feas[i + 1][need - 1] >> (x ^ e)) & 1:
            picked.append(i)
            x ^= e
            need -= 1
    assert need == 0 and x == 0, "greedy reconstruction lost feasibility"
    return ZeroSumWitness(tuple(picked))


def sequence_avoids(seq: GroupSequence, sizes) -> bool:
    """True when seq has no zero-sum subsequence of any of the given lengths."""
    for w in sorted(set(sizes)):
        if w == 0:
            return False
        if dp_zero_sum_witness(seq, w) is not None:
            return False
    return True


def set_avoids(dim: int, members, sizes) -> bool:
    """True when the vector set has no zero-sum subset of any given size."""
    seq = GroupSequence(dim, tuple(sorted(members)))
    if len(set(seq.elements)) != len(seq.elements):
        raise ValueError("set members must be distinct")
    return sequence_avoids(seq, sizes)
