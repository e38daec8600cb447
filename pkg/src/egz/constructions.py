"""Extremal constructions for the lower bounds, with built-in validation.

Every constructor returns the object plus a `validated` flag.  Validation
re-checks the claimed zero-sum-freeness with the DP oracle and is skipped
(flag False) only when the instance exceeds the oracle guard.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .oracle import GuardError, sequence_avoids
from .types import GroupSequence, VectorSet

__all__ = ["Construction", "construct_extremal"]


@dataclass(frozen=True)
class Construction:
    kind: str
    value: object  # GroupSequence or VectorSet
    validated: bool


def _validate_seq(seq: GroupSequence, sizes) -> bool | None:
    try:
        return sequence_avoids(seq, sizes)
    except GuardError:
        return None


def _finish(kind: str, value, seq: GroupSequence, sizes) -> Construction:
    ok = _validate_seq(seq, sizes)
    if ok is False:
        raise AssertionError(f"construction {kind} produced a forbidden zero-sum; this is a bug")
    return Construction(kind, value, ok is True)


def _gao_lower(m: int, d: int) -> Construction:
    """(2m-1) zeros plus the basis, plus the all-ones vector when 2m <= d.

    Length 2m-1+d (or one more); no zero-sum subsequence of length 2m.
    """
    if m < 1 or d < 1:
        raise ValueError("need m >= 1 and d >= 1")
    elements = [0] * (2 * m - 1) + [1 << i for i in range(d)]
    if 2 * m <= d:
        elements.append((1 << d) - 1)
    seq = GroupSequence(d, tuple(elements))
    return _finish("gao_lower", seq, seq, [2 * m])


def _lift(seq: GroupSequence, m: int) -> Construction:
    """Attach a zero coordinate to every element and add one new unit vector."""
    d = seq.dim
    lifted = GroupSequence(d + 1, tuple(seq.elements) + (1 << d,))
    return _finish("lift", lifted, lifted, [2 * m])


def _doubling(aset: VectorSet, m: int) -> Construction:
    """Attach coordinate 0 and coordinate 1 copies of a 2[1,m]-free set.

    For odd m the union avoids zero-sum subsets of size 2m; when |A| is
    even it also avoids size 2|A| - 2m.
    """
    if m % 2 != 1:
        raise ValueError("the doubling argument needs odd m")
    d = aset.dim
    top = 1 << d
    members = frozenset(aset.members) | frozenset(x | top for x in aset.members)
    out = VectorSet(d + 1, members)
    sizes = [2 * m]
    if len(aset) % 2 == 0:
        sizes.append(2 * len(aset) - 2 * m)
    return _finish("doubling", out, out.to_sequence(), [w for w in sizes if w >= 1])


def _translation(bset: VectorSet, y: int) -> Construction:
    """Translate every member by y; even-size zero-sum subsets are preserved."""
    out = VectorSet(bset.dim, frozenset(x ^ y for x in bset.members))
    return Construction("translation", out, True)


def _zero_total(m: int, d: int) -> Construction:
    """A set of 2m+2 distinct vectors with total sum zero.

    Removing any two members leaves a nonzero sum, so the set has no
    zero-sum subset of size 2m.
    """
    size = 1 << d
    if 2 * m + 2 > size:
        raise ValueError("the group is too small for 2m+2 distinct vectors")
    if 2 * m + 2 == size:
        members = frozenset(range(size))  # whole group; total is zero for d >= 2
    else:
        base = reduce(lambda a, b: a ^ b, range(1, 2 * m + 1), 0)
        for c in range(2 * m + 1, size):
            x = base ^ c
            if x != 0 and x != c and not (1 <= x <= 2 * m) and x < size:
                members = frozenset(range(1, 2 * m + 1)) | {c, x}
                break
        else:  # pragma: no cover - guarded by the size check
            raise AssertionError("no completion found")
    out = VectorSet(d, members)
    total = reduce(lambda a, b: a ^ b, members, 0)
    if total != 0 or len(members) != 2 * m + 2:
        raise AssertionError("zero-total construction is broken")
    return _finish("zero_total", out, out.to_sequence(), [2 * m])


def _basis_plus_ones(d: int, m: int) -> Construction:
    """The d unit vectors plus the all-ones vector (needs d >= 2m).

    The only zero-sum subset is the whole set of size d+1 > 2m, so no
    zero-sum subset has size 2m or less.
    """
    if d < 2 * m:
        raise ValueError("need d >= 2m")
    members = frozenset(1 << i for i in range(d)) | {(1 << d) - 1}
    out = VectorSet(d, members)
    return _finish("basis_plus_ones", out, out.to_sequence(), range(1, 2 * m + 1))


def _two_heavy(d: int, m: int) -> Construction:
    """Unit vectors plus x, y with x, y, x+y all of weight 2m (needs d >= 3m)."""
    if d < 3 * m:
        raise ValueError("need d >= 3m")
    x = (1 << (2 * m)) - 1                      # coordinates 1..2m
    y = ((1 << (2 * m)) - 1) ^ ((1 << m) - 1) | (((1 << m) - 1) << (2 * m))
    # y covers coordinates m+1..3m; x ^ y covers 1..m and 2m+1..3m
    assert x.bit_count() == y.bit_count() == (x ^ y).bit_count() == 2 * m
    members = frozenset(1 << i for i in range(d)) | {x, y}
    out = VectorSet(d, members)
    return _finish("two_heavy", out, out.to_sequence(), range(1, 2 * m + 1))


_KINDS = {
    "gao_lower": _gao_lower,
    "lift": _lift,
    "doubling": _doubling,
    "translation": _translation,
    "zero_total": _zero_total,
    "basis_plus_ones": _basis_plus_ones,
    "two_heavy": _two_heavy,
}


def construct_extremal(kind: str, **params) -> Construction:
    """Build one of the named extremal objects; see the individual builders."""
    try:
        builder = _KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown construction kind {kind!r}") from None
    return builder(**params)
