"""Shared domain values: forbidden-size sets, sequences, witnesses, records."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Optional

from .gf2 import BitMatrix, BitVector

__all__ = [
    "WeightSet",
    "GroupSequence",
    "VectorSet",
    "ZeroSumWitness",
    "ConstantRecord",
]


@dataclass(frozen=True)
class WeightSet:
    """A finite set W of forbidden zero-sum subset sizes.

    Must contain at least one even size.  Shortcut constructors cover the
    three families the solvers care about: a single even size, an even
    run {2j, 2j+2, ..., 2m}, and a full run {1, ..., 2m}.
    """

    sizes: frozenset[int]

    def __post_init__(self) -> None:
        if not self.sizes:
            raise ValueError("empty weight set")
        for w in self.sizes:
            if not isinstance(w, int) or w < 1:
                raise ValueError(f"sizes must be positive integers, got {w!r}")
        if not any(w % 2 == 0 for w in self.sizes):
            raise ValueError("weight set must contain at least one even size")

    @classmethod
    def of(cls, *sizes: int) -> "WeightSet":
        return cls(frozenset(sizes))

    @classmethod
    def single_even(cls, m: int) -> "WeightSet":
        """{2m}"""
        return cls(frozenset({2 * m}))

    @classmethod
    def even_run(cls, j: int, m: int) -> "WeightSet":
        """{2j, 2j+2, ..., 2m}"""
        if not 1 <= j <= m:
            raise ValueError("need 1 <= j <= m")
        return cls(frozenset(range(2 * j, 2 * m + 1, 2)))

    @classmethod
    def full_run(cls, m: int) -> "WeightSet":
        """{1, 2, ..., 2m}"""
        return cls(frozenset(range(1, 2 * m + 1)))

    @property
    def sorted_sizes(self) -> tuple[int, ...]:
        return tuple(sorted(self.sizes))

    def effective_for_sets(self) -> tuple[int, ...]:
        """Sizes that actually constrain a *set* of vectors.

        Size-2 zero-sum subsets need two equal elements, which a set
        cannot contain, so 2 is dropped.
        """
        return tuple(sorted(w for w in self.sizes if w != 2))

    def all_even(self) -> bool:
        return all(w % 2 == 0 for w in self.sizes)

    def __str__(self) -> str:
        return ",".join(str(w) for w in self.sorted_sizes)


@dataclass(frozen=True)
class GroupSequence:
    """An ordered sequence over Z_2^dim; repetition allowed.

    Elements are bit-packed ints (coordinate i is bit i-1).  The matrix
    form writes the elements column-wise, which is also the text format.
    """

    dim: int
    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        top = 1 << self.dim
        for e in self.elements:
            if not 0 <= e < top:
                raise ValueError(f"element {e} outside Z_2^{self.dim}")

    @classmethod
    def from_vectors(cls, vectors: list[BitVector]) -> "GroupSequence":
        if not vectors:
            raise ValueError("cannot infer dimension from an empty list")
        dim = vectors[0].dim
        return cls(dim, tuple(v.bits for v in vectors))

    @classmethod
    def from_matrix(cls, m: BitMatrix) -> "GroupSequence":
        return cls(m.rows, tuple(m.column_ints()))

    def to_matrix(self) -> BitMatrix:
        return BitMatrix.from_columns(self.elements, self.dim)

    def vectors(self) -> list[BitVector]:
        return [BitVector(self.dim, e) for e in self.elements]

    def total(self) -> int:
        return reduce(lambda a, b: a ^ b, self.elements, 0)

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class VectorSet:
    """A set of distinct vectors in Z_2^dim."""

    dim: int
    members: frozenset[int]

    def __post_init__(self) -> None:
        top = 1 << self.dim
        for e in self.members:
            if not 0 <= e < top:
                raise ValueError(f"member {e} outside Z_2^{self.dim}")

    def to_sequence(self) -> GroupSequence:
        return GroupSequence(self.dim, tuple(sorted(self.members)))

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class ZeroSumWitness:
    """Positions (0-based, distinct, sorted) whose elements XOR to zero."""

    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        if list(self.indices) != sorted(set(self.indices)):
            raise ValueError("indices must be sorted and distinct")

    def __len__(self) -> int:
        return len(self.indices)

    def xor_over(self, seq: GroupSequence) -> int:
        acc = 0
        for i in self.indices:
            acc ^= seq.elements[i]
        return acc

    def validates(self, seq: GroupSequence, length: int | None = None) -> bool:
        if self.indices and self.indices[-1] >= len(seq):
            return False
        if length is not None and len(self.indices) != length:
            return False
        return self.xor_over(seq) == 0


@dataclass
class ConstantRecord:
    """A computed or bounded constant with provenance.

    kind is one of beta / s / R / N; params identifies the instance
    (W and d for beta, m and d for s, m and n for R, r and delta for N).
    The trace is a list of human-readable derivation steps; each step
    starts with a short rule tag.
    """

    kind: str
    params: dict[str, Any]
    lower: int
    upper: int
    status: str
    witness: Optional[object] = None
    trace: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.kind not in {"beta", "s", "R", "N"}:
            raise ValueError(f"unknown record kind {self.kind!r}")
        if self.status not in {"exact", "bounded"}:
            raise ValueError(f"unknown status {self.status!r}")
        if self.lower > self.upper:
            raise ValueError(f"inconsistent bounds [{self.lower}, {self.upper}]")
        if self.status == "exact" and self.lower != self.upper:
            raise ValueError("exact record must have lower == upper")

    @property
    def is_exact(self) -> bool:
        return self.status == "exact"

    @property
    def value(self) -> int:
        if not self.is_exact:
            raise ValueError("record is only bounded, not exact")
        return self.lower

    def describe(self) -> str:
        if self.kind == "beta":
            name = f"beta_{{{self.params['W']}}}({self.params['d']})"
        elif self.kind == "s":
            name = f"s_{2 * self.params['m']}({self.params['d']})"
        elif self.kind == "R":
            name = f"R_{2 * self.params['m']}({self.params['n']})"
        else:
            name = f"N({self.params['r']},{self.params['delta']})"
        if self.is_exact:
            return f"{name} = {self.lower} (exact)"
        return f"{name} in [{self.lower}, {self.upper}] (bounded)"
