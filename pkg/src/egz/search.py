"""Exact maximum-set and longest-sequence searches.

beta_search finds beta_W(d): the largest set in Z_2^d with no zero-sum
subset whose size lies in W.  s_direct_small is an independent
brute-force oracle for s_{2m}(d) over multisets.

Search-space reduction
----------------------
Subsets of Z_2^d are explored in a canonical form that picks one
representative per orbit of the affine/linear symmetry group:

* zero-sum structure is invariant under invertible linear maps, so a
  partial set whose elements span <e_1..e_rk> can have its next
  *independent* element normalized to e_{rk+1}.  In canonical position
  the span of a prefix is exactly the integer interval [0, 2^rk), the
  elements are chosen in increasing order, and the only way to leave the
  span is to append 2^rk itself.
* when every forbidden size is even, translating the whole set by any
  vector preserves all forbidden zero-sum subsets (w copies of t cancel),
  so the search may fix 0 as the first element.

Feasibility is incremental: cnt[c][v] counts the c-subsets of the current
set with XOR v, held in 64-bit numpy tables.  Appending v is legal iff
cnt[w-1][v] == 0 for every effective w in W; counts are updated in place
and undone by reverse-order subtraction on backtrack.  Once a vector is
illegal on a branch it stays illegal (counts only grow), which the
optimistic completion bound exploits.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field

import numpy as np

from .oracle import dp_zero_sum_witness
from .types import ConstantRecord, GroupSequence, VectorSet, WeightSet

__all__ = ["Budget", "BudgetExhausted", "beta_search", "s_direct_small"]

sys.setrecursionlimit(100_000)


class BudgetExhausted(Exception):
    pass


@dataclass
class Budget:
    """Node-count plus wall-clock budget; exhaustion degrades to bounded."""

    max_nodes: int | None = None
    max_seconds: float | None = None
    nodes: int = 0
    _deadline: float | None = field(default=None, repr=False)

    def tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExhausted("node budget exhausted")
        if self.max_seconds is not None:
            if self._deadline is None:
                self._deadline = time.monotonic() + self.max_seconds
            elif self.nodes % 256 == 0 and time.monotonic() > self._deadline:
                raise BudgetExhausted("time budget exhausted")


# Completed searches are deterministic, so they may be reused within a
# process (the s_{2m} reduction issues overlapping W queries).
_exact_memo: dict[tuple[tuple[int, ...], int], ConstantRecord] = {}


class _BetaDFS:
    def __init__(self, d: int, sizes: tuple[int, ...], force_zero: bool, budget: Budget):
        self.d = d
        self.size = 1 << d
        self.sizes = sizes  # effective forbidden sizes, ascending
        self.wm1 = [w - 1 for w in sizes]
        self.force_zero = force_zero
        self.budget = budget
        wmax = max(sizes)
        self.cnt = np.zeros((wmax, self.size), dtype=np.int64)
        self.cnt[0, 0] = 1
        self.idx = np.arange(self.size)
        self.chosen: list[int] = []
        self.best: list[int] = []

    def _add(self, v: int) -> None:
        perm = self.idx ^ v
        for c in range(len(self.cnt) - 1, 0, -1):
            self.cnt[c] += self.cnt[c - 1][perm]

    def _remove(self, v: int) -> None:
        perm = self.idx ^ v
        for c in range(1, len(self.cnt)):
            self.cnt[c] -= self.cnt[c - 1][perm]

    def _legal_between(self, lo: int, hi: int) -> list[int]:
        if lo >= hi:
            return []
        bad = np.zeros(hi - lo, dtype=bool)
        for w in self.wm1:
            np.logical_or(bad, self.cnt[w, lo:hi] != 0, out=bad)
        return [int(v) + lo for v in np.nonzero(~bad)[0]]

    def _legal_count(self, lo: int, hi: int) -> int:
        if lo >= hi:
            return 0
        bad = np.zeros(hi - lo, dtype=bool)
        for w in self.wm1:
            np.logical_or(bad, self.cnt[w, lo:hi] != 0, out=bad)
        return int((~bad).sum())

    def run(self) -> None:
        if self.force_zero:
            # all effective sizes are even >= 4 here, so 0 is always legal
            self._add(0)
            self.chosen.append(0)
            self._dfs(last=0, rk=0)
        else:
            self._dfs(last=-1, rk=0)

    def _dfs(self, last: int, rk: int) -> None:
        self.budget.tick()
        if len(self.chosen) > len(self.best):
            self.best = list(self.chosen)
        span = 1 << rk
        legal_now = self._legal_between(last + 1, span)
        # optimistic completion: values that are already illegal stay
        # illegal (counts only grow), so only currently-legal values above
        # `last` can ever join the set, locked dimensions included
        locked = self._legal_count(span, self.size)
        if len(self.chosen) + len(legal_now) + locked <= len(self.best):
            return
        for pos, v in enumerate(legal_now):
            self._add(v)
            self.chosen.append(v)
            self._dfs(v, rk)
            self.chosen.pop()
            self._remove(v)
            if len(self.chosen) + (len(legal_now) - pos - 1) + locked <= len(self.best):
                return
        if rk < self.d:
            v = span  # e_{rk+1}: outside the span of everything chosen, always legal
            self._add(v)
            self.chosen.append(v)
            self._dfs(v, rk + 1)
            self.chosen.pop()
            self._remove(v)


def beta_search(weights: WeightSet, d: int, budget: Budget | None = None) -> ConstantRecord:
    """Branch-and-bound computation of beta_W(d).

    Exact (with a maximum witness set) when the search completes within
    budget; otherwise bounded with the best found lower and the ledger's
    upper.  Deterministic: first maximum found in canonical DFS order.
    """
    if d < 1:
        raise ValueError("dimension must be positive")
    params = {"W": str(weights), "d": d}
    size = 1 << d
    sizes = tuple(w for w in weights.effective_for_sets() if w <= size)
    base_trace = []
    if sizes != weights.sorted_sizes:
        kept = ",".join(map(str, sizes))
        base_trace.append(f"effective-sizes: sets are constrained only through {{{kept}}}")
    if not sizes:
        members = frozenset(range(size))
        return ConstantRecord(
            "beta", params, size, size, "exact",
            VectorSet(d, members),
            base_trace + ["no-effective-constraint: every subset qualifies, beta = 2^d"],
        )
    if sizes == (1,):
        members = frozenset(range(1, size))
        return ConstantRecord(
            "beta", params, size - 1, size - 1, "exact",
            VectorSet(d, members),
            base_trace + ["nonzero-only: only the zero vector is forbidden, beta = 2^d - 1"],
        )

    key = (sizes, d)
    memo = _exact_memo.get(key)
    if memo is not None:
        return ConstantRecord(
            "beta", params, memo.lower, memo.upper, memo.status, memo.witness,
            base_trace + list(memo.trace),
        )

    budget = budget or Budget()
    force_zero = weights.all_even()
    dfs = _BetaDFS(d, sizes, force_zero, budget)
    completed = True
    try:
        dfs.run()
    except BudgetExhausted:
        completed = False
    witness = VectorSet(d, frozenset(dfs.best))
    trace = list(base_trace)
    if force_zero:
        trace.append("translation-fix: all sizes even, search fixes 0 in the set")
    trace.append("linear-canonical: independent elements normalized to unit vectors")
    if completed:
        trace.append(f"branch-and-bound: exhausted after {budget.nodes} nodes")
        rec = ConstantRecord("beta", params, len(dfs.best), len(dfs.best), "exact", witness, trace)
        _exact_memo[key] = ConstantRecord(
            "beta", params, rec.lower, rec.upper, rec.status, rec.witness,
            [t for t in trace if not t.startswith("effective-sizes")],
        )
        return rec
    from .constants import bounds_ledger  # deferred: the ledger never calls the search

    ledger = bounds_ledger("beta", {"W": weights, "d": d})
    upper = min(size, ledger.upper)
    trace.append(f"budget-exhausted: stopped after {budget.nodes} nodes, best found {len(dfs.best)}")
    trace.append(f"ledger-upper: beta <= {upper}")
    return ConstantRecord("beta", params, len(dfs.best), upper, "bounded", witness, trace)


# ---------------------------------------------------------------------------
# Independent brute-force oracle for s_{2m}(d)


def s_direct_small(m: int, d: int) -> ConstantRecord:
    """Exhaustive multiset search for s_{2m}(d) on tiny groups.

    Finds the longest sequence with no zero-sum subsequence of length 2m
    (every candidate extension is re-checked by the DP oracle) and returns
    that length + 1.  Multiplicities are capped at 2m-1 per element, since
    2m copies of one element already form a zero-sum subsequence.  Guarded
    to 2^d <= 16 and m <= 3.
    """
    if m < 1 or d < 1:
        raise ValueError("need m >= 1 and d >= 1")
    if (1 << d) > 16 or m > 3:
        raise ValueError("s_direct_small guard: intended for 2^d <= 16, m <= 3")
    r = 2 * m
    cap = r - 1
    size = 1 << d
    best: list[int] = []
    chosen: list[int] = []

    def extend_ok() -> bool:
        return dp_zero_sum_witness(GroupSequence(d, tuple(chosen)), r) is None

    def try_value(v: int, rk_after: int) -> None:
        # one branch per multiplicity 1..cap of v, each recursing onward
        kept = 0
        for _ in range(cap):
            chosen.append(v)
            if extend_ok():
                kept += 1
                dfs(v, rk_after)
            else:
                chosen.pop()
                break
        for _ in range(kept):
            chosen.pop()

    def dfs(last: int, rk: int) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        span = 1 << rk
        remaining_values = size - 1 - last
        if len(chosen) + cap * remaining_values <= len(best):
            return
        for v in range(last + 1, span):
            try_value(v, rk)
        if rk < d:
            try_value(span, rk + 1)

    # A longest bad sequence can be translated to contain 0 (the target
    # length 2m is even), then linearly canonicalized like the set search.
    try_value(0, 0)
    value = len(best) + 1
    witness = GroupSequence(d, tuple(best))
    return ConstantRecord(
        "s",
        {"m": m, "d": d},
        value,
        value,
        "exact",
        witness,
        [f"exhaustive-multiset-search: longest zero-sum-free sequence has length {len(best)}"],
    )
