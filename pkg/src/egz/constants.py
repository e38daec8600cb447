"""Closed forms, reductions, and the inequality ledger for the constants.

Quantities handled: s_{2m}(d) (shortest length forcing a zero-sum
subsequence of length 2m), beta_W(d) (largest set avoiding zero-sum
subsets of sizes in W), R_{2m}(n) (least redundancy of a length-n code
with no weight-2m word), N(r, delta) (largest code length at redundancy r
and distance >= delta).

bounds_ledger composes every known inequality between these quantities by
fixed-point iteration.  Each improvement is traced with a short rule tag;
an inconsistent interval aborts loudly because all the inequalities are
theorems, so a contradiction means an implementation bug.
"""

from __future__ import annotations

import math
from typing import Any

from .codes import n_table
from .oracle import sequence_avoids
from .search import Budget, beta_search, s_direct_small  # noqa: F401 (re-export for CLI)
from .types import ConstantRecord, GroupSequence, WeightSet

__all__ = [
    "LedgerContradiction",
    "closed_form_s",
    "s_from_beta",
    "r_from_s",
    "bounds_ledger",
    "best_s_record",
    "merge_records",
]


class LedgerContradiction(AssertionError):
    """lower > upper while composing theorem inequalities: a bug."""


# ---------------------------------------------------------------------------
# Closed forms for s_{2m}(d)


def closed_form_s(m: int, d: int) -> ConstantRecord | None:
    """Exact s_{2m}(d) when a closed form applies, else None.

    Covered: d < 2m (value 2m+d); d = 2m (4m+1); d = 2m+1 split by the
    parity of m (4m+5 odd, 4m+2 even); and m = 2 with d <= 10 through the
    exact distance-5 code table (N(d,5) + 4).  Witnesses are attached
    where a validated construction of length value-1 is available.
    """
    if m < 1 or d < 1:
        raise ValueError("need m >= 1 and d >= 1")
    from .constructions import construct_extremal

    params = {"m": m, "d": d}
    if d < 2 * m:
        value = 2 * m + d
        wit = construct_extremal("gao_lower", m=m, d=d)
        return ConstantRecord(
            "s", params, value, value, "exact", wit.value,
            [f"small-dim-closed-form: s = 2m + d = {value} for d < 2m"],
        )
    if d == 2 * m:
        value = 4 * m + 1
        wit = construct_extremal("gao_lower", m=m, d=d)
        return ConstantRecord(
            "s", params, value, value, "exact", wit.value,
            [f"dim-equals-weight: s_{2*m}({d}) = 4m + 1 = {value}"],
        )
    if d == 2 * m + 1:
        if m % 2 == 1:
            value = 4 * m + 5
            # basis+ones in dimension 2m, prepend zero, double: a set of
            # size 4m+4 = value - 1 in dimension 2m+1 with no zero-sum
            # subset of size 2m
            base = construct_extremal("basis_plus_ones", d=2 * m, m=m)
            from .types import VectorSet

            with_zero = VectorSet(2 * m, frozenset(base.value.members) | {0})
            doubled = construct_extremal("doubling", aset=with_zero, m=m)
            return ConstantRecord(
                "s", params, value, value, "exact", doubled.value.to_sequence(),
                [f"dim-above-weight-odd: s_{2*m}({d}) = 4m + 5 = {value} for odd m"],
            )
        value = 4 * m + 2
        base = construct_extremal("gao_lower", m=m, d=2 * m)
        wit = construct_extremal("lift", seq=base.value, m=m)
        return ConstantRecord(
            "s", params, value, value, "exact", wit.value,
            [f"dim-above-weight-even: s_{2*m}({d}) = 4m + 2 = {value} for even m"],
        )
    if m == 2 and d <= 10:
        entry = n_table(d, 5)
        value = entry.lower + 4
        return ConstantRecord(
            "s", params, value, value, "exact", None,
            [f"weight-four-code-table: s_4({d}) = N({d},5) + 4 = {value}"],
        )
    return None


# ---------------------------------------------------------------------------
# The reduction s_{2m}(d) = 1 + max_j (beta_{2[j,m]}(d) + 2m - 2j)


def s_from_beta(m: int, d: int, budget: Budget | None = None) -> ConstantRecord:
    """Compute s_{2m}(d) from the even-run beta searches.

    Exact iff the combined bounds pin one value (in particular whenever
    every component search completed).  The trace records the maximizing
    gap index.
    """
    if m < 1 or d < 1:
        raise ValueError("need m >= 1 and d >= 1")
    lower = 0
    upper = 0
    best_j = None
    trace = []
    for j in range(1, m + 1):
        w = WeightSet.even_run(j, m)
        rec = beta_search(w, d, budget)
        gap = 2 * m - 2 * j
        if 1 + rec.lower + gap > lower:
            lower = 1 + rec.lower + gap
            best_j = j
        upper = max(upper, 1 + rec.upper + gap)
        trace.append(
            f"gap-reduction: j={j} beta_{{{w}}}({d}) in [{rec.lower},{rec.upper}] ({rec.status})"
        )
    trace.append(f"max-over-gaps: maximum attained at j={best_j}, s >= {lower}")
    status = "exact" if lower == upper else "bounded"
    return ConstantRecord("s", {"m": m, "d": d}, lower, upper, status, None, trace)


def merge_records(a: ConstantRecord, b: ConstantRecord) -> ConstantRecord:
    """Tightest combination of two bound records for the same quantity."""
    if (a.kind, a.params) != (b.kind, b.params):
        raise ValueError("cannot merge records for different quantities")
    lower = max(a.lower, b.lower)
    upper = min(a.upper, b.upper)
    if lower > upper:
        raise LedgerContradiction(
            f"records disagree on {a.describe()} vs {b.describe()}"
        )
    status = "exact" if lower == upper else "bounded"
    witness = a.witness if a.witness is not None else b.witness
    return ConstantRecord(a.kind, dict(a.params), lower, upper, status, witness,
                          list(a.trace) + list(b.trace))


def best_s_record(m: int, d: int, budget: Budget | None = None,
                  allow_search: bool = True) -> ConstantRecord:
    """Best available bounds on s_{2m}(d): closed form, else ledger + search."""
    cf = closed_form_s(m, d)
    if cf is not None:
        return cf
    rec = bounds_ledger("s", {"m": m, "d": d})
    if allow_search:
        rec = merge_records(rec, s_from_beta(m, d, budget))
    return rec


# ---------------------------------------------------------------------------
# R_{2m}(n) by bracketing between consecutive s values


def r_from_s(m: int, n: int, budget: Budget | None = None,
             allow_search: bool = True) -> ConstantRecord:
    """Least redundancy of a length-n code with no weight-2m word.

    R = d exactly when s_{2m}(d-1) <= n < s_{2m}(d); with bounded s
    records this certifies R from upper bounds below the bracket and
    lower bounds above it.
    """
    if m < 1:
        raise ValueError("need m >= 1")
    if n < 2 * m - 1:
        raise ValueError("need n >= 2m - 1 for a meaningful bracketing")
    if allow_search and budget is None:
        budget = Budget(max_nodes=500_000, max_seconds=30)
    trace = []
    records = {}

    def s_rec(dd: int) -> ConstantRecord:
        if dd not in records:
            if dd == 0:
                # over the trivial group every length-2m window is zero-sum
                records[dd] = ConstantRecord(
                    "s", {"m": m, "d": 0}, 2 * m, 2 * m, "exact", None,
                    ["zero-dim-group: s = 2m over the trivial group"],
                )
            else:
                records[dd] = best_s_record(m, dd, budget, allow_search)
        return records[dd]

    r_lower = None  # min d with upper(s(d)) > n  => R >= that d
    d = 0
    while True:
        rec = s_rec(d)
        trace.append(f"bracket: s_{2*m}({d}) in [{rec.lower},{rec.upper}] ({rec.status})")
        if r_lower is None and rec.upper > n:
            r_lower = d
        if rec.lower > n:
            r_upper = d
            break
        d += 1
        if d > n + 2 * m + 2:  # the gao floor makes this unreachable
            raise AssertionError("bracketing failed to terminate")
    status = "exact" if r_lower == r_upper else "bounded"
    trace.append(
        f"redundancy-bracket: s_{2*m}({r_upper - 1}) <= {n} < s_{2*m}({r_upper})"
        if status == "exact"
        else f"redundancy-bracket: R in [{r_lower},{r_upper}]"
    )
    return ConstantRecord("R", {"m": m, "n": n}, r_lower, r_upper, status, None, trace)


# ---------------------------------------------------------------------------
# The bounds ledger


class _Bound:
    __slots__ = ("lo", "hi", "steps")

    def __init__(self, lo: int, hi: int):
        self.lo = lo
        self.hi = hi
        self.steps: list[str] = []


def _wkey(sizes) -> tuple[int, ...]:
    """Canonical forbidden-size key for *sets*: size 2 never binds."""
    return tuple(sorted(w for w in set(sizes) if w != 2))


def _skey(m: int, d: int):
    return ("s", m, d)


def _bkey(sizes, d: int):
    return ("beta", _wkey(sizes), d)


def _nkey(r: int, delta: int):
    return ("N", r, delta)


class _Ledger:
    def __init__(self, ms: list[int], dmax: int, extra_beta_keys=()):
        self.ms = sorted(set(ms))
        self.dmax = dmax
        self.store: dict[Any, _Bound] = {}
        self.changed = False
        for m in self.ms:
            for d in range(0, dmax + 1):
                # any sequence shorter than 2m trivially has no length-2m window
                self.store[_skey(m, d)] = _Bound(2 * m, (1 << d) + 2 * m - 1)
        for m in self.ms:
            for d in range(1, dmax + 1):
                for j in range(1, m + 1):
                    self.store.setdefault(
                        _bkey(range(2 * j, 2 * m + 1, 2), d), _Bound(1, 1 << d)
                    )
                self.store.setdefault(_bkey(range(1, 2 * m + 1), d), _Bound(1, 1 << d))
        for key in extra_beta_keys:
            self.store.setdefault(key, _Bound(1, 1 << key[2]))
        for r in range(1, max(dmax, 14) + 1):
            self.store.setdefault(_nkey(r, 3), _Bound(1, 1 << 62))
            if 4 <= r <= 14:
                self.store.setdefault(_nkey(r, 5), _Bound(1, 1 << 62))

    def raise_lo(self, key, v: int, step: str) -> None:
        b = self.store.get(key)
        if b is None or v <= b.lo:
            return
        b.lo = v
        b.steps.append(step)
        self.changed = True
        if b.lo > b.hi:
            raise LedgerContradiction(f"{key}: {step} pushed lower above upper ({b.lo} > {b.hi}); last steps: {b.steps[-2:]}")

    def drop_hi(self, key, v: int, step: str) -> None:
        b = self.store.get(key)
        if b is None or v >= b.hi:
            return
        b.hi = v
        b.steps.append(step)
        self.changed = True
        if b.lo > b.hi:
            raise LedgerContradiction(f"{key}: {step} pushed upper below lower ({b.lo} > {b.hi}); last steps: {b.steps[-2:]}")

    def lo(self, key) -> int:
        return self.store[key].lo

    def hi(self, key) -> int:
        return self.store[key].hi

    # -- rules ------------------------------------------------------------

    def run(self) -> None:
        while True:
            self.changed = False
            self._n_rules()
            self._beta_rules()
            self._s_rules()
            if not self.changed:
                return

    def _n_rules(self) -> None:
        for key, b in list(self.store.items()):
            if key[0] != "N":
                continue
            _, r, delta = key
            if delta == 3:
                v = (1 << r) - 1
                self.raise_lo(key, v, f"single-error-closed-form: N({r},3) = 2^{r} - 1")
                self.drop_hi(key, v, f"single-error-closed-form: N({r},3) = 2^{r} - 1")
            elif delta == 5:
                e = n_table(r, 5)
                self.raise_lo(key, e.lower, f"code-table: N({r},5) >= {e.lower}")
                self.drop_hi(key, e.upper, f"code-table: N({r},5) <= {e.upper}")
                n = 1
                while 1 + (n + 1) + (n + 1) * n // 2 <= (1 << r):
                    n += 1
                self.drop_hi(key, n, f"hamming-bound: N({r},5) <= {n}")
                if r % 2 == 0:
                    v = (1 << (r // 2)) - 1
                    self.raise_lo(key, v, f"bch-code: N({r},5) >= 2^{r // 2} - 1")

    def _beta_rules(self) -> None:
        dmax = self.dmax
        for key in [k for k in self.store if k[0] == "beta"]:
            _, sizes, d = key
            size = 1 << d
            eff = tuple(w for w in sizes if w <= size)
            if not eff:
                self.raise_lo(key, size, "no-effective-constraint: beta = 2^d")
                self.drop_hi(key, size, "no-effective-constraint: beta = 2^d")
            elif eff == (1,):
                self.raise_lo(key, size - 1, "nonzero-only: beta = 2^d - 1")
                self.drop_hi(key, size - 1, "nonzero-only: beta = 2^d - 1")
        for m in self.ms:
            for d in range(1, dmax + 1):
                size = 1 << d
                full = _bkey(range(1, 2 * m + 1), d)
                run1 = _bkey(range(2, 2 * m + 1, 2), d)
                single = _bkey([2 * m], d)

                # basis-code-equivalence: beta_[1,2m](d) = N(d, 2m+1)
                nk = None
                if m == 1:
                    nk = _nkey(d, 3)
                elif m == 2 and 4 <= d <= 14:
                    nk = _nkey(d, 5)
                if nk is not None and nk in self.store:
                    self.raise_lo(full, self.lo(nk),
                                  f"basis-code-equivalence: beta = N({d},{2*m+1}) >= {self.lo(nk)}")
                    self.drop_hi(full, self.hi(nk),
                                 f"basis-code-equivalence: beta = N({d},{2*m+1}) <= {self.hi(nk)}")

                # prepend-zero: beta_2[1,m](d) = beta_[1,2m](d) + 1
                self.raise_lo(run1, self.lo(full) + 1, "prepend-zero: even-run beta = full-run beta + 1")
                self.drop_hi(run1, self.hi(full) + 1, "prepend-zero: even-run beta = full-run beta + 1")
                self.raise_lo(full, self.lo(run1) - 1, "prepend-zero: full-run beta = even-run beta - 1")
                self.drop_hi(full, self.hi(run1) - 1, "prepend-zero: full-run beta = even-run beta - 1")

                # basis-vector family lower bounds for the full run
                self.raise_lo(full, d, "basis-vectors: unit vectors avoid all zero-sum subsets")
                if d >= 2 * m:
                    self.raise_lo(full, d + 1, "basis-plus-ones: adding the all-ones vector still avoids sizes <= 2m")
                if d >= 3 * m:
                    self.raise_lo(full, d + 2, "two-heavy-vectors: two weight-2m vectors with weight-2m sum extend the basis")

                # doubling-cap: beta_2[1,m](d) <= max(9, 2 beta_2[1,m](d-1) - 4).
                # The argument removes an unbalanced dual word of a code
                # without weight-2 and weight-4 words, so it needs m >= 2.
                if d >= 2 and m >= 2:
                    prev = _bkey(range(2, 2 * m + 1, 2), d - 1)
                    cap = max(9, 2 * self.hi(prev) - 4)
                    self.drop_hi(run1, cap, f"halving-cap: beta <= max(9, 2 beta(d-1) - 4) = {cap}")

                # monotone in the forbidden-size set (more sizes, smaller beta)
                keys_d = [k for k in self.store if k[0] == "beta" and k[2] == d]
                for k1 in keys_d:
                    s1 = set(k1[1])
                    for k2 in keys_d:
                        if k1 is k2:
                            continue
                        if s1 <= set(k2[1]):
                            self.raise_lo(k1, self.lo(k2), "fewer-forbidden-sizes: superset constraint transfers its lower bound")
                            self.drop_hi(k2, self.hi(k1), "fewer-forbidden-sizes: subset constraint transfers its upper bound")

                # near-group closed form for a single even size
                if (1 << (d - 1)) <= 2 * m < size:
                    v = 2 * m if m == (1 << (d - 1)) - 2 else 2 * m + 2
                    self.raise_lo(single, v, f"near-group-closed-form: beta_{2*m}({d}) = {v}")
                    self.drop_hi(single, v, f"near-group-closed-form: beta_{2*m}({d}) = {v}")
                if 2 * m > size:
                    self.raise_lo(single, size, "sizes-exceed-group: no subset is big enough, beta = 2^d")

                # attach-coordinate doubling (odd m): beta_2m(d) >= 2 beta_2[1,m](d-1)
                if m % 2 == 1 and d >= 2:
                    prev = _bkey(range(2, 2 * m + 1, 2), d - 1)
                    self.raise_lo(single, 2 * self.lo(prev),
                                  f"attach-coordinate-double: beta_{2*m}({d}) >= 2 beta_even-run({d-1}) = {2 * self.lo(prev)}")

                # shifted doubling: beta_{2(b-mm)}(d) >= 2b for odd mm, even b <= beta_2[1,mm](d-1)
                if m % 2 == 1 and d >= 2:
                    for mm in range(1, m + 1, 2):
                        b = m + mm
                        if b % 2 != 0 or b <= mm:
                            continue
                        prev = _bkey(range(2, 2 * mm + 1, 2), d - 1)
                        if prev in self.store and self.lo(prev) >= b:
                            self.raise_lo(single, 2 * b,
                                          f"shifted-double: even {b}-set doubled avoids size {2*m}, beta >= {2*b}")

                # repeated-element argument raises beta when the s gap is wide
                if m - 1 in self.ms and m >= 2:
                    sk = _skey(m, d)
                    sk_prev = _skey(m - 1, d)
                    if self.lo(sk) - self.hi(sk_prev) >= 3:
                        self.raise_lo(single, self.lo(sk) - 1,
                                      "forced-repeat: a wide s gap forces the extremal sequence to be a set")

    def _s_rules(self) -> None:
        dmax = self.dmax
        for m in self.ms:
            for d in range(1, dmax + 1):
                sk = _skey(m, d)
                single = _bkey([2 * m], d)
                run1 = _bkey(range(2, 2 * m + 1, 2), d)

                self.raise_lo(sk, 2 * m + d, "zeros-and-basis: 2m-1 zeros plus the basis avoid zero-sum windows")
                if 2 * m <= d:
                    self.raise_lo(sk, 2 * m + d + 1, "plus-all-ones: the all-ones vector extends the construction")
                self.raise_lo(sk, self.lo(_skey(m, d - 1)) + 1, "append-coordinate: lifting adds one to the lower bound")
                if d + 1 <= dmax:
                    self.drop_hi(sk, self.hi(_skey(m, d + 1)) - 1, "append-coordinate: the lift bounds s from the dimension above")

                if d < 2 * m:
                    self.raise_lo(sk, 2 * m + d, "small-dim: s = 2m + d")
                    self.drop_hi(sk, 2 * m + d, "small-dim: s = 2m + d")
                if d == 2 * m:
                    self.raise_lo(sk, 4 * m + 1, "dim-equals-weight: s = 4m + 1")
                    self.drop_hi(sk, 4 * m + 1, "dim-equals-weight: s = 4m + 1")
                if d == 2 * m + 1:
                    v = 4 * m + 5 if m % 2 == 1 else 4 * m + 2
                    tag = "dim-above-weight-odd" if m % 2 == 1 else "dim-above-weight-even"
                    self.raise_lo(sk, v, f"{tag}: s = {v}")
                    self.drop_hi(sk, v, f"{tag}: s = {v}")

                if m == 2 and 4 <= d <= 14:
                    nk = _nkey(d, 5)
                    self.raise_lo(sk, self.lo(nk) + 4, f"weight-four-code: s_4 = N({d},5) + 4")
                    self.drop_hi(sk, self.hi(nk) + 4, f"weight-four-code: s_4 = N({d},5) + 4")

                if m == 3 and d >= 3:
                    self.raise_lo(sk, self.lo(single) + 1, "weight-six-tie: s_6 = beta_6 + 1")
                    self.drop_hi(sk, self.hi(single) + 1, "weight-six-tie: s_6 = beta_6 + 1")
                    self.raise_lo(single, self.lo(sk) - 1, "weight-six-tie: beta_6 = s_6 - 1")
                    self.drop_hi(single, self.hi(sk) - 1, "weight-six-tie: beta_6 = s_6 - 1")

                # the two-sided sandwich between s and the single-size beta
                self.raise_lo(sk, self.lo(single) + 1, "sandwich: s >= beta + 1")
                self.drop_hi(sk, self.hi(single) + 2 * m - 1, "sandwich: s <= beta + 2m - 1")
                self.raise_lo(single, self.lo(sk) - (2 * m - 1), "sandwich: beta >= s - 2m + 1")
                self.drop_hi(single, self.hi(sk) - 1, "sandwich: beta <= s - 1")

                # the gap-maximum reduction, both directions
                best_lo = 0
                best_hi = 0
                for j in range(1, m + 1):
                    bk = _bkey(range(2 * j, 2 * m + 1, 2), d)
                    gap = 2 * m - 2 * j
                    best_lo = max(best_lo, self.lo(bk) + gap)
                    best_hi = max(best_hi, self.hi(bk) + gap)
                self.raise_lo(sk, 1 + best_lo, "max-over-gaps: s = 1 + max_j (beta_even-run + 2m - 2j)")
                self.drop_hi(sk, 1 + best_hi, "max-over-gaps: s = 1 + max_j (beta_even-run + 2m - 2j)")


def bounds_ledger(kind: str, params: dict[str, Any],
                  extra_exact: list[ConstantRecord] | None = None) -> ConstantRecord:
    """Best-known [lower, upper] for a quantity by fixed-point iteration.

    extra_exact lets callers feed already-computed exact records (for
    example revalidated cache entries) into the fixed point.
    """
    if kind == "N":
        r, delta = params["r"], params["delta"]
        e = n_table(r, delta)
        status = "exact" if e.is_exact else "bounded"
        return ConstantRecord("N", {"r": r, "delta": delta}, e.lower, e.upper, status,
                              None, [f"code-table: N({r},{delta}) in [{e.lower},{e.upper}]"])
    if kind == "R":
        m, n = params["m"], params["n"]
        rec = r_from_s(m, n, allow_search=False)
        _check_forbidden_weight_facts(m, n, rec)
        return rec

    if kind == "s":
        m, d = params["m"], params["d"]
        query = _skey(m, d)
        ms = [m] + ([m - 1] if m >= 2 else [])
        extra = ()
    elif kind == "beta":
        w: WeightSet = params["W"]
        d = params["d"]
        sizes = _wkey(w.sizes)
        if not sizes:
            return ConstantRecord("beta", {"W": str(w), "d": d}, 1 << d, 1 << d, "exact",
                                  None, ["no-effective-constraint: beta = 2^d"])
        if sizes == (1,):
            v = (1 << d) - 1
            return ConstantRecord("beta", {"W": str(w), "d": d}, v, v, "exact",
                                  None, ["nonzero-only: beta = 2^d - 1"])
        m = max(sizes) // 2 if max(sizes) % 2 == 0 else (max(sizes) + 1) // 2
        m = max(m, 1)
        query = ("beta", sizes, d)
        ms = list(range(1, m + 1))
        extra = (query,)
    else:
        raise ValueError(f"unknown ledger kind {kind!r}")

    ledger = _Ledger(ms, d, extra_beta_keys=extra)
    if extra_exact:
        for rec in extra_exact:
            key = _record_key(rec)
            if key in ledger.store and rec.is_exact:
                ledger.raise_lo(key, rec.lower, "cached-exact: revalidated stored value")
                ledger.drop_hi(key, rec.upper, "cached-exact: revalidated stored value")
    ledger.run()
    bound = ledger.store[query]
    status = "exact" if bound.lo == bound.hi else "bounded"
    if kind == "s":
        out_params: dict[str, Any] = {"m": m, "d": d}
    else:
        out_params = {"W": str(params["W"]), "d": d}
    return ConstantRecord(kind, out_params, bound.lo, bound.hi, status, None, list(bound.steps))


def _record_key(rec: ConstantRecord):
    if rec.kind == "s":
        return _skey(rec.params["m"], rec.params["d"])
    if rec.kind == "beta":
        sizes = [int(x) for x in str(rec.params["W"]).split(",")]
        return ("beta", _wkey(sizes), rec.params["d"])
    if rec.kind == "N":
        return _nkey(rec.params["r"], rec.params["delta"])
    return None


def _check_forbidden_weight_facts(m: int, n: int, rec: ConstantRecord) -> None:
    """Cross-check the bracketing result against the direct redundancy facts."""
    expected = None
    if 2 * m - 1 <= n <= 4 * m - 1:
        expected = n - 2 * m + 1
        tag = "forbidden-weight-low-range: R = n - 2m + 1"
    elif n == 4 * m:
        expected = 2 * m
        tag = "forbidden-weight-4m: R(4m) = 2m"
    elif n == 4 * m + 1:
        expected = 2 * m + 1
        tag = "forbidden-weight-4m1: R(4m+1) = 2m + 1"
    elif m % 2 == 1 and 4 * m + 2 <= n <= 4 * m + 4:
        expected = 2 * m + 1
        tag = "forbidden-weight-odd-plateau: R = 2m + 1"
    elif m % 2 == 1 and 4 * m + 5 <= n <= 4 * m + 6:
        expected = 2 * m + 2
        tag = "forbidden-weight-odd-step: R = 2m + 2"
    elif m % 2 == 0 and n == 4 * m + 2:
        expected = 2 * m + 2
        tag = "forbidden-weight-even-step: R = 2m + 2"
    if expected is None:
        return
    if not (rec.lower <= expected <= rec.upper):
        raise LedgerContradiction(
            f"R_{2*m}({n}): bracketing [{rec.lower},{rec.upper}] conflicts with {tag}"
        )
    if rec.lower != expected:
        rec.trace.append(f"{tag} = {expected}")
        rec.lower = expected
        rec.upper = expected
        rec.status = "exact"


def validate_record_witness(rec: ConstantRecord) -> bool:
    """Independent revalidation of the witness stored in a record."""
    from .types import VectorSet

    if rec.witness is None:
        return True
    if rec.kind == "beta":
        w = rec.witness
        if not isinstance(w, VectorSet):
            return False
        if len(w) != rec.lower:
            return False
        sizes = [int(x) for x in str(rec.params["W"]).split(",")]
        return sequence_avoids(w.to_sequence(), [x for x in sizes if x != 2])
    if rec.kind == "s":
        w = rec.witness
        if not isinstance(w, GroupSequence):
            return False
        if len(w) != rec.lower - 1:
            return False
        return sequence_avoids(w, [2 * rec.params["m"]])
    return True
