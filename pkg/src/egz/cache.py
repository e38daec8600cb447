"""Append-only constant cache: one tab-separated record per line.

Fields: kind, parameters, lower, upper, status, witness, trace.
Witnesses are semicolon-separated hex vectors (little-endian bit order)
or "-"; beta records store extremal sets, s records store extremal
sequences of length lower-1.  Cached values are trusted on reload only
after the witness revalidates.
"""

from __future__ import annotations

import os
from typing import Iterator

from .constants import validate_record_witness
from .gf2 import int_from_hex_le, int_to_hex_le
from .types import ConstantRecord, GroupSequence, VectorSet

__all__ = ["serialize_record", "parse_record", "append_record", "iter_records",
           "lookup_exact", "check_cache"]

_PARAM_ORDER = {
    "beta": ("W", "d"),
    "s": ("m", "d"),
    "R": ("m", "n"),
    "N": ("r", "delta"),
}


def _params_str(rec: ConstantRecord) -> str:
    return ";".join(f"{k}={rec.params[k]}" for k in _PARAM_ORDER[rec.kind])


def _witness_str(rec: ConstantRecord) -> str:
    w = rec.witness
    if w is None:
        return "-"
    if isinstance(w, VectorSet):
        return ";".join(int_to_hex_le(x, w.dim) for x in sorted(w.members))
    if isinstance(w, GroupSequence):
        return ";".join(int_to_hex_le(x, w.dim) for x in w.elements)
    return "-"


def _trace_tags(rec: ConstantRecord) -> str:
    tags = []
    for step in rec.trace:
        tag = step.split(":", 1)[0].strip().replace(",", ";").replace("\t", " ")
        if tag and (not tags or tags[-1] != tag):
            tags.append(tag)
    return ",".join(tags) if tags else "-"


def serialize_record(rec: ConstantRecord) -> str:
    return "\t".join(
        [
            rec.kind,
            _params_str(rec),
            str(rec.lower),
            str(rec.upper),
            rec.status,
            _witness_str(rec),
            _trace_tags(rec),
        ]
    )


def parse_record(line: str) -> ConstantRecord:
    parts = line.rstrip("\n").split("\t")
    if len(parts) != 7:
        raise ValueError(f"expected 7 tab-separated fields, got {len(parts)}")
    kind, params_s, lower_s, upper_s, status, witness_s, trace_s = parts
    if kind not in _PARAM_ORDER:
        raise ValueError(f"unknown kind {kind!r}")
    params: dict = {}
    for item in params_s.split(";"):
        k, _, v = item.partition("=")
        if k not in _PARAM_ORDER[kind]:
            raise ValueError(f"unexpected parameter {k!r} for kind {kind}")
        params[k] = v if k == "W" else int(v)
    lower, upper = int(lower_s), int(upper_s)
    witness = None
    if witness_s != "-":
        if kind == "beta":
            dim = params["d"]
            members = frozenset(int_from_hex_le(h, dim) for h in witness_s.split(";"))
            witness = VectorSet(dim, members)
        elif kind == "s":
            dim = params["d"]
            witness = GroupSequence(dim, tuple(int_from_hex_le(h, dim) for h in witness_s.split(";")))
        else:
            raise ValueError(f"kind {kind} records carry no witness")
    trace = [] if trace_s == "-" else trace_s.split(",")
    return ConstantRecord(kind, params, lower, upper, status, witness, trace)


def append_record(path: str, rec: ConstantRecord) -> None:
    with open(path, "a", encoding="ascii") as fh:
        fh.write(serialize_record(rec) + "\n")


def iter_records(path: str) -> Iterator[tuple[int, ConstantRecord | None, str]]:
    """Yield (line number, record or None, error message) per cache line."""
    if not os.path.exists(path):
        return
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                yield lineno, parse_record(line), ""
            except (ValueError, AssertionError) as exc:
                yield lineno, None, str(exc)


def check_cache(path: str) -> list[tuple[int, bool, str]]:
    """Revalidate every line: parse, bound sanity, witness recheck."""
    results = []
    for lineno, rec, err in iter_records(path):
        if rec is None:
            results.append((lineno, False, f"parse error: {err}"))
            continue
        if not validate_record_witness(rec):
            results.append((lineno, False, "witness failed revalidation"))
            continue
        results.append((lineno, True, rec.describe()))
    return results


def lookup_exact(path: str, kind: str, params: dict) -> ConstantRecord | None:
    """Most recent matching exact record whose witness revalidates."""
    want = {k: str(params[k]) for k in _PARAM_ORDER[kind]}
    found = None
    for _lineno, rec, _err in iter_records(path):
        if rec is None or rec.kind != kind or rec.status != "exact":
            continue
        if {k: str(rec.params[k]) for k in _PARAM_ORDER[kind]} != want:
            continue
        if validate_record_witness(rec):
            found = rec
    return found
