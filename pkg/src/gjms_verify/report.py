"""Verification reports.

A report is an ordered list of entries, one per identity instance. Entries
are appended in a deterministic order by the checks themselves, so the same
configuration always yields the same report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

PASS = "pass"
FAIL = "fail"
FLAGGED = "flagged"
STATUSES = (PASS, FAIL, FLAGGED)

SIGN_CONVENTION = "-Delta is non-negative; delta d = -Delta"


def _difference(lhs: Any, rhs: Any):
    from .exact import MultiPoly, TruncSeries

    if isinstance(lhs, TruncSeries) or isinstance(rhs, TruncSeries):
        return lhs - rhs
    if isinstance(lhs, MultiPoly) or isinstance(rhs, MultiPoly):
        return MultiPoly.coerce(lhs) - MultiPoly.coerce(rhs)
    return Fraction(lhs) - Fraction(rhs)


def _is_zero(value) -> bool:
    if hasattr(value, "is_zero"):
        return value.is_zero()
    return value == 0


def _render(value) -> str:
    if hasattr(value, "to_list"):
        return "[" + ", ".join(value.to_list()) + "]"
    return str(value)


@dataclass
class Entry:
    identity: str
    anchor: str
    params: dict[str, Any]
    status: str
    witness: str | None = None
    detail: str | None = None

    def to_dict(self) -> dict[str, Any]:
        out = {
            "identity": self.identity,
            "anchor": self.anchor,
            "params": {k: _jsonable(v) for k, v in self.params.items()},
            "status": self.status,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail is not None:
            out["detail"] = self.detail
        return out


def _jsonable(value):
    if isinstance(value, (int, str, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return str(value)


@dataclass
class VerificationReport:
    suite: str
    entries: list[Entry] = field(default_factory=list)
    config: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def add(self, identity: str, anchor: str, params: dict, status: str,
            witness: str | None = None, detail: str | None = None) -> Entry:
        if status not in STATUSES:
            raise ValueError(f"bad status {status!r}")
        entry = Entry(identity, anchor, dict(params), status, witness, detail)
        self.entries.append(entry)
        return entry

    def check_equal(self, identity: str, anchor: str, params: dict, lhs, rhs) -> bool:
        """Record exact equality of ``lhs`` and ``rhs``; witness is the difference."""
        diff = _difference(lhs, rhs)
        ok = _is_zero(diff)
        self.add(identity, anchor, params, PASS if ok else FAIL,
                 witness=None if ok else _render(diff))
        return ok

    def check_true(self, identity: str, anchor: str, params: dict, ok: bool,
                   detail: str | None = None) -> bool:
        self.add(identity, anchor, params, PASS if ok else FAIL,
                 witness=None if ok else (detail or "condition is false"))
        return ok

    def expect_mismatch(self, identity: str, anchor: str, params: dict, lhs, rhs,
                        detail: str) -> bool:
        """A formula variant known to disagree: flagged when it does disagree."""
        diff = _difference(lhs, rhs)
        if _is_zero(diff):
            self.add(identity, anchor, params, FAIL,
                     witness="variant unexpectedly consistent", detail=detail)
            return False
        self.add(identity, anchor, params, FLAGGED, witness=_render(diff), detail=detail)
        return True

    def note(self, text: str) -> None:
        self.notes.append(text)

    def extend(self, other: VerificationReport) -> None:
        self.entries.extend(other.entries)
        self.notes.extend(other.notes)

    # summary ------------------------------------------------------------
    def counts(self) -> dict[str, int]:
        counts = {status: 0 for status in STATUSES}
        for entry in self.entries:
            counts[entry.status] += 1
        counts["total"] = len(self.entries)
        return counts

    @property
    def passed(self) -> bool:
        return all(e.status != FAIL for e in self.entries)

    def failures(self) -> list[Entry]:
        return [e for e in self.entries if e.status == FAIL]

    def flagged(self) -> list[Entry]:
        return [e for e in self.entries if e.status == FLAGGED]

    def by_identity(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for e in self.entries:
            slot = out.setdefault(e.identity, {s: 0 for s in STATUSES})
            slot[e.status] += 1
        return out

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema": 1,
            "suite": self.suite,
            "convention": SIGN_CONVENTION,
            "config": {k: _jsonable(v) for k, v in self.config.items()},
            "status": PASS if self.passed else FAIL,
            "summary": self.counts(),
            "notes": list(self.notes),
            "entries": [e.to_dict() for e in self.entries],
        }
