"""Verification reports and the polynomial comparison that feeds them."""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field

__all__ = ["VerificationReport", "compare_polys", "compare_values", "Timer", "make_report"]


@dataclass
class VerificationReport:
    identity: str
    instance: dict
    status: str  # "pass" or "fail"
    witness: dict | None = None
    elapsed: float = 0.0
    detail: str | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.status not in ("pass", "fail"):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "fail" and self.witness is None:
            self.witness = {"reason": self.detail or "unspecified failure"}

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> str:
        d = asdict(self)
        d["elapsed"] = round(self.elapsed, 6)
        if d["detail"] is None:
            del d["detail"]
        return json.dumps(d, sort_keys=True)


def _as_text(c):
    if c is None:
        return "0"
    if hasattr(c, "canonical_str"):
        return c.canonical_str()
    return str(c)


def compare_polys(lhs, rhs):
    """Return None when equal, else a witness for the first differing monomial
    in descending lex order."""
    if lhs.nvars != rhs.nvars:
        return {"reason": f"variable count {lhs.nvars} vs {rhs.nvars}"}
    keys = sorted(set(lhs.terms) | set(rhs.terms), reverse=True)
    for e in keys:
        a, b = lhs.terms.get(e), rhs.terms.get(e)
        if a is None or b is None or a != b:
            return {"monomial": list(e), "lhs": _as_text(a), "rhs": _as_text(b)}
    return None


def compare_values(lhs, rhs, label="value"):
    if lhs == rhs:
        return None
    return {"at": label, "lhs": _as_text(lhs), "rhs": _as_text(rhs)}


class Timer:
    def __init__(self):
        self.start = time.perf_counter()

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.start


def make_report(identity, instance, witness, timer, detail=None):
    return VerificationReport(
        identity=identity,
        instance=instance,
        status="pass" if witness is None else "fail",
        witness=witness,
        elapsed=timer.elapsed,
        detail=detail,
    )
