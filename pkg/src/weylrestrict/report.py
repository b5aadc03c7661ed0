"""Check results shared by every verification routine."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "PASS"
FAIL = "FAIL"
SKIPPED = "SKIPPED"


@dataclass
class Report:
    check: str
    params: dict[str, Any]
    status: str
    details: dict[str, Any] = field(default_factory=dict)
    witness: Any = None
    seed: int | None = None
    seconds: float | None = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self, timing: bool = False) -> dict[str, Any]:
        out = {
            "check": self.check,
            "params": self.params,
            "status": self.status,
            "details": self.details,
            "witness": self.witness,
            "seed": self.seed,
        }
        if timing and self.seconds is not None:
            out["seconds"] = round(self.seconds, 4)
        return out


def verdict(ok: bool) -> str:
    return PASS if ok else FAIL
