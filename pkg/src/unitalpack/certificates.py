"""Machine-readable verification reports.

A certificate ties every checked property to a named check record with
exact tallies and (on failure) explicit witnesses.  Serialization is
canonical JSON -- sorted keys, fixed indentation, trailing newline -- so
that re-running a configuration reproduces the bytes exactly.  Wall-clock
timings are therefore never part of a certificate; the CLI writes them to
a separate sidecar file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ._version import __version__

SCHEMA_VERSION = 1


@dataclass
class CheckRecord:
    check: str
    passed: bool
    details: dict
    gating: bool = True  # non-gating records are informational only

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "passed": self.passed,
            "gating": self.gating,
            "details": self.details,
        }


@dataclass
class Certificate:
    config: dict
    checks: list[CheckRecord] = field(default_factory=list)
    tool: str = "unitalpack"
    version: str = __version__
    schema: int = SCHEMA_VERSION

    def add(self, check: str, passed: bool, gating: bool = True, **details) -> CheckRecord:
        rec = CheckRecord(check=check, passed=bool(passed), details=details, gating=gating)
        self.checks.append(rec)
        return rec

    def extend(self, other: "Certificate", prefix: str = "") -> None:
        for rec in other.checks:
            name = f"{prefix}{rec.check}" if prefix else rec.check
            self.checks.append(CheckRecord(name, rec.passed, rec.details, rec.gating))

    @property
    def passed(self) -> bool:
        """True iff every gating check passed."""
        return all(r.passed for r in self.checks if r.gating)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.checks)

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.checks if not r.passed]

    def to_dict(self) -> dict:
        return {
            "tool": self.tool,
            "version": self.version,
            "schema": self.schema,
            "config": self.config,
            "passed": self.passed,
            "checks": [r.to_dict() for r in self.checks],
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    def summary(self) -> str:
        lines = []
        for r in self.checks:
            flag = "PASS" if r.passed else "FAIL"
            extra = "" if r.gating else " (informational)"
            lines.append(f"{flag} {r.check}{extra}")
        return "\n".join(lines)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
