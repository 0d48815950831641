"""Structured pass/fail report shared by the verification routines."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tol: float | None
    info: str = ""

    @property
    def informational(self) -> bool:
        return self.tol is None

    @property
    def passed(self) -> bool:
        if self.tol is None:
            return True
        return math.isfinite(self.residual) and self.residual <= self.tol


@dataclass
class VerifyReport:
    title: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, residual: float, tol: float | None, info: str = "") -> Check:
        c = Check(name, float(residual), tol, info)
        self.checks.append(c)
        return c

    def note(self, name: str, value: float, info: str = "") -> Check:
        """Record a number that is reported but not judged."""
        return self.add(name, value, None, info)

    def extend(self, other: "VerifyReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.residual, c.tol, c.info))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "residual": c.residual,
                    "tol": c.tol,
                    "passed": c.passed,
                    **({"info": c.info} if c.info else {}),
                }
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def format_text(self) -> str:
        lines = [f"# {self.title}"]
        for c in self.checks:
            if c.informational:
                tag = "INFO"
                bound = ""
            else:
                tag = "PASS" if c.passed else "FAIL"
                bound = f" (tol {c.tol:.1e})"
            extra = f"  {c.info}" if c.info else ""
            lines.append(f"{tag:4s} {c.name}: {c.residual:.3e}{bound}{extra}")
        lines.append("ALL PASS" if self.passed else f"{len(self.failures())} FAILED")
        return "\n".join(lines)
