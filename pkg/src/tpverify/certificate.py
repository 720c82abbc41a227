from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional

from .qpoly import ZERO, QPoly


@dataclass
class Check:
    name: str
    inputs: Dict[str, Any]
    lhs: QPoly
    rhs: QPoly = ZERO
    passed: bool = True
    witness: Optional[Any] = None

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "inputs": self.inputs,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "pass": self.passed,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Certificate:
    subject: Dict[str, Any]
    checks: List[Check] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, inputs: Dict[str, Any], lhs, rhs=ZERO, passed: Optional[bool] = None, witness=None) -> Check:
        lhs, rhs = QPoly.coerce(lhs), QPoly.coerce(rhs)
        if passed is None:
            passed = lhs == rhs
        check = Check(name, inputs, lhs, rhs, bool(passed), witness if not passed else None)
        self.checks.append(check)
        return check

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def finalize(self) -> "Certificate":
        """Order checks by name, keeping input order within a name."""
        self.checks.sort(key=lambda c: c.name)
        return self

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "subject": self.subject,
            "checks": [c.to_json() for c in self.checks],
            "pass": self.passed,
        }
        if timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out

    def dumps(self, timing: bool = True) -> str:
        return json.dumps(self.to_json(timing), indent=1, sort_keys=True)

    def write(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.dumps())
            fh.write("\n")

    def summary_lines(self) -> List[str]:
        """One line per check name: PASS/FAIL with counts."""
        groups: Dict[str, List[Check]] = {}
        for c in self.checks:
            groups.setdefault(c.name, []).append(c)
        lines = []
        for name, cs in groups.items():
            bad = [c for c in cs if not c.passed]
            status = "FAIL" if bad else "PASS"
            line = f"{status} {name}: {len(cs) - len(bad)}/{len(cs)}"
            if bad:
                first = bad[0]
                line += f" (first failure {first.inputs}: lhs={first.lhs} rhs={first.rhs})"
            lines.append(line)
        return lines

    @classmethod
    def merge(cls, subject: Dict[str, Any], parts: Iterable["Certificate"]) -> "Certificate":
        cert = cls(subject)
        for p in parts:
            cert.checks.extend(p.checks)
            cert.elapsed_ms += p.elapsed_ms
        return cert.finalize()
