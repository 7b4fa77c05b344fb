"""Verification reports.

Every verifier returns a Report: an ordered list of check records, each
carrying a stable id, a human-readable statement of the claim being
checked, the inputs, a status and (on failure) a witness payload.
Statuses: ``pass``, ``fail``, ``inconclusive`` (symbol collapsed to
zero, nothing can be concluded), ``flagged`` (observation recorded, not
asserted).  A report is successful iff it contains no ``fail`` record.
"""

import json
from dataclasses import dataclass, field

SCHEMA = "bethe-lab-report/1"

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
FLAGGED = "flagged"


@dataclass
class CheckRecord:
    check_id: str
    claim: str
    inputs: dict
    status: str
    witness: object = None

    def to_json(self):
        out = {
            "id": self.check_id,
            "claim": self.claim,
            "inputs": self.inputs,
            "status": self.status,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    title: str
    records: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, check_id, claim, inputs, ok, witness=None):
        status = PASS if ok else FAIL
        self.records.append(CheckRecord(check_id, claim, dict(inputs), status, witness))
        return ok

    def add_status(self, check_id, claim, inputs, status, witness=None):
        self.records.append(CheckRecord(check_id, claim, dict(inputs), status, witness))

    def note(self, text):
        self.notes.append(text)

    def extend(self, other):
        self.records.extend(other.records)
        self.notes.extend(other.notes)

    @property
    def passed(self):
        return all(r.status != FAIL for r in self.records)

    def counts(self):
        out = {}
        for r in self.records:
            out[r.status] = out.get(r.status, 0) + 1
        return out

    def failures(self):
        return [r for r in self.records if r.status == FAIL]

    def to_json(self):
        return {
            "schema": SCHEMA,
            "title": self.title,
            "passed": self.passed,
            "counts": self.counts(),
            "notes": list(self.notes),
            "records": [r.to_json() for r in sorted(self.records, key=lambda r: r.check_id)],
        }

    def render(self):
        lines = [f"== {self.title}: {'PASS' if self.passed else 'FAIL'} {self.counts()}"]
        for r in sorted(self.records, key=lambda r: r.check_id):
            lines.append(f"  [{r.status.upper():12s}] {r.check_id}: {r.claim}")
        return "\n".join(lines)


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
