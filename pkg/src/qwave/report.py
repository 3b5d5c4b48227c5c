"""Verification case records shared by all suites."""

from __future__ import annotations

from dataclasses import dataclass

PASS, FAIL, POLE = "pass", "fail", "pole"


@dataclass(frozen=True)
class Case:
    id: str
    status: str
    witness: str | None = None

    def to_json(self) -> dict:
        return {"id": self.id, "status": self.status, "witness": self.witness}


def check(case_id: str, ok: bool, witness=None) -> Case:
    return Case(case_id, PASS if ok else FAIL, None if ok else witness)


def all_pass(cases) -> bool:
    return all(c.status != FAIL for c in cases)


def failures(cases) -> list:
    return [c for c in cases if c.status == FAIL]
