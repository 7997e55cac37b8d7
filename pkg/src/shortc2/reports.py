"""Verification reports: a named check, its worst observed error and the bound it was held to."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field


@dataclass(frozen=True)
class Report:
    name: str
    passed: bool
    max_error: float
    tolerance: float
    samples: int
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "Report":
        return cls(**data)


def combine(name: str, parts: list[Report]) -> dict:
    return {
        "suite": name,
        "passed": all(p.passed for p in parts),
        "checks": [p.to_json() for p in parts],
    }
