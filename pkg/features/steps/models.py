"""
Data models for the steps feature.

A Step is one tracked unit of work inside a command run (a fiber search, a
sign resolution, a point placement). StepStatus follows the step through
its life cycle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class StepStatus(str, Enum):
    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"
    SKIPPED = "skipped"


@dataclass
class Step:
    """A single tracked step of a run."""
    id: str
    name: str
    category: str
    status: StepStatus = StepStatus.PENDING
    started_at: str | None = None
    completed_at: str | None = None
    duration_sec: float | None = None
    input_summary: str = ""
    output_summary: str = ""
    error: str | None = None
    metadata: dict = field(default_factory=dict)

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "id": self.id,
            "name": self.name,
            "category": self.category,
            "status": self.status.value,
            "input_summary": self.input_summary,
            "output_summary": self.output_summary,
            "error": self.error,
            "metadata": self.metadata,
        }
        if timing:
            out.update(started_at=self.started_at, completed_at=self.completed_at,
                       duration_sec=self.duration_sec)
        return out
