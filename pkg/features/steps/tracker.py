"""
Step Tracker — records the chain of steps of one command run.

Step ids are sequential within a run so that outputs without timing fields
are reproducible. Wall-clock timestamps and durations are kept for run logs.
"""

from __future__ import annotations

import logging
import time
from datetime import datetime, timezone

from features.steps.models import Step, StepStatus

log = logging.getLogger(__name__)


class StepTracker:
    """Manages the chain of steps for a single run."""

    def __init__(self, run_id: str):
        self.run_id = run_id
        self.steps: list[Step] = []
        self._active: dict[str, float] = {}  # step id → start time

    def create(self, name: str, category: str, input_summary: str = "") -> Step:
        step = Step(
            id=f"step-{len(self.steps) + 1:02d}",
            name=name,
            category=category,
            input_summary=input_summary,
        )
        self.steps.append(step)
        log.info("[STEP] Created: %s — %s (%s)", step.id, name, category)
        return step

    def start(self, step: Step) -> None:
        step.status = StepStatus.RUNNING
        step.started_at = datetime.now(timezone.utc).isoformat()
        self._active[step.id] = time.monotonic()
        log.info("[STEP] Started: %s — %s", step.id, step.name)

    def begin(self, name: str, category: str, input_summary: str = "") -> Step:
        """create + start."""
        step = self.create(name, category, input_summary)
        self.start(step)
        return step

    def complete(self, step: Step, output_summary: str = "", metadata: dict | None = None) -> None:
        step.status = StepStatus.COMPLETED
        step.completed_at = datetime.now(timezone.utc).isoformat()
        step.output_summary = output_summary
        if metadata:
            step.metadata.update(metadata)
        self._stop_clock(step)
        log.info("[STEP] Completed: %s — %s (%.2fs)", step.id, step.name, step.duration_sec or 0)

    def fail(self, step: Step, error: str) -> None:
        step.status = StepStatus.FAILED
        step.completed_at = datetime.now(timezone.utc).isoformat()
        step.error = error
        self._stop_clock(step)
        log.error("[STEP] Failed: %s — %s: %s", step.id, step.name, error)

    def skip(self, step: Step, reason: str = "") -> None:
        step.status = StepStatus.SKIPPED
        step.output_summary = reason
        log.info("[STEP] Skipped: %s — %s: %s", step.id, step.name, reason)

    def _stop_clock(self, step: Step) -> None:
        start = self._active.pop(step.id, None)
        if start is not None:
            step.duration_sec = round(time.monotonic() - start, 4)

    def to_list(self, timing: bool = True) -> list[dict]:
        return [s.to_dict(timing=timing) for s in self.steps]

    def summary(self) -> dict:
        statuses: dict[str, int] = {}
        for s in self.steps:
            statuses[s.status.value] = statuses.get(s.status.value, 0) + 1
        total_duration = sum(s.duration_sec or 0 for s in self.steps)
        return {
            "run_id": self.run_id,
            "total_steps": len(self.steps),
            "statuses": statuses,
            "total_duration_sec": round(total_duration, 4),
        }
