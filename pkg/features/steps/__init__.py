"""
Steps feature — tracks the units of work of a command run.

Public API:
    from features.steps import StepTracker, Step, StepStatus
"""

from features.steps.models import Step, StepStatus
from features.steps.tracker import StepTracker

__all__ = ["Step", "StepStatus", "StepTracker"]
