"""
Pentapod feature — necessary conditions for pods of mobility ≥ 2 and the
camera-image comparison of platform and base.

Public API:
    from features.pentapod import Pentapod, necessary_condition_report
"""

from features.pentapod.conditions import (
    check_condition_a,
    check_condition_b,
    check_condition_c,
    check_condition_d,
)
from features.pentapod.models import CAVEAT, ConditionReport, Pentapod
from features.pentapod.report import camera_check, necessary_condition_report

__all__ = [
    "CAVEAT", "ConditionReport", "Pentapod",
    "camera_check", "check_condition_a", "check_condition_b", "check_condition_c",
    "check_condition_d", "necessary_condition_report",
]
