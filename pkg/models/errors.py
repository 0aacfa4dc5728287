"""
Error hierarchy shared by every feature package.

Precondition errors mean the input is outside an operation's domain and map
to CLI exit code 3. Inconsistency errors mean two internal computations
disagree (or an input that should be consistent is not) and map to exit 4.
"""

from __future__ import annotations

from typing import Any


class MoebiusError(Exception):
    """Base class. `details` is merged into the machine-readable payload."""

    exit_code = 1

    def __init__(self, message: str = "", **details: Any):
        super().__init__(message or self.__class__.__name__)
        self.message = message or self.__class__.__name__
        self.details = details

    def to_dict(self) -> dict:
        payload = {"error": self.__class__.__name__, "message": self.message}
        payload.update(self.details)
        return payload


# ── Precondition violations (exit 3) ─────────────────────────────────

class PreconditionError(MoebiusError):
    exit_code = 3


class InvalidDirection(PreconditionError):
    pass


class NotOnConic(PreconditionError):
    pass


class InvalidConfig(PreconditionError):
    pass


class ToleranceAmbiguity(PreconditionError):
    """Classification flips between two tags inside the ambiguity band."""

    def __init__(self, strict_tag: str, loose_tag: str, **details: Any):
        super().__init__(
            f"classification is ambiguous between {strict_tag} and {loose_tag}",
            candidates=[strict_tag, loose_tag], **details,
        )
        self.candidates = (strict_tag, loose_tag)


class DegenerateFit(PreconditionError):
    pass


class NotPlanar(PreconditionError):
    pass


class DegenerateTuple(PreconditionError):
    pass


class NotInU(PreconditionError):
    pass


class DegenerateDirection(PreconditionError):
    pass


class DegenerateParameter(PreconditionError):
    pass


class ParallelLines(PreconditionError):
    pass


class ConstantCamera(PreconditionError):
    pass


class PreconditionViolated(PreconditionError):
    pass


# ── Internal inconsistencies (exit 4) ────────────────────────────────

class InconsistencyError(MoebiusError):
    exit_code = 4


class CalibrationFailure(InconsistencyError):
    pass


class DegreeInconsistency(InconsistencyError):
    pass


class AmbiguousFiber(InconsistencyError):
    pass


class InconsistentDirections(InconsistencyError):
    pass
