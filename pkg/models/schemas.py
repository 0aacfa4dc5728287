"""
Pydantic models for the JSON inputs of the CLI.

Coordinates may be JSON numbers, decimal strings or "p/q" strings. A
configuration whose every coordinate is an integer or a string keeps its
exact rational values; any double makes it a float configuration.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Annotated, Union

from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, field_validator

from features.geometry.models import PointConfig
from features.moduli.models import M5Point
from features.pentapod.models import Pentapod
from utils.rational import parse_scalar

Scalar = Union[int, float, str]
Row = Annotated[list[Scalar], Field(min_length=3, max_length=3)]
ComplexPair = Annotated[list[float], Field(min_length=2, max_length=2)]


class PointConfigModel(BaseModel):
    """{"label": string?, "points": [[x, y, z], …]}"""
    model_config = ConfigDict(extra="forbid", title="PointConfig")

    label: str | None = None
    points: list[Row] = Field(min_length=4)

    @field_validator("points")
    @classmethod
    def _coordinates_parse(cls, rows: list[list[Scalar]]) -> list[list[Scalar]]:
        for row in rows:
            for value in row:
                parse_scalar(value)
        return rows

    def to_config(self, distinct: bool = True, label: str | None = None) -> PointConfig:
        parsed = [[parse_scalar(v) for v in row] for row in self.points]
        label = self.label if self.label is not None else label
        if all(exact is not None for row in parsed for _, exact in row):
            return PointConfig.from_rationals([[exact for _, exact in row] for row in parsed],
                                              label=label, distinct=distinct)
        return PointConfig.from_array([[x for x, _ in row] for row in parsed], label=label, distinct=distinct)


class PentapodModel(BaseModel):
    """{"platform": PointConfig, "base": PointConfig, "leg_lengths": [d1, …]?}"""
    model_config = ConfigDict(extra="forbid", title="Pentapod")

    platform: PointConfigModel
    base: PointConfigModel
    leg_lengths: list[PositiveFloat] | None = None

    def to_pentapod(self) -> Pentapod:
        return Pentapod(
            platform=self.platform.to_config(distinct=False, label="platform"),
            base=self.base.to_config(distinct=False, label="base"),
            leg_lengths=tuple(self.leg_lengths) if self.leg_lengths is not None else None,
        )


class M5PointModel(BaseModel):
    """{"w": [[re, im] × 6]}"""
    model_config = ConfigDict(extra="forbid", title="M5Point")

    w: list[ComplexPair] = Field(min_length=6, max_length=6)

    def to_point(self) -> M5Point:
        return M5Point(tuple(complex(re, im) for re, im in self.w))  # type: ignore[arg-type]


SCHEMAS: dict[str, type[BaseModel]] = {
    "point-config": PointConfigModel,
    "pentapod": PentapodModel,
    "m5-point": M5PointModel,
}


def json_schema(name: str) -> dict:
    return SCHEMAS[name].model_json_schema()


def read_json(path: Path) -> object:
    with open(path) as f:
        return json.load(f)


def load_config(path: Path, distinct: bool = True) -> PointConfig:
    """PointConfig from a JSON file; the file stem is the default label."""
    model = PointConfigModel.model_validate(read_json(path))
    return model.to_config(distinct=distinct, label=Path(path).stem)


def load_pentapod(path: Path) -> Pentapod:
    return PentapodModel.model_validate(read_json(path)).to_pentapod()
