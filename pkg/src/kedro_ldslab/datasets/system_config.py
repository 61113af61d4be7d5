"""System description: pydantic models plus TOML load/save.

Units are fixed: kW, kWh, hours and $. Capital costs are annualised ($/kW-yr or $/kWh-yr).
"""

import logging
from pathlib import Path, PurePosixPath
from typing import Literal

import toml
import tomli
from kedro.io import AbstractDataset
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..errors import DomainError, InputNotFoundError, IoError, ParseError, SchemaError

logger = logging.getLogger(__name__)

_SCHEMA_ERROR_TYPES = {"missing", "extra_forbidden"}


class _Entity(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)


class ZoneConfig(_Entity):
    name: str


class GeneratorConfig(_Entity):
    name: str
    zone: str
    kind: Literal["thermal", "vre"]
    capex: float = Field(ge=0)
    varcost: float = Field(ge=0)
    availability_series: str | None = None

    @model_validator(mode="after")
    def _vre_needs_series(self):
        if self.kind == "vre" and not self.availability_series:
            raise ValueError(f"vre generator '{self.name}' needs availability_series")
        return self


class StorageConfig(_Entity):
    name: str
    zone: str
    is_lds: bool = False
    capex_energy: float = Field(ge=0)
    capex_power: float = Field(ge=0)
    eta_cha: float = Field(gt=0, le=1)
    eta_dis: float = Field(gt=0, le=1)
    # self-discharge per time step, must stay below 1
    eta_sdc: float = Field(default=0.0, ge=0, lt=1)


class LineConfig(_Entity):
    from_zone: str = Field(alias="from")
    to_zone: str = Field(alias="to")
    capex: float = Field(ge=0)

    @property
    def name(self) -> str:
        return f"{self.from_zone}-{self.to_zone}"


class HorizonConfig(_Entity):
    H: int = Field(gt=0)
    T: int = Field(gt=0)
    dt_hours: float = Field(default=1.0, gt=0)

    @model_validator(mode="after")
    def _whole_periods(self):
        if self.H % self.T != 0:
            raise ValueError(f"H not divisible by T (H={self.H}, T={self.T})")
        return self

    @property
    def N(self) -> int:
        return self.H // self.T


class AggregationConfig(_Entity):
    num_representatives: int = Field(ge=1)
    seed: int = 1
    max_iter: int = Field(default=300, ge=1)


class SolverConfig(_Entity):
    backend: Literal["reference", "external"] = "reference"
    command_template: str | None = None
    time_limit_s: float | None = Field(default=None, gt=0)
    max_rows: int = Field(default=5000, ge=1)
    max_iterations: int = Field(default=200_000, ge=1)


class SystemConfig(_Entity):
    nse_penalty: float = Field(gt=0)
    horizon: HorizonConfig
    aggregation: AggregationConfig
    solver: SolverConfig = SolverConfig()
    zones: list[ZoneConfig] = Field(alias="zone", min_length=1)
    generators: list[GeneratorConfig] = Field(default_factory=list, alias="generator")
    storages: list[StorageConfig] = Field(default_factory=list, alias="storage")
    lines: list[LineConfig] = Field(default_factory=list, alias="line")

    @property
    def zone_names(self) -> list[str]:
        return [z.name for z in self.zones]

    @property
    def lds_storages(self) -> list[StorageConfig]:
        return [s for s in self.storages if s.is_lds]

    @property
    def N(self) -> int:
        return self.horizon.N

    def with_overrides(
        self,
        num_representatives: int | None = None,
        seed: int | None = None,
        backend: str | None = None,
    ) -> "SystemConfig":
        aggregation = self.aggregation.model_copy(
            update={
                k: v
                for k, v in {"num_representatives": num_representatives, "seed": seed}.items()
                if v is not None
            }
        )
        solver = self.solver if backend is None else self.solver.model_copy(update={"backend": backend})
        # model_copy skips validation, so re-validate the merged document
        return SystemConfig.model_validate(
            {
                **self.model_dump(by_alias=True),
                "aggregation": aggregation.model_dump(),
                "solver": solver.model_dump(),
            }
        )


def _dotted(loc: tuple) -> str:
    key = ""
    for part in loc:
        key += f"[{part}]" if isinstance(part, int) else (f".{part}" if key else str(part))
    return key or "<root>"


def parse_config(document: dict) -> SystemConfig:
    """Validate a parsed TOML document, translating pydantic errors into ours."""
    try:
        return SystemConfig.model_validate(document)
    except ValidationError as e:
        errors = e.errors()
        schema = [err for err in errors if err["type"] in _SCHEMA_ERROR_TYPES]
        first = schema[0] if schema else errors[0]
        key, message = _dotted(first["loc"]), first["msg"]
        if schema:
            raise SchemaError(key, message) from None
        raise DomainError(key, message) from None


def load_config(path: str | Path) -> SystemConfig:
    path = Path(path)
    if not path.is_file():
        raise InputNotFoundError(path)
    try:
        with path.open("rb") as f:
            document = tomli.load(f)
    except tomli.TOMLDecodeError as e:
        raise ParseError(path, str(e)) from None
    config = parse_config(document)
    logger.info(
        "Loaded %s: %d zones, %d generators, %d storages (%d LDS), H=%d, T=%d",
        path,
        len(config.zones),
        len(config.generators),
        len(config.storages),
        len(config.lds_storages),
        config.horizon.H,
        config.horizon.T,
    )
    return config


def save_config(config: SystemConfig, path: str | Path) -> None:
    """Debug dump; `load_config` reads it back to an equal SystemConfig."""
    path = Path(path)
    document = config.model_dump(by_alias=True, exclude_none=True)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(toml.dumps(document))
    except OSError as e:
        raise IoError(f"cannot write {path}: {e}") from e


class SystemConfigDataset(AbstractDataset):
    """Kedro dataset for the TOML system description."""

    def __init__(self, filepath: str, metadata: dict | None = None):
        self._filepath = PurePosixPath(filepath)
        self.metadata = metadata

    def load(self) -> SystemConfig:
        return load_config(self._filepath)

    def save(self, data: SystemConfig) -> None:
        save_config(data, self._filepath)

    def _describe(self) -> dict:
        return {"filepath": str(self._filepath)}
