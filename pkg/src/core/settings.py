from enum import StrEnum
from pathlib import Path
from typing import Annotated

from dotenv import find_dotenv
from pydantic import BeforeValidator, Field, computed_field
from pydantic_settings import BaseSettings, SettingsConfigDict


class LogLevel(StrEnum):
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"


def check_path_exists(x: str | Path | None) -> Path | None:
    if x is None or x == "":
        return None
    path = Path(x).expanduser()
    if not path.is_file():
        raise ValueError(f"File not found: {path}")
    return path


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=find_dotenv(),
        env_file_encoding="utf-8",
        env_ignore_empty=True,
        extra="ignore",
        validate_default=False,
    )
    MODE: str | None = None
    LOG_LEVEL: LogLevel = LogLevel.INFO

    # Monte Carlo defaults
    WORKERS: int = Field(default=1, ge=1, description="Thread workers used for replications")
    DEFAULT_SEED: int = Field(default=20120229, ge=0, lt=2**64)
    DEFAULT_REPS: int = Field(default=500, ge=1)
    CALIBRATION_REPS: int = Field(default=500, ge=100)

    # Estimator defaults
    S_MAX_DEFAULT: int = Field(default=20, ge=1)
    KN_GAMMA_DEFAULT: float = Field(default=0.005, gt=0.0, lt=0.5)

    # Tracy-Widom table. When no file is given the table is computed from the
    # Fredholm determinant at first use.
    TW_TABLE_PATH: Annotated[Path | None, BeforeValidator(check_path_exists)] = None
    TW_QUADRATURE_NODES: int = Field(default=80, ge=20)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def EFFECTIVE_LOG_LEVEL(self) -> str:
        return LogLevel.DEBUG.value if self.is_dev() else self.LOG_LEVEL.value

    def is_dev(self) -> bool:
        return self.MODE == "dev"


settings = Settings()
