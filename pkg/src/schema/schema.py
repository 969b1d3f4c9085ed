import math
from typing import Any, Literal, Self

import numpy as np
import pandas as pd
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeFloat,
    computed_field,
    field_validator,
    model_validator,
)

from core.settings import settings
from schema.models import EstimatorName, NoiseLaw, PresetName, Sigma2Mode


class Spike(BaseModel):
    """One distinct factor strength and how many times it appears."""

    model_config = ConfigDict(frozen=True)

    strength: float = Field(gt=0.0, description="Excess variance alpha_k over the noise level.")
    multiplicity: int = Field(default=1, ge=1, description="Number of equal factors n_k.")

    @model_validator(mode="before")
    @classmethod
    def from_pair(cls, data: Any) -> Any:
        if isinstance(data, list | tuple):
            return {"strength": data[0], "multiplicity": data[1] if len(data) > 1 else 1}
        if isinstance(data, int | float):
            return {"strength": data}
        return data


class SpikeSpec(BaseModel):
    """Population spectrum sigma2 * (alpha'_1, ..., alpha'_K, 1, ..., 1) of dimension p."""

    model_config = ConfigDict(frozen=True)

    spikes: tuple[Spike, ...] = Field(
        default=(),
        description="Distinct factor strengths, strictly decreasing.",
        examples=[[[10.0, 1], [5.0, 1]]],
    )
    sigma2: float = Field(default=1.0, gt=0.0, description="Noise level sigma^2.")
    p: int = Field(ge=1, description="Dimension of the observations.")

    @model_validator(mode="after")
    def check_spectrum(self) -> Self:
        strengths = [s.strength for s in self.spikes]
        if any(a <= b for a, b in zip(strengths, strengths[1:])):
            raise ValueError(f"Spike strengths must be strictly decreasing, got {strengths}")
        if self.q0 >= self.p:
            raise ValueError(f"Number of factors q0={self.q0} must be smaller than p={self.p}")
        return self

    @classmethod
    def from_strengths(cls, strengths: list[float], sigma2: float = 1.0, *, p: int) -> Self:
        """Build from a flat list of strengths: zeros dropped, equal values merged."""
        counts: dict[float, int] = {}
        for a in strengths:
            if a < 0:
                raise ValueError(f"Factor strengths must be non-negative, got {a}")
            if a > 0:
                counts[float(a)] = counts.get(float(a), 0) + 1
        spikes = tuple(
            Spike(strength=a, multiplicity=m) for a, m in sorted(counts.items(), reverse=True)
        )
        return cls(spikes=spikes, sigma2=sigma2, p=p)

    @property
    def q0(self) -> int:
        return sum(s.multiplicity for s in self.spikes)

    @property
    def K(self) -> int:
        return len(self.spikes)

    @property
    def strengths(self) -> list[float]:
        return [s.strength for s in self.spikes]

    @property
    def normalized(self) -> list[float]:
        """alpha'_k = alpha_k / sigma2 + 1 for each distinct spike."""
        return [s.strength / self.sigma2 + 1.0 for s in self.spikes]

    def population_eigenvalues(self) -> np.ndarray:
        values = np.full(self.p, self.sigma2)
        values[: self.q0] = np.repeat(
            [self.sigma2 * a for a in self.normalized], [s.multiplicity for s in self.spikes]
        )
        return values


class AspectRatio(BaseModel):
    """Dimension p and sample size n, with c = p / n."""

    model_config = ConfigDict(frozen=True)

    p: int = Field(ge=1)
    n: int = Field(ge=1)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def c(self) -> float:
        return self.p / self.n


class GeneratorSettings(BaseModel):
    """Randomness of one synthetic data set. The seed fully determines the output."""

    model_config = ConfigDict(frozen=True)

    seed: int = Field(ge=0, lt=2**64, description="64-bit unsigned seed.")
    noise_law: NoiseLaw = Field(
        default=NoiseLaw.GAUSSIAN,
        description="Law of the unit-variance noise entries.",
    )
    rotate_basis: bool = Field(
        default=False,
        description="Conjugate the population covariance by a random orthogonal basis.",
    )


class PYSettings(BaseModel):
    """Settings of the eigenvalue-gap threshold estimator."""

    C: float = Field(
        gt=0.0, description="Tuning constant of the gap threshold d_n.", examples=[11.0]
    )
    s_max: int | None = Field(
        default=None,
        ge=1,
        description="Preliminary bound on the number of factors. Default min(20, p-3, n-3).",
    )
    two_gap_rule: bool = Field(
        default=True, description="Require two consecutive small gaps before stopping."
    )
    sigma2: float | None = Field(
        default=None, gt=0.0, description="Known noise level. Estimated when missing."
    )


class KNSettings(BaseModel):
    """Settings of the sequential Tracy-Widom test."""

    gamma: float = Field(
        default_factory=lambda: settings.KN_GAMMA_DEFAULT,
        gt=0.0,
        lt=0.5,
        description="Significance level of each test.",
        examples=[0.005],
    )
    sigma2: float | None = Field(
        default=None, gt=0.0, description="Known noise level. Estimated when missing."
    )


EstimatorSettings = PYSettings | KNSettings


class EstimateResult(BaseModel):
    """Estimated number of factors and the diagnostics behind the decision."""

    estimator: EstimatorName
    q_hat: int = Field(ge=0, description="Estimated number of factors.")
    gaps: list[NonNegativeFloat] = Field(
        description="Consecutive eigenvalue gaps examined, on the sigma2-normalized scale for PY.",
    )
    threshold_used: float | list[float] = Field(
        description="d_n for PY, per-step thresholds for KN.",
    )
    sigma2_used: float = Field(gt=0.0)
    saturated: bool = Field(
        default=False, description="True when the scan reached its bound without stopping."
    )
    p: int = Field(ge=1)
    n: int = Field(ge=1)

    def pretty_repr(self) -> str:
        lines = [
            f"estimator: {self.estimator.value}",
            f"q_hat: {self.q_hat}" + (" (saturated)" if self.saturated else ""),
            f"sigma2: {self.sigma2_used:.6g}",
            f"(p, n): ({self.p}, {self.n})",
        ]
        if isinstance(self.threshold_used, list):
            shown = ", ".join(f"{t:.4g}" for t in self.threshold_used[:10])
            lines.append(f"thresholds: {shown}")
        else:
            lines.append(f"threshold: {self.threshold_used:.6g}")
        lines.append("gaps: " + ", ".join(f"{g:.4g}" for g in self.gaps[:10]))
        return "\n".join(lines)


class EstimatorInfo(BaseModel):
    """Info about an available estimator."""

    key: EstimatorName = Field(description="Estimator key.", examples=["py"])
    description: str = Field(description="Description of the estimator.")


class GridPoint(AspectRatio):
    p: int = Field(ge=2)
    n: int = Field(ge=2)

    @model_validator(mode="before")
    @classmethod
    def from_pair(cls, data: Any) -> Any:
        if isinstance(data, list | tuple):
            return {"p": data[0], "n": data[1]}
        return data


def grid_from_ratio(c: float, n_values: list[int]) -> list[GridPoint]:
    """Grid of (p, n) with p = round(c * n)."""
    return [GridPoint(p=round(c * n), n=n) for n in n_values]


StrengthEntry = NonNegativeFloat | Literal["alpha"]


class ExperimentConfig(BaseModel):
    """Declarative Monte Carlo experiment. A preset fills every field not given explicitly."""

    name: str = Field(default="custom", description="Model label used in reports.")
    preset: PresetName | None = Field(default=None, description="Named model of the table.")
    strengths: list[StrengthEntry] = Field(
        default=[],
        description="Flat factor strengths; 'alpha' marks the swept strength.",
        examples=[[10.0, 5.0], ["alpha", "alpha", 5.0]],
    )
    sigma2: float = Field(default=1.0, gt=0.0)
    grid: list[GridPoint] = Field(description="(p, n) pairs, or {'c': c, 'n': [...]}.")
    alphas: list[NonNegativeFloat] = Field(default=[], description="Values swept for 'alpha'.")
    estimators: list[EstimatorName] = Field(default=[EstimatorName.PY], min_length=1)
    C: float | Literal["auto"] = Field(
        default="auto", description="PY tuning constant, or 'auto' to calibrate per (p, n)."
    )
    gamma: float = Field(default_factory=lambda: settings.KN_GAMMA_DEFAULT, gt=0.0, lt=0.5)
    sigma2_mode: Sigma2Mode = Sigma2Mode.KNOWN
    noise_law: NoiseLaw = NoiseLaw.GAUSSIAN
    rotate_basis: bool = False
    two_gap_rule: bool = True
    s_max: int | None = Field(default=None, ge=1)
    reps: int = Field(default_factory=lambda: settings.DEFAULT_REPS, ge=1)
    master_seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED, ge=0, lt=2**64)
    calibration_reps: int = Field(default_factory=lambda: settings.CALIBRATION_REPS, ge=100)

    @model_validator(mode="before")
    @classmethod
    def apply_preset(cls, data: Any) -> Any:
        if not isinstance(data, dict) or data.get("preset") is None:
            return data
        from schema.presets import PRESETS

        try:
            defaults = PRESETS[PresetName(data["preset"])]
        except ValueError:
            raise ValueError(f"Unknown preset: {data['preset']}")
        return {**defaults, **{k: v for k, v in data.items() if v is not None}}

    @field_validator("grid", mode="before")
    @classmethod
    def expand_grid(cls, value: Any) -> Any:
        if isinstance(value, dict):
            return grid_from_ratio(float(value["c"]), [int(n) for n in value["n"]])
        return value

    @model_validator(mode="after")
    def check_sweep(self) -> Self:
        if not self.grid:
            raise ValueError("grid must contain at least one (p, n) point")
        swept = "alpha" in self.strengths
        if swept and not self.alphas:
            raise ValueError("strengths contain 'alpha' but no alphas were given")
        if self.alphas and not swept:
            raise ValueError("alphas given but no strength is marked 'alpha'")
        return self

    @property
    def is_sweep(self) -> bool:
        return bool(self.alphas)

    def strengths_at(self, alpha: float | None) -> list[float]:
        strengths = [alpha if s == "alpha" else s for s in self.strengths]
        return [float(s) for s in strengths]  # type: ignore[arg-type]

    def spike_spec(self, point: GridPoint, alpha: float | None = None) -> SpikeSpec:
        return SpikeSpec.from_strengths(self.strengths_at(alpha), self.sigma2, p=point.p)


CSV_COLUMNS = [
    "model",
    "estimator",
    "p",
    "n",
    "c",
    "C",
    "gamma",
    "sigma2_mode",
    "reps",
    "misest",
    "overest",
    "underest",
    "mean_sigma2",
    "seconds",
    "alpha",
    "misest_se",
    "overest_se",
    "underest_se",
    "failures",
]


def binomial_se(rate: float, reps: int) -> float:
    return math.sqrt(rate * (1.0 - rate) / reps) if reps > 0 else math.nan


class RateRow(BaseModel):
    """Aggregated rates of one estimator at one grid point."""

    model: str
    estimator: EstimatorName
    p: int
    n: int
    c: float
    C: float | None = Field(default=None, description="PY tuning constant actually used.")
    gamma: float | None = Field(default=None, description="KN significance level.")
    sigma2_mode: Sigma2Mode
    reps: int = Field(ge=1)
    misest: float = Field(ge=0.0, le=1.0)
    overest: float = Field(ge=0.0, le=1.0)
    underest: float = Field(ge=0.0, le=1.0)
    mean_sigma2: float
    seconds: float = Field(ge=0.0)
    alpha: float | None = None
    misest_se: float
    overest_se: float
    underest_se: float
    failures: int = Field(default=0, ge=0)

    @classmethod
    def from_counts(cls, *, over: int, under: int, valid: int, **fields: Any) -> Self:
        overest = over / valid if valid else math.nan
        underest = under / valid if valid else math.nan
        misest = overest + underest
        return cls(
            overest=overest,
            underest=underest,
            misest=misest,
            misest_se=binomial_se(misest, valid),
            overest_se=binomial_se(overest, valid),
            underest_se=binomial_se(underest, valid),
            **fields,
        )


class RateReport(BaseModel):
    """Monte Carlo misestimation, overestimation and underestimation rates."""

    name: str
    master_seed: int
    rows: list[RateRow] = []

    def rows_for(self, estimator: EstimatorName) -> list[RateRow]:
        return [r for r in self.rows if r.estimator == estimator]

    def to_frame(self, include_timing: bool = True) -> pd.DataFrame:
        frame = pd.DataFrame([r.model_dump(mode="json") for r in self.rows], columns=CSV_COLUMNS)
        if not include_timing:
            frame["seconds"] = None
        return frame

    def to_csv(self, path: str | None = None, include_timing: bool = True) -> str:
        text = self.to_frame(include_timing).to_csv(index=False, lineterminator="\n")
        if path is not None:
            with open(path, "w", encoding="utf-8", newline="") as f:
                f.write(text)
        return text


class ScalingPoint(BaseModel):
    n: int
    p: int
    noise_gap: float = Field(description="Median gap just below the last factor eigenvalue.")
    equal_gap: float | None = Field(
        default=None, description="Median gap inside the first group of equal factors."
    )
    distinct_gap: float | None = Field(
        default=None, description="Median gap between the first two distinct factor groups."
    )


class ScalingReport(BaseModel):
    """Median gaps against n with least-squares log-log slopes."""

    c: float
    reps: int
    points: list[ScalingPoint]
    noise_slope: float
    equal_slope: float | None = None
    distinct_limit: float | None = Field(
        default=None, description="Almost-sure limit of the distinct-group gap."
    )
