from schema.models import EstimatorName, NoiseLaw, PresetName, Sigma2Mode
from schema.schema import (
    CSV_COLUMNS,
    AspectRatio,
    EstimateResult,
    EstimatorInfo,
    EstimatorSettings,
    ExperimentConfig,
    GeneratorSettings,
    GridPoint,
    KNSettings,
    PYSettings,
    RateReport,
    RateRow,
    ScalingPoint,
    ScalingReport,
    Spike,
    SpikeSpec,
    grid_from_ratio,
)

__all__ = [
    "CSV_COLUMNS",
    "AspectRatio",
    "EstimateResult",
    "EstimatorInfo",
    "EstimatorName",
    "EstimatorSettings",
    "ExperimentConfig",
    "GeneratorSettings",
    "GridPoint",
    "KNSettings",
    "NoiseLaw",
    "PYSettings",
    "PresetName",
    "RateReport",
    "RateRow",
    "ScalingPoint",
    "ScalingReport",
    "Sigma2Mode",
    "Spike",
    "SpikeSpec",
    "grid_from_ratio",
]
