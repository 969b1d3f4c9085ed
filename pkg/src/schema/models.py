from enum import StrEnum, auto


class EstimatorName(StrEnum):
    """Factor-count estimators available to the harness and the CLI."""

    PY = auto()
    KN = auto()


class NoiseLaw(StrEnum):
    GAUSSIAN = auto()
    SYMMETRIC_SUBEXPONENTIAL = auto()


class Sigma2Mode(StrEnum):
    KNOWN = auto()
    ESTIMATED = auto()


class PresetName(StrEnum):
    """Simulation models of the reference experiment table, plus single-factor templates."""

    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    F = "F"
    G = "G"
    H = "H"
    I = "I"  # noqa: E741
    J = "J"
    K = "K"
    K10 = "K10"
    S025 = "S025"
    S4 = "S4"
