from dataclasses import dataclass

import numpy as np

from .matrices import frozen


@dataclass(frozen=True)
class TimeGrid:
    """Malla temporal uniforme (unidades de energía inversa, ħ = 1)."""

    t_start: float
    t_end: float
    steps: int = 201

    def __post_init__(self):
        if not self.t_end > self.t_start:
            raise ValueError("Se requiere t_end > t_start")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ValueError("steps debe ser un entero ≥ 2")

    @property
    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.steps)


@dataclass(frozen=True)
class TimeSeries:
    """Series muestreadas: ⟨Λ(t)⟩, α(t), c(t), fidelidad y fuga a la banda de guarda."""

    times: np.ndarray
    lambda_expect: np.ndarray
    alpha: np.ndarray
    coherence: np.ndarray
    fidelity: np.ndarray
    leakage: np.ndarray

    def __post_init__(self):
        largo = len(self.times)
        for nombre, dtype in (('times', float), ('lambda_expect', float), ('alpha', float),
                              ('coherence', complex), ('fidelity', float), ('leakage', float)):
            arr = frozen(getattr(self, nombre), dtype=dtype)
            if arr.shape != (largo,):
                raise ValueError(f"La serie {nombre} tiene largo {arr.shape} y se esperaba {largo}")
            object.__setattr__(self, nombre, arr)
        if largo == 0:
            raise ValueError("La serie temporal está vacía")
        if np.any(self.alpha < -1e-9) or np.any(self.alpha > 1 + 1e-9):
            raise ValueError("α(t) fuera de [0, 1]")
        if np.any(np.abs(self.coherence) > 0.5 + 1e-9):
            raise ValueError("|c(t)| supera 1/2")

    def __len__(self):
        return len(self.times)


@dataclass(frozen=True)
class ConservationReport:
    """Resultado de conservation_report: deriva máxima, fuga máxima y veredicto."""

    max_drift: float
    leak_max: float
    drift_tolerance: float
    leak_tolerance: float

    @property
    def conserved(self) -> bool:
        return self.max_drift < self.drift_tolerance

    @property
    def truncation_limited(self) -> bool:
        return self.leak_max >= self.leak_tolerance

    def as_dict(self) -> dict:
        return {
            'max_drift': self.max_drift,
            'leak_max': self.leak_max,
            'drift_tolerance': self.drift_tolerance,
            'leak_tolerance': self.leak_tolerance,
            'conserved': self.conserved,
            'truncation_limited': self.truncation_limited,
        }
