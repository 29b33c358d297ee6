from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from .fock_space import FockSpace
from .matrices import ComplexMatrix, frozen
from .time_series import TimeGrid


@dataclass(frozen=True)
class ScenarioConfig:
    """
    Escenario validado (lo construye ScenarioSchema en @post_load).

    ``echo`` guarda el documento validado con los valores por defecto ya
    completados; se reproduce tal cual en report.json.
    """

    model: str
    params: Dict[str, Any]
    observable: ComplexMatrix
    observable_name: str
    solver: str
    seed_state: Dict[str, Any]
    state_kind: str
    space: FockSpace
    grid: TimeGrid
    tolerances: Dict[str, float]
    eps: Optional[int] = None
    blocks: Optional[Dict[str, ComplexMatrix]] = None
    preparation_noise: float = 0.0
    noise_seed: int = 7
    solver_options: Dict[str, Any] = field(default_factory=dict)
    echo: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, 'observable', frozen(self.observable))

    @property
    def gated_drift(self) -> bool:
        """La deriva se evalúa como compuerta solo para estados de desfase sin ruido."""
        return self.state_kind != 'product_control' and self.preparation_noise == 0.0

    def __repr__(self):
        return f'<ScenarioConfig {self.model}/{self.solver} {self.state_kind} dim={self.space.dim}>'
