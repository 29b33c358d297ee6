"""
PATRÓN: Strategy Pattern + Factory
==================================

Familia de solvers de la ecuación de Riccati, intercambiables desde el
escenario (``solver: analytic | graph_subspace``).

- RiccatiStrategy (interfaz): solve(setup) → RiccatiSolution
- AnalyticStrategy: formas cerradas (Jaynes–Cummings, Rabi de k fotones)
- GraphSubspaceStrategy: subespacio gráfico de K, válido para cualquier modelo
- RiccatiStrategyFactory: crea la estrategia por nombre

EJEMPLO DE USO:
--------------
```python
strategy = RiccatiStrategyFactory.create('graph_subspace', {'indices': [0, 2, 5]})
sol = strategy.solve(setup)
```
"""

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict

from models import ModelSetup, RiccatiSolution
from services.operators import generalized_parity
from services.riccati import solve_graph_subspace, solve_jc_analytic, solve_rabi_analytic, symmetric_branch
from utils.errors import ConfigurationError

logger = logging.getLogger(__name__)


class RiccatiStrategy(ABC):
    """Contrato común de los solvers."""

    @abstractmethod
    def solve(self, setup: ModelSetup) -> RiccatiSolution:
        pass

    @abstractmethod
    def get_tipo(self) -> str:
        pass


class AnalyticStrategy(RiccatiStrategy):
    """
    Soluciones cerradas.

    Jaynes–Cummings requiere la partición H₀ + V_int (Λ = σz); Rabi usa X_k,
    que solo resuelve la ecuación en el marco de σx: se verifica contra los
    bloques del escenario.

    config:
        similarity_condition: cota de cond(S)
    """

    def __init__(self, config: Dict[str, Any] = None):
        self.config = config or {}

    def solve(self, setup: ModelSetup) -> RiccatiSolution:
        cond_s = self.config.get('similarity_condition', 1e10)
        if setup.model == 'jc':
            if not setup.split:
                raise ConfigurationError(
                    "El solver analítico de Jaynes–Cummings requiere observable sigma_z")
            return solve_jc_analytic(setup.params, setup.space, max_condition=cond_s)
        if setup.model == 'rabi':
            return solve_rabi_analytic(setup.params, setup.space, blocks=setup.blocks,
                                       max_condition=cond_s)
        raise ConfigurationError(f"No hay solución analítica para el modelo '{setup.model}'")

    def get_tipo(self) -> str:
        return 'analytic'


class GraphSubspaceStrategy(RiccatiStrategy):
    """
    Subespacio gráfico de la Kamiltoniana.

    config:
        indices: autovectores elegidos a mano (opcional)
        max_condition: cota de cond(T)
        residual_tol: residuo máximo aceptado
        similarity_condition: cota de cond(S)

    Para Rabi, sin índices explícitos, se prueba primero la rama simétrica
    respecto de X_k: todos sus autovectores tienen pesos balanceados.
    """

    def __init__(self, config: Dict[str, Any] = None):
        self.config = config or {}

    def solve(self, setup: ModelSetup) -> RiccatiSolution:
        indices = self.config.get('indices')
        if indices is None and setup.model == 'rabi':
            simetricos = symmetric_branch(setup.blocks, generalized_parity(setup.params.k, setup.space))
            if len(simetricos) == setup.space.dim:
                indices = simetricos
            else:
                logger.info("Rama simétrica incompleta (%d de %d): regla de dominancia",
                            len(simetricos), setup.space.dim)
        return solve_graph_subspace(
            setup.blocks,
            indices=indices,
            max_condition=self.config.get('max_condition', 1e8),
            residual_tol=self.config.get('residual_tol', 1e-8),
            similarity_condition=self.config.get('similarity_condition', 1e10),
        )

    def get_tipo(self) -> str:
        return 'graph_subspace'


class RiccatiStrategyFactory:
    """FACTORY PATTERN: crea el solver según el nombre del escenario."""

    @staticmethod
    def create(tipo: str, config: Dict[str, Any] = None) -> RiccatiStrategy:
        """
        Raises:
            ConfigurationError: si el tipo no existe
        """
        strategies = {
            'analytic': AnalyticStrategy,
            'graph_subspace': GraphSubspaceStrategy,
        }
        strategy_class = strategies.get(tipo.lower())
        if not strategy_class:
            raise ConfigurationError(
                f"Solver '{tipo}' no soportado. Solvers disponibles: {list(strategies.keys())}"
            )
        return strategy_class(config)
