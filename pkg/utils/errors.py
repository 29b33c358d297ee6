"""
Errores del simulador
=====================

Todas las excepciones heredan de ValueError (como el resto de las validaciones
del proyecto) y llevan el módulo que las originó, para que la línea de comandos
pueda mostrar diagnósticos etiquetados y elegir el código de salida.
"""

from typing import Any, Dict, List, Optional


class SimulationError(ValueError):
    """Error base con etiqueta de módulo."""

    modulo = 'core'

    def __init__(self, mensaje: str, modulo: Optional[str] = None):
        super().__init__(mensaje)
        if modulo is not None:
            self.modulo = modulo

    def __str__(self):
        return f"[{self.modulo}] {super().__str__()}"


class DimensionError(SimulationError):
    """Dimensiones incompatibles entre matrices, vectores o espacios."""


class NonHermitianError(SimulationError):
    """Se esperaba una matriz hermítica."""


class ConfigurationError(SimulationError):
    """Escenario inválido (código de salida 2)."""

    modulo = 'cli'


class NumericalError(SimulationError):
    """Falla numérica: condicionamiento, rama de Riccati, residuo (código 3)."""


class ConditioningError(NumericalError):
    """Matriz de semejanza o de autovectores mal condicionada."""


class BranchSelectionError(NumericalError):
    """
    La selección de rama del solver de subespacio gráfico falló.

    Guarda la tabla de pesos (índice, autovalor, peso superior, peso inferior)
    para que el llamador pueda pasar índices explícitos.
    """

    modulo = 'riccati'

    def __init__(self, mensaje: str, pesos: List[Dict[str, Any]]):
        super().__init__(mensaje)
        self.pesos = pesos

    def tabla(self) -> str:
        filas = ["idx        energia      peso_sup     peso_inf"]
        for fila in self.pesos:
            filas.append(
                f"{fila['index']:>3} {fila['energy']:>14.8f} "
                f"{fila['top']:>12.6e} {fila['bottom']:>12.6e}"
            )
        return "\n".join(filas)
