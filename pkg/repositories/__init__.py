"""
Capa de Repositorios - Repository Pattern
=========================================

Abstrae la escritura de resultados (series temporales, reportes y barridos)
de la lógica del simulador.

PATRÓN APLICADO: Repository Pattern
BENEFICIOS:
- El Service Layer no conoce formatos ni rutas
- Facilita testing (repositorio mock)
"""

from .results_repository import ResultsRepository

__all__ = [
    'ResultsRepository'
]
