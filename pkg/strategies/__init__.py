"""
Strategies - Strategy Pattern
"""

from .riccati_strategy import (
    RiccatiStrategy,
    AnalyticStrategy,
    GraphSubspaceStrategy,
    RiccatiStrategyFactory
)

__all__ = [
    'RiccatiStrategy',
    'AnalyticStrategy',
    'GraphSubspaceStrategy',
    'RiccatiStrategyFactory'
]
