"""
Schemas - DTO Pattern con Marshmallow
"""

from .scenario_schema import ScenarioSchema, ReportSchema, OBSERVABLE_PRESETS

__all__ = [
    'ScenarioSchema',
    'ReportSchema',
    'OBSERVABLE_PRESETS'
]
