"""
Services Layer - Lógica numérica y orquestación
===============================================

- operators, blockform, riccati, states, dynamics: funciones puras
- scenario_service: ScenarioService (pipeline completo, DI)
- report_service: ReportService (compuertas y tablas)

Los módulos se importan directamente (``from services.riccati import ...``).
"""
