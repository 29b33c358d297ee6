"""
Servicio de Reportes
====================

PATRÓN: Service Layer
- Evalúa las compuertas de un escenario (residuo, fidelidad, deriva)
- Arma el diccionario de report.json y la tabla legible para la terminal
"""

import math
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from models import ConservationReport, DephasingState, ModelSetup, RiccatiSolution, ScenarioConfig, TimeSeries

from .riccati import pseudo_hermiticity_check
from .states import schmidt_analysis


def _finite_or_none(valor: float) -> Optional[float]:
    return None if valor is None or math.isnan(valor) else float(valor)


class ReportService:
    """
    Construye reportes de conservación.

    Compuertas:
    - residual: residuo interior de X bajo la tolerancia del solver
    - fidelity: factorizado vs exacto (se omite sin forma factorizada o con fuga)
    - drift: deriva de ⟨Λ⟩ bajo tolerancia; invertida para el control producto
    """

    def evaluate_checks(self, cfg: ScenarioConfig, sol: RiccatiSolution, ts: TimeSeries,
                        conservation: ConservationReport) -> Dict[str, bool]:
        tol = cfg.tolerances
        tol_residuo = tol['analytic'] if sol.method == 'analytic' else tol['numerical']
        checks = {'residual': sol.interior_residual_norm < tol_residuo}

        fidelidades = ts.fidelity[~np.isnan(ts.fidelity)]
        if fidelidades.size and not conservation.truncation_limited:
            checks['fidelity'] = bool(fidelidades.min() >= 1 - tol['fidelity'])

        if cfg.state_kind == 'product_control':
            checks['drift'] = conservation.max_drift > tol['control_drift']
        elif cfg.gated_drift:
            checks['drift'] = conservation.conserved
        return checks

    def build(self, cfg: ScenarioConfig, setup: ModelSetup, sol: RiccatiSolution,
              state: DephasingState, ts: TimeSeries,
              conservation: ConservationReport) -> Dict[str, Any]:
        """Diccionario de report.json (ver ReportSchema)."""
        checks = self.evaluate_checks(cfg, sol, ts, conservation)
        rango, coeficientes = schmidt_analysis(state, cfg.tolerances['separability'])
        fidelidades = ts.fidelity[~np.isnan(ts.fidelity)]
        passed = all(checks.values())
        return {
            'scenario': cfg.echo,
            'model': cfg.model,
            'solver': cfg.solver,
            'solver_method': sol.method,
            'solver_note': sol.note,
            'state_kind': state.kind,
            'branch': state.branch,
            'residual_norm': sol.residual_norm,
            'interior_residual_norm': sol.interior_residual_norm,
            'pseudo_hermiticity_defect': pseudo_hermiticity_check(sol),
            'max_drift': conservation.max_drift,
            'leak_max': conservation.leak_max,
            'min_fidelity': _finite_or_none(float(fidelidades.min())) if fidelidades.size else None,
            'initial_lambda': float(ts.lambda_expect[0]),
            'schmidt_rank': rango,
            'schmidt_coefficients': [float(c) for c in coeficientes],
            'degenerate_observable': setup.diag.degenerate,
            'truncation_limited': conservation.truncation_limited,
            'checks': checks,
            'passed': passed,
            'exit_code': 0 if passed else 1,
        }

    @staticmethod
    def format_table(report: Dict[str, Any]) -> str:
        """Tabla de conservación para la terminal."""
        filas: List[Tuple[str, str]] = [
            ('modelo', f"{report['model']} / {report['solver_method']}"),
            ('estado', f"{report['state_kind']} (rama {report['branch'] or '-'})"),
            ('residuo', f"{report['residual_norm']:.3e}"),
            ('residuo interior', f"{report['interior_residual_norm']:.3e}"),
            ('pseudo-hermiticidad', f"{report['pseudo_hermiticity_defect']:.3e}"),
            ('deriva máxima', f"{report['max_drift']:.3e}"),
            ('fuga máxima', f"{report['leak_max']:.3e}"),
            ('fidelidad mínima', '-' if report['min_fidelity'] is None
             else f"{report['min_fidelity']:.12f}"),
            ('rango de Schmidt', str(report['schmidt_rank'])),
        ]
        for nombre, ok in sorted(report['checks'].items()):
            filas.append((f'check {nombre}', 'OK' if ok else 'FALLA'))
        if report['truncation_limited']:
            filas.append(('aviso', 'limitado por truncación'))
        filas.append(('resultado', 'OK' if report['passed'] else 'FALLA'))

        ancho = max(len(nombre) for nombre, _ in filas)
        return '\n'.join(f'{nombre:<{ancho}}  {valor}' for nombre, valor in filas)

    @staticmethod
    def riccati_rows(cantidades: Dict[str, float]) -> str:
        """Una fila por cantidad del chequeo de Riccati."""
        ancho = max(len(nombre) for nombre in cantidades)
        return '\n'.join(f'{nombre:<{ancho}}  {valor:.6e}' for nombre, valor in cantidades.items())
