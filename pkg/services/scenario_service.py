"""
PATRÓN: Service Layer + Dependency Injection + Facade
=====================================================

ScenarioService orquesta el pipeline completo de un escenario:

    modelo → Riccati → estado inicial → propagadores → series → reporte

Las dependencias (fábrica de solvers, repositorio de resultados, servicio de
reportes) se inyectan por constructor, así los tests pueden reemplazarlas
por mocks.

Ejemplo de flujo:
    CLI → ScenarioService.run_scenario(cfg, out_dir) → [
        1. build_model   (blockform)
        2. solve         (Strategy de Riccati)
        3. prepare_state (states)
        4. propagate     (dynamics: oráculo + factorizado)
        5. reporte       (ReportService) y emisión (ResultsRepository)
    ]
"""

import copy
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from marshmallow import ValidationError

from config.config import Config
from models import (BlockHamiltonian, DephasingState, JcParams, ModelSetup, RabiParams,
                    RiccatiSolution, ScenarioConfig, TimeSeries)
from repositories.results_repository import ResultsRepository
from schemas.scenario_schema import ScenarioSchema
from strategies.riccati_strategy import RiccatiStrategyFactory
from utils.errors import ConfigurationError

from .blockform import block_assemble, block_decompose, diagonalize_observable, jc_model, rabi_model, to_kamiltonian
from .dynamics import build_time_series, conservation_report, propagate_exact, propagate_factorized
from .operators import generalized_parity, tensor
from .report_service import ReportService
from .riccati import pseudo_hermiticity_check, similarity_defect, spectral_union_defect
from .states import (coherent_seed, dephasing_state, explicit_seed, fock_seed, orthogonal_state,
                     perturbed_state, product_state, rabi_parity_state)

logger = logging.getLogger(__name__)

SWEEP_AXES = ('omega', 'nu', 'g', 'delta', 'k', 'preparation_noise')


def parse_scenario(text: str) -> ScenarioConfig:
    """
    JSON → ScenarioConfig validado.

    Raises:
        ConfigurationError: JSON inválido o escenario que no pasa el schema
    """
    try:
        documento = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"JSON inválido: {e}") from e
    return load_scenario(documento)


def load_scenario(documento: Dict[str, Any]) -> ScenarioConfig:
    if not isinstance(documento, dict):
        raise ConfigurationError("El escenario debe ser un objeto JSON")
    try:
        return ScenarioSchema().load(documento)
    except ValidationError as e:
        raise ConfigurationError(f"Escenario inválido: {json.dumps(e.messages, sort_keys=True, ensure_ascii=False)}") from e


class ScenarioService:
    """
    Servicio de escenarios.

    PATRÓN PRINCIPAL: Service Layer (fachada del pipeline numérico)
    """

    def __init__(self,
                 strategy_factory=None,
                 repository: ResultsRepository = None,
                 report_service: ReportService = None,
                 threads: Optional[int] = None):
        """
        Constructor con Dependency Injection.

        Args:
            strategy_factory: objeto con create(tipo, config) → RiccatiStrategy
            repository: persistencia de resultados (inyectable)
            report_service: evaluación de compuertas y formato (inyectable)
            threads: tope de hilos para sweep (por defecto Config.THREADS)
        """
        self.strategy_factory = strategy_factory or RiccatiStrategyFactory
        self.repository = repository or ResultsRepository()
        self.report_service = report_service or ReportService()
        self.threads = threads or Config.THREADS

    # ==========================================
    # ETAPAS DEL PIPELINE
    # ==========================================

    def build_model(self, cfg: ScenarioConfig) -> ModelSetup:
        """
        Hamiltoniano, marco del observable y bloques.

        Jaynes–Cummings en el marco trivial usa la partición H₀ + V_int; en
        cualquier otro marco se trabaja con la Kamiltoniana completa.
        """
        diag = diagonalize_observable(cfg.observable)
        space = cfg.space

        if cfg.model == 'jc':
            p = self._jc_params(cfg.params)
            h_total, h0, v_int = jc_model(p, space)
            if np.array_equal(diag.u, np.eye(2)):
                return ModelSetup('jc', h_total, diag, block_decompose(v_int, space), space, p, h0)
            blocks = block_decompose(to_kamiltonian(h_total, diag, space), space)
            return ModelSetup('jc', h_total, diag, blocks, space, p)

        if cfg.model == 'rabi':
            p = RabiParams(cfg.params['omega'], cfg.params['nu'], cfg.params['g'], cfg.params['k'])
            h_total = rabi_model(p, space)
            blocks = block_decompose(to_kamiltonian(h_total, diag, space), space)
            return ModelSetup('rabi', h_total, diag, blocks, space, p)

        blocks = BlockHamiltonian(cfg.blocks['h_plus'], cfg.blocks['h_minus'], cfg.blocks['v'], space)
        w = tensor(diag.u, np.eye(space.dim))
        h_total = w @ block_assemble(blocks) @ w.conj().T
        return ModelSetup('custom-blocks', (h_total + h_total.conj().T) / 2, diag, blocks, space)

    def solve(self, cfg: ScenarioConfig, setup: ModelSetup) -> RiccatiSolution:
        opciones = dict(cfg.solver_options)
        opciones.setdefault('max_condition', cfg.tolerances['cond_t'])
        opciones.setdefault('residual_tol', cfg.tolerances['numerical'])
        opciones.setdefault('similarity_condition', cfg.tolerances['cond_s'])
        strategy = self.strategy_factory.create(cfg.solver, opciones)
        sol = strategy.solve(setup)
        logger.info("Riccati (%s): residuo interior %.3e", strategy.get_tipo(), sol.interior_residual_norm)
        return sol

    def seed_vector(self, cfg: ScenarioConfig) -> np.ndarray:
        seed = cfg.seed_state
        if seed['type'] == 'fock':
            return fock_seed(cfg.space, seed['m'])
        if seed['type'] == 'coherent':
            return coherent_seed(cfg.space, seed['alpha'], seed['cutoff'])
        return explicit_seed(cfg.space, seed['amplitudes'])

    def prepare_state(self, cfg: ScenarioConfig, setup: ModelSetup,
                      sol: RiccatiSolution) -> DephasingState:
        psi = self.seed_vector(cfg)
        if cfg.state_kind == 'psi':
            state = dephasing_state(sol, setup.diag, psi)
        elif cfg.state_kind == 'phi':
            state = orthogonal_state(sol, setup.diag, psi)
        elif cfg.state_kind == 'rabi_parity':
            state = rabi_parity_state(generalized_parity(setup.params.k, cfg.space), psi, cfg.eps)
        else:
            state = product_state(setup.diag, psi)

        if cfg.preparation_noise > 0:
            state = perturbed_state(state, cfg.preparation_noise, cfg.noise_seed, cfg.space)
        return state

    def propagate(self, cfg: ScenarioConfig, setup: ModelSetup, sol: RiccatiSolution,
                  state: DephasingState) -> TimeSeries:
        exacta = propagate_exact(setup.h_total, state, cfg.grid)
        factorizada = None
        if state.branch is not None:
            factorizada = propagate_factorized(sol, setup.diag, state.seed, cfg.grid, cfg.space,
                                               h0=setup.h0, branch=state.branch)
        return build_time_series(cfg.grid.times, exacta, factorizada, setup.diag, cfg.space)

    # ==========================================
    # OPERACIONES PÚBLICAS
    # ==========================================

    def run_scenario(self, cfg: ScenarioConfig, out_dir=None) -> Tuple[TimeSeries, Dict[str, Any]]:
        """
        Ejecuta el pipeline; si se pasa ``out_dir`` escribe los resultados.

        Returns:
            (serie temporal, reporte)
        """
        logger.info("Escenario %r", cfg)
        setup = self.build_model(cfg)
        sol = self.solve(cfg, setup)
        state = self.prepare_state(cfg, setup, sol)
        logger.info("Estado inicial %r", state)
        ts = self.propagate(cfg, setup, sol, state)

        conservacion = conservation_report(ts, cfg.tolerances['drift'], cfg.tolerances['leakage'])
        report = self.report_service.build(cfg, setup, sol, state, ts, conservacion)
        if not report['passed']:
            logger.warning("Compuertas fallidas: %s",
                           sorted(k for k, ok in report['checks'].items() if not ok))
        if out_dir is not None:
            self.repository.emit(ts, report, out_dir)
        return ts, report

    def riccati_check(self, cfg: ScenarioConfig) -> Dict[str, Any]:
        """Residuos y defectos estructurales de la solución de Riccati."""
        setup = self.build_model(cfg)
        sol = self.solve(cfg, setup)
        cond_s = cfg.tolerances['cond_s']
        cantidades = {
            'residual_norm': sol.residual_norm,
            'interior_residual_norm': sol.interior_residual_norm,
            'pseudo_hermiticity_defect': pseudo_hermiticity_check(sol),
            'similarity_defect': similarity_defect(setup.blocks, sol.x, cond_s),
            'spectral_union_defect': spectral_union_defect(setup.blocks, sol.x, cond_s),
        }
        tol = cfg.tolerances['numerical']
        passed = all(valor < tol for valor in cantidades.values())
        return {'quantities': cantidades, 'passed': passed, 'method': sol.method}

    def sweep(self, cfg: ScenarioConfig, axis: str, values: Sequence[float],
              out_dir=None) -> List[Tuple[float, Dict[str, Any]]]:
        """
        Barre un parámetro escalar; corridas independientes en paralelo.

        Returns:
            [(valor, reporte)] ordenado por valor
        """
        if axis not in SWEEP_AXES:
            raise ConfigurationError(f"Eje '{axis}' no es un parámetro escalar. Ejes: {list(SWEEP_AXES)}")
        if not values:
            raise ConfigurationError("La lista de valores del barrido está vacía")
        if axis == 'k' and any(float(v) != int(v) for v in values):
            raise ConfigurationError(f"k debe ser entero; valores recibidos: {list(values)}")
        valores = sorted(values)
        configs = [self._variant(cfg, axis, v) for v in valores]

        base = Path(out_dir) if out_dir is not None else None
        destinos = [base / f'{axis}_{i:03d}' if base is not None else None for i in range(len(valores))]

        workers = max(1, min(self.threads, len(configs)))
        logger.info("Barrido de %s: %d valores, %d hilos", axis, len(valores), workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reportes = list(pool.map(lambda par: self.run_scenario(*par)[1], zip(configs, destinos)))

        resultados = list(zip(valores, reportes))
        if base is not None:
            self.repository.write_sweep([self.sweep_row(v, r) for v, r in resultados], base)
        return resultados

    @staticmethod
    def sweep_row(value: float, report: Dict[str, Any]) -> Dict[str, Any]:
        return {
            'value': value,
            'max_drift': report['max_drift'],
            'leak_max': report['leak_max'],
            'min_fidelity': np.nan if report['min_fidelity'] is None else report['min_fidelity'],
            'residual_norm': report['residual_norm'],
            'passed': report['passed'],
        }

    # ------------------------------------------------------------------

    @staticmethod
    def _jc_params(params: Dict[str, Any]) -> JcParams:
        if 'delta' in params:
            return JcParams.from_detuning(params['delta'], params['g'], params['nu'])
        return JcParams(params['omega'], params['nu'], params['g'])

    @staticmethod
    def _variant(cfg: ScenarioConfig, axis: str, value: float) -> ScenarioConfig:
        documento = copy.deepcopy(cfg.echo)
        if axis == 'preparation_noise':
            documento['preparation_noise'] = value
        else:
            params = documento.setdefault('params', {})
            if axis == 'delta':
                params.pop('omega', None)
            elif axis == 'omega':
                params.pop('delta', None)
            params[axis] = int(value) if axis == 'k' else value
        return load_scenario(documento)
