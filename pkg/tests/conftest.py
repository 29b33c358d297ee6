"""
Configuración de Pytest - Fixtures compartidos
==============================================

PATRÓN: Test Fixtures (Factory Pattern para testing)

Fixtures de parámetros, espacios, soluciones de Riccati y escenarios JSON
reutilizados por todos los módulos de test.
"""

import copy
import json

import numpy as np
import pytest
from click.testing import CliRunner

from app import create_app
from models import FockSpace, JcParams, RabiParams
from services.blockform import diagonalize_observable
from services.operators import qubit_ops
from services.riccati import solve_jc_analytic, solve_rabi_analytic


# ==========================================
# FIXTURES NUMÉRICOS
# ==========================================

@pytest.fixture
def rng():
    """Generador con semilla fija: los tests aleatorios son reproducibles."""
    return np.random.default_rng(20240611)


@pytest.fixture
def jc_params():
    """Jaynes–Cummings con δ = 0.5, g = 0.3, ν = 0.8."""
    return JcParams.from_detuning(0.5, 0.3, nu=0.8)


@pytest.fixture
def jc_resonant():
    """Jaynes–Cummings resonante: δ = 0, g = 1, ν = 0."""
    return JcParams.from_detuning(0.0, 1.0)


@pytest.fixture
def rabi_params():
    return RabiParams(omega=1.0, nu=0.8, g=0.2, k=1)


@pytest.fixture
def small_space():
    return FockSpace(16, 2)


@pytest.fixture
def sigma_z_diag():
    return diagonalize_observable(qubit_ops().sz)


@pytest.fixture
def sigma_x_diag():
    return diagonalize_observable(qubit_ops().sx)


@pytest.fixture
def jc_solution(jc_params, small_space):
    return solve_jc_analytic(jc_params, small_space)


@pytest.fixture
def rabi_solution(rabi_params, small_space):
    return solve_rabi_analytic(rabi_params, small_space)


# ==========================================
# FIXTURES DE ESCENARIOS
# ==========================================

JC_SCENARIO = {
    'model': 'jc',
    'params': {'delta': 0.5, 'g': 0.3, 'nu': 0.8},
    'observable': 'sigma_z',
    'solver': 'analytic',
    'seed_state': {'type': 'coherent', 'alpha': 1.0, 'cutoff': 10},
    'state_kind': 'psi',
    'space': {'dim': 32},
    'grid': {'t_start': 0.0, 't_end': 10.0, 'steps': 41},
}


@pytest.fixture
def jc_scenario():
    """Documento JSON de un escenario JC chico (copia independiente por test)."""
    return copy.deepcopy(JC_SCENARIO)


@pytest.fixture
def write_scenario(tmp_path):
    """Escribe un documento de escenario y devuelve su ruta."""

    def _write(documento, nombre='scenario.json'):
        ruta = tmp_path / nombre
        ruta.write_text(json.dumps(documento), encoding='utf-8')
        return str(ruta)

    return _write


# ==========================================
# FIXTURES DE LA LÍNEA DE COMANDOS
# ==========================================

@pytest.fixture
def cli():
    """
    Fixture: línea de comandos en modo testing.

    PATRÓN: Factory Pattern (create_app('testing'))
    """
    return create_app('testing')


@pytest.fixture
def runner():
    return CliRunner()
