from .matrices import ComplexMatrix, frozen
from .fock_space import FockSpace
from .observable import ObservableDiag
from .block_hamiltonian import BlockHamiltonian
from .parameters import JcParams, RabiParams
from .riccati_solution import RiccatiSolution, BiorthoSystem
from .state import DephasingState
from .time_series import TimeGrid, TimeSeries, ConservationReport
from .scenario import ScenarioConfig
from .model_setup import ModelSetup

__all__ = [
    'ComplexMatrix',
    'frozen',
    'FockSpace',
    'ObservableDiag',
    'BlockHamiltonian',
    'JcParams',
    'RabiParams',
    'RiccatiSolution',
    'BiorthoSystem',
    'DephasingState',
    'TimeGrid',
    'TimeSeries',
    'ConservationReport',
    'ScenarioConfig',
    'ModelSetup'
]
