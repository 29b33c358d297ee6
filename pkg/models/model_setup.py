from dataclasses import dataclass
from typing import Optional, Union

from .block_hamiltonian import BlockHamiltonian
from .fock_space import FockSpace
from .matrices import ComplexMatrix, frozen
from .observable import ObservableDiag
from .parameters import JcParams, RabiParams


@dataclass(frozen=True)
class ModelSetup:
    """
    Modelo listo para resolver: Hamiltoniano completo, marco de Λ y bloques.

    ``h0`` solo existe para Jaynes–Cummings en el marco trivial (Λ = σz): los
    bloques son entonces los de V_int y la parte libre se aplica aparte.
    """

    model: str
    h_total: ComplexMatrix
    diag: ObservableDiag
    blocks: BlockHamiltonian
    space: FockSpace
    params: Optional[Union[JcParams, RabiParams]] = None
    h0: Optional[ComplexMatrix] = None

    def __post_init__(self):
        object.__setattr__(self, 'h_total', frozen(self.h_total))
        if self.h0 is not None:
            object.__setattr__(self, 'h0', frozen(self.h0))

    @property
    def split(self) -> bool:
        return self.h0 is not None
