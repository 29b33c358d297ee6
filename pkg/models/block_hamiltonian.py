from dataclasses import dataclass

import numpy as np

from validators.matrix_validators import hermiticity_defect, is_hermitian

from .fock_space import FockSpace
from .matrices import ComplexMatrix, frozen


@dataclass(frozen=True)
class BlockHamiltonian:
    """
    Forma en bloques de la Kamiltoniana:

        K = |+⟩⟨+|⊗H₊ + |−⟩⟨−|⊗H₋ + |+⟩⟨−|⊗V + |−⟩⟨+|⊗V†
    """

    h_plus: ComplexMatrix
    h_minus: ComplexMatrix
    v: ComplexMatrix
    space: FockSpace

    def __post_init__(self):
        d = self.space.dim
        for nombre in ('h_plus', 'h_minus', 'v'):
            m = frozen(getattr(self, nombre))
            if m.shape != (d, d):
                raise ValueError(f"{nombre} debe ser {d}×{d}, forma {m.shape}")
            object.__setattr__(self, nombre, m)
        for nombre in ('h_plus', 'h_minus'):
            m = getattr(self, nombre)
            if not is_hermitian(m, 1e-12):
                raise ValueError(f"{nombre} no es hermítica (defecto {hermiticity_defect(m):.3e})")

    @property
    def v_dag(self) -> ComplexMatrix:
        return self.v.conj().T

    def __repr__(self):
        return f'<BlockHamiltonian dim={self.space.dim} ‖V‖={np.linalg.norm(self.v):.4g}>'
