from dataclasses import dataclass
from typing import Optional

import numpy as np

from .matrices import ComplexMatrix, frozen

KINDS = ('psi_branch', 'phi_branch', 'rabi_parity', 'product_control', 'perturbed')


@dataclass(frozen=True)
class DephasingState:
    """
    Estado inicial qubit ⊗ ambiente, normalizado.

    ``seed`` es el vector del ambiente con la constante de normalización ya
    absorbida (α(0) = ⟨seed|seed⟩ en la rama Ψ); ``raw_seed`` es el vector tal
    como lo pasó el usuario. ``branch`` indica qué generador lo evoluciona
    ('psi' → K₊, 'phi' → K₋, None → sin forma factorizada).
    """

    vec: ComplexMatrix
    kind: str
    seed: Optional[ComplexMatrix]
    raw_seed: Optional[ComplexMatrix] = None
    branch: Optional[str] = None
    eps: Optional[int] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"Tipo de estado desconocido: {self.kind}")
        vec = frozen(self.vec)
        if abs(np.linalg.norm(vec) - 1.0) > 1e-12:
            raise ValueError(f"El estado no está normalizado (‖vec‖ = {np.linalg.norm(vec):.15f})")
        object.__setattr__(self, 'vec', vec)
        if self.seed is not None:
            object.__setattr__(self, 'seed', frozen(self.seed))
        if self.raw_seed is not None:
            object.__setattr__(self, 'raw_seed', frozen(self.raw_seed))

    @property
    def env_dim(self) -> int:
        return self.vec.shape[0] // 2

    def coefficient_matrix(self) -> ComplexMatrix:
        """Matriz 2×dim de coeficientes c[q, n] = ⟨q, n|Ψ⟩."""
        return self.vec.reshape(2, self.env_dim)

    def __repr__(self):
        extra = f' ε={self.eps:+d}' if self.eps is not None else ''
        return f'<DephasingState {self.kind}{extra} dim={self.env_dim}>'
