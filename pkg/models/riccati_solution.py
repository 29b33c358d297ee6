from dataclasses import dataclass

import numpy as np

from .matrices import ComplexMatrix, frozen


@dataclass(frozen=True)
class RiccatiSolution:
    """
    Solución X de la ecuación de Riccati XVX + XH₊ − H₋X − V† = 0 y sus derivados.

    - k_plus  = H₊ + VX      (genera la rama Ψ)
    - k_minus = H₋ − V†X†    (genera la rama Φ)
    - eta = I + X†X, xi = I + XX† (métricas)
    """

    x: ComplexMatrix
    k_plus: ComplexMatrix
    k_minus: ComplexMatrix
    eta: ComplexMatrix
    xi: ComplexMatrix
    residual_norm: float
    interior_residual_norm: float
    method: str = 'analytic'
    note: str = ''

    def __post_init__(self):
        for nombre in ('x', 'k_plus', 'k_minus', 'eta', 'xi'):
            object.__setattr__(self, nombre, frozen(getattr(self, nombre)))
        if self.residual_norm < 0 or self.interior_residual_norm < 0:
            raise ValueError("Las normas de residuo no pueden ser negativas")

    @property
    def dim(self) -> int:
        return self.x.shape[0]

    def __repr__(self):
        return (f'<RiccatiSolution {self.method} dim={self.dim} '
                f'residuo={self.residual_norm:.3e} interior={self.interior_residual_norm:.3e}>')


@dataclass(frozen=True)
class BiorthoSystem:
    """
    Sistema biortonormal de K₊: K₊ψₙ = Eₙψₙ, K₊†φₙ = Eₙ*φₙ, ⟨ψₙ|φₘ⟩ = δₙₘ.

    ``psi_vecs`` y ``phi_vecs`` guardan los vectores como columnas.
    """

    energies: np.ndarray
    psi_vecs: ComplexMatrix
    phi_vecs: ComplexMatrix

    def __post_init__(self):
        object.__setattr__(self, 'energies', frozen(self.energies))
        object.__setattr__(self, 'psi_vecs', frozen(self.psi_vecs))
        object.__setattr__(self, 'phi_vecs', frozen(self.phi_vecs))

    def __len__(self):
        return len(self.energies)

    @property
    def max_imag(self) -> float:
        return float(np.max(np.abs(self.energies.imag), initial=0.0))

    def is_real(self, tol: float = 1e-8) -> bool:
        return self.max_imag < tol

    def biorthonormality_defect(self) -> float:
        """max |⟨ψₙ|φₘ⟩ − δₙₘ|"""
        gram = self.psi_vecs.conj().T @ self.phi_vecs
        return float(np.max(np.abs(gram - np.eye(len(self)))))

    def completeness_defect(self) -> float:
        """‖Σ|ψₙ⟩⟨φₙ| − I‖"""
        suma = self.psi_vecs @ self.phi_vecs.conj().T
        return float(np.linalg.norm(suma - np.eye(len(self)), 2))
