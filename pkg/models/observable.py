from dataclasses import dataclass

import numpy as np

from .matrices import ComplexMatrix, frozen


@dataclass(frozen=True)
class ObservableDiag:
    """
    Diagonalización de un observable Λ del qubit.

    ``u`` tiene como columnas los autovectores |λ₊⟩, |λ₋⟩ (u†Λu = diag(λ₊, λ₋)).
    El marco de la Kamiltoniana se obtiene con (u†⊗I) H (u⊗I).
    """

    lambda_plus: float
    lambda_minus: float
    u: ComplexMatrix
    degenerate: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'u', frozen(self.u))
        if self.u.shape != (2, 2):
            raise ValueError("u debe ser 2×2")
        if self.lambda_plus < self.lambda_minus:
            raise ValueError("Se requiere λ₊ ≥ λ₋")

    @property
    def ket_plus(self) -> ComplexMatrix:
        """|λ₊⟩ = u|+⟩"""
        return self.u[:, 0]

    @property
    def ket_minus(self) -> ComplexMatrix:
        """|λ₋⟩ = u|−⟩"""
        return self.u[:, 1]

    @property
    def matrix(self) -> ComplexMatrix:
        """Reconstruye Λ = u·diag(λ₊, λ₋)·u†."""
        return self.u @ np.diag([self.lambda_plus, self.lambda_minus]) @ self.u.conj().T

    def __repr__(self):
        flag = ' degenerado' if self.degenerate else ''
        return f'<ObservableDiag λ₊={self.lambda_plus:.6g} λ₋={self.lambda_minus:.6g}{flag}>'
