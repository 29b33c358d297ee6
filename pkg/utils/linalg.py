"""Ayudantes de álgebra lineal compartidos por los servicios numéricos."""

import numpy as np


def op_norm(m: np.ndarray) -> float:
    """Norma espectral (norma de operador)."""
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    if m.ndim == 1:
        return float(np.linalg.norm(m))
    return float(np.linalg.norm(m, 2))


def interior(m: np.ndarray, n: int) -> np.ndarray:
    """Bloque de filas/columnas 0..n−1 (excluye la banda de guarda)."""
    return np.asarray(m)[:n, :n]


def dagger(m: np.ndarray) -> np.ndarray:
    return np.asarray(m).conj().T
