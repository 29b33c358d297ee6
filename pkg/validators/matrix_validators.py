"""
Validaciones de contratos matriciales
=====================================

PATRÓN: Specification Pattern
- Cada regla (cuadrada, hermítica, unitaria) es una función pequeña y reutilizable
- Las operaciones numéricas las combinan en sus precondiciones

Las reglas devuelven el arreglo como complejo para que el llamador pueda
encadenar: ``h = require_hermitian(h, 'blockform')``.
"""

import numpy as np

from utils.errors import DimensionError, NonHermitianError, NumericalError


def hermiticity_defect(m: np.ndarray) -> float:
    """Norma espectral de M − M†."""
    m = np.asarray(m)
    return float(np.linalg.norm(m - m.conj().T, 2))


def is_hermitian(m: np.ndarray, tol: float = 1e-12) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    escala = max(1.0, float(np.max(np.abs(m), initial=0.0)))
    return hermiticity_defect(m) <= tol * escala


def is_unitary(m: np.ndarray, tol: float = 1e-12) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return float(np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0]), 2)) <= tol


def require_square(m: np.ndarray, modulo: str = 'core') -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"Se esperaba una matriz cuadrada, se recibió forma {m.shape}", modulo)
    return m


def require_hermitian(m: np.ndarray, modulo: str = 'core', tol: float = 1e-10) -> np.ndarray:
    m = require_square(m, modulo)
    if not is_hermitian(m, tol):
        raise NonHermitianError(
            f"La matriz no es hermítica (‖M − M†‖ = {hermiticity_defect(m):.3e})", modulo
        )
    return m


def require_same_shape(a: np.ndarray, b: np.ndarray, modulo: str = 'core') -> None:
    if np.shape(a) != np.shape(b):
        raise DimensionError(f"Formas incompatibles: {np.shape(a)} vs {np.shape(b)}", modulo)


def require_vector(v: np.ndarray, dim: int, modulo: str = 'core') -> np.ndarray:
    """Acepta vectores planos o columnas; devuelve un vector plano complejo."""
    v = np.asarray(v, dtype=complex)
    if v.ndim == 2 and 1 in v.shape:
        v = v.reshape(-1)
    if v.ndim != 1 or v.shape[0] != dim:
        raise DimensionError(f"Se esperaba un vector de dimensión {dim}, forma {v.shape}", modulo)
    return v


def require_finite(m: np.ndarray, modulo: str = 'core') -> np.ndarray:
    m = np.asarray(m)
    if not np.all(np.isfinite(m)):
        raise NumericalError("La matriz contiene entradas no finitas", modulo)
    return m
