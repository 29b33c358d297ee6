"""Matrices complejas densas usadas como portadoras de operadores y vectores."""

import numpy as np
from numpy.typing import NDArray

# Operadores y vectores: arreglos complejos densos (los vectores son planos)
ComplexMatrix = NDArray[np.complex128]


def frozen(m, dtype=complex) -> ComplexMatrix:
    """Copia de solo lectura; los valores del dominio son inmutables."""
    arr = np.array(m, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr
