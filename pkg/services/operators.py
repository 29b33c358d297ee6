"""
Operadores del espacio de Fock truncado y del qubit
===================================================

Convenciones:
- El factor del qubit va SIEMPRE primero en los productos tensoriales.
- Base del qubit ordenada como |+⟩, |−⟩ (autoestados de σz).
- La truncación solo rompe [a, a†] = I en la última fila; los contratos se
  verifican en el interior y la banda de guarda se excluye en los tests.
"""

from typing import NamedTuple, Tuple

import numpy as np

from models import ComplexMatrix, FockSpace
from utils.errors import DimensionError


class QubitOps(NamedTuple):
    """Matrices de Pauli y escaleras del qubit."""
    sx: ComplexMatrix
    sy: ComplexMatrix
    sz: ComplexMatrix
    sp: ComplexMatrix
    sm: ComplexMatrix
    i2: ComplexMatrix


def fock_ladder(space: FockSpace) -> Tuple[ComplexMatrix, ComplexMatrix, ComplexMatrix]:
    """
    Operadores de aniquilación, creación y número truncados.

    a|n⟩ = √n|n−1⟩; a_dag = a†; n_op = a†a = diag(0, 1, ..., dim−1).
    """
    a = np.diag(np.sqrt(np.arange(1, space.dim, dtype=float)), k=1).astype(complex)
    a_dag = a.conj().T
    n_op = np.diag(np.arange(space.dim, dtype=float)).astype(complex)
    return a, a_dag, n_op


def qubit_ops() -> QubitOps:
    """
    σx, σy, σz, σ₊, σ₋, I₂ en la base {|+⟩, |−⟩}.

    σ₊|−⟩ = |+⟩ y σ₊|+⟩ = 0.
    """
    sp = np.array([[0, 1], [0, 0]], dtype=complex)
    sm = sp.conj().T
    return QubitOps(
        sx=np.array([[0, 1], [1, 0]], dtype=complex),
        sy=np.array([[0, -1j], [1j, 0]], dtype=complex),
        sz=np.array([[1, 0], [0, -1]], dtype=complex),
        sp=sp,
        sm=sm,
        i2=np.eye(2, dtype=complex),
    )


def tensor(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Producto de Kronecker A ⊗ B (el qubit es el primer factor)."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def partial_trace_env(m: ComplexMatrix, space: FockSpace) -> ComplexMatrix:
    """
    Traza parcial sobre el ambiente: devuelve la matriz 2×2 del qubit.

    Cumple Tr[Λ·Tr_E(ϱ)] = Tr[(Λ⊗I_E)·ϱ] para toda Λ de 2×2.
    """
    m = np.asarray(m, dtype=complex)
    d = space.dim
    if m.shape != (2 * d, 2 * d):
        raise DimensionError(
            f"partial_trace_env espera una matriz {2 * d}×{2 * d}, forma {m.shape}", 'operators'
        )
    return np.einsum('ajbj->ab', m.reshape(2, d, 2, d))


def ladder_power(space: FockSpace, k: int) -> ComplexMatrix:
    """aᵏ truncado."""
    a, _, _ = fock_ladder(space)
    return np.linalg.matrix_power(a, k)


def generalized_parity(k: int, space: FockSpace) -> ComplexMatrix:
    """
    Paridad generalizada X_k = diag((−1)^⌊m/k⌋).

    Hermítica y unitaria (X_k² = I); para k = 1 es la paridad bosónica e^{iπa†a}.
    Cumple X_k aᵏ X_k = −aᵏ.
    """
    if int(k) != k or k < 1:
        raise ValueError(f"k debe ser un entero ≥ 1 (se recibió {k})")
    signos = np.where((np.arange(space.dim) // int(k)) % 2 == 0, 1.0, -1.0)
    return np.diag(signos).astype(complex)


def embed_env(op: ComplexMatrix) -> ComplexMatrix:
    """I₂ ⊗ O"""
    return tensor(np.eye(2), op)


def embed_qubit(op: ComplexMatrix, space: FockSpace) -> ComplexMatrix:
    """O ⊗ I_E"""
    return tensor(op, np.eye(space.dim))
