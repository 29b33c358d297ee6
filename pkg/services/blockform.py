"""
Forma en bloques de la Kamiltoniana
===================================

Construye los Hamiltonianos modelo (Jaynes–Cummings, Rabi de k fotones),
diagonaliza el observable Λ del qubit, rota al marco de la Kamiltoniana

    K = (u†⊗I) H (u⊗I),      u†Λu = diag(λ₊, λ₋)

y extrae/ensambla los bloques (H₊, H₋, V).
"""

import logging
from typing import Tuple

import numpy as np
import scipy.linalg as la

from models import BlockHamiltonian, ComplexMatrix, FockSpace, JcParams, ObservableDiag, RabiParams
from utils.errors import DimensionError, NonHermitianError
from validators.matrix_validators import hermiticity_defect, is_hermitian, require_hermitian

from .operators import fock_ladder, ladder_power, qubit_ops, tensor

logger = logging.getLogger(__name__)

DEGENERACY_TOL = 1e-12


def _fix_column_phase(col: np.ndarray) -> np.ndarray:
    """La primera entrada de módulo máximo queda real no negativa."""
    mod = np.abs(col)
    idx = int(np.flatnonzero(mod >= mod.max() - 1e-12)[0])
    return col * (np.conj(col[idx]) / mod[idx])


def diagonalize_observable(lambda_mat: ComplexMatrix) -> ObservableDiag:
    """
    Autovalores λ₊ ≥ λ₋ y autovectores (columnas de u) del observable Λ.

    Un espectro degenerado no es un error: la conservación es trivial para
    todo estado, se devuelve u = I con la bandera ``degenerate``.
    """
    lam = np.asarray(lambda_mat, dtype=complex)
    if lam.shape != (2, 2):
        raise DimensionError(f"El observable debe ser 2×2, forma {lam.shape}", 'blockform')
    lam = require_hermitian(lam, 'blockform', tol=1e-10)

    if lam[0, 1] == 0:
        # ya diagonal: el marco es exacto (u = I o el intercambio de niveles)
        a, b = float(lam[0, 0].real), float(lam[1, 1].real)
        valores = np.array([min(a, b), max(a, b)])
        vectores = np.eye(2, dtype=complex) if a < b else np.eye(2, dtype=complex)[:, ::-1]
    else:
        valores, vectores = la.eigh((lam + lam.conj().T) / 2)
    lambda_minus, lambda_plus = float(valores[0]), float(valores[1])

    if lambda_plus - lambda_minus < DEGENERACY_TOL:
        media = (lambda_plus + lambda_minus) / 2
        logger.info("Observable degenerado (λ = %.6g): conservación trivial", media)
        return ObservableDiag(media, media, np.eye(2, dtype=complex), degenerate=True)

    u = np.column_stack([_fix_column_phase(vectores[:, 1]), _fix_column_phase(vectores[:, 0])])
    return ObservableDiag(lambda_plus, lambda_minus, u)


def to_kamiltonian(h_total: ComplexMatrix, diag: ObservableDiag, space: FockSpace) -> ComplexMatrix:
    """K = (u†⊗I_E) H (u⊗I_E): hermítica e isoespectral con H."""
    h = np.asarray(h_total, dtype=complex)
    if h.shape != (space.full_dim, space.full_dim):
        raise DimensionError(
            f"H debe ser {space.full_dim}×{space.full_dim}, forma {h.shape}", 'blockform'
        )
    require_hermitian(h, 'blockform')
    w = tensor(diag.u, np.eye(space.dim))
    return w.conj().T @ h @ w


def block_decompose(k_mat: ComplexMatrix, space: FockSpace) -> BlockHamiltonian:
    """
    Lee H₊ = ⟨+|K|+⟩, H₋ = ⟨−|K|−⟩ y V = ⟨+|K|−⟩.

    K debe ser hermítica, con lo cual ⟨−|K|+⟩ = V† y el ensamblado la recupera.
    """
    k = np.asarray(k_mat, dtype=complex)
    d = space.dim
    if k.shape != (2 * d, 2 * d):
        raise DimensionError(f"K debe ser {2 * d}×{2 * d}, forma {k.shape}", 'blockform')
    if not is_hermitian(k, 1e-10):
        raise NonHermitianError(
            f"K no es hermítica (‖K − K†‖ = {hermiticity_defect(k):.3e})", 'blockform'
        )
    h_plus = k[:d, :d]
    h_minus = k[d:, d:]
    return BlockHamiltonian(
        h_plus=(h_plus + h_plus.conj().T) / 2,
        h_minus=(h_minus + h_minus.conj().T) / 2,
        v=k[:d, d:],
        space=space,
    )


def block_assemble(blocks: BlockHamiltonian) -> ComplexMatrix:
    """Inversa de block_decompose."""
    return np.block([[blocks.h_plus, blocks.v], [blocks.v_dag, blocks.h_minus]])


def jc_model(p: JcParams, space: FockSpace) -> Tuple[ComplexMatrix, ComplexMatrix, ComplexMatrix]:
    """
    Modelo de Jaynes–Cummings y su partición en dos partes que conmutan.

        H     = ω σz⊗I + ν I⊗a†a + (g* σ₊⊗a + g σ₋⊗a†)
        H₀    = ν (I⊗a†a + ½ σz⊗I)
        V_int = δ σz⊗I + (g* σ₊⊗a + g σ₋⊗a†),   δ = ω − ν/2

    H = H₀ + V_int y [H₀, V_int] = 0 (también en el espacio truncado).
    """
    q = qubit_ops()
    a, a_dag, n_op = fock_ladder(space)
    ident = np.eye(space.dim)

    interaccion = np.conj(p.g) * tensor(q.sp, a) + p.g * tensor(q.sm, a_dag)
    sz = tensor(q.sz, ident)
    numero = tensor(q.i2, n_op)

    h_total = p.omega * sz + p.nu * numero + interaccion
    h0 = p.nu * (numero + 0.5 * sz)
    v_int = p.delta * sz + interaccion
    return h_total, h0, v_int


def jc_split_blocks(p: JcParams, space: FockSpace) -> BlockHamiltonian:
    """Bloques de V_int: H₊ = δI, H₋ = −δI, V = g*·a."""
    _, _, v_int = jc_model(p, space)
    return block_decompose(v_int, space)


def rabi_model(p: RabiParams, space: FockSpace) -> ComplexMatrix:
    """
    Modelo de Rabi de k fotones:

        H = ω σz⊗I + ν I⊗a†a + σx⊗(g* aᵏ + g (a†)ᵏ)
    """
    if p.k >= space.dim:
        raise DimensionError(f"k = {p.k} debe ser menor que dim = {space.dim}", 'blockform')
    q = qubit_ops()
    _, _, n_op = fock_ladder(space)
    ak = ladder_power(space, p.k)
    acople = np.conj(p.g) * ak + p.g * ak.conj().T
    h_total = (p.omega * tensor(q.sz, np.eye(space.dim))
               + p.nu * tensor(q.i2, n_op)
               + tensor(q.sx, acople))
    return h_total


def rabi_blocks(p: RabiParams, space: FockSpace) -> Tuple[ObservableDiag, BlockHamiltonian]:
    """
    Bloques del modelo de Rabi en el marco de σx:

        H± = ν a†a ± (g* aᵏ + g (a†)ᵏ),   V = ω I
    """
    diag = diagonalize_observable(qubit_ops().sx)
    k_mat = to_kamiltonian(rabi_model(p, space), diag, space)
    return diag, block_decompose(k_mat, space)
