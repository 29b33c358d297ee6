"""
Estados iniciales qubit ⊗ ambiente
==================================

Rama Ψ (conservan Λ):   |Ψ⟩ ∝ |λ₊⟩⊗ψ + |λ₋⟩⊗Xψ
Rama Φ (ortogonales):   |Φ⟩ ∝ |λ₋⟩⊗φ − |λ₊⟩⊗X†φ
Paridad (Rabi):         |Ψ_ε⟩ ∝ |+⟩⊗P_εψ + |−⟩⊗P_{−ε}ψ,  P± = (I ± X_k)/2

La constante de normalización se absorbe en la semilla guardada, de modo que
α(0) = ⟨seed|seed⟩ en la rama Ψ.
"""

import logging
import math
from typing import Sequence, Tuple

import numpy as np

from models import ComplexMatrix, DephasingState, FockSpace, ObservableDiag, RiccatiSolution
from utils.errors import DimensionError, SimulationError
from utils.linalg import dagger
from validators.matrix_validators import require_vector

from .operators import tensor

logger = logging.getLogger(__name__)

ZERO_TOL = 1e-12


def _require_nonzero(v: np.ndarray, nombre: str) -> float:
    norma = float(np.linalg.norm(v))
    if norma < ZERO_TOL:
        raise SimulationError(f"El vector {nombre} es nulo", 'states')
    return norma


def dephasing_state(sol: RiccatiSolution, diag: ObservableDiag, psi) -> DephasingState:
    """|λ₊⟩⊗ψ + |λ₋⟩⊗Xψ normalizado; con X = 0 es el producto |λ₊⟩⊗ψ̂."""
    psi = require_vector(psi, sol.dim, 'states')
    _require_nonzero(psi, 'ψ')
    x_psi = sol.x @ psi
    norma = math.sqrt(float(np.vdot(psi, psi).real + np.vdot(x_psi, x_psi).real))
    vec = (tensor(diag.ket_plus, psi) + tensor(diag.ket_minus, x_psi)) / norma
    return DephasingState(vec=vec, kind='psi_branch', seed=psi / norma, raw_seed=psi, branch='psi')


def orthogonal_state(sol: RiccatiSolution, diag: ObservableDiag, phi) -> DephasingState:
    """|λ₋⟩⊗φ − |λ₊⟩⊗X†φ normalizado; ortogonal a todo estado de la rama Ψ."""
    phi = require_vector(phi, sol.dim, 'states')
    _require_nonzero(phi, 'φ')
    xd_phi = dagger(sol.x) @ phi
    norma = math.sqrt(float(np.vdot(phi, phi).real + np.vdot(xd_phi, xd_phi).real))
    vec = (tensor(diag.ket_minus, phi) - tensor(diag.ket_plus, xd_phi)) / norma
    return DephasingState(vec=vec, kind='phi_branch', seed=phi / norma, raw_seed=phi, branch='phi')


def rabi_parity_state(x_k: ComplexMatrix, psi, eps: int) -> DephasingState:
    """
    Estado de paridad definida del Rabi de k fotones, escrito en la base de σz.

    En el marco de σx coincide con (|λ₊⟩⊗ψ + ε|λ₋⟩⊗X_kψ)/√2: para ε = +1 es
    un estado de la rama Ψ con semilla ψ/(√2‖ψ‖); para ε = −1 uno de la rama Φ
    con semilla −X_kψ/(√2‖ψ‖).

    Raises:
        SimulationError: si P_εψ = 0 (ψ entero en el sector opuesto)
    """
    if eps not in (1, -1):
        raise SimulationError(f"ε debe ser +1 o −1 (se recibió {eps})", 'states')
    x_k = np.asarray(x_k, dtype=complex)
    psi = require_vector(psi, x_k.shape[0], 'states')
    norma = _require_nonzero(psi, 'ψ')

    p_plus = (psi + x_k @ psi) / 2
    p_minus = (psi - x_k @ psi) / 2
    propio, opuesto = (p_plus, p_minus) if eps == 1 else (p_minus, p_plus)
    if np.linalg.norm(propio) < ZERO_TOL * norma:
        raise SimulationError(f"P_εψ = 0 para ε = {eps:+d}: ψ está en el sector opuesto", 'states')

    vec = np.concatenate([propio, opuesto]) / norma
    base = psi / (math.sqrt(2) * norma)
    if eps == 1:
        return DephasingState(vec=vec, kind='rabi_parity', seed=base, raw_seed=psi,
                              branch='psi', eps=1)
    return DephasingState(vec=vec, kind='rabi_parity', seed=-(x_k @ base), raw_seed=psi,
                          branch='phi', eps=-1)


def product_state(diag: ObservableDiag, psi) -> DephasingState:
    """|λ₊⟩⊗ψ̂: control negativo (no conserva Λ cuando X ≠ 0)."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    norma = _require_nonzero(psi, 'ψ')
    return DephasingState(vec=tensor(diag.ket_plus, psi / norma), kind='product_control',
                          seed=psi / norma, raw_seed=psi)


def perturbed_state(state: DephasingState, amplitude: float, rng_seed: int,
                    space: FockSpace) -> DephasingState:
    """
    Preparación imperfecta: normalize(vec + amplitude·r).

    r es un vector unitario aleatorio (semilla fija) soportado en el interior
    del espacio de Fock. El resultado ya no es un estado de desfase.
    """
    if amplitude < 0:
        raise SimulationError("La amplitud de ruido no puede ser negativa", 'states')
    if state.env_dim != space.dim:
        raise DimensionError(
            f"El estado tiene dim {state.env_dim} y el espacio {space.dim}", 'states')
    rng = np.random.default_rng(rng_seed)
    ruido = np.zeros((2, space.dim), dtype=complex)
    forma = (2, space.interior)
    ruido[:, :space.interior] = rng.standard_normal(forma) + 1j * rng.standard_normal(forma)
    ruido = ruido.reshape(-1)
    ruido /= np.linalg.norm(ruido)

    vec = state.vec + amplitude * ruido
    vec = vec / np.linalg.norm(vec)
    logger.debug("Estado perturbado: amplitud %.3g, semilla %d", amplitude, rng_seed)
    return DephasingState(vec=vec, kind='perturbed', seed=None, raw_seed=state.raw_seed,
                          eps=state.eps)


def schmidt_analysis(state: DephasingState, tol: float = 1e-10) -> Tuple[int, np.ndarray]:
    """Rango de Schmidt y coeficientes (valores singulares de la matriz 2×dim)."""
    coeficientes = np.linalg.svd(state.coefficient_matrix(), compute_uv=False)
    return int(np.sum(coeficientes > tol)), coeficientes


# ---------------------------------------------------------------------------
# Semillas del ambiente
# ---------------------------------------------------------------------------

def _require_below_guard(space: FockSpace, soporte: int, nombre: str) -> None:
    if soporte > space.interior:
        raise DimensionError(
            f"La semilla {nombre} ocupa {soporte} niveles y alcanza la banda de guarda "
            f"(interior = {space.interior})", 'states')


def fock_seed(space: FockSpace, m: int) -> np.ndarray:
    """|m⟩"""
    if m < 0:
        raise SimulationError(f"Nivel de Fock negativo: {m}", 'states')
    _require_below_guard(space, m + 1, 'de Fock')
    psi = np.zeros(space.dim, dtype=complex)
    psi[m] = 1.0
    return psi


def coherent_seed(space: FockSpace, alpha: complex, cutoff: int) -> np.ndarray:
    """Amplitudes e^{−|α|²/2} αⁿ/√n! para n ≤ cutoff (sin renormalizar)."""
    if cutoff < 0:
        raise SimulationError(f"cutoff negativo: {cutoff}", 'states')
    _require_below_guard(space, cutoff + 1, 'coherente')
    psi = np.zeros(space.dim, dtype=complex)
    psi[0] = math.exp(-abs(alpha) ** 2 / 2)
    for n in range(1, cutoff + 1):
        psi[n] = psi[n - 1] * alpha / math.sqrt(n)
    return psi


def explicit_seed(space: FockSpace, amplitudes: Sequence[complex]) -> np.ndarray:
    """Amplitudes explícitas desde |0⟩, completadas con ceros."""
    amplitudes = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if amplitudes.size == 0:
        raise SimulationError("La lista de amplitudes está vacía", 'states')
    _require_below_guard(space, amplitudes.size, 'explícita')
    psi = np.zeros(space.dim, dtype=complex)
    psi[:amplitudes.size] = amplitudes
    _require_nonzero(psi, 'ψ')
    return psi
