"""
Dinámica: propagador exacto (oráculo) y propagador factorizado
==============================================================

Oráculo:       |Ψ(t)⟩ = e^{−iHt}|Ψ(0)⟩ con una sola autodescomposición de H.
Factorizado:   |Ω(t)⟩ = |λ₊⟩⊗e^{−iK₊t}ψ + |λ₋⟩⊗X e^{−iK₊t}ψ          (rama Ψ)
               |Ω(t)⟩ = |λ₋⟩⊗e^{−iK₋t}φ − |λ₊⟩⊗X† e^{−iK₋t}φ         (rama Φ)
               multiplicado por e^{−iH₀t} cuando hay una parte que conmuta.

c(t) es el elemento |+⟩⟨−| de ρ(t) en el marco propio de Λ.
"""

import logging
from typing import Callable, Optional, Tuple

import numpy as np
import scipy.linalg as la

from models import (BiorthoSystem, ComplexMatrix, ConservationReport, FockSpace, JcParams,
                    ObservableDiag, RiccatiSolution, TimeGrid, TimeSeries)
from utils.errors import DimensionError, NumericalError, SimulationError
from utils.linalg import dagger
from validators.matrix_validators import is_hermitian, require_finite, require_hermitian, require_square, require_vector

from .riccati import jc_kplus_diagonal, jc_xi

logger = logging.getLogger(__name__)

FACTORIZED_RESIDUAL_TOL = 1e-6


def matrix_exponential(a: ComplexMatrix, hermitian_hint: bool = False) -> ComplexMatrix:
    """
    e^{A}.

    Con ``hermitian_hint`` se espera A = −iHt: se diagonaliza iA con eigh.
    En otro caso (o si iA no resulta hermítica) se usa expm de scipy.
    """
    a = require_square(a, 'dynamics')
    require_finite(a, 'dynamics')
    if hermitian_hint:
        h = 1j * a
        if is_hermitian(h, 1e-12):
            valores, vectores = la.eigh((h + dagger(h)) / 2)
            return (vectores * np.exp(-1j * valores)) @ dagger(vectores)
        logger.debug("iA no es hermítica: se usa expm")
    return la.expm(a)


def _spectral_evolver(m: ComplexMatrix) -> Callable[[float, np.ndarray], np.ndarray]:
    """Devuelve t, v ↦ e^{−iMt}v reutilizando una sola autodescomposición."""
    m = np.asarray(m, dtype=complex)
    if is_hermitian(m, 1e-12):
        valores, vectores = la.eigh((m + dagger(m)) / 2)
        inversa = dagger(vectores)
    else:
        valores, vectores = la.eig(m)
        inversa = la.inv(vectores)

    def evolve(t: float, v: np.ndarray) -> np.ndarray:
        return vectores @ (np.exp(-1j * valores * t) * (inversa @ v))

    return evolve


def propagate_exact(h_total: ComplexMatrix, state, grid: TimeGrid) -> np.ndarray:
    """
    Trayectoria exacta; fila j = |Ψ(t_j)⟩.

    Args:
        h_total: Hamiltoniano completo (hermítico)
        state: DephasingState o vector del espacio completo
        grid: malla temporal
    """
    h = require_hermitian(h_total, 'dynamics')
    vec = require_vector(getattr(state, 'vec', state), h.shape[0], 'dynamics')
    valores, vectores = la.eigh((h + dagger(h)) / 2)
    coeficientes = dagger(vectores) @ vec
    fases = np.exp(-1j * np.outer(grid.times, valores))
    return (fases * coeficientes) @ vectores.T


def propagate_factorized(sol: RiccatiSolution, diag: ObservableDiag, seed, grid: TimeGrid,
                         space: FockSpace, h0: Optional[ComplexMatrix] = None,
                         branch: str = 'psi') -> np.ndarray:
    """
    Trayectoria factorizada de un estado de desfase; fila j = |Ω(t_j)⟩ en la base de σz.

    Raises:
        NumericalError: X no resuelve la ecuación en el interior
        DimensionError: la semilla alcanza la banda de guarda
    """
    if branch not in ('psi', 'phi'):
        raise SimulationError(f"Rama desconocida: {branch}", 'dynamics')
    if sol.interior_residual_norm >= FACTORIZED_RESIDUAL_TOL:
        raise NumericalError(
            f"Residuo interior {sol.interior_residual_norm:.3e}: la forma factorizada no aplica",
            'dynamics')
    seed = require_vector(seed, sol.dim, 'dynamics')
    if np.any(np.abs(seed[space.interior:]) > 0):
        raise DimensionError("La semilla tiene soporte en la banda de guarda", 'dynamics')

    if branch == 'psi':
        evolve = _spectral_evolver(sol.k_plus)
    else:
        evolve = _spectral_evolver(sol.k_minus)
    evolve_h0 = _spectral_evolver(h0) if h0 is not None else None
    x_dag = dagger(sol.x)

    filas = []
    for t in grid.times:
        rama = evolve(t, seed)
        if branch == 'psi':
            superior, inferior = rama, sol.x @ rama
        else:
            superior, inferior = -(x_dag @ rama), rama
        lab = np.concatenate([
            diag.u[0, 0] * superior + diag.u[0, 1] * inferior,
            diag.u[1, 0] * superior + diag.u[1, 1] * inferior,
        ])
        if evolve_h0 is not None:
            lab = evolve_h0(t, lab)
        filas.append(lab)
    return np.array(filas)


def reduced_density(full_state) -> ComplexMatrix:
    """ρ = Tr_E |Ψ⟩⟨Ψ| (2×2)."""
    vec = np.asarray(full_state, dtype=complex).reshape(-1)
    if vec.size % 2:
        raise DimensionError(f"Vector de dimensión impar: {vec.size}", 'dynamics')
    coeficientes = vec.reshape(2, -1)
    return coeficientes @ dagger(coeficientes)


def dephasing_coefficients(psi_t, sol: RiccatiSolution, branch: str = 'psi',
                           t: float = 0.0, nu: float = 0.0) -> Tuple[float, complex]:
    """
    α(t) y c(t) a partir del vector de la rama.

    Rama Ψ: α = ⟨ψ_t|ψ_t⟩, c = ⟨Xψ_t|ψ_t⟩.
    Rama Φ: α = ‖X†φ_t‖²,  c = −⟨φ_t|X†|φ_t⟩.
    Con la parte libre de Jaynes–Cummings c gana el factor e^{−iνt}.
    """
    v = require_vector(psi_t, sol.dim, 'dynamics')
    if branch == 'psi':
        superior, inferior = v, sol.x @ v
    elif branch == 'phi':
        superior, inferior = -(dagger(sol.x) @ v), v
    else:
        raise SimulationError(f"Rama desconocida: {branch}", 'dynamics')
    alpha = float(np.vdot(superior, superior).real)
    c = complex(np.vdot(inferior, superior)) * np.exp(-1j * nu * t)
    return alpha, complex(c)


def lambda_expectation(alpha, diag: ObservableDiag):
    """⟨Λ⟩ = αλ₊ + (1−α)λ₋"""
    alpha = np.asarray(alpha, dtype=float)
    if np.any(alpha < -1e-9) or np.any(alpha > 1 + 1e-9):
        raise SimulationError("α fuera de [0, 1]", 'dynamics')
    alpha = np.clip(alpha, 0.0, 1.0)
    valor = alpha * diag.lambda_plus + (1 - alpha) * diag.lambda_minus
    return float(valor) if valor.ndim == 0 else valor


def jc_coherence_series(seed, p: JcParams, grid: TimeGrid) -> np.ndarray:
    """
    c(t) = e^{−iνt} Σₙ ξₙ* e^{−iΩₙt} ⟨n+1|ψ⟩⟨ψ|n⟩,   Ωₙ = κ_{n+1} − κₙ

    con κₙ = √(δ² + |g|²(n+1)) la diagonal de K₊. ψ es la semilla con la
    normalización absorbida.
    """
    psi = np.asarray(seed, dtype=complex).reshape(-1)
    times = grid.times
    if p.g == 0 or psi.size < 2:
        return np.zeros(len(times), dtype=complex)

    n = np.arange(psi.size - 1)
    terminos = np.conj(jc_xi(p, n)) * psi[1:] * np.conj(psi[:-1])
    kappa = jc_kplus_diagonal(p, np.arange(psi.size))
    omega_n = kappa[1:] - kappa[:-1]
    serie = np.exp(-1j * np.outer(times, omega_n)) @ terminos
    return np.exp(-1j * p.nu * times) * serie


def biortho_series(seed, bio: BiorthoSystem, x: ComplexMatrix,
                   grid: TimeGrid) -> Tuple[np.ndarray, np.ndarray]:
    """
    α(t) y c(t) como sumas sobre el sistema biortonormal de K₊.

    Con amplitudes aₙ(t) = ⟨φₙ|ψ⟩ e^{−iEₙt}:
        α(t) = a†(S†S)a,   c(t) = a†(S†X†S)a

    Para ψ = ψₙ ambas series son constantes.
    """
    defecto = bio.completeness_defect()
    if defecto > 1e-8:
        raise NumericalError(f"Sistema biortonormal incompleto (defecto {defecto:.3e})", 'dynamics')
    psi = require_vector(seed, len(bio), 'dynamics')
    s = bio.psi_vecs
    gram = dagger(s) @ s
    gram_x = dagger(s) @ dagger(np.asarray(x, dtype=complex)) @ s

    amplitudes = (dagger(bio.phi_vecs) @ psi) * np.exp(-1j * np.outer(grid.times, bio.energies))
    alpha = np.einsum('ti,ij,tj->t', amplitudes.conj(), gram, amplitudes).real
    coherencia = np.einsum('ti,ij,tj->t', amplitudes.conj(), gram_x, amplitudes)
    return alpha, coherencia


def leakage(full_state, space: FockSpace) -> float:
    """Población en los niveles del ambiente ≥ dim − guard."""
    vec = np.asarray(full_state, dtype=complex).reshape(-1)
    if vec.size != space.full_dim:
        raise DimensionError(f"Se esperaba dimensión {space.full_dim}, se recibió {vec.size}", 'dynamics')
    if space.guard == 0:
        return 0.0
    coeficientes = vec.reshape(2, space.dim)
    return float(np.sum(np.abs(coeficientes[:, space.interior:]) ** 2))


def build_time_series(times: np.ndarray, exact: np.ndarray, factorized: Optional[np.ndarray],
                      diag: ObservableDiag, space: FockSpace) -> TimeSeries:
    """
    Arma la TimeSeries: ⟨Λ⟩, α y c salen del oráculo rotado al marco de Λ;
    la fidelidad compara con la trayectoria factorizada (NaN si no hay).
    """
    exact = np.asarray(exact, dtype=complex)
    if exact.shape != (len(times), space.full_dim):
        raise DimensionError(f"Trayectoria exacta con forma {exact.shape}", 'dynamics')

    marco = np.einsum('qp,tpn->tqn', dagger(diag.u), exact.reshape(len(times), 2, space.dim))
    alpha = np.sum(np.abs(marco[:, 0, :]) ** 2, axis=1)
    beta = np.sum(np.abs(marco[:, 1, :]) ** 2, axis=1)
    coherencia = np.sum(marco[:, 0, :] * np.conj(marco[:, 1, :]), axis=1)
    lambda_expect = diag.lambda_plus * alpha + diag.lambda_minus * beta

    if factorized is None:
        fidelidad = np.full(len(times), np.nan)
    else:
        fidelidad = np.abs(np.einsum('tn,tn->t', exact.conj(), np.asarray(factorized, dtype=complex)))
    fuga = np.array([leakage(v, space) for v in exact])

    return TimeSeries(times=times, lambda_expect=lambda_expect, alpha=np.clip(alpha, 0.0, 1.0),
                      coherence=coherencia, fidelity=fidelidad, leakage=fuga)


def conservation_report(ts: TimeSeries, drift_tolerance: float = 1e-8,
                        leak_tolerance: float = 1e-8) -> ConservationReport:
    """Deriva máxima de ⟨Λ⟩ respecto de t₀ y fuga máxima."""
    deriva = float(np.max(np.abs(ts.lambda_expect - ts.lambda_expect[0])))
    return ConservationReport(max_drift=deriva, leak_max=float(np.max(ts.leakage)),
                              drift_tolerance=drift_tolerance, leak_tolerance=leak_tolerance)
