"""
Ecuación de Riccati del operador X
==================================

    X V X + X H₊ − H₋ X − V† = 0

Con X resuelto, S = [[I, −X†], [X, I]] block-diagonaliza la Kamiltoniana:

    S⁻¹ K S = diag(K₊, K₋),   K₊ = H₊ + V X,   K₋ = H₋ − V† X†

Tres constructores de X:
- solve_jc_analytic:    X = Σ ξₙ |n+1⟩⟨n| (Jaynes–Cummings)
- solve_rabi_analytic:  X = X_k (paridad generalizada, Rabi de k fotones)
- solve_graph_subspace: X = B T⁻¹ a partir del subespacio gráfico [I; X] de K

Los residuos y las identidades de semejanza se informan sobre todo el espacio
truncado y sobre el interior (sin la banda de guarda).
"""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np
import scipy.linalg as la

from models import BiorthoSystem, BlockHamiltonian, ComplexMatrix, FockSpace, JcParams, RabiParams, RiccatiSolution
from utils.errors import BranchSelectionError, ConditioningError, DimensionError, NumericalError
from utils.linalg import dagger, interior, op_norm
from validators.matrix_validators import is_hermitian, require_same_shape

from .blockform import block_assemble, jc_split_blocks, rabi_blocks
from .operators import fock_ladder, generalized_parity

logger = logging.getLogger(__name__)

TIE_TOL = 1e-9
KAMILTONIAN_RESIDUAL_TOL = 1e-6
BIORTHO_TOL = 1e-8


def residual(x: ComplexMatrix, blocks: BlockHamiltonian) -> ComplexMatrix:
    """XVX + XH₊ − H₋X − V†"""
    x = np.asarray(x, dtype=complex)
    require_same_shape(x, blocks.v, 'riccati')
    return x @ blocks.v @ x + x @ blocks.h_plus - blocks.h_minus @ x - blocks.v_dag


def jc_residual(x: ComplexMatrix, p: JcParams, space: FockSpace) -> ComplexMatrix:
    """Forma especializada para Jaynes–Cummings: g* XaX + 2δX − g a†."""
    x = np.asarray(x, dtype=complex)
    a, a_dag, _ = fock_ladder(space)
    require_same_shape(x, a, 'riccati')
    return np.conj(p.g) * x @ a @ x + 2 * p.delta * x - p.g * a_dag


def similarity_matrix(x: ComplexMatrix) -> ComplexMatrix:
    """S = [[I, −X†], [X, I]]"""
    x = np.asarray(x, dtype=complex)
    ident = np.eye(x.shape[0])
    return np.block([[ident, -dagger(x)], [x, ident]])


def kamiltonians(blocks: BlockHamiltonian, x: ComplexMatrix,
                 max_condition: float = 1e10) -> Tuple[ComplexMatrix, ComplexMatrix]:
    """
    Generadores de las dos ramas: K₊ = H₊ + VX y K₋ = H₋ − V†X†.

    Raises:
        NumericalError: si X no resuelve la ecuación en el interior
        ConditioningError: si S está mal condicionada
    """
    x = np.asarray(x, dtype=complex)
    n_int = blocks.space.interior
    defecto = op_norm(interior(residual(x, blocks), n_int))
    if defecto >= KAMILTONIAN_RESIDUAL_TOL:
        raise NumericalError(
            f"X no resuelve la ecuación de Riccati (residuo interior {defecto:.3e})", 'riccati'
        )
    cond = np.linalg.cond(similarity_matrix(x))
    if not np.isfinite(cond) or cond > max_condition:
        raise ConditioningError(f"S mal condicionada (cond = {cond:.3e})", 'riccati')

    k_plus = blocks.h_plus + blocks.v @ x
    k_minus = blocks.h_minus - blocks.v_dag @ dagger(x)
    return k_plus, k_minus


def build_solution(x: ComplexMatrix, blocks: BlockHamiltonian, method: str,
                   note: str = '', max_condition: float = 1e10) -> RiccatiSolution:
    """
    Arma RiccatiSolution con generadores, métricas y residuos.

    ``max_condition`` acota cond(S) (tolerancia ``cond_s`` del escenario).
    """
    x = np.asarray(x, dtype=complex)
    k_plus, k_minus = kamiltonians(blocks, x, max_condition)
    r = residual(x, blocks)
    ident = np.eye(x.shape[0])
    sol = RiccatiSolution(
        x=x,
        k_plus=k_plus,
        k_minus=k_minus,
        eta=ident + dagger(x) @ x,
        xi=ident + x @ dagger(x),
        residual_norm=op_norm(r),
        interior_residual_norm=op_norm(interior(r, blocks.space.interior)),
        method=method,
        note=note,
    )
    logger.debug("Riccati %s: residuo %.3e, interior %.3e",
                 method, sol.residual_norm, sol.interior_residual_norm)
    return sol


# ---------------------------------------------------------------------------
# Formas cerradas de Jaynes–Cummings
# ---------------------------------------------------------------------------

def jc_xi(p: JcParams, n):
    """
    ξₙ = (−δ + √(δ² + |g|²(n+1))) / (g* √(n+1))

    Para δ ≥ 0 se usa la forma racionalizada g√(n+1) / (δ + √(δ² + |g|²(n+1))),
    que no cancela cuando δ ≫ |g|.
    """
    n = np.asarray(n, dtype=float)
    raiz = np.sqrt(n + 1)
    kappa = np.sqrt(p.delta ** 2 + abs(p.g) ** 2 * (n + 1))
    if p.delta >= 0:
        return p.g * raiz / (p.delta + kappa)
    return (-p.delta + kappa) / (np.conj(p.g) * raiz)


def jc_kplus_diagonal(p: JcParams, n):
    """√(δ² + |g|²(n+1))"""
    return np.sqrt(p.delta ** 2 + abs(p.g) ** 2 * (np.asarray(n, dtype=float) + 1))


def jc_kminus_diagonal(p: JcParams, n):
    """−√(δ² + |g|²n) para n ≥ 1; el vacío de la rama inferior da −δ."""
    n = np.asarray(n, dtype=float)
    valor = -np.sqrt(p.delta ** 2 + abs(p.g) ** 2 * n)
    return np.where(n == 0, -p.delta, valor)


def jc_scalar_recursion(p: JcParams, n):
    """g* ξₙ² √(n+1) + 2δ ξₙ − g √(n+1); nulo para el ξₙ exacto."""
    xi = jc_xi(p, n)
    raiz = np.sqrt(np.asarray(n, dtype=float) + 1)
    return np.conj(p.g) * xi ** 2 * raiz + 2 * p.delta * xi - p.g * raiz


def solve_jc_analytic(p: JcParams, space: FockSpace, max_condition: float = 1e10) -> RiccatiSolution:
    """
    X = Σₙ ξₙ |n+1⟩⟨n| sobre los bloques de V_int.

    La última columna queda en cero por la truncación; con ella el residuo se
    anula en todo el espacio truncado. Con g = 0 la construcción no está
    definida y X = 0 resuelve la ecuación de forma trivial.
    """
    blocks = jc_split_blocks(p, space)
    if p.g == 0:
        logger.info("g = 0: se devuelve X = 0")
        return build_solution(np.zeros((space.dim, space.dim), dtype=complex), blocks,
                              'analytic', note='g = 0: X = 0 resuelve la ecuación trivialmente',
                              max_condition=max_condition)

    x = np.diag(jc_xi(p, np.arange(space.dim - 1)), k=-1).astype(complex)
    return build_solution(x, blocks, 'analytic', max_condition=max_condition)


def solve_rabi_analytic(p: RabiParams, space: FockSpace, blocks: Optional[BlockHamiltonian] = None,
                        max_condition: float = 1e10) -> RiccatiSolution:
    """
    X = X_k para el Rabi de k fotones (independiente de ν, ω y g).

    K± = H± ± ω X_k, ambos hermíticos. X_k solo resuelve la ecuación en el
    marco de σx; si se pasan ``blocks`` de otro marco el residuo lo detecta.

    Raises:
        NumericalError: ``blocks`` no están en el marco de σx
    """
    if p.k >= space.dim:
        raise DimensionError(f"k = {p.k} debe ser menor que dim = {space.dim}", 'riccati')
    if blocks is None:
        _, blocks = rabi_blocks(p, space)
    return build_solution(generalized_parity(p.k, space), blocks, 'analytic',
                          max_condition=max_condition)


# ---------------------------------------------------------------------------
# Solver numérico de subespacio gráfico
# ---------------------------------------------------------------------------

def _branch_weights(energias: np.ndarray, vectores: np.ndarray, d: int):
    pesos = []
    for j in range(vectores.shape[1]):
        pesos.append({
            'index': j,
            'energy': float(energias[j]),
            'top': float(np.sum(np.abs(vectores[:d, j]) ** 2)),
            'bottom': float(np.sum(np.abs(vectores[d:, j]) ** 2)),
        })
    return pesos


def solve_graph_subspace(blocks: BlockHamiltonian, indices: Optional[Sequence[int]] = None,
                         max_condition: float = 1e8,
                         residual_tol: float = 1e-8,
                         similarity_condition: float = 1e10) -> RiccatiSolution:
    """
    X a partir de los autovectores de K cuyo peso superior domina.

    Los autovectores elegidos generan el subespacio gráfico {[t; Xt]}; apilando
    las partes superiores en T y las inferiores en B, X = B T⁻¹.

    Args:
        blocks: forma en bloques de K (hermítica)
        indices: autovectores elegidos explícitamente (evita la regla de dominancia)
        max_condition: cota de cond(T)
        residual_tol: residuo máximo aceptado para X
        similarity_condition: cota de cond(S)

    Raises:
        BranchSelectionError: rama ambigua, conteo incorrecto o T mal condicionada
        NumericalError: el X obtenido no resuelve la ecuación
    """
    d = blocks.space.dim
    energias, vectores = la.eigh(block_assemble(blocks))
    pesos = _branch_weights(energias, vectores, d)

    if indices is None:
        empatados = [w['index'] for w in pesos if abs(w['top'] - w['bottom']) < TIE_TOL]
        if empatados:
            raise BranchSelectionError(
                f"Rama ambigua: {len(empatados)} autovectores con pesos iguales "
                f"(índices {empatados[:8]}); pasar índices explícitos", pesos)
        seleccion = [w['index'] for w in pesos if w['top'] > w['bottom']]
    else:
        seleccion = sorted(int(i) for i in indices)
        if len(set(seleccion)) != len(seleccion) or any(i < 0 or i >= 2 * d for i in seleccion):
            raise BranchSelectionError(f"Índices inválidos: {list(indices)}", pesos)

    if len(seleccion) != d:
        raise BranchSelectionError(
            f"Se seleccionaron {len(seleccion)} autovectores y se esperaban {d}", pesos)

    t_mat = vectores[:d, seleccion]
    b_mat = vectores[d:, seleccion]
    cond = np.linalg.cond(t_mat)
    logger.debug("Subespacio gráfico: cond(T) = %.3e", cond)
    if not np.isfinite(cond) or cond > max_condition:
        raise BranchSelectionError(f"Selección de rama fallida: cond(T) = {cond:.3e}", pesos)

    # X T = B  ⇔  Tᵀ Xᵀ = Bᵀ
    x = la.solve(t_mat.T, b_mat.T).T
    r = op_norm(residual(x, blocks))
    if r >= residual_tol:
        raise NumericalError(f"El X del subespacio gráfico no converge (residuo {r:.3e})", 'riccati')
    return build_solution(x, blocks, 'graph_subspace', max_condition=similarity_condition)


def symmetric_branch(blocks: BlockHamiltonian, involution: ComplexMatrix,
                     tol: float = 1e-6) -> list:
    """
    Índices de los autovectores v = [v₁; v₂] de K con v₂ = J v₁.

    Sirve cuando todos los autovectores están balanceados (Rabi con J = X_k).
    """
    d = blocks.space.dim
    j = np.asarray(involution, dtype=complex)
    require_same_shape(j, blocks.v, 'riccati')
    _, vectores = la.eigh(block_assemble(blocks))
    indices = []
    for idx in range(vectores.shape[1]):
        v = vectores[:, idx]
        if np.linalg.norm(v[d:] - j @ v[:d]) < tol * np.linalg.norm(v):
            indices.append(idx)
    logger.debug("Rama simétrica: %d de %d autovectores", len(indices), 2 * d)
    return indices


# ---------------------------------------------------------------------------
# Estructura: pseudo-hermiticidad, semejanza, sistema biortonormal
# ---------------------------------------------------------------------------

def pseudo_hermiticity_check(sol: RiccatiSolution) -> float:
    """max(‖ηK₊ − K₊†η‖, ‖ξK₋ − K₋†ξ‖)"""
    defecto_plus = op_norm(sol.eta @ sol.k_plus - dagger(sol.k_plus) @ sol.eta)
    defecto_minus = op_norm(sol.xi @ sol.k_minus - dagger(sol.k_minus) @ sol.xi)
    return max(defecto_plus, defecto_minus)


def similarity_defect(blocks: BlockHamiltonian, x: ComplexMatrix, max_condition: float = 1e10) -> float:
    """‖S⁻¹KS − diag(K₊, K₋)‖ restringido al interior de cada bloque."""
    k_plus, k_minus = kamiltonians(blocks, x, max_condition)
    s = similarity_matrix(x)
    transformada = la.solve(s, block_assemble(blocks) @ s)
    diferencia = transformada - la.block_diag(k_plus, k_minus)

    d = blocks.space.dim
    filas = np.arange(blocks.space.interior)
    idx = np.concatenate([filas, d + filas])
    return op_norm(diferencia[np.ix_(idx, idx)])


def spectral_union_defect(blocks: BlockHamiltonian, x: ComplexMatrix, max_condition: float = 1e10) -> float:
    """Distancia entre σ(K) y σ(K₊) ∪ σ(K₋) (partes reales ordenadas, más max |Im|)."""
    k_plus, k_minus = kamiltonians(blocks, x, max_condition)
    espectro_k = np.sort(la.eigvalsh(block_assemble(blocks)))
    union = np.concatenate([la.eigvals(k_plus), la.eigvals(k_minus)])
    distancia = float(np.max(np.abs(np.sort(union.real) - espectro_k)))
    return max(distancia, float(np.max(np.abs(union.imag))))


def polar_similarity(blocks: BlockHamiltonian, x: ComplexMatrix) -> Tuple[ComplexMatrix, float]:
    """
    Parte unitaria W de S = W (S†S)^{1/2}.

    W†KW = P diag(K₊, K₋) P⁻¹ con P = (S†S)^{1/2} es hermítica; devuelve W y el
    defecto de esa igualdad.
    """
    k_plus, k_minus = kamiltonians(blocks, x)
    w, p = la.polar(similarity_matrix(x))
    k_mat = block_assemble(blocks)
    rotada = dagger(w) @ k_mat @ w
    esperada = p @ la.block_diag(k_plus, k_minus) @ la.inv(p)
    return w, op_norm(rotada - esperada)


def biorthonormal_system(k_plus: ComplexMatrix, max_condition: float = 1e10) -> BiorthoSystem:
    """
    Autovectores derechos ψₙ = S|n⟩ y duales φₙ = (S⁻¹)†|n⟩ de K₊.

    Si K₊ es hermítica S es unitaria y ψₙ = φₙ. Los autovalores se ordenan por
    parte real.

    Raises:
        ConditioningError: K₊ defectiva o casi defectiva, o relaciones de
            biortonormalidad/completitud por encima de 1e−8
    """
    k_plus = np.asarray(k_plus, dtype=complex)
    if is_hermitian(k_plus, 1e-12):
        energias, s = la.eigh((k_plus + dagger(k_plus)) / 2)
        return _checked_biortho(BiorthoSystem(energies=energias.astype(complex), psi_vecs=s, phi_vecs=s))

    energias, s = la.eig(k_plus)
    orden = np.argsort(energias.real, kind='stable')
    energias, s = energias[orden], s[:, orden]
    cond = np.linalg.cond(s)
    logger.debug("Sistema biortonormal: cond(S) = %.3e", cond)
    if not np.isfinite(cond) or cond > max_condition:
        raise ConditioningError(
            f"K₊ no es diagonalizable de forma estable (cond = {cond:.3e})", 'riccati')
    sistema = _checked_biortho(BiorthoSystem(energies=energias, psi_vecs=s, phi_vecs=dagger(la.inv(s))))
    if not sistema.is_real():
        logger.warning("Autovalores de K₊ con parte imaginaria %.3e", sistema.max_imag)
    return sistema


def _checked_biortho(sistema: BiorthoSystem) -> BiorthoSystem:
    """⟨ψₙ|φₘ⟩ = δₙₘ y Σ|ψₙ⟩⟨φₙ| = I dentro de BIORTHO_TOL."""
    biorto = sistema.biorthonormality_defect()
    completitud = sistema.completeness_defect()
    logger.debug("Sistema biortonormal: defectos %.3e / %.3e", biorto, completitud)
    if biorto > BIORTHO_TOL or completitud > BIORTHO_TOL:
        raise ConditioningError(
            f"Sistema biortonormal inexacto (biortonormalidad {biorto:.3e}, "
            f"completitud {completitud:.3e})", 'riccati')
    return sistema
