"""
Tests de dinámica: propagador exacto, propagador factorizado y series de desfase
"""

import numpy as np
import pytest
import scipy.linalg as la

from models import FockSpace, JcParams, RabiParams, RiccatiSolution, TimeGrid, TimeSeries
from services.blockform import jc_model, rabi_blocks, rabi_model
from services.dynamics import (biortho_series, build_time_series, conservation_report, dephasing_coefficients,
                               jc_coherence_series, lambda_expectation, leakage, matrix_exponential,
                               propagate_exact, propagate_factorized, reduced_density)
from services.riccati import biorthonormal_system, solve_graph_subspace, solve_jc_analytic, solve_rabi_analytic
from services.states import (coherent_seed, dephasing_state, fock_seed, orthogonal_state, product_state,
                             rabi_parity_state)
from utils.errors import DimensionError, NumericalError, SimulationError
from validators.matrix_validators import is_hermitian, is_unitary
from tests.helpers import random_blocks, random_hermitian, random_vector


def jc_run(p, space, state, grid, diag):
    """Trayectorias exacta y factorizada de un estado JC y su TimeSeries."""
    h_total, h0, _ = jc_model(p, space)
    sol = solve_jc_analytic(p, space)
    exacta = propagate_exact(h_total, state, grid)
    factorizada = None
    if state.branch is not None:
        factorizada = propagate_factorized(sol, diag, state.seed, grid, space, h0=h0, branch=state.branch)
    return build_time_series(grid.times, exacta, factorizada, diag, space)


@pytest.mark.unit
class TestMatrixExponential:

    def test_camino_hermitico(self, rng):
        h = random_hermitian(rng, 6)
        a = -1j * 0.7 * h
        resultado = matrix_exponential(a, hermitian_hint=True)
        np.testing.assert_allclose(resultado, la.expm(a), atol=1e-12)
        assert is_unitary(resultado, 1e-12)

    def test_pista_falsa_usa_expm(self, rng):
        a = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        np.testing.assert_allclose(matrix_exponential(a, hermitian_hint=True), la.expm(a), atol=1e-12)

    @pytest.mark.parametrize('hint', [True, False])
    def test_rotacion_sigma_y(self, hint):
        # e^{−iθσy} = cos θ I − i sen θ σy
        theta = 0.7
        sy = np.array([[0, -1j], [1j, 0]])
        esperado = np.cos(theta) * np.eye(2) - 1j * np.sin(theta) * sy
        np.testing.assert_allclose(matrix_exponential(-1j * theta * sy, hermitian_hint=hint),
                                   esperado, atol=1e-14)

    def test_inversa(self, rng):
        for _ in range(10):
            a = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
            a *= rng.uniform(0.5, 5.0) / np.linalg.norm(a, 2)
            producto = matrix_exponential(a) @ matrix_exponential(-a)
            assert np.linalg.norm(producto - np.eye(6), 2) < 1e-11

    def test_cero_es_identidad(self):
        np.testing.assert_allclose(matrix_exponential(np.zeros((4, 4))), np.eye(4), atol=1e-15)

    def test_no_cuadrada(self):
        with pytest.raises(DimensionError):
            matrix_exponential(np.zeros((2, 3)))

    def test_no_finita(self):
        a = np.zeros((3, 3))
        a[1, 1] = np.nan
        with pytest.raises(NumericalError):
            matrix_exponential(a)


@pytest.mark.unit
class TestPropagateExact:

    def test_norma_y_energia(self, rng):
        h = random_hermitian(rng, 12)
        psi = random_vector(rng, 12)
        psi /= np.linalg.norm(psi)
        trayectoria = propagate_exact(h, psi, TimeGrid(0.0, 5.0, 21))
        assert trayectoria.shape == (21, 12)
        np.testing.assert_allclose(np.linalg.norm(trayectoria, axis=1), 1.0, atol=1e-12)
        energias = np.einsum('tn,nm,tm->t', trayectoria.conj(), h, trayectoria).real
        assert np.ptp(energias) < 1e-10

    def test_coincide_con_expm(self, rng):
        h = random_hermitian(rng, 8)
        psi = random_vector(rng, 8)
        psi /= np.linalg.norm(psi)
        trayectoria = propagate_exact(h, psi, TimeGrid(0.0, 2.0, 5))
        np.testing.assert_allclose(trayectoria[-1], la.expm(-2j * h) @ psi, atol=1e-12)

    def test_oscilacion_de_dos_niveles(self, jc_resonant, sigma_z_diag):
        # |+,0⟩ a δ = 0, g = 1: ⟨σz(t)⟩ = cos 2t
        space = FockSpace(8, 1)
        grid = TimeGrid(0.0, 10.0, 101)
        estado = product_state(sigma_z_diag, fock_seed(space, 0))
        ts = jc_run(jc_resonant, space, estado, grid, sigma_z_diag)
        np.testing.assert_allclose(ts.lambda_expect, np.cos(2 * grid.times), atol=1e-8)
        assert np.all(np.isnan(ts.fidelity))


@pytest.mark.unit
class TestPropagateFactorized:

    def test_t_cero_es_el_estado(self, jc_params, sigma_z_diag):
        space = FockSpace(24, 3)
        sol = solve_jc_analytic(jc_params, space)
        _, h0, _ = jc_model(jc_params, space)
        estado = dephasing_state(sol, sigma_z_diag, coherent_seed(space, 0.8, 10))
        trayectoria = propagate_factorized(sol, sigma_z_diag, estado.seed, TimeGrid(0.0, 1.0, 3),
                                           space, h0=h0)
        np.testing.assert_allclose(trayectoria[0], estado.vec, atol=1e-14)

    def test_autoestado_gira_con_fase(self, jc_resonant, sigma_z_diag):
        space = FockSpace(8, 1)
        sol = solve_jc_analytic(jc_resonant, space)
        h_total, _, _ = jc_model(jc_resonant, space)
        estado = dephasing_state(sol, sigma_z_diag, fock_seed(space, 0))
        grid = TimeGrid(0.0, 5.0, 11)
        esperado = np.exp(-1j * grid.times)[:, None] * estado.vec
        np.testing.assert_allclose(propagate_exact(h_total, estado, grid), esperado, atol=1e-12)
        np.testing.assert_allclose(propagate_factorized(sol, sigma_z_diag, estado.seed, grid, space),
                                   esperado, atol=1e-12)

    def test_rama_phi_reproduce_el_oraculo(self, jc_params, sigma_z_diag):
        space = FockSpace(48, 6)
        sol = solve_jc_analytic(jc_params, space)
        estado = orthogonal_state(sol, sigma_z_diag, coherent_seed(space, 0.8, 15))
        ts = jc_run(jc_params, space, estado, TimeGrid(0.0, 20.0, 41), sigma_z_diag)
        assert np.min(ts.fidelity) >= 1 - 1e-6
        assert conservation_report(ts).max_drift < 1e-8

    def test_semilla_en_la_guarda(self, jc_solution, sigma_z_diag, small_space):
        semilla = np.zeros(small_space.dim, dtype=complex)
        semilla[small_space.interior] = 1.0
        with pytest.raises(DimensionError):
            propagate_factorized(jc_solution, sigma_z_diag, semilla, TimeGrid(0.0, 1.0), small_space)

    def test_residuo_grande(self, sigma_z_diag, small_space):
        d = small_space.dim
        sol = RiccatiSolution(x=np.zeros((d, d)), k_plus=np.eye(d), k_minus=-np.eye(d), eta=np.eye(d),
                              xi=np.eye(d), residual_norm=1.0, interior_residual_norm=1.0)
        with pytest.raises(NumericalError):
            propagate_factorized(sol, sigma_z_diag, fock_seed(small_space, 0), TimeGrid(0.0, 1.0), small_space)

    def test_rama_desconocida(self, jc_solution, sigma_z_diag, small_space):
        with pytest.raises(SimulationError):
            propagate_factorized(jc_solution, sigma_z_diag, fock_seed(small_space, 0), TimeGrid(0.0, 1.0),
                                 small_space, branch='chi')


@pytest.mark.unit
class TestDephasingCoefficients:

    def test_rama_psi_coincide_con_rho(self, jc_solution, sigma_z_diag, rng, small_space):
        estado = dephasing_state(jc_solution, sigma_z_diag, random_vector(rng, small_space.dim, 10))
        alpha, c = dephasing_coefficients(estado.seed, jc_solution)
        rho = reduced_density(estado.vec)
        assert abs(alpha - rho[0, 0].real) < 1e-14
        assert abs(c - rho[0, 1]) < 1e-14

    def test_rama_phi_coincide_con_rho(self, jc_solution, sigma_z_diag, rng, small_space):
        estado = orthogonal_state(jc_solution, sigma_z_diag, random_vector(rng, small_space.dim, 10))
        alpha, c = dephasing_coefficients(estado.seed, jc_solution, branch='phi')
        rho = reduced_density(estado.vec)
        assert abs(alpha - rho[0, 0].real) < 1e-14
        assert abs(c - rho[0, 1]) < 1e-14

    def test_fase_libre(self, jc_solution, rng, small_space):
        semilla = random_vector(rng, small_space.dim, 10)
        _, c0 = dephasing_coefficients(semilla, jc_solution)
        _, c = dephasing_coefficients(semilla, jc_solution, t=2.0, nu=0.8)
        assert abs(c - c0 * np.exp(-1.6j)) < 1e-12

    def test_rama_desconocida(self, jc_solution, small_space):
        with pytest.raises(SimulationError):
            dephasing_coefficients(fock_seed(small_space, 0), jc_solution, branch='chi')


@pytest.mark.unit
class TestReducedDensity:

    def test_producto(self, sigma_z_diag, small_space):
        rho = reduced_density(product_state(sigma_z_diag, fock_seed(small_space, 3)).vec)
        np.testing.assert_allclose(rho, np.diag([1, 0]), atol=1e-15)

    def test_es_un_estado(self, rng):
        psi = random_vector(rng, 20)
        rho = reduced_density(psi / np.linalg.norm(psi))
        assert is_hermitian(rho, 1e-14)
        assert abs(np.trace(rho) - 1) < 1e-12

    def test_dimension_impar(self):
        with pytest.raises(DimensionError):
            reduced_density(np.ones(5))


@pytest.mark.unit
class TestLambdaExpectation:

    def test_extremos(self, sigma_z_diag):
        assert lambda_expectation(1.0, sigma_z_diag) == 1.0
        assert lambda_expectation(0.0, sigma_z_diag) == -1.0

    def test_vectorizado(self, sigma_z_diag):
        np.testing.assert_allclose(lambda_expectation(np.array([0.25, 0.5]), sigma_z_diag), [-0.5, 0.0])

    def test_fuera_de_rango(self, sigma_z_diag):
        with pytest.raises(SimulationError):
            lambda_expectation(1.5, sigma_z_diag)

    def test_coincide_con_la_traza_del_oraculo(self, jc_params, sigma_z_diag):
        # ⟨Λ(t)⟩ = αλ₊ + (1−α)λ₋ con α de la rama factorizada vs Tr(Λρ(t)) exacto
        space = FockSpace(32, 4)
        sol = solve_jc_analytic(jc_params, space)
        estado = dephasing_state(sol, sigma_z_diag, coherent_seed(space, 0.8, 10))
        grid = TimeGrid(0.0, 10.0, 21)
        ts = jc_run(jc_params, space, estado, grid, sigma_z_diag)
        for j, t in enumerate(grid.times):
            psi_t = matrix_exponential(-1j * t * sol.k_plus, hermitian_hint=True) @ estado.seed
            alpha, _ = dephasing_coefficients(psi_t, sol)
            assert lambda_expectation(alpha, sigma_z_diag) == pytest.approx(ts.lambda_expect[j], abs=1e-9)


@pytest.mark.unit
class TestBiorthoSeries:

    def test_coincide_con_la_evolucion_directa(self, rng):
        sol = solve_graph_subspace(random_blocks(rng))
        bio = biorthonormal_system(sol.k_plus)
        semilla = random_vector(rng, sol.dim)
        semilla /= np.linalg.norm(semilla) * 2
        grid = TimeGrid(0.0, 5.0, 21)
        alpha, coherencia = biortho_series(semilla, bio, sol.x, grid)
        for j, t in enumerate(grid.times):
            v = la.expm(-1j * t * sol.k_plus) @ semilla
            assert abs(alpha[j] - np.vdot(v, v).real) < 1e-8
            assert abs(coherencia[j] - np.vdot(sol.x @ v, v)) < 1e-8

    def test_autovector_es_estacionario(self, rng):
        sol = solve_graph_subspace(random_blocks(rng))
        bio = biorthonormal_system(sol.k_plus)
        alpha, coherencia = biortho_series(bio.psi_vecs[:, 0], bio, sol.x, TimeGrid(0.0, 10.0, 11))
        assert np.ptp(alpha) < 1e-10
        assert np.max(np.abs(coherencia - coherencia[0])) < 1e-10


@pytest.mark.unit
class TestLeakage:

    def test_poblacion_en_la_guarda(self):
        space = FockSpace(8, 2)
        vec = np.zeros(16, dtype=complex)
        vec[0], vec[15] = 0.6, 0.8
        assert abs(leakage(vec, space) - 0.64) < 1e-15

    def test_sin_guarda(self):
        vec = np.zeros(8)
        vec[3] = 1.0
        assert leakage(vec, FockSpace(4)) == 0.0

    def test_dimension_incorrecta(self):
        with pytest.raises(DimensionError):
            leakage(np.ones(6), FockSpace(4, 1))


@pytest.mark.unit
class TestTimeSeriesAndReport:

    def test_forma_incorrecta(self, sigma_z_diag, small_space):
        with pytest.raises(DimensionError):
            build_time_series(np.arange(3.0), np.zeros((2, small_space.full_dim)), None, sigma_z_diag,
                              small_space)

    def test_reporte_de_conservacion(self):
        ts = TimeSeries(times=[0.0, 1.0, 2.0], lambda_expect=[0.5, 0.5 + 1e-9, 0.5 - 2e-9],
                        alpha=[0.75] * 3, coherence=[0.1] * 3, fidelity=[1.0] * 3, leakage=[0.0, 0.0, 1e-7])
        reporte = conservation_report(ts)
        assert abs(reporte.max_drift - 2e-9) < 1e-15
        assert reporte.conserved
        assert reporte.truncation_limited


@pytest.mark.integration
class TestJcConservation:

    @pytest.mark.slow
    def test_conservacion_y_factorizacion(self, jc_params, sigma_z_diag):
        space = FockSpace(128, 16)
        grid = TimeGrid(0.0, 20.0 / abs(jc_params.g), 201)
        sol = solve_jc_analytic(jc_params, space)
        estado = dephasing_state(sol, sigma_z_diag, coherent_seed(space, 1.0, 30))
        ts = jc_run(jc_params, space, estado, grid, sigma_z_diag)

        assert conservation_report(ts).max_drift < 1e-8
        assert np.ptp(ts.alpha) < 1e-8
        assert np.min(ts.fidelity) >= 1 - 1e-6
        np.testing.assert_allclose(jc_coherence_series(estado.seed, jc_params, grid), ts.coherence, atol=1e-6)

    def test_control_producto_deriva(self, jc_params, sigma_z_diag):
        space = FockSpace(64, 8)
        estado = product_state(sigma_z_diag, coherent_seed(space, 1.0, 20))
        ts = jc_run(jc_params, space, estado, TimeGrid(0.0, 20.0 / abs(jc_params.g), 101), sigma_z_diag)
        assert conservation_report(ts).max_drift > 0.01

    def test_fock_es_estacionario(self, jc_params, sigma_z_diag):
        space = FockSpace(32, 4)
        sol = solve_jc_analytic(jc_params, space)
        estado = dephasing_state(sol, sigma_z_diag, fock_seed(space, 2))
        ts = jc_run(jc_params, space, estado, TimeGrid(0.0, 30.0, 61), sigma_z_diag)
        assert np.max(np.abs(ts.coherence)) < 1e-12
        assert np.ptp(ts.alpha) < 1e-12


@pytest.mark.integration
class TestRabiConservation:

    @pytest.mark.slow
    @pytest.mark.parametrize('k', [1, 2])
    @pytest.mark.parametrize('eps', [1, -1])
    def test_estados_de_paridad(self, k, eps):
        p = RabiParams(omega=1.0, nu=0.8, g=0.2, k=k)
        space = FockSpace(96, 12)
        grid = TimeGrid(0.0, 20.0, 201)
        diag, _ = rabi_blocks(p, space)
        sol = solve_rabi_analytic(p, space)
        estado = rabi_parity_state(sol.x, coherent_seed(space, 1.0, 20), eps)

        exacta = propagate_exact(rabi_model(p, space), estado, grid)
        factorizada = propagate_factorized(sol, diag, estado.seed, grid, space, branch=estado.branch)
        ts = build_time_series(grid.times, exacta, factorizada, diag, space)

        assert conservation_report(ts).max_drift < 1e-8
        assert np.min(ts.fidelity) >= 1 - 1e-6
        assert is_hermitian(sol.k_plus, 1e-12) and is_hermitian(sol.k_minus, 1e-12)
