"""
Tests de la forma en bloques: observable, Kamiltoniana y modelos
"""

import numpy as np
import pytest

from models import FockSpace, JcParams, RabiParams
from services.blockform import (block_assemble, block_decompose, diagonalize_observable, jc_model,
                                jc_split_blocks, rabi_blocks, rabi_model, to_kamiltonian)
from services.operators import fock_ladder, generalized_parity, ladder_power, qubit_ops, tensor
from utils.errors import DimensionError, NonHermitianError
from tests.helpers import random_hermitian


@pytest.mark.unit
class TestDiagonalizeObservable:

    def test_sigma_z_es_trivial(self):
        diag = diagonalize_observable(qubit_ops().sz)
        assert (diag.lambda_plus, diag.lambda_minus) == (1.0, -1.0)
        np.testing.assert_array_equal(diag.u, np.eye(2))
        assert not diag.degenerate

    def test_sigma_x_da_hadamard(self):
        diag = diagonalize_observable(qubit_ops().sx)
        hadamard = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        np.testing.assert_allclose(diag.u, hadamard, atol=1e-15)

    def test_observables_aleatorios(self, rng):
        for _ in range(100):
            lam = random_hermitian(rng, 2)
            diag = diagonalize_observable(lam)
            rotado = diag.u.conj().T @ lam @ diag.u
            assert abs(rotado[0, 1]) < 1e-12
            assert abs(rotado[0, 0] - diag.lambda_plus) < 1e-12
            assert diag.lambda_plus >= diag.lambda_minus
            np.testing.assert_allclose(diag.u.conj().T @ diag.u, np.eye(2), atol=1e-12)

    def test_convencion_de_fase(self, rng):
        diag = diagonalize_observable(random_hermitian(rng, 2))
        for col in diag.u.T:
            idx = int(np.argmax(np.abs(col)))
            assert abs(col[idx].imag) < 1e-15 and col[idx].real > 0

    def test_espectro_degenerado_se_marca(self):
        diag = diagonalize_observable(2 * np.eye(2))
        assert diag.degenerate
        assert diag.lambda_plus == diag.lambda_minus == 2.0
        np.testing.assert_array_equal(diag.u, np.eye(2))

    def test_no_hermitico(self):
        with pytest.raises(NonHermitianError):
            diagonalize_observable(np.array([[0, 1], [0, 0]]))


@pytest.mark.unit
class TestKamiltonian:

    def test_u_identidad(self, rng):
        space = FockSpace(3)
        h = random_hermitian(rng, 6)
        k = to_kamiltonian(h, diagonalize_observable(qubit_ops().sz), space)
        np.testing.assert_allclose(k, h, atol=1e-15)

    def test_preserva_el_espectro(self):
        space = FockSpace(20)
        h = rabi_model(RabiParams(1.0, 0.8, 0.2, 1), space)
        k = to_kamiltonian(h, diagonalize_observable(qubit_ops().sx), space)
        np.testing.assert_allclose(np.linalg.eigvalsh(k), np.linalg.eigvalsh(h), atol=1e-10)

    @pytest.mark.parametrize('k', [1, 2])
    def test_bloques_de_rabi(self, k):
        space = FockSpace(20)
        p = RabiParams(omega=0.7, nu=0.8, g=0.2j, k=k)
        _, blocks = rabi_blocks(p, space)
        _, _, n_op = fock_ladder(space)
        ak = ladder_power(space, k)
        acople = np.conj(p.g) * ak + p.g * ak.conj().T
        np.testing.assert_allclose(blocks.h_plus, p.nu * n_op + acople, atol=1e-12)
        np.testing.assert_allclose(blocks.h_minus, p.nu * n_op - acople, atol=1e-12)
        np.testing.assert_allclose(blocks.v, p.omega * np.eye(20), atol=1e-12)

    def test_paridad_intercambia_los_bloques_de_rabi(self):
        space = FockSpace(20)
        _, blocks = rabi_blocks(RabiParams(1.0, 0.8, 0.2, 2), space)
        x = generalized_parity(2, space)
        np.testing.assert_allclose(x @ blocks.h_plus @ x, blocks.h_minus, atol=1e-12)


@pytest.mark.unit
class TestBlockDecompose:

    def test_interaccion_jc(self, jc_params):
        space = FockSpace(10)
        blocks = jc_split_blocks(jc_params, space)
        a, _, _ = fock_ladder(space)
        np.testing.assert_allclose(blocks.h_plus, jc_params.delta * np.eye(10), atol=1e-15)
        np.testing.assert_allclose(blocks.h_minus, -jc_params.delta * np.eye(10), atol=1e-15)
        np.testing.assert_allclose(blocks.v, np.conj(jc_params.g) * a, atol=1e-15)

    def test_identidad(self):
        blocks = block_decompose(np.eye(8), FockSpace(4))
        np.testing.assert_array_equal(blocks.h_plus, np.eye(4))
        np.testing.assert_array_equal(blocks.h_minus, np.eye(4))
        np.testing.assert_array_equal(blocks.v, np.zeros((4, 4)))

    def test_ida_y_vuelta(self, rng):
        k = random_hermitian(rng, 10)
        reensamblada = block_assemble(block_decompose(k, FockSpace(5)))
        np.testing.assert_allclose(reensamblada, k, atol=1e-14)

    def test_rechaza_no_hermitica(self, rng):
        k = random_hermitian(rng, 8)
        k[0, 5] += 1.0
        with pytest.raises(NonHermitianError):
            block_decompose(k, FockSpace(4))

    def test_dimension_incorrecta(self):
        with pytest.raises(DimensionError):
            block_decompose(np.eye(6), FockSpace(4))


@pytest.mark.unit
class TestJcModel:

    def test_sin_acople(self):
        p = JcParams(omega=1.0, nu=0.8, g=0.0)
        space = FockSpace(6)
        _, _, v_int = jc_model(p, space)
        np.testing.assert_allclose(v_int, p.delta * tensor(qubit_ops().sz, np.eye(6)), atol=1e-15)

    def test_resonancia_anula_delta(self):
        p = JcParams(omega=0.4, nu=0.8, g=0.3)
        space = FockSpace(6)
        _, _, v_int = jc_model(p, space)
        assert p.delta == 0.0
        np.testing.assert_allclose(np.diag(v_int), np.zeros(12), atol=1e-15)

    def test_particion_suma_el_total(self):
        space = FockSpace(12)
        h_total, h0, v_int = jc_model(JcParams(1.0, 0.8, 0.3), space)
        np.testing.assert_allclose(h_total, h0 + v_int, atol=1e-14)
        assert abs(np.trace(h_total) - np.trace(h0) - np.trace(v_int)) < 1e-12

    def test_partes_conmutan(self):
        space = FockSpace(24)
        _, h0, v_int = jc_model(JcParams(1.0, 0.8, 0.3), space)
        assert np.linalg.norm(h0 @ v_int - v_int @ h0, 2) < 1e-12


@pytest.mark.unit
class TestRabiModel:

    def test_hermitico(self):
        h = rabi_model(RabiParams(1.0, 0.8, 0.2j, 2), FockSpace(16))
        np.testing.assert_allclose(h, h.conj().T, atol=1e-14)

    def test_rabi_estandar(self):
        space = FockSpace(8)
        p = RabiParams(1.0, 0.8, 0.2, 1)
        q = qubit_ops()
        a, a_dag, n_op = fock_ladder(space)
        esperado = tensor(q.sz, np.eye(8)) + 0.8 * tensor(q.i2, n_op) + 0.2 * tensor(q.sx, a + a_dag)
        np.testing.assert_allclose(rabi_model(p, space), esperado, atol=1e-15)

    def test_sin_acople_espectro_diagonal(self):
        p = RabiParams(1.0, 0.8, 0.0, 1)
        h = rabi_model(p, FockSpace(5))
        n = np.arange(5)
        esperado = np.sort(np.concatenate([1.0 + 0.8 * n, -1.0 + 0.8 * n]))
        np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(h)), esperado, atol=1e-14)

    def test_k_no_menor_que_dim(self):
        with pytest.raises(DimensionError):
            rabi_model(RabiParams(1.0, 0.8, 0.2, 4), FockSpace(4))
