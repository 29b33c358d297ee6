"""Ayudantes compartidos por los tests (vectores y matrices aleatorias)."""

import numpy as np

from models import BlockHamiltonian, FockSpace


def random_vector(rng, dim, support=None):
    """Vector complejo aleatorio con soporte en los primeros ``support`` niveles."""
    support = dim if support is None else support
    v = np.zeros(dim, dtype=complex)
    v[:support] = rng.standard_normal(support) + 1j * rng.standard_normal(support)
    return v


def random_hermitian(rng, n, scale=1.0):
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (m + m.conj().T) / 2


def random_blocks(rng, dim=12, acople=0.05):
    """Bloques con espectros separados (±3) y acople chico: X no hermítico y bien definido."""
    return BlockHamiltonian(
        h_plus=random_hermitian(rng, dim, 0.2) + 3 * np.eye(dim),
        h_minus=random_hermitian(rng, dim, 0.2) - 3 * np.eye(dim),
        v=acople * (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))),
        space=FockSpace(dim),
    )
