import math
from dataclasses import dataclass


@dataclass(frozen=True)
class FockSpace:
    """
    Espacio de Fock truncado del ambiente: niveles |0⟩..|dim−1⟩.

    Los ``guard`` niveles superiores forman la banda de guarda: se monitorea la
    población que llega a ellos y los contratos se verifican solo en el interior.
    """

    dim: int
    guard: int = 0

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 2:
            raise ValueError(f"dim debe ser un entero ≥ 2 (se recibió {self.dim})")
        if int(self.guard) != self.guard or not 0 <= self.guard < self.dim:
            raise ValueError(f"guard debe cumplir 0 ≤ guard < dim (guard={self.guard}, dim={self.dim})")

    @classmethod
    def with_default_guard(cls, dim: int) -> 'FockSpace':
        """Banda de guarda por defecto: dim/8 redondeado hacia arriba."""
        return cls(dim=dim, guard=math.ceil(dim / 8))

    @property
    def interior(self) -> int:
        """Cantidad de niveles fuera de la banda de guarda."""
        return self.dim - self.guard

    @property
    def full_dim(self) -> int:
        """Dimensión del espacio qubit ⊗ ambiente."""
        return 2 * self.dim

    def __repr__(self):
        return f'<FockSpace dim={self.dim} guard={self.guard}>'
