from dataclasses import dataclass


@dataclass(frozen=True)
class JcParams:
    """
    Parámetros del modelo de Jaynes–Cummings

        H = ω σz + ν a†a + (g* σ₊⊗a + g σ₋⊗a†)

    El término ω σz separa los niveles del qubit en 2ω, por lo que la
    desintonía que entra en la ecuación de Riccati es δ = ω − ν/2.
    """

    omega: float
    nu: float
    g: complex

    @property
    def delta(self) -> float:
        return self.omega - self.nu / 2

    @classmethod
    def from_detuning(cls, delta: float, g: complex, nu: float = 0.0) -> 'JcParams':
        """Construye los parámetros a partir de (δ, g, ν)."""
        return cls(omega=delta + nu / 2, nu=nu, g=g)

    def __repr__(self):
        return f'<JcParams ω={self.omega} ν={self.nu} g={self.g} δ={self.delta}>'


@dataclass(frozen=True)
class RabiParams:
    """Parámetros del modelo de Rabi de k fotones."""

    omega: float
    nu: float
    g: complex
    k: int = 1

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"k debe ser un entero ≥ 1 (se recibió {self.k})")

    def __repr__(self):
        return f'<RabiParams ω={self.omega} ν={self.nu} g={self.g} k={self.k}>'
