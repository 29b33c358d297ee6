# Validators package
from .matrix_validators import (
    hermiticity_defect,
    is_hermitian,
    is_unitary,
    require_finite,
    require_hermitian,
    require_same_shape,
    require_square,
    require_vector,
)

__all__ = [
    'hermiticity_defect',
    'is_hermitian',
    'is_unitary',
    'require_finite',
    'require_hermitian',
    'require_same_shape',
    'require_square',
    'require_vector',
]
