"""
PATRÓN: DTO (Data Transfer Object) Pattern con Marshmallow
==========================================================

Los schemas validan el JSON del escenario y construyen el ScenarioConfig
inmutable que consume el Service Layer:

- Claves desconocidas se rechazan (``unknown = RAISE``), no se ignoran
- Rangos con validate.Range / validate.OneOf
- Reglas entre campos con @validates_schema
- @post_load completa los valores por defecto y arma el ScenarioConfig

Los números complejos se aceptan como número o como par [re, im].
"""

import math

import numpy as np
from marshmallow import RAISE, Schema, ValidationError, fields, post_load, validate, validates_schema

from config.config import Config
from models import FockSpace, ScenarioConfig, TimeGrid
from validators.matrix_validators import is_hermitian

OBSERVABLE_PRESETS = {
    'sigma_x': np.array([[0, 1], [1, 0]], dtype=complex),
    'sigma_y': np.array([[0, -1j], [1j, 0]], dtype=complex),
    'sigma_z': np.array([[1, 0], [0, -1]], dtype=complex),
}

MAX_DIM = 512


def complex_to_json(z: complex):
    z = complex(z)
    return z.real if z.imag == 0 else [z.real, z.imag]


def matrix_to_json(m) -> list:
    return [[complex_to_json(z) for z in fila] for fila in np.asarray(m, dtype=complex)]


def _parse_complex(value) -> complex:
    if isinstance(value, bool):
        raise ValidationError('Se esperaba un número o un par [re, im]')
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2 and all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
        return complex(value[0], value[1])
    raise ValidationError('Se esperaba un número o un par [re, im]')


class ComplexField(fields.Field):
    """Número complejo: ``1.5`` o ``[1.5, -0.2]``."""

    default_error_messages = {'not_finite': 'El número debe ser finito'}

    def _deserialize(self, value, attr, data, **kwargs):
        z = _parse_complex(value)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise self.make_error('not_finite')
        return z

    def _serialize(self, value, attr, obj, **kwargs):
        return None if value is None else complex_to_json(value)


class MatrixField(fields.Field):
    """Matriz cuadrada de complejos (lista de filas)."""

    def _deserialize(self, value, attr, data, **kwargs):
        if not isinstance(value, list) or not value or not all(isinstance(f, list) for f in value):
            raise ValidationError('Se esperaba una lista de filas')
        n = len(value)
        if any(len(f) != n for f in value):
            raise ValidationError(f'La matriz debe ser cuadrada ({n} filas)')
        m = np.array([[_parse_complex(z) for z in fila] for fila in value], dtype=complex)
        if not np.all(np.isfinite(m)):
            raise ValidationError('La matriz contiene entradas no finitas')
        return m

    def _serialize(self, value, attr, obj, **kwargs):
        return None if value is None else matrix_to_json(value)


class ObservableField(MatrixField):
    """Preset (sigma_x, sigma_y, sigma_z) o matriz 2×2 explícita."""

    def _deserialize(self, value, attr, data, **kwargs):
        if isinstance(value, str):
            if value not in OBSERVABLE_PRESETS:
                raise ValidationError(
                    f"Observable desconocido '{value}'. Presets: {sorted(OBSERVABLE_PRESETS)}")
            return value
        m = super()._deserialize(value, attr, data, **kwargs)
        if m.shape != (2, 2):
            raise ValidationError('El observable debe ser 2×2')
        if not is_hermitian(m, 1e-10):
            raise ValidationError('El observable no es hermítico')
        return m

    def _serialize(self, value, attr, obj, **kwargs):
        return value if isinstance(value, str) else super()._serialize(value, attr, obj, **kwargs)


class StrictSchema(Schema):
    class Meta:
        unknown = RAISE


class ParamsSchema(StrictSchema):
    """Parámetros del modelo (ω, ν, g, k); para JC se acepta δ en lugar de ω."""

    omega = fields.Float(allow_nan=False)
    delta = fields.Float(allow_nan=False)
    nu = fields.Float(load_default=0.0, allow_nan=False)
    g = ComplexField()
    k = fields.Int(load_default=1, validate=validate.Range(min=1))


class SeedSchema(StrictSchema):
    type = fields.Str(required=True, validate=validate.OneOf(['fock', 'coherent', 'explicit']))
    m = fields.Int(validate=validate.Range(min=0))
    alpha = ComplexField()
    cutoff = fields.Int(validate=validate.Range(min=0))
    amplitudes = fields.List(ComplexField(), validate=validate.Length(min=1))

    @validates_schema
    def validate_tipo(self, data, **kwargs):
        requeridos = {'fock': ['m'], 'coherent': ['alpha', 'cutoff'], 'explicit': ['amplitudes']}
        tipo = data['type']
        faltan = [c for c in requeridos[tipo] if c not in data]
        sobran = [c for c in data if c != 'type' and c not in requeridos[tipo]]
        if faltan:
            raise ValidationError(f"La semilla '{tipo}' requiere {faltan}")
        if sobran:
            raise ValidationError(f"Campos no válidos para la semilla '{tipo}': {sobran}")


class SpaceSchema(StrictSchema):
    dim = fields.Int(required=True, validate=validate.Range(min=2, max=MAX_DIM))
    guard = fields.Int(validate=validate.Range(min=0))


class GridSchema(StrictSchema):
    t_start = fields.Float(load_default=0.0, allow_nan=False)
    t_end = fields.Float(required=True, allow_nan=False)
    steps = fields.Int(load_default=Config.DEFAULT_STEPS, validate=validate.Range(min=2, max=100000))

    @validates_schema
    def validate_intervalo(self, data, **kwargs):
        if not data['t_end'] > data.get('t_start', 0.0):
            raise ValidationError('Se requiere t_end > t_start', 't_end')


class BlocksSchema(StrictSchema):
    h_plus = MatrixField(required=True)
    h_minus = MatrixField(required=True)
    v = MatrixField(required=True)


class SolverOptionsSchema(StrictSchema):
    indices = fields.List(fields.Int(validate=validate.Range(min=0)), validate=validate.Length(min=1))


TOLERANCE_KEYS = sorted(Config.TOLERANCES)


class ScenarioSchema(StrictSchema):
    """
    Escenario completo.

    DTO PATTERN: valida el documento y lo transforma en ScenarioConfig.
    """

    model = fields.Str(required=True, validate=validate.OneOf(['jc', 'rabi', 'custom-blocks']))
    params = fields.Nested(ParamsSchema, load_default=dict)
    observable = ObservableField(required=True)
    solver = fields.Str(load_default='analytic', validate=validate.OneOf(['analytic', 'graph_subspace']))
    solver_options = fields.Nested(SolverOptionsSchema, load_default=dict)
    seed_state = fields.Nested(SeedSchema, required=True)
    state_kind = fields.Str(load_default='psi',
                            validate=validate.OneOf(['psi', 'phi', 'rabi_parity', 'product_control']))
    eps = fields.Int(validate=validate.OneOf([1, -1]))
    space = fields.Nested(SpaceSchema, required=True)
    grid = fields.Nested(GridSchema, required=True)
    tolerances = fields.Dict(keys=fields.Str(validate=validate.OneOf(TOLERANCE_KEYS)),
                             values=fields.Float(validate=validate.Range(min=0, min_inclusive=False)),
                             load_default=dict)
    blocks = fields.Nested(BlocksSchema)
    preparation_noise = fields.Float(load_default=0.0, validate=validate.Range(min=0))
    noise_seed = fields.Int(load_default=7, validate=validate.Range(min=0))

    @validates_schema(skip_on_field_errors=True)
    def validate_modelo(self, data, **kwargs):
        model = data['model']
        params = data['params']
        dim = data['space']['dim']

        if model == 'jc':
            if 'g' not in params:
                raise ValidationError('El modelo jc requiere g', 'params')
            if ('omega' in params) == ('delta' in params):
                raise ValidationError('El modelo jc requiere exactamente uno de omega o delta', 'params')
        elif model == 'rabi':
            if 'g' not in params or 'omega' not in params:
                raise ValidationError('El modelo rabi requiere omega y g', 'params')
            if 'delta' in params:
                raise ValidationError('delta solo aplica al modelo jc', 'params')
            if params['k'] >= dim:
                raise ValidationError(f"k = {params['k']} debe ser menor que dim = {dim}", 'params')
        else:
            if 'blocks' not in data:
                raise ValidationError('El modelo custom-blocks requiere blocks', 'blocks')
            for nombre, m in data['blocks'].items():
                if m.shape != (dim, dim):
                    raise ValidationError(f'{nombre} debe ser {dim}×{dim}', 'blocks')
            for nombre in ('h_plus', 'h_minus'):
                if not is_hermitian(data['blocks'][nombre], 1e-12):
                    raise ValidationError(f'{nombre} no es hermítica', 'blocks')
            if data['solver'] != 'graph_subspace':
                raise ValidationError('custom-blocks requiere solver graph_subspace', 'solver')

        if model != 'custom-blocks' and 'blocks' in data:
            raise ValidationError('blocks solo aplica a custom-blocks', 'blocks')

    @validates_schema(skip_on_field_errors=True)
    def validate_estado(self, data, **kwargs):
        lam = _observable_matrix(data['observable'])
        kind = data['state_kind']
        if kind == 'rabi_parity':
            if data['model'] != 'rabi':
                raise ValidationError('rabi_parity requiere el modelo rabi', 'state_kind')
            if 'eps' not in data:
                raise ValidationError('rabi_parity requiere eps = ±1', 'eps')
            if not np.allclose(lam, OBSERVABLE_PRESETS['sigma_x'], atol=1e-12):
                raise ValidationError('rabi_parity requiere observable sigma_x', 'observable')
        elif 'eps' in data:
            raise ValidationError('eps solo aplica a rabi_parity', 'eps')

        if data['model'] == 'jc' and data['solver'] == 'analytic' and not _trivial_frame(lam):
            raise ValidationError('El solver analítico de jc requiere un observable diagonal '
                                  '(λ₊ en la primera entrada)', 'solver')
        if data['model'] == 'rabi' and data['solver'] == 'analytic' and not _sigma_x_frame(lam):
            raise ValidationError('El solver analítico de rabi requiere observable sigma_x '
                                  '(a·I + b·σx con b > 0)', 'solver')

    @validates_schema(skip_on_field_errors=True)
    def validate_espacio(self, data, **kwargs):
        dim = data['space']['dim']
        guard = data['space'].get('guard', math.ceil(dim / 8))
        if guard >= dim:
            raise ValidationError(f'guard = {guard} debe ser menor que dim = {dim}', 'space')
        soporte = _seed_support(data['seed_state'])
        if dim < 2 * soporte:
            raise ValidationError(f'dim = {dim} debe ser al menos el doble del soporte de la '
                                  f'semilla ({soporte})', 'space')
        if soporte > dim - guard:
            raise ValidationError('La semilla alcanza la banda de guarda', 'seed_state')
        indices = data['solver_options'].get('indices')
        if indices is not None and any(i >= 2 * dim for i in indices):
            raise ValidationError('Índices fuera de rango', 'solver_options')

    @post_load
    def make_scenario(self, data, **kwargs):
        dim = data['space']['dim']
        guard = data['space'].get('guard', math.ceil(dim / 8))
        data['space']['guard'] = guard
        tolerances = dict(Config.TOLERANCES)
        tolerances.update(data['tolerances'])
        data['tolerances'] = tolerances

        observable = data['observable']
        nombre = observable if isinstance(observable, str) else 'explicit'

        blocks = data.get('blocks')
        return ScenarioConfig(
            model=data['model'],
            params=dict(data['params']),
            observable=_observable_matrix(observable),
            observable_name=nombre,
            solver=data['solver'],
            seed_state=dict(data['seed_state']),
            state_kind=data['state_kind'],
            space=FockSpace(dim, guard),
            grid=TimeGrid(data['grid']['t_start'], data['grid']['t_end'], data['grid']['steps']),
            tolerances=tolerances,
            eps=data.get('eps'),
            blocks=dict(blocks) if blocks is not None else None,
            preparation_noise=data['preparation_noise'],
            noise_seed=data['noise_seed'],
            solver_options=dict(data['solver_options']),
            echo=self.dump(data),
        )


def _observable_matrix(observable) -> np.ndarray:
    return OBSERVABLE_PRESETS[observable] if isinstance(observable, str) else observable


def _trivial_frame(lam: np.ndarray) -> bool:
    # incluye el observable degenerado: u = I
    return abs(lam[0, 1]) == 0 and lam[0, 0].real >= lam[1, 1].real


def _sigma_x_frame(lam: np.ndarray) -> bool:
    """Λ = a·I + b·σx con b > 0: mismo marco propio que σx."""
    return (abs(lam[0, 0] - lam[1, 1]) < 1e-12 and abs(lam[0, 1].imag) < 1e-12
            and lam[0, 1].real > 1e-12)


def _seed_support(seed: dict) -> int:
    if seed['type'] == 'fock':
        return seed['m'] + 1
    if seed['type'] == 'coherent':
        return seed['cutoff'] + 1
    return len(seed['amplitudes'])


class ReportSchema(StrictSchema):
    """
    Documento report.json.

    DTO PATTERN: fija el formato del reporte que emite el repositorio.
    """

    scenario = fields.Dict(required=True)
    model = fields.Str(required=True)
    solver = fields.Str(required=True)
    solver_method = fields.Str(required=True)
    solver_note = fields.Str(required=True)
    state_kind = fields.Str(required=True)
    branch = fields.Str(allow_none=True, required=True)
    residual_norm = fields.Float(required=True)
    interior_residual_norm = fields.Float(required=True)
    pseudo_hermiticity_defect = fields.Float(required=True)
    max_drift = fields.Float(required=True)
    leak_max = fields.Float(required=True)
    min_fidelity = fields.Float(allow_none=True, required=True)
    initial_lambda = fields.Float(required=True)
    schmidt_rank = fields.Int(required=True)
    schmidt_coefficients = fields.List(fields.Float(), required=True)
    degenerate_observable = fields.Bool(required=True)
    truncation_limited = fields.Bool(required=True)
    checks = fields.Dict(keys=fields.Str(), values=fields.Bool(), required=True)
    passed = fields.Bool(required=True)
    exit_code = fields.Int(required=True, validate=validate.OneOf([0, 1]))
