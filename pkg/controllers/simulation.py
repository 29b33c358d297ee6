"""
PATRÓN: Facade Pattern + Controller
===================================

Los comandos exponen operaciones simples que internamente coordinan el
pipeline completo del ScenarioService:

    simulate <config.json> [--out DIR]
    sweep <config.json> --axis NAME --values v1,v2,... [--out DIR]
    riccati-check <config.json>

Códigos de salida:
    0 éxito, 1 compuerta fallida, 2 error de configuración, 3 falla numérica
"""

import functools
import logging

import click
from marshmallow import ValidationError

from services.report_service import ReportService
from services.scenario_service import parse_scenario
from utils.errors import BranchSelectionError, NumericalError, SimulationError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def handle_errors(f):
    """Traduce las excepciones del pipeline a diagnósticos y códigos de salida."""

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return f(*args, **kwargs)
        except BranchSelectionError as e:
            logger.error("Selección de rama fallida: %s", e)
            click.echo(f"error: {e}", err=True)
            click.echo(e.tabla(), err=True)
            ctx.exit(EXIT_NUMERICAL)
        except NumericalError as e:
            logger.error("Falla numérica: %s", e)
            click.echo(f"error: {e}", err=True)
            ctx.exit(EXIT_NUMERICAL)
        except (SimulationError, ValidationError) as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(EXIT_CONFIG)
        except OSError as e:
            click.echo(f"error: [io] {e}", err=True)
            ctx.exit(EXIT_CONFIG)

    return wrapper


def _read_scenario(path: str):
    with open(path, encoding='utf-8') as f:
        return parse_scenario(f.read())


def _parse_values(texto: str):
    try:
        return [float(v) for v in texto.split(',') if v.strip()]
    except ValueError as e:
        raise click.BadParameter(f"valores no numéricos: {texto}") from e


def register_commands(cli: click.Group) -> None:
    """Registra los comandos en el grupo creado por create_app."""

    @cli.command('simulate')
    @click.argument('config_path', type=click.Path(exists=True, dir_okay=False))
    @click.option('--out', 'out_dir', type=click.Path(file_okay=False), default=None,
                  help='Directorio de salida (por defecto CQS_OUT_DIR)')
    @click.pass_context
    @handle_errors
    def simulate(ctx, config_path, out_dir):
        """Corre un escenario y escribe timeseries.csv y report.json."""
        service = ctx.obj['service']
        cfg = _read_scenario(config_path)
        _, report = service.run_scenario(cfg, out_dir or ctx.obj['config'].OUT_DIR)
        click.echo(ReportService.format_table(report))
        ctx.exit(report['exit_code'])

    @cli.command('sweep')
    @click.argument('config_path', type=click.Path(exists=True, dir_okay=False))
    @click.option('--axis', required=True, help='Parámetro escalar a barrer')
    @click.option('--values', 'values_text', required=True, help='Valores separados por coma')
    @click.option('--out', 'out_dir', type=click.Path(file_okay=False), default=None)
    @click.pass_context
    @handle_errors
    def sweep(ctx, config_path, axis, values_text, out_dir):
        """Barre un parámetro y escribe sweep.csv más un subdirectorio por valor."""
        service = ctx.obj['service']
        cfg = _read_scenario(config_path)
        resultados = service.sweep(cfg, axis, _parse_values(values_text),
                                   out_dir or ctx.obj['config'].OUT_DIR)
        for valor, report in resultados:
            estado = 'OK' if report['passed'] else 'FALLA'
            click.echo(f"{axis}={valor:.6g}  deriva={report['max_drift']:.3e}  {estado}")
        ok = all(report['passed'] for _, report in resultados)
        ctx.exit(EXIT_OK if ok else EXIT_CHECK_FAILED)

    @cli.command('riccati-check')
    @click.argument('config_path', type=click.Path(exists=True, dir_okay=False))
    @click.pass_context
    @handle_errors
    def riccati_check(ctx, config_path):
        """Imprime residuos y defectos de pseudo-hermiticidad y semejanza."""
        service = ctx.obj['service']
        cfg = _read_scenario(config_path)
        resultado = service.riccati_check(cfg)
        click.echo(ReportService.riccati_rows(resultado['quantities']))
        ctx.exit(EXIT_OK if resultado['passed'] else EXIT_CHECK_FAILED)
