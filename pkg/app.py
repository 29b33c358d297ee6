import logging
import os

import click

from config.config import config
from controllers import register_commands
from services.scenario_service import ScenarioService


def create_app(config_name='development'):
    """Factory para crear la línea de comandos del simulador"""
    app_config = config[config_name]

    # Configurar logging una sola vez, con el nivel de la configuración
    logging.basicConfig(
        level=getattr(logging, str(app_config.LOG_LEVEL).upper(), logging.INFO),
        format='%(levelname)s %(name)s: %(message)s',
    )

    @click.group(help='Simulador de estados iniciales que conservan un observable del qubit.')
    @click.pass_context
    def cli(ctx):
        ctx.ensure_object(dict)
        ctx.obj.setdefault('config', app_config)
        # PATRÓN: Dependency Injection (los tests pueden pasar su propio servicio en obj)
        ctx.obj.setdefault('service', ScenarioService(threads=app_config.THREADS))

    register_commands(cli)
    return cli


if __name__ == '__main__':
    env = os.getenv('CQS_ENV', 'default')
    create_app(env)()
