"""
Controllers - comandos de la línea de comandos
"""

from .simulation import register_commands

__all__ = ['register_commands']
