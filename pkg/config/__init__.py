from .config import Config, TestingConfig, config

__all__ = [
    'Config',
    'TestingConfig',
    'config'
]
