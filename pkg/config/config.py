import os
from dotenv import load_dotenv

load_dotenv()


class Config:
    """Configuración base"""
    # Nivel de logging del simulador
    LOG_LEVEL = os.getenv('CQS_LOG_LEVEL', 'INFO')

    # Límite de hilos para los barridos (sweep)
    THREADS = int(os.getenv('CQS_THREADS', str(os.cpu_count() or 1)))

    # Directorio de salida por defecto
    OUT_DIR = os.getenv('CQS_OUT_DIR', 'results')

    # Tolerancias por defecto (sobrescribibles desde el escenario)
    TOLERANCES = {
        'analytic': 1e-10,
        'numerical': 1e-8,
        'drift': 1e-8,
        'fidelity': 1e-6,
        'leakage': 1e-8,
        'separability': 1e-10,
        'cond_t': 1e8,
        'cond_s': 1e10,
        'control_drift': 0.01,
    }

    # Malla temporal por defecto
    DEFAULT_STEPS = 201


class DevelopmentConfig(Config):
    """Configuración de desarrollo"""
    DEBUG = True
    TESTING = False
    LOG_LEVEL = os.getenv('CQS_LOG_LEVEL', 'DEBUG')


class ProductionConfig(Config):
    """Configuración de producción"""
    DEBUG = False
    TESTING = False


class TestingConfig(Config):
    """Configuración de testing"""
    DEBUG = True
    TESTING = True
    # Silenciar el pipeline durante los tests
    LOG_LEVEL = 'WARNING'
    # Barridos secuenciales para que los tests sean deterministas en tiempo
    THREADS = 1


config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': ProductionConfig
}
