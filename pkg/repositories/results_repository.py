"""
PATRÓN: Repository Pattern
==========================

Abstrae la persistencia de resultados: el Service Layer entrega series y
reportes y el repositorio decide formato y escritura.

- timeseries.csv: ``t,lambda_expect,alpha,c_re,c_im,fidelity,leakage`` (pandas, %.17g)
- report.json:    claves ordenadas, indentación 2
- sweep.csv:      una fila por valor barrido

Cada archivo se escribe en un temporal del mismo directorio y se publica con
os.replace, así un lector nunca ve un archivo a medio escribir.
"""

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, List

import pandas as pd

from models import TimeSeries

logger = logging.getLogger(__name__)

TIMESERIES_COLUMNS = ['t', 'lambda_expect', 'alpha', 'c_re', 'c_im', 'fidelity', 'leakage']
SWEEP_COLUMNS = ['value', 'max_drift', 'leak_max', 'min_fidelity', 'residual_norm', 'passed']
FLOAT_FORMAT = '%.17g'


class ResultsRepository:
    """Escritura y lectura de los archivos de resultados."""

    def emit(self, ts: TimeSeries, report: Dict[str, Any], out_dir) -> Dict[str, Path]:
        """
        Escribe timeseries.csv y report.json en ``out_dir``.

        Returns:
            {'timeseries': ruta, 'report': ruta}
        """
        destino = Path(out_dir)
        destino.mkdir(parents=True, exist_ok=True)

        rutas = {
            'timeseries': self._write_atomic(destino / 'timeseries.csv', self.timeseries_csv(ts)),
            'report': self._write_atomic(destino / 'report.json', self.report_json(report)),
        }
        logger.info("Resultados escritos en %s", destino)
        return rutas

    def write_sweep(self, rows: List[Dict[str, Any]], out_dir) -> Path:
        """sweep.csv ordenado por valor."""
        destino = Path(out_dir)
        destino.mkdir(parents=True, exist_ok=True)
        df = pd.DataFrame(rows, columns=SWEEP_COLUMNS).sort_values('value', kind='stable')
        df['passed'] = df['passed'].astype(int)
        texto = df.to_csv(index=False, float_format=FLOAT_FORMAT, na_rep='nan', lineterminator='\n')
        return self._write_atomic(destino / 'sweep.csv', texto)

    # ------------------------------------------------------------------
    # Formatos
    # ------------------------------------------------------------------

    @staticmethod
    def timeseries_frame(ts: TimeSeries) -> pd.DataFrame:
        return pd.DataFrame({
            't': ts.times,
            'lambda_expect': ts.lambda_expect,
            'alpha': ts.alpha,
            'c_re': ts.coherence.real,
            'c_im': ts.coherence.imag,
            'fidelity': ts.fidelity,
            'leakage': ts.leakage,
        }, columns=TIMESERIES_COLUMNS)

    def timeseries_csv(self, ts: TimeSeries) -> str:
        return self.timeseries_frame(ts).to_csv(
            index=False, float_format=FLOAT_FORMAT, na_rep='nan', lineterminator='\n')

    @staticmethod
    def report_json(report: Dict[str, Any]) -> str:
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + '\n'

    # ------------------------------------------------------------------
    # Lectura
    # ------------------------------------------------------------------

    @staticmethod
    def read_timeseries(path) -> pd.DataFrame:
        """Relee el CSV sin pérdida de precisión."""
        return pd.read_csv(path, float_precision='round_trip')

    @staticmethod
    def read_report(path) -> Dict[str, Any]:
        with open(path, encoding='utf-8') as f:
            return json.load(f)

    # ------------------------------------------------------------------

    @staticmethod
    def _write_atomic(path: Path, texto: str) -> Path:
        fd, temporal = tempfile.mkstemp(dir=path.parent, prefix=f'.{path.name}.', suffix='.tmp')
        try:
            with os.fdopen(fd, 'w', encoding='utf-8', newline='') as f:
                f.write(texto)
            os.replace(temporal, path)
        except OSError:
            if os.path.exists(temporal):
                os.remove(temporal)
            raise
        return path
