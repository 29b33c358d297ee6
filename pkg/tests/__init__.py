# Tests del simulador
