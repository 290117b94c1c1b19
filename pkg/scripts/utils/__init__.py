"""
Módulo de utilidades del simulador cooperativo amplify-and-forward.

Este paquete contiene la cadena física (código convolucional, QPSK, canales
con desvanecimiento, topologías de relay), la trama cooperativa, el motor de
barridos BER y la configuración de escenarios.
"""

__version__ = "1.0.0"
__author__ = "Coop-AF Sim"

from .ber_metrics import BerCalculator, BerCurve
from .engine import ConfigError, SweepConfig, SweepRunner, run_point, run_sweep
from .scenario_config import ScenarioValidator

__all__ = [
    "BerCalculator",
    "BerCurve",
    "ConfigError",
    "ScenarioValidator",
    "SweepConfig",
    "SweepRunner",
    "run_point",
    "run_sweep",
]
