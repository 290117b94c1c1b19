"""
Coop-AF Sim - Test Suite

Módulo de testing que valida:
1. Cumplimiento con documentación (methodology.md, scripts/README.md)
2. Bloques de enlace: código, QPSK, canales, topologías y relay AF
3. Motor de barrido y archivos de escenarios
4. Scripts de línea de comandos y curvas BER de aceptación
"""

__version__ = "1.0.0"
