"""
Modulación QPSK con mapeo Gray.

Primer bit -> signo de la fase (I), segundo bit -> signo de la cuadratura (Q),
bit 0 -> +1, bit 1 -> -1, cada eje escalado por 1/√2 (energía unitaria).
"""

import numpy as np

QPSK_SCALE = 1.0 / np.sqrt(2.0)


def qpsk_map(bits) -> np.ndarray:
    """
    Mapea pares de bits a símbolos QPSK de energía unitaria.

    Args:
        bits: Bits (0/1) en número par

    Returns:
        Símbolos complejos, uno por cada par de bits

    Raises:
        ValueError: Si el número de bits es impar
    """
    b = np.asarray(bits, dtype=np.uint8).ravel()
    if b.size % 2 != 0:
        raise ValueError(f"QPSK requiere un número par de bits (recibido {b.size})")
    pairs = 1.0 - 2.0 * b.reshape(-1, 2)
    return QPSK_SCALE * (pairs[:, 0] + 1j * pairs[:, 1])


def qpsk_demap_hard(symbols) -> np.ndarray:
    """Decisión por signo; parte real o imaginaria nula resuelve a bit 0."""
    s = np.asarray(symbols, dtype=np.complex128).ravel()
    bits = np.empty((s.size, 2), dtype=np.uint8)
    bits[:, 0] = s.real < 0
    bits[:, 1] = s.imag < 0
    return bits.ravel()


def qpsk_demap_soft(symbols) -> np.ndarray:
    """
    Métricas blandas max-log (a escala positiva): +Re para el primer bit,
    +Im para el segundo. Métrica positiva => bit 0 más probable.
    """
    s = np.asarray(symbols, dtype=np.complex128).ravel()
    metrics = np.empty((s.size, 2), dtype=np.float64)
    metrics[:, 0] = s.real
    metrics[:, 1] = s.imag
    return metrics.ravel()
