"""
Subflujos aleatorios determinísticos por trama.

Cada trama f del punto SNR s usa un generador derivado de la clave
(master_seed, s, f) mediante numpy.random.SeedSequence, de modo que los
resultados no dependen del orden de ejecución ni del número de workers.
"""

import numpy as np

SEED_MASK = (1 << 64) - 1


def frame_rng(master_seed: int, snr_index: int, frame_index: int) -> np.random.Generator:
    """
    Generador independiente para una trama.

    Args:
        master_seed: Semilla maestra de 64 bits
        snr_index: Índice del punto SNR en la grilla
        frame_index: Índice de la trama dentro del punto

    Returns:
        Generador PCG64 con estado derivado solo de la clave
    """
    if snr_index < 0 or frame_index < 0:
        raise ValueError("Los índices de subflujo deben ser >= 0")
    seq = np.random.SeedSequence(
        entropy=int(master_seed) & SEED_MASK,
        spawn_key=(int(snr_index), int(frame_index)),
    )
    return np.random.Generator(np.random.PCG64(seq))
