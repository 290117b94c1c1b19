"""
Código convolucional de tasa 1/2 y decodificador de Viterbi.

Este módulo implementa el codificador convolucional (31, 27) octal con
longitud de restricción L = 5 y un decodificador de Viterbi de decisión
dura o blanda con terminación del trellis (L - 1 bits de cola en cero).

Convención de taps: cada generador se lee MSB primero y el MSB corresponde
al bit de entrada actual, de modo que (31)₈ = 11001 es la respuesta al
impulso 1, 1, 0, 0, 1.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np


@dataclass(frozen=True)
class ConvCodeSpec:
    """Parámetros de un código convolucional no recursivo."""

    constraint_length: int = 5
    generators: Tuple[int, ...] = (0o31, 0o27)

    def __post_init__(self):
        L = self.constraint_length
        if L < 2:
            raise ValueError(f"constraint_length debe ser >= 2 (recibido {L})")
        if not self.generators:
            raise ValueError("Se requiere al menos un generador")
        for g in self.generators:
            if g <= 0 or g >= (1 << L):
                raise ValueError(f"Generador {oct(g)} no cabe en {L} bits")
            if not (g >> (L - 1)) & 1:
                raise ValueError(
                    f"Generador {oct(g)} debe tener el tap del bit actual activo"
                )

    @property
    def rate_inverse(self) -> int:
        """Número de bits de salida por bit de entrada (n)."""
        return len(self.generators)

    @property
    def memory(self) -> int:
        return self.constraint_length - 1

    @property
    def num_states(self) -> int:
        return 1 << self.memory

    def coded_length(self, info_bits: int) -> int:
        """Longitud del bloque codificado y terminado para k bits de información."""
        return self.rate_inverse * (info_bits + self.memory)

    def info_length(self, coded_bits: int) -> int:
        """
        Número k de bits de información de un bloque terminado.

        Raises:
            ValueError: Si la longitud no es múltiplo de n o no admite terminación
        """
        n = self.rate_inverse
        if coded_bits % n != 0:
            raise ValueError(
                f"Longitud codificada {coded_bits} no es múltiplo de n={n}"
            )
        k = coded_bits // n - self.memory
        if k < 1:
            raise ValueError(
                f"Longitud codificada {coded_bits} inconsistente con la "
                f"terminación (se requieren al menos {n * (self.memory + 1)} bits)"
            )
        return k


DEFAULT_CODE = ConvCodeSpec()


def _parity(value: int) -> int:
    return bin(value).count("1") & 1


def _trellis(spec: ConvCodeSpec) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Construye la tabla de predecesores del trellis.

    El estado es la ventana de los L-1 bits previos con el más reciente en
    el MSB. Cada estado siguiente ns tiene dos predecesores, p0 < p1, que
    difieren solo en el bit más antiguo.

    Returns:
        Tupla (predecessors[S, 2], signs[S, 2, n], input_bit[S]) donde signs
        contiene ±1 (bit 0 -> +1) de la salida de cada transición
    """
    m = spec.memory
    S = spec.num_states
    n = spec.rate_inverse
    predecessors = np.zeros((S, 2), dtype=np.int64)
    signs = np.zeros((S, 2, n), dtype=np.float64)
    input_bit = np.zeros(S, dtype=np.int64)

    for ns in range(S):
        u = ns >> (m - 1)
        input_bit[ns] = u
        for b in (0, 1):
            prev = ((ns << 1) & (S - 1)) | b
            register = (u << m) | prev
            predecessors[ns, b] = prev
            for j, g in enumerate(spec.generators):
                signs[ns, b, j] = 1.0 - 2.0 * _parity(register & g)

    return predecessors, signs, input_bit


def conv_encode(info: Sequence[int], spec: ConvCodeSpec = DEFAULT_CODE) -> np.ndarray:
    """
    Codifica un bloque de bits con terminación del trellis.

    Args:
        info: Bits de información (0/1)
        spec: Código convolucional

    Returns:
        Bits codificados (uint8), n por tick, intercalados g1, g2, ...;
        longitud n·(k + L - 1)

    Raises:
        ValueError: Si el bloque está vacío
    """
    bits = np.asarray(info, dtype=np.uint8).ravel()
    if bits.size == 0:
        raise ValueError("El bloque de información está vacío")

    m = spec.memory
    padded = np.concatenate([bits, np.zeros(m, dtype=np.uint8)])
    out = np.empty((padded.size, spec.rate_inverse), dtype=np.uint8)

    for j, g in enumerate(spec.generators):
        taps = np.array(
            [(g >> (m - d)) & 1 for d in range(m + 1)], dtype=np.int64
        )
        # convolución polinomial mod 2 (taps[d] multiplica u_{t-d})
        out[:, j] = np.convolve(padded, taps)[: padded.size] & 1

    return out.ravel()


def viterbi_decode(
    observations,
    spec: ConvCodeSpec = DEFAULT_CODE,
    metric_mode: str = "soft",
) -> np.ndarray:
    """
    Decodifica por máxima verosimilitud un bloque terminado.

    En modo "hard" las observaciones son bits y se minimiza la distancia de
    Hamming; en modo "soft" cada observación es una métrica real (signo =
    hipótesis, positivo => bit 0) y se maximiza la correlación con los
    símbolos ±1 del código. Acepta un lote con forma (frames, N).

    Empates: se prefiere el predecesor con menor índice de estado.

    Args:
        observations: Secuencia (N,) o lote (B, N) de observaciones
        spec: Código convolucional
        metric_mode: "hard" o "soft"

    Returns:
        Bits de información decodificados, forma (k,) o (B, k)

    Raises:
        ValueError: Si la longitud no es válida o el modo es desconocido
    """
    obs = np.asarray(observations)
    single = obs.ndim == 1
    if single:
        obs = obs[np.newaxis, :]
    if obs.ndim != 2:
        raise ValueError("Las observaciones deben ser un vector o un lote 2-D")

    if metric_mode == "hard":
        metrics = 1.0 - 2.0 * (obs.astype(np.float64) != 0)
    elif metric_mode == "soft":
        metrics = obs.astype(np.float64)
    else:
        raise ValueError(f"metric_mode inválido: {metric_mode}")

    k = spec.info_length(metrics.shape[1])
    n = spec.rate_inverse
    steps = metrics.shape[1] // n
    batch = metrics.shape[0]
    metrics = metrics.reshape(batch, steps, n)

    predecessors, signs, input_bit = _trellis(spec)
    p0 = predecessors[:, 0]
    p1 = predecessors[:, 1]

    path = np.full((batch, spec.num_states), -np.inf)
    path[:, 0] = 0.0
    decisions = np.zeros((steps, batch, spec.num_states), dtype=bool)

    for t in range(steps):
        m_t = metrics[:, t, :]
        # suma explícita por salida: resultado idéntico para cualquier tamaño de lote
        bm0 = m_t[:, 0:1] * signs[:, 0, 0]
        bm1 = m_t[:, 0:1] * signs[:, 1, 0]
        for j in range(1, n):
            bm0 = bm0 + m_t[:, j:j + 1] * signs[:, 0, j]
            bm1 = bm1 + m_t[:, j:j + 1] * signs[:, 1, j]
        cand0 = path[:, p0] + bm0
        cand1 = path[:, p1] + bm1
        choose1 = cand1 > cand0
        decisions[t] = choose1
        path = np.where(choose1, cand1, cand0)

    # traceback completo desde el estado cero (trellis terminado)
    decoded = np.zeros((batch, steps), dtype=np.uint8)
    state = np.zeros(batch, dtype=np.int64)
    rows = np.arange(batch)
    for t in range(steps - 1, -1, -1):
        decoded[:, t] = input_bit[state]
        state = predecessors[state, decisions[t, rows, state].astype(np.int64)]

    info = decoded[:, :k]
    return info[0] if single else info
