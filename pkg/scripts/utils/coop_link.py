"""
Cadena de trama cooperativa amplify-and-forward en dos ranuras.

Ranura 1: la fuente difunde x_s hacia destino y relay.
Ranura 2: el relay amplifica su copia ruidosa con β y la reenvía.
El destino combina ambas copias (MRC), demapea y decodifica.
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .channel import RAYLEIGH, FadingSpec, LinkState, apply_link, draw_fading
from .fec import DEFAULT_CODE, ConvCodeSpec, conv_encode, viterbi_decode
from .modem import qpsk_demap_hard, qpsk_demap_soft, qpsk_map
from .topology import LinkGains

POWER_TOLERANCE = 1e-12


@dataclass(frozen=True)
class PowerAllocation:
    """Reparto de la energía total entre la ranura de la fuente y la del relay."""

    p_src: float = 0.5
    p_rel: float = 0.5

    def __post_init__(self):
        for label, value in (("p_src", self.p_src), ("p_rel", self.p_rel)):
            if not 0.0 < value < 1.0:
                raise ValueError(f"{label} debe estar en (0, 1) (recibido {value})")
        if abs(self.p_src + self.p_rel - 1.0) > POWER_TOLERANCE:
            raise ValueError(
                f"p_src + p_rel debe ser 1 (recibido {self.p_src + self.p_rel})"
            )

    @classmethod
    def from_source_share(cls, p_src: float) -> "PowerAllocation":
        return cls(p_src, 1.0 - p_src)


EQUAL_POWER = PowerAllocation(0.5, 0.5)
SOURCE_HEAVY_POWER = PowerAllocation(2.0 / 3.0, 1.0 / 3.0)


class MrcMode(str, Enum):
    """Pesos del combinador para la rama del relay."""

    LAST_HOP = "lasthop"
    CASCADE = "cascade"
    DIRECT = "direct"


@dataclass(frozen=True)
class FrameResult:
    info_bits: int
    bit_errors: int

    def __post_init__(self):
        if not 0 <= self.bit_errors <= self.info_bits:
            raise ValueError(
                f"bit_errors fuera de rango: {self.bit_errors}/{self.info_bits}"
            )


@dataclass(frozen=True)
class CoopScenario:
    """Todo lo necesario para simular una trama a un N₀ dado."""

    gains: LinkGains
    n0: float
    power: PowerAllocation = EQUAL_POWER
    code: Optional[ConvCodeSpec] = DEFAULT_CODE
    fading_sd: FadingSpec = RAYLEIGH
    fading_sr: FadingSpec = RAYLEIGH
    fading_rd: FadingSpec = RAYLEIGH
    frame_info_bits: int = 1000
    mrc_mode: MrcMode = MrcMode.LAST_HOP
    relay_enabled: bool = True
    cophase: bool = True

    def __post_init__(self):
        object.__setattr__(self, "mrc_mode", MrcMode(self.mrc_mode))
        if self.n0 <= 0:
            raise ValueError(f"n0 debe ser > 0 (recibido {self.n0})")
        if self.frame_info_bits < 1:
            raise ValueError("frame_info_bits debe ser >= 1")
        if self.code is None and self.frame_info_bits % 2 != 0:
            raise ValueError("Sin codificación, frame_info_bits debe ser par (QPSK)")

    @property
    def source_energy(self) -> float:
        # sin relay la fuente usa toda la energía
        return self.power.p_src if self.relay_enabled else 1.0


def af_gain(p_rel: float, p_src: float, g_sr: float, h_sr: complex, n0: float) -> float:
    """
    Factor de amplificación β = √(p_rel / (p_src·g_sr·|h_sr|² + n0)).

    Con p_src = p_rel = E_b y g_sr = 1 se reduce a √(E_b/(E_b|h_sr|² + N₀)).
    """
    return float(np.sqrt(p_rel / (p_src * g_sr * abs(h_sr) ** 2 + n0)))


def relay_forward(y_sr, beta: float, h_sr: complex, cophase: bool = True) -> np.ndarray:
    """Señal transmitida por el relay: x_r = β·y_sr, opcionalmente co-faseada con h_sr."""
    y = np.asarray(y_sr, dtype=np.complex128)
    if cophase and abs(h_sr) > 0:
        return beta * (np.conj(h_sr) / abs(h_sr)) * y
    return beta * y


def mrc_combine(u_sd, u_rd, w_sd: complex, w_rd: complex) -> np.ndarray:
    """
    r[i] = conj(w_sd)·u_sd[i] + conj(w_rd)·u_rd[i].

    Raises:
        ValueError: Si los bloques tienen longitudes distintas
    """
    a = np.asarray(u_sd, dtype=np.complex128)
    b = np.asarray(u_rd, dtype=np.complex128)
    if a.shape != b.shape:
        raise ValueError(f"Longitudes distintas: {a.shape} vs {b.shape}")
    return np.conj(w_sd) * a + np.conj(w_rd) * b


def combiner_weights(
    scenario: CoopScenario,
    h_sd: complex,
    h_sr: complex,
    h_rd: complex,
    beta: float,
) -> Tuple[complex, complex]:
    """Pesos (w_sd, w_rd) según el modo MRC del escenario."""
    g = scenario.gains
    w_sd = np.sqrt(g.g_sd) * h_sd
    if scenario.mrc_mode == MrcMode.DIRECT:
        return w_sd, 0.0j
    if scenario.mrc_mode == MrcMode.CASCADE:
        h_sr_eff = abs(h_sr) if scenario.cophase else h_sr
        return w_sd, beta * np.sqrt(g.g_sr * g.g_rd) * h_sr_eff * h_rd
    return w_sd, np.sqrt(g.g_rd) * h_rd


def _transmit_frame(scenario: CoopScenario, rng: np.random.Generator):
    """Ejecuta la parte de canal de una trama; devuelve (bits, señal combinada)."""
    g = scenario.gains
    n0 = scenario.n0

    h_sd = draw_fading(scenario.fading_sd, rng)
    h_sr = draw_fading(scenario.fading_sr, rng)
    h_rd = draw_fading(scenario.fading_rd, rng)

    info = rng.integers(0, 2, scenario.frame_info_bits, dtype=np.uint8)
    coded = conv_encode(info, scenario.code) if scenario.code is not None else info
    x_s = np.sqrt(scenario.source_energy) * qpsk_map(coded)

    y_sd = apply_link(x_s, LinkState(h_sd, g.g_sd, n0), rng)
    if not scenario.relay_enabled:
        return info, np.conj(h_sd) * y_sd

    y_sr = apply_link(x_s, LinkState(h_sr, g.g_sr, n0), rng)
    beta = af_gain(scenario.power.p_rel, scenario.power.p_src, g.g_sr, h_sr, n0)
    x_r = relay_forward(y_sr, beta, h_sr, scenario.cophase)
    y_rd = apply_link(x_r, LinkState(h_rd, g.g_rd, n0), rng)

    w_sd, w_rd = combiner_weights(scenario, h_sd, h_sr, h_rd, beta)
    return info, mrc_combine(y_sd, y_rd, w_sd, w_rd)


def simulate_frames(
    scenario: CoopScenario,
    rngs: Sequence[np.random.Generator],
) -> List[FrameResult]:
    """
    Simula un bloque de tramas, una por generador, decodificándolas en lote.

    El resultado de cada trama depende solo de su propio generador.
    """
    if not rngs:
        return []

    infos = []
    combined = []
    for rng in rngs:
        info, r = _transmit_frame(scenario, rng)
        infos.append(info)
        combined.append(r)

    info_matrix = np.vstack(infos)
    if scenario.code is not None:
        metrics = np.vstack([qpsk_demap_soft(r) for r in combined])
        decided = viterbi_decode(metrics, scenario.code, metric_mode="soft")
    else:
        decided = np.vstack([qpsk_demap_hard(r) for r in combined])

    errors = np.count_nonzero(decided != info_matrix, axis=1)
    return [
        FrameResult(info_bits=scenario.frame_info_bits, bit_errors=int(e))
        for e in errors
    ]


def simulate_frame(scenario: CoopScenario, rng: np.random.Generator) -> FrameResult:
    """Simula una trama completa: fuente, relay AF, MRC, demapeo y decodificación."""
    return simulate_frames(scenario, [rng])[0]
