"""
Modelos de canal por enlace: desvanecimiento en bloque Rayleigh / Rician-K
y aplicación del enlace ruidoso con ganancia geométrica.

Cada trama usa un único coeficiente h por enlace (desvanecimiento
cuasi-estático), redibujado de forma independiente en cada trama.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np


class FadingModel(str, Enum):
    """Modelo de desvanecimiento de un salto."""

    AWGN = "awgn"
    RAYLEIGH = "rayleigh"
    RICIAN = "rician"


@dataclass(frozen=True)
class FadingSpec:
    """
    Especificación del desvanecimiento de un enlace.

    Rayleigh <=> K = 0. El modelo AWGN fija h = 1 (sin desvanecimiento).
    """

    model: FadingModel = FadingModel.RAYLEIGH
    k_factor: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "model", FadingModel(self.model))
        if self.k_factor < 0:
            raise ValueError(f"k_factor debe ser >= 0 (recibido {self.k_factor})")
        if self.model == FadingModel.RAYLEIGH and self.k_factor != 0:
            raise ValueError("Un canal Rayleigh tiene k_factor = 0")
        if self.model == FadingModel.RICIAN and self.k_factor == 0:
            raise ValueError("Un canal Rician requiere k_factor > 0 (K = 0 es Rayleigh)")

    @classmethod
    def rician(cls, k_factor: float) -> "FadingSpec":
        """Canal Rician con factor K; K = 0 devuelve Rayleigh."""
        if k_factor == 0:
            return cls(FadingModel.RAYLEIGH, 0.0)
        return cls(FadingModel.RICIAN, float(k_factor))

    @property
    def los_mean(self) -> float:
        """Componente determinística q = √(K/(K+1))."""
        if self.model == FadingModel.AWGN:
            return 1.0
        K = self.k_factor
        return float(np.sqrt(K / (K + 1.0)))

    @property
    def scatter_scale(self) -> float:
        """Escala de la componente difusa σ = √(1/(K+1))."""
        if self.model == FadingModel.AWGN:
            return 0.0
        return float(np.sqrt(1.0 / (self.k_factor + 1.0)))


RAYLEIGH = FadingSpec()


@dataclass(frozen=True)
class LinkState:
    """Estado de un salto durante una trama: h, ganancia geométrica G y N₀."""

    h: complex
    gain: float
    n0: float

    def __post_init__(self):
        if self.gain <= 0:
            raise ValueError(f"gain debe ser > 0 (recibido {self.gain})")
        if self.n0 <= 0:
            raise ValueError(f"n0 debe ser > 0 (recibido {self.n0})")


def complex_gaussian(rng: np.random.Generator, size, power: float = 1.0) -> np.ndarray:
    """Muestras circulares complejas con E[|w|²] = power."""
    scale = np.sqrt(power / 2.0)
    return scale * (rng.standard_normal(size) + 1j * rng.standard_normal(size))


def draw_fading(spec: FadingSpec, rng: np.random.Generator) -> complex:
    """
    Genera un coeficiente h = q + σ·w con w ~ CN(0, 1).

    Para AWGN devuelve 1 sin consumir el generador.

    Args:
        spec: Especificación del desvanecimiento
        rng: Generador aleatorio del trabajador

    Returns:
        Coeficiente complejo con E[|h|²] = 1
    """
    if spec.k_factor < 0:
        raise ValueError(f"k_factor debe ser >= 0 (recibido {spec.k_factor})")
    if spec.model == FadingModel.AWGN:
        return 1.0 + 0.0j
    w = complex_gaussian(rng, None)
    return complex(spec.los_mean + spec.scatter_scale * w)


def draw_fading_samples(spec: FadingSpec, rng: np.random.Generator, count: int) -> np.ndarray:
    """Versión vectorizada de draw_fading para estudios estadísticos."""
    if spec.model == FadingModel.AWGN:
        return np.ones(count, dtype=np.complex128)
    return spec.los_mean + spec.scatter_scale * complex_gaussian(rng, count)


def apply_link(x, link: LinkState, rng: np.random.Generator) -> np.ndarray:
    """
    Aplica y[i] = √G·h·x[i] + n[i] con n ~ CN(0, N₀) i.i.d.

    Args:
        x: Bloque de símbolos transmitidos
        link: Estado del enlace (h constante en todo el bloque)
        rng: Generador aleatorio

    Returns:
        Bloque recibido
    """
    x = np.asarray(x, dtype=np.complex128)
    noise = complex_gaussian(rng, x.shape, link.n0)
    return np.sqrt(link.gain) * link.h * x + noise
