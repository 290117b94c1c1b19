"""
Calculadora de métricas sobre curvas BER.

Este módulo proporciona las curvas teóricas de referencia (QPSK sobre AWGN
y sobre Rayleigh), la incertidumbre binomial de una estimación Monte-Carlo
y el análisis comparativo de curvas (SNR requerida y ganancia).
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from scipy.special import erfc


@dataclass
class BerCurve:
    """Curva BER medida de un escenario."""

    label: str
    snr_db: List[float] = field(default_factory=list)
    ber: List[float] = field(default_factory=list)
    info_bits: List[int] = field(default_factory=list)


class BerCalculator:
    """Calculadora de referencias teóricas y comparación de curvas BER."""

    DEFAULT_TARGET_BER = 1e-4

    @staticmethod
    def q_function(x):
        """Función Q gaussiana: Q(x) = ½·erfc(x/√2)."""
        return 0.5 * erfc(np.asarray(x, dtype=np.float64) / math.sqrt(2.0))

    @staticmethod
    def ber_awgn_qpsk(snr_db):
        """
        BER de QPSK Gray sobre AWGN.

        Formula:
            BER = Q(√(2·Eb/N0))
        """
        ebn0 = 10.0 ** (np.asarray(snr_db, dtype=np.float64) / 10.0)
        return BerCalculator.q_function(np.sqrt(2.0 * ebn0))

    @staticmethod
    def ber_rayleigh_qpsk(snr_db):
        """
        BER media de QPSK Gray sobre Rayleigh con SNR media por bit γ̄.

        Formula:
            BER = ½·(1 - √(γ̄/(1+γ̄)))
        """
        gamma = 10.0 ** (np.asarray(snr_db, dtype=np.float64) / 10.0)
        return 0.5 * (1.0 - np.sqrt(gamma / (1.0 + gamma)))

    @staticmethod
    def binomial_sigma(ber: float, bits: int) -> float:
        """Desviación estándar binomial de una BER estimada con `bits` bits."""
        if bits <= 0:
            return 0.0
        return math.sqrt(max(ber * (1.0 - ber), 0.0) / bits)

    @staticmethod
    def separation_sigmas(ber_a: float, bits_a: int, ber_b: float, bits_b: int) -> float:
        """
        Separación entre dos estimaciones en unidades de σ combinada.

        Returns:
            |ber_a - ber_b| / √(σa² + σb²); infinito si ambas σ son nulas y difieren
        """
        sigma = math.hypot(
            BerCalculator.binomial_sigma(ber_a, bits_a),
            BerCalculator.binomial_sigma(ber_b, bits_b),
        )
        delta = abs(ber_a - ber_b)
        if sigma == 0.0:
            return math.inf if delta > 0 else 0.0
        return delta / sigma

    @staticmethod
    def required_snr(
        snr_db: Sequence[float],
        ber: Sequence[float],
        target: float = DEFAULT_TARGET_BER,
    ) -> Optional[float]:
        """
        SNR a la que la curva cruza `target`.

        Interpola linealmente log10(BER) entre los dos puntos de la grilla
        que encierran el objetivo.

        Args:
            snr_db: Grilla SNR creciente
            ber: BER medida en cada punto
            target: BER objetivo

        Returns:
            SNR en dB o None si la curva no alcanza el objetivo
        """
        if target <= 0:
            raise ValueError("target debe ser > 0")
        points = list(zip(snr_db, ber))
        for (s0, b0), (s1, b1) in zip(points, points[1:]):
            if b0 >= target > b1 or (b0 >= target and b1 == target):
                if b1 <= 0:
                    return float(s1)
                l0, l1, lt = math.log10(b0), math.log10(b1), math.log10(target)
                if l0 == l1:
                    return float(s0)
                return float(s0 + (lt - l0) * (s1 - s0) / (l1 - l0))
        if points and points[0][1] <= target:
            return float(points[0][0])
        return None

    def compare_curves(
        self,
        curves: Sequence[BerCurve],
        target: float = DEFAULT_TARGET_BER,
        reference: Optional[str] = None,
    ) -> List[Dict[str, Any]]:
        """
        Compara curvas por la SNR requerida para alcanzar `target`.

        Args:
            curves: Curvas a comparar
            target: BER objetivo
            reference: Etiqueta de la curva de referencia para la ganancia

        Returns:
            Lista ordenada (menor SNR requerida primero; sin cruce al final) con
            la SNR requerida y la ganancia en dB respecto de la referencia
        """
        required = {c.label: self.required_snr(c.snr_db, c.ber, target) for c in curves}
        reference_snr = required.get(reference) if reference else None

        results = []
        for curve in curves:
            snr = required[curve.label]
            gain = None
            if snr is not None and reference_snr is not None:
                gain = round(reference_snr - snr, 3)
            results.append({
                "scenario": curve.label,
                "required_snr_db": None if snr is None else round(snr, 3),
                "gain_db": gain,
                "min_ber": min(curve.ber) if curve.ber else None,
                "points": len(curve.snr_db),
            })

        results.sort(
            key=lambda r: (r["required_snr_db"] is None, r["required_snr_db"] or 0.0)
        )
        return results

    def __repr__(self) -> str:
        return f"BerCalculator(target={self.DEFAULT_TARGET_BER:g})"
