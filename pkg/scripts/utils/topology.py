"""
Geometría de ubicación del relay.

Distancias y ganancias geométricas (G = (d_sd/d)^α) para las cuatro
familias de topología (equilátera, isósceles, lineal, escalena) y el
intercambio de roles fuente <-> relay. d_sd está normalizada a 1.
"""

import math
from dataclasses import dataclass
from typing import Optional

DEFAULT_ALPHA = 4.0
# f de la variante escalena A: altura del triángulo equilátero de lado 1
SCALENE_A_OFFSET = math.sqrt(3.0) / 2.0
SCALENE_B_OFFSET = 0.75


@dataclass(frozen=True)
class TopologySpec:
    """Base de las variantes de topología."""

    name = "topology"

    def validate(self) -> None:
        pass

    def params(self) -> dict:
        """Parámetros geométricos para la procedencia de resultados."""
        return {}


@dataclass(frozen=True)
class Equilateral(TopologySpec):
    name = "equilateral"


@dataclass(frozen=True)
class IsoscelesNearDest(TopologySpec):
    """d_sr = d_sd = 1, relay cerca del destino (d_rd < 1)."""

    theta: float = math.pi / 4
    name = "isosceles-dest"

    def validate(self) -> None:
        if not 0.0 < self.theta < math.pi / 3:
            raise ValueError(f"theta debe estar en (0, π/3) (recibido {self.theta})")

    def params(self) -> dict:
        return {"theta": self.theta}


@dataclass(frozen=True)
class IsoscelesNearSource(TopologySpec):
    """d_rd = d_sd = 1, relay cerca de la fuente (d_sr < 1)."""

    phi: float = math.pi / 4
    name = "isosceles-src"

    def validate(self) -> None:
        if not 0.0 < self.phi < math.pi / 3:
            raise ValueError(f"phi debe estar en (0, π/3) (recibido {self.phi})")

    def params(self) -> dict:
        return {"theta": self.phi}


@dataclass(frozen=True)
class Linear(TopologySpec):
    rho: float = 0.5
    name = "linear"

    def validate(self) -> None:
        if not 0.0 < self.rho < 1.0:
            raise ValueError(f"rho debe estar en (0, 1) (recibido {self.rho})")

    def params(self) -> dict:
        return {"rho": self.rho}


@dataclass(frozen=True)
class Scalene(TopologySpec):
    """Relay sobre una paralela a S-D a distancia f, en la fracción rho."""

    f: float = SCALENE_A_OFFSET
    rho: float = 0.35
    name = "scalene"

    def validate(self) -> None:
        if not self.f > 0.0:
            raise ValueError(f"f debe ser > 0 (recibido {self.f})")
        if not 0.0 < self.rho < 1.0:
            raise ValueError(f"rho debe estar en (0, 1) (recibido {self.rho})")

    def params(self) -> dict:
        return {"rho": self.rho, "f": self.f}


@dataclass(frozen=True)
class LinkDistances:
    d_sd: float
    d_sr: float
    d_rd: float

    def as_tuple(self):
        return (self.d_sd, self.d_sr, self.d_rd)


@dataclass(frozen=True)
class LinkGains:
    """Ganancias de potencia y distancias normalizadas a d_sd."""

    g_sr: float
    g_rd: float
    g_sd: float
    d_sr: float
    d_rd: float
    d_sd: float = 1.0


TOPOLOGY_NAMES = ("equilateral", "isosceles-dest", "isosceles-src", "linear", "scalene")


def distances(spec: TopologySpec) -> LinkDistances:
    """
    Calcula (d_sd, d_sr, d_rd) con d_sd = 1.

    Raises:
        ValueError: Si los parámetros están fuera de rango
    """
    spec.validate()
    if isinstance(spec, Equilateral):
        return LinkDistances(1.0, 1.0, 1.0)
    if isinstance(spec, IsoscelesNearDest):
        return LinkDistances(1.0, 1.0, math.sqrt(2.0 * (1.0 - math.cos(spec.theta))))
    if isinstance(spec, IsoscelesNearSource):
        return LinkDistances(1.0, math.sqrt(2.0 * (1.0 - math.cos(spec.phi))), 1.0)
    if isinstance(spec, Linear):
        return LinkDistances(1.0, spec.rho, 1.0 - spec.rho)
    if isinstance(spec, Scalene):
        return LinkDistances(
            1.0,
            math.hypot(spec.f, spec.rho),
            math.hypot(spec.f, 1.0 - spec.rho),
        )
    raise ValueError(f"Topología no soportada: {type(spec).__name__}")


def gains(dist: LinkDistances, alpha: float = DEFAULT_ALPHA) -> LinkGains:
    """
    Ganancias geométricas relativas al salto S-D: g = (d_sd/d)^α, g_sd = 1.

    Raises:
        ValueError: Si alguna distancia no es positiva
    """
    if min(dist.d_sd, dist.d_sr, dist.d_rd) <= 0:
        raise ValueError(f"Distancias deben ser > 0: {dist.as_tuple()}")
    if alpha <= 0:
        raise ValueError(f"alpha debe ser > 0 (recibido {alpha})")
    d_sr = dist.d_sr / dist.d_sd
    d_rd = dist.d_rd / dist.d_sd
    return LinkGains(
        g_sr=(1.0 / d_sr) ** alpha,
        g_rd=(1.0 / d_rd) ** alpha,
        g_sd=1.0,
        d_sr=d_sr,
        d_rd=d_rd,
    )


def swap_source_relay(dist: LinkDistances) -> LinkDistances:
    """
    Intercambia las posiciones de fuente y relay.

    d'_sr = d_sr, d'_sd = d_rd, d'_rd = d_sd; el resultado se renormaliza
    para que d'_sd = 1.

    Raises:
        ValueError: Si d_rd = 0
    """
    if dist.d_rd <= 0:
        raise ValueError("d_rd debe ser > 0 para intercambiar roles")
    scale = dist.d_rd
    return LinkDistances(dist.d_rd / scale, dist.d_sr / scale, dist.d_sd / scale)


def make_topology(
    name: str,
    theta: Optional[float] = None,
    phi: Optional[float] = None,
    rho: Optional[float] = None,
    f: Optional[float] = None,
) -> TopologySpec:
    """
    Construye la variante a partir de su nombre de CLI.

    Parámetros omitidos toman los valores de referencia (θ = φ = π/4,
    ρ = 0.5 lineal / 0.35 escalena, f = √3/2).
    """
    if name == "equilateral":
        spec: TopologySpec = Equilateral()
    elif name == "isosceles-dest":
        spec = IsoscelesNearDest(theta if theta is not None else math.pi / 4)
    elif name == "isosceles-src":
        angle = phi if phi is not None else theta
        spec = IsoscelesNearSource(angle if angle is not None else math.pi / 4)
    elif name == "linear":
        spec = Linear(rho if rho is not None else 0.5)
    elif name == "scalene":
        spec = Scalene(
            f if f is not None else SCALENE_A_OFFSET,
            rho if rho is not None else 0.35,
        )
    else:
        raise ValueError(f"Topología desconocida: {name}")
    spec.validate()
    return spec


def link_gains_for(
    spec: TopologySpec,
    alpha: float = DEFAULT_ALPHA,
    swap_roles: bool = False,
) -> LinkGains:
    """Ganancias de una topología, opcionalmente con los roles S/R intercambiados."""
    dist = distances(spec)
    if swap_roles:
        dist = swap_source_relay(dist)
    return gains(dist, alpha)
