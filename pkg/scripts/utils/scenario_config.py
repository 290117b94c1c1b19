"""
Carga y validación de escenarios de simulación.

Este módulo lee archivos de escenarios (INI con una sección por escenario o
YAML con un mapeo nombre -> claves), convierte los valores a sus tipos,
los valida contra un schema JSON y construye la SweepConfig correspondiente.
Cada flag de la CLI tiene una clave equivalente (sin guiones iniciales,
con "-" o "_").
"""

import configparser
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import yaml
from jsonschema import Draft7Validator

from .channel import RAYLEIGH, FadingModel, FadingSpec
from .coop_link import PowerAllocation
from .engine import ConfigError, SweepConfig
from .substreams import SEED_MASK
from .topology import DEFAULT_ALPHA, TOPOLOGY_NAMES, make_topology

DEFAULT_RICIAN_K = 15.0

_ISOSCELES_ANGLE = {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": math.pi / 3}
_UNIT_INTERVAL = {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1}

SCENARIO_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "properties": {
        "topology": {"enum": list(TOPOLOGY_NAMES)},
        "theta": _ISOSCELES_ANGLE,
        "phi": _ISOSCELES_ANGLE,
        "rho": _UNIT_INTERVAL,
        "f": {"type": "number", "exclusiveMinimum": 0},
        "alpha": {"type": "number", "exclusiveMinimum": 0},
        "psrc": _UNIT_INTERVAL,
        "coded": {"type": "boolean"},
        "interuser": {"enum": ["rayleigh", "rician"]},
        "k": {"type": "number", "minimum": 0},
        "snr": {"type": "array", "items": {"type": "number"}},
        "frames": {"type": "integer", "minimum": 1},
        "max_frames": {"type": "integer", "minimum": 1},
        "min_errors": {"type": "integer", "minimum": 0},
        "seed": {"type": "integer", "minimum": 0, "maximum": SEED_MASK},
        "swap_roles": {"type": "boolean"},
        "mrc": {"enum": ["lasthop", "cascade", "direct"]},
        "frame_bits": {"type": "integer", "minimum": 1},
        "direct_fading": {"enum": ["awgn", "rayleigh"]},
        "relay_fading": {"enum": ["awgn", "rayleigh"]},
        "relay": {"type": "boolean"},
        "cophase": {"type": "boolean"},
    },
    "required": ["snr"],
    "additionalProperties": False,
}

KEY_TYPES = {
    "topology": "choice", "theta": "float", "phi": "float", "rho": "float",
    "f": "float", "alpha": "float", "psrc": "float", "coded": "bool",
    "interuser": "choice", "k": "float", "snr": "grid", "frames": "int",
    "max_frames": "int", "min_errors": "int", "seed": "int",
    "swap_roles": "bool", "mrc": "choice", "frame_bits": "int",
    "direct_fading": "choice", "relay_fading": "choice", "relay": "bool",
    "cophase": "bool",
}

_TRUE = {"1", "true", "yes", "on", "si", "sí"}
_FALSE = {"0", "false", "no", "off"}


def normalize_key(key: str) -> str:
    """`--max-frames` / `max-frames` / `max_frames` -> `max_frames`."""
    return key.strip().lstrip("-").replace("-", "_").lower()


def parse_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in _TRUE:
        return True
    if text in _FALSE:
        return False
    raise ValueError(f"Valor booleano inválido: {value!r}")


def parse_snr_grid(text: Any) -> List[float]:
    """
    Convierte una grilla SNR a lista de dB.

    Acepta "start:step:stop" (stop incluido), una lista separada por comas,
    un único valor o una lista ya numérica.

    Raises:
        ValueError: Si el formato o el paso son inválidos
    """
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    if isinstance(text, (int, float)):
        return [float(text)]
    spec = str(text).strip()
    if not spec:
        return []
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(f"Grilla SNR inválida {spec!r}: use start:step:stop")
        start, step, stop = (float(p) for p in parts)
        if step <= 0:
            raise ValueError(f"El paso de la grilla SNR debe ser > 0 (recibido {step})")
        if stop < start:
            raise ValueError(f"Grilla SNR vacía: stop {stop} < start {start}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + i * step, 10) for i in range(count)]
    return [float(p) for p in spec.split(",") if p.strip()]


def coerce_scenario(raw: Dict[str, Any]) -> Dict[str, Any]:
    """
    Convierte los valores crudos (strings de INI o tipos YAML) a sus tipos.

    Claves desconocidas se conservan para que el schema las reporte.

    Raises:
        ConfigError: Si algún valor no se puede convertir
    """
    typed: Dict[str, Any] = {}
    errors = []
    for key, value in raw.items():
        name = normalize_key(key)
        kind = KEY_TYPES.get(name)
        try:
            if kind is None or value is None:
                typed[name] = value
            elif kind == "float":
                typed[name] = float(value)
            elif kind == "int":
                if isinstance(value, float) and not value.is_integer():
                    raise ValueError(f"se esperaba un entero, recibido {value}")
                typed[name] = int(value)
            elif kind == "bool":
                typed[name] = parse_bool(value)
            elif kind == "grid":
                typed[name] = parse_snr_grid(value)
            else:
                typed[name] = str(value).strip().lower()
        except (TypeError, ValueError) as e:
            errors.append(f"Clave '{name}': {e}")
    if errors:
        raise ConfigError(errors)
    return typed


def validate_scenario(
    typed: Dict[str, Any], schema: Optional[Dict[str, Any]] = None
) -> List[str]:
    """
    Valida un escenario tipado contra el schema y reglas cruzadas.

    Returns:
        Lista de mensajes de error (vacía si es válido)
    """
    validator = Draft7Validator(schema or SCENARIO_SCHEMA)
    errors = []
    for error in sorted(validator.iter_errors(typed), key=lambda e: list(e.path)):
        where = ".".join(str(p) for p in error.path) or "escenario"
        errors.append(f"{where}: {error.message}")
    if errors:
        return errors

    grid = typed.get("snr", [])
    if any(b <= a for a, b in zip(grid, grid[1:])):
        errors.append(f"snr: la grilla debe ser estrictamente creciente ({grid})")
    frames = typed.get("frames", 1000)
    if "max_frames" in typed and typed["max_frames"] < frames:
        errors.append(
            f"max_frames ({typed['max_frames']}) debe ser >= frames ({frames})"
        )
    if not typed.get("coded", True) and typed.get("frame_bits", 1000) % 2 != 0:
        errors.append("frame_bits debe ser par sin codificación (QPSK)")
    if typed.get("interuser", "rayleigh") == "rayleigh" and typed.get("k", 0) > 0:
        errors.append("k solo aplica con interuser = rician")
    if typed.get("interuser") == "rician" and typed.get("k") == 0:
        errors.append("interuser = rician requiere k > 0")
    try:
        _topology_from(typed)
    except ValueError as e:
        errors.append(f"topology: {e}")
    return errors


def _topology_from(typed: Dict[str, Any]):
    return make_topology(
        typed.get("topology", "equilateral"),
        theta=typed.get("theta"),
        phi=typed.get("phi"),
        rho=typed.get("rho"),
        f=typed.get("f"),
    )


def _hop_fading(name: Optional[str]) -> FadingSpec:
    if name == "awgn":
        return FadingSpec(FadingModel.AWGN)
    return RAYLEIGH


def build_sweep_config(typed: Dict[str, Any], name: str = "escenario") -> SweepConfig:
    """
    Construye la SweepConfig de un escenario tipado.

    Raises:
        ConfigError: Si el escenario es inválido
    """
    errors = validate_scenario(typed)
    if errors:
        raise ConfigError([f"[{name}] {e}" for e in errors])

    if typed.get("interuser", "rayleigh") == "rician":
        fading_sr = FadingSpec.rician(typed.get("k", DEFAULT_RICIAN_K))
    else:
        fading_sr = RAYLEIGH

    frames = typed.get("frames", 1000)
    config = SweepConfig(
        snr_grid_db=tuple(typed["snr"]),
        frame_info_bits=typed.get("frame_bits", 1000),
        min_frames=frames,
        max_frames=typed.get("max_frames", max(100_000, frames)),
        min_bit_errors=typed.get("min_errors", 100),
        master_seed=typed.get("seed", 0),
        topology=_topology_from(typed),
        alpha=typed.get("alpha", DEFAULT_ALPHA),
        fading_sd=_hop_fading(typed.get("direct_fading")),
        fading_sr=fading_sr,
        fading_rd=_hop_fading(typed.get("relay_fading")),
        power=PowerAllocation.from_source_share(typed.get("psrc", 0.5)),
        coded=typed.get("coded", True),
        mrc_mode=typed.get("mrc", "lasthop"),
        swap_roles=typed.get("swap_roles", False),
        relay_enabled=typed.get("relay", True),
        cophase=typed.get("cophase", True),
    )
    try:
        config.validate()
    except ConfigError as e:
        raise ConfigError([f"[{name}] {msg}" for msg in e.errors]) from e
    return config


def load_scenarios(path) -> Dict[str, Dict[str, Any]]:
    """
    Lee un archivo de escenarios.

    INI: una sección por escenario; [DEFAULT] aporta claves compartidas.
    YAML: mapeo nombre -> claves (una clave `defaults` opcional se aplica a todos).

    Raises:
        ConfigError: Si el archivo no existe o no se puede interpretar
    """
    filepath = Path(path)
    if not filepath.exists():
        raise ConfigError(f"Archivo de escenarios no encontrado: {filepath}")

    if filepath.suffix.lower() in (".yaml", ".yml"):
        try:
            with open(filepath, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"YAML inválido en {filepath.name}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"{filepath.name}: se esperaba un mapeo de escenarios")
        defaults = data.pop("defaults", {}) or {}
        scenarios = {}
        for name, body in data.items():
            if not isinstance(body, dict):
                raise ConfigError(f"{filepath.name}: el escenario '{name}' no es un mapeo")
            scenarios[str(name)] = {**defaults, **body}
        return scenarios

    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(filepath, "r", encoding="utf-8") as f:
            parser.read_file(f)
    except configparser.Error as e:
        raise ConfigError(f"INI inválido en {filepath.name}: {e}") from e
    return {section: dict(parser.items(section)) for section in parser.sections()}


class ScenarioValidator:
    """Validador de archivos de escenarios."""

    def __init__(self, schema: Optional[Dict[str, Any]] = None):
        self.schema = schema or SCENARIO_SCHEMA

    def validate_scenario(self, raw: Dict[str, Any]) -> List[str]:
        """Errores de un escenario crudo (conversión de tipos + schema + reglas)."""
        try:
            typed = coerce_scenario(raw)
        except ConfigError as e:
            return e.errors
        return validate_scenario(typed, self.schema)

    def validate_file(self, path) -> Dict[str, List[str]]:
        """
        Valida todos los escenarios de un archivo.

        Returns:
            Diccionario nombre -> lista de errores

        Raises:
            ConfigError: Si el archivo no se puede leer o no contiene escenarios
        """
        scenarios = load_scenarios(path)
        if not scenarios:
            raise ConfigError(f"{Path(path).name}: no contiene escenarios")
        return {name: self.validate_scenario(raw) for name, raw in scenarios.items()}


def load_sweep_configs(
    path,
    only: Optional[List[str]] = None,
) -> List[Tuple[str, SweepConfig]]:
    """
    Carga y construye las configuraciones de un archivo de escenarios.

    Args:
        path: Archivo INI o YAML
        only: Nombres de escenarios a conservar (None = todos)

    Returns:
        Lista (nombre, SweepConfig) en el orden del archivo

    Raises:
        ConfigError: Con los errores de todos los escenarios inválidos
    """
    scenarios = load_scenarios(path)
    if only:
        missing = [name for name in only if name not in scenarios]
        if missing:
            raise ConfigError(f"Escenarios no encontrados: {', '.join(missing)}")
        scenarios = {name: scenarios[name] for name in only}
    if not scenarios:
        raise ConfigError(f"{Path(path).name}: no contiene escenarios")

    configs = []
    errors = []
    for name, raw in scenarios.items():
        try:
            typed = coerce_scenario(raw)
        except ConfigError as e:
            errors.extend(f"[{name}] {msg}" for msg in e.errors)
            continue
        try:
            configs.append((name, build_sweep_config(typed, name)))
        except ConfigError as e:
            errors.extend(e.errors)
    if errors:
        raise ConfigError(errors)
    return configs
