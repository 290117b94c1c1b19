"""
Motor de barrido BER Monte-Carlo.

Orquesta la simulación de tramas por punto SNR con regla de parada
(mínimo de tramas y de errores, con tope de tramas), ejecución paralela
reproducible y exportación a CSV.

Convención SNR: snr_db = E_bit/N₀ con E_bit = E_total/2 (energía por bit
QPSK) y E_total = 1, es decir n0 = 0.5·10^(-snr_db/10).
"""

import math
from dataclasses import dataclass, field
from multiprocessing import Pool
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd

from .ber_metrics import BerCalculator
from .channel import RAYLEIGH, FadingModel, FadingSpec
from .coop_link import (
    EQUAL_POWER,
    CoopScenario,
    MrcMode,
    PowerAllocation,
    simulate_frames,
)
from .fec import DEFAULT_CODE
from .substreams import SEED_MASK, frame_rng
from .topology import DEFAULT_ALPHA, Equilateral, TopologySpec, link_gains_for

E_TOTAL = 1.0
BITS_PER_SYMBOL = 2
DEFAULT_BLOCK_SIZE = 50

CSV_COLUMNS = [
    "snr_db", "frames", "info_bits", "bit_errors", "ber",
    "topology", "theta", "rho", "f", "alpha", "psrc", "prel", "coded",
    "interuser_model", "k_factor", "mrc_mode", "swap_roles", "seed",
    "frame_info_bits", "sd_model", "rd_model", "relay_enabled", "cophase",
]


class ConfigError(Exception):
    """Excepción para configuraciones de barrido inválidas."""

    def __init__(self, errors):
        if isinstance(errors, str):
            errors = [errors]
        self.errors: List[str] = list(errors)
        super().__init__("; ".join(self.errors))


def n0_for_snr(snr_db: float) -> float:
    """Nivel de ruido N₀ para un punto SNR (E_bit/N₀ en dB)."""
    return (E_TOTAL / BITS_PER_SYMBOL) * 10.0 ** (-snr_db / 10.0)


@dataclass(frozen=True)
class SweepConfig:
    """Configuración completa de un barrido BER (escenario + regla de parada)."""

    snr_grid_db: Tuple[float, ...] = ()
    frame_info_bits: int = 1000
    min_frames: int = 1000
    max_frames: int = 100_000
    min_bit_errors: int = 100
    master_seed: int = 0
    topology: TopologySpec = Equilateral()
    alpha: float = DEFAULT_ALPHA
    fading_sd: FadingSpec = RAYLEIGH
    fading_sr: FadingSpec = RAYLEIGH
    fading_rd: FadingSpec = RAYLEIGH
    power: PowerAllocation = EQUAL_POWER
    coded: bool = True
    mrc_mode: MrcMode = MrcMode.LAST_HOP
    swap_roles: bool = False
    relay_enabled: bool = True
    cophase: bool = True

    def __post_init__(self):
        object.__setattr__(
            self, "snr_grid_db", tuple(float(s) for s in self.snr_grid_db)
        )
        object.__setattr__(self, "mrc_mode", MrcMode(self.mrc_mode))

    def validate(self) -> None:
        """
        Verifica la coherencia de la configuración.

        Raises:
            ConfigError: Con la lista de problemas encontrados
        """
        errors = []
        if self.min_frames < 1:
            errors.append(f"min_frames debe ser >= 1 (recibido {self.min_frames})")
        if self.max_frames < self.min_frames:
            errors.append(
                f"max_frames ({self.max_frames}) debe ser >= min_frames ({self.min_frames})"
            )
        if self.min_bit_errors < 0:
            errors.append("min_bit_errors debe ser >= 0")
        if self.frame_info_bits < 1:
            errors.append("frame_info_bits debe ser >= 1")
        elif not self.coded and self.frame_info_bits % 2 != 0:
            errors.append("Sin codificación, frame_info_bits debe ser par (QPSK)")
        grid = self.snr_grid_db
        if any(not math.isfinite(s) for s in grid):
            errors.append("La grilla SNR contiene valores no finitos")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            errors.append(f"La grilla SNR debe ser estrictamente creciente: {list(grid)}")
        if not 0 <= self.master_seed <= SEED_MASK:
            errors.append("master_seed debe ser un entero de 64 bits sin signo")
        if not self.alpha > 0:
            errors.append(f"alpha debe ser > 0 (recibido {self.alpha})")
        try:
            self.topology.validate()
        except ValueError as e:
            errors.append(str(e))
        if errors:
            raise ConfigError(errors)

    def link_gains(self):
        return link_gains_for(self.topology, self.alpha, self.swap_roles)

    def scenario_for(self, snr_db: float) -> CoopScenario:
        """Escenario de trama al nivel de ruido de un punto SNR."""
        try:
            return CoopScenario(
                gains=self.link_gains(),
                n0=n0_for_snr(snr_db),
                power=self.power,
                code=DEFAULT_CODE if self.coded else None,
                fading_sd=self.fading_sd,
                fading_sr=self.fading_sr,
                fading_rd=self.fading_rd,
                frame_info_bits=self.frame_info_bits,
                mrc_mode=self.mrc_mode,
                relay_enabled=self.relay_enabled,
                cophase=self.cophase,
            )
        except ValueError as e:
            raise ConfigError(str(e)) from e

    def provenance(self) -> Dict[str, Any]:
        """Columnas de procedencia del escenario para el CSV."""
        params = self.topology.params()
        return {
            "topology": self.topology.name,
            "theta": params.get("theta"),
            "rho": params.get("rho"),
            "f": params.get("f"),
            "alpha": self.alpha,
            "psrc": self.power.p_src,
            "prel": self.power.p_rel,
            "coded": self.coded,
            "interuser_model": self.fading_sr.model.value,
            "k_factor": self.fading_sr.k_factor,
            "mrc_mode": self.mrc_mode.value,
            "swap_roles": self.swap_roles,
            "seed": self.master_seed,
            "frame_info_bits": self.frame_info_bits,
            "sd_model": self.fading_sd.model.value,
            "rd_model": self.fading_rd.model.value,
            "relay_enabled": self.relay_enabled,
            "cophase": self.cophase,
        }


@dataclass(frozen=True)
class BerRecord:
    """Medición de un punto SNR con la procedencia completa del escenario."""

    snr_db: float
    frames: int
    info_bits: int
    bit_errors: int
    provenance: Dict[str, Any] = field(default_factory=dict)

    @property
    def ber(self) -> float:
        return self.bit_errors / self.info_bits if self.info_bits else 0.0

    def as_row(self) -> Dict[str, Any]:
        row = {
            "snr_db": self.snr_db,
            "frames": self.frames,
            "info_bits": self.info_bits,
            "bit_errors": self.bit_errors,
            "ber": self.ber,
        }
        row.update(self.provenance)
        return row


def run_point(
    config: SweepConfig,
    snr_db: float,
    snr_index: Optional[int] = None,
    block_size: int = DEFAULT_BLOCK_SIZE,
) -> BerRecord:
    """
    Mide la BER en un punto SNR.

    Simula tramas hasta que (tramas >= min_frames Y errores >= min_bit_errors)
    o tramas = max_frames. La trama f usa el subflujo (master_seed, s, f),
    con s la posición de snr_db en la grilla o el snr_index explícito.

    Args:
        config: Configuración del barrido
        snr_db: Punto SNR en dB
        snr_index: Índice de subflujo explícito (opcional)
        block_size: Tramas por lote de decodificación (no altera el resultado)

    Returns:
        BerRecord del punto

    Raises:
        ConfigError: Si la configuración es inválida o snr_db no está en la
            grilla y no se indica snr_index
    """
    config.validate()
    if snr_index is None:
        grid = config.snr_grid_db
        if float(snr_db) not in grid:
            raise ConfigError([
                f"snr_db = {snr_db} no pertenece a la grilla {list(grid)}; "
                "indique snr_index explícitamente"
            ])
        snr_index = grid.index(float(snr_db))
    scenario = config.scenario_for(snr_db)

    frames = 0
    errors = 0
    next_frame = 0
    done = False
    while not done and next_frame < config.max_frames:
        count = min(block_size, config.max_frames - next_frame)
        rngs = [
            frame_rng(config.master_seed, snr_index, next_frame + i)
            for i in range(count)
        ]
        next_frame += count
        for result in simulate_frames(scenario, rngs):
            frames += 1
            errors += result.bit_errors
            if frames >= config.min_frames and errors >= config.min_bit_errors:
                done = True
                break

    return BerRecord(
        snr_db=float(snr_db),
        frames=frames,
        info_bits=frames * config.frame_info_bits,
        bit_errors=errors,
        provenance=config.provenance(),
    )


def _run_point_task(args) -> BerRecord:
    config, snr_db, snr_index = args
    return run_point(config, snr_db, snr_index)


def run_sweep(config: SweepConfig, workers: int = 1) -> List[BerRecord]:
    """
    Un BerRecord por punto de la grilla, en orden de grilla.

    Los puntos pueden ejecutarse en paralelo; el resultado es idéntico para
    cualquier número de workers.
    """
    config.validate()
    tasks = [(config, snr, i) for i, snr in enumerate(config.snr_grid_db)]
    if not tasks:
        return []
    if workers > 1 and len(tasks) > 1:
        with Pool(min(workers, len(tasks))) as pool:
            return pool.map(_run_point_task, tasks)
    return [_run_point_task(task) for task in tasks]


def records_to_frame(
    records: Sequence[BerRecord],
    scenario: Optional[str] = None,
) -> pd.DataFrame:
    """DataFrame en el orden de columnas del CSV; con `scenario` agrega esa columna al inicio."""
    df = pd.DataFrame([r.as_row() for r in records], columns=CSV_COLUMNS)
    if scenario is not None:
        df.insert(0, "scenario", scenario)
    return df


def write_csv(data: Union[pd.DataFrame, Sequence[BerRecord]], path) -> Path:
    """Escribe resultados en CSV UTF-8 (floats con 10 cifras significativas)."""
    df = data if isinstance(data, pd.DataFrame) else records_to_frame(data)
    output_path = Path(path)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(
        output_path,
        index=False,
        float_format="%.10g",
        encoding="utf-8",
        lineterminator="\n",
    )
    return output_path


class SweepRunner:
    """
    Ejecutor de barridos con reporte en consola.

    Mantiene estadísticas de la sesión y muestra, para corridas sin
    codificación ni relay, la BER teórica de referencia.
    """

    def __init__(self, workers: int = 1, verbose: bool = True):
        self.workers = max(1, int(workers))
        self.verbose = verbose
        self.stats = {
            "points_run": 0,
            "frames_simulated": 0,
            "bits_simulated": 0,
            "bit_errors": 0,
        }

    def _reference_ber(self, config: SweepConfig, snr_db: float) -> Optional[float]:
        if config.coded or config.relay_enabled:
            return None
        if config.fading_sd.model == FadingModel.AWGN:
            return BerCalculator.ber_awgn_qpsk(snr_db)
        if config.fading_sd.model == FadingModel.RAYLEIGH:
            return BerCalculator.ber_rayleigh_qpsk(snr_db)
        return None

    def run(self, config: SweepConfig, label: str = "sweep") -> List[BerRecord]:
        """
        Ejecuta un barrido completo y muestra el resumen por punto.

        Args:
            config: Configuración del barrido
            label: Nombre del escenario para la consola

        Returns:
            Lista de BerRecord en orden de grilla
        """
        if self.verbose:
            print(f"\n{'='*70}")
            print(f"🔬 Escenario: {label}")
            print(f"{'='*70}")
            print(f"Topología: {config.topology.name} {config.topology.params()}")
            print(f"Codificado: {config.coded} | MRC: {config.mrc_mode.value} | "
                  f"Inter-user: {config.fading_sr.model.value} (K={config.fading_sr.k_factor})")
            print(f"Puntos SNR: {len(config.snr_grid_db)} | Workers: {self.workers}\n")

        records = run_sweep(config, workers=self.workers)

        for record in records:
            self.stats["points_run"] += 1
            self.stats["frames_simulated"] += record.frames
            self.stats["bits_simulated"] += record.info_bits
            self.stats["bit_errors"] += record.bit_errors
            if self.verbose:
                line = (f"  📡 SNR {record.snr_db:6.2f} dB → BER = {record.ber:.4e} "
                        f"({record.bit_errors} errores / {record.frames} tramas)")
                reference = self._reference_ber(config, record.snr_db)
                if reference is not None:
                    line += f" | teórica {reference:.4e}"
                print(line)

        if self.verbose:
            print(f"\n✅ Barrido completado: {len(records)} puntos")
        return records

