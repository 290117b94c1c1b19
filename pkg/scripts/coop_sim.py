#!/usr/bin/env python3
"""
Simulador de comunicación cooperativa amplify-and-forward.

Subcomandos:
    sweep     Barrido BER de un escenario definido por flags
    topology  Tabla de distancias y ganancias de una topología
    compare   Ejecuta escenarios nombrados de un archivo y emite un CSV largo

Códigos de salida: 0 éxito, 1 error de configuración, 2 fallo en ejecución.
"""

import argparse
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

from utils.engine import ConfigError, SweepRunner, records_to_frame, write_csv
from utils.scenario_config import (
    build_sweep_config,
    coerce_scenario,
    load_sweep_configs,
)
from utils.topology import (
    DEFAULT_ALPHA,
    TOPOLOGY_NAMES,
    distances,
    gains,
    make_topology,
    swap_source_relay,
)

DEFAULT_SNR_GRID = "0:2:20"


class ConfigArgumentParser(argparse.ArgumentParser):
    """ArgumentParser que reporta los errores de uso como ConfigError."""

    def error(self, message):
        raise ConfigError(f"{self.prog}: {message}")


def add_geometry_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--topology",
        choices=TOPOLOGY_NAMES,
        default="equilateral",
        help="Ubicación del relay (default: equilateral)",
    )
    parser.add_argument("--theta", type=float, help="Ángulo θ en rad (isosceles-dest)")
    parser.add_argument("--phi", type=float, help="Ángulo φ en rad (isosceles-src)")
    parser.add_argument("--rho", type=float, help="Fracción ρ en (0, 1) (linear, scalene)")
    parser.add_argument("--f", type=float, help="Desplazamiento perpendicular f (scalene)")
    parser.add_argument(
        "--alpha",
        type=float,
        default=DEFAULT_ALPHA,
        help=f"Exponente de pérdida de trayecto (default: {DEFAULT_ALPHA:g})",
    )
    parser.add_argument(
        "--swap-roles",
        action="store_true",
        help="Intercambiar las posiciones de fuente y relay",
    )


def add_scenario_args(parser: argparse.ArgumentParser) -> None:
    add_geometry_args(parser)
    parser.add_argument("--psrc", type=float, help="Fracción de energía de la fuente (p_rel = 1 - psrc)")

    coding = parser.add_mutually_exclusive_group()
    coding.add_argument("--coded", dest="coded", action="store_true", default=None,
                        help="Código convolucional (31,27)₈ + Viterbi (default)")
    coding.add_argument("--uncoded", dest="coded", action="store_false", default=None,
                        help="Sin codificación de canal")

    parser.add_argument("--interuser", choices=["rayleigh", "rician"],
                        help="Modelo del salto fuente→relay (default: rayleigh)")
    parser.add_argument("--k", type=float, help="Factor K de Rice del salto fuente→relay")
    parser.add_argument("--snr", default=DEFAULT_SNR_GRID,
                        help=f"Grilla SNR start:step:stop en dB (default: {DEFAULT_SNR_GRID})")
    parser.add_argument("--frames", type=int, help="Mínimo de tramas por punto (default: 1000)")
    parser.add_argument("--max-frames", type=int, help="Tope de tramas por punto (default: 100000)")
    parser.add_argument("--min-errors", type=int, help="Mínimo de errores de bit por punto (default: 100)")
    parser.add_argument("--seed", type=int, help="Semilla maestra de 64 bits (default: 0)")
    parser.add_argument("--mrc", choices=["lasthop", "cascade", "direct"],
                        help="Pesos del combinador (default: lasthop)")
    parser.add_argument("--frame-bits", type=int, help="Bits de información por trama (default: 1000)")
    parser.add_argument("--direct-fading", choices=["awgn", "rayleigh"],
                        help="Modelo del salto fuente→destino (default: rayleigh)")
    parser.add_argument("--relay-fading", choices=["awgn", "rayleigh"],
                        help="Modelo del salto relay→destino (default: rayleigh)")
    parser.add_argument("--no-relay", action="store_true",
                        help="Sin cooperación: solo el enlace directo con toda la energía")
    parser.add_argument("--no-cophase", action="store_true",
                        help="El relay no compensa la fase de h_sr")


def args_to_raw(args: argparse.Namespace) -> Dict[str, Any]:
    """Traduce los flags de `sweep` a las claves de escenario equivalentes."""
    keys = [
        "topology", "theta", "phi", "rho", "f", "alpha", "psrc", "coded",
        "interuser", "k", "snr", "frames", "max_frames", "min_errors", "seed",
        "mrc", "frame_bits", "direct_fading", "relay_fading",
    ]
    raw = {key: getattr(args, key) for key in keys if getattr(args, key) is not None}
    if args.swap_roles:
        raw["swap_roles"] = True
    if args.no_relay:
        raw["relay"] = False
    if args.no_cophase:
        raw["cophase"] = False
    return raw


def emit(df: pd.DataFrame, out: Optional[Path]) -> None:
    if out is None:
        df.to_csv(sys.stdout, index=False, float_format="%.10g", lineterminator="\n")
        return
    path = write_csv(df, out)
    print(f"\n💾 Resultados guardados en: {path}")


def cmd_sweep(args: argparse.Namespace) -> int:
    config = build_sweep_config(coerce_scenario(args_to_raw(args)), "sweep")
    runner = SweepRunner(workers=args.workers, verbose=args.out is not None)
    records = runner.run(config, label=config.topology.name)
    emit(records_to_frame(records), args.out)
    return 0


def cmd_topology(args: argparse.Namespace) -> int:
    try:
        spec = make_topology(args.topology, theta=args.theta, phi=args.phi,
                             rho=args.rho, f=args.f)
        dist = distances(spec)
        if args.swap_roles:
            dist = swap_source_relay(dist)
        g = gains(dist, args.alpha)
    except ValueError as e:
        raise ConfigError(str(e)) from e

    params = ", ".join(f"{k}={v:.6g}" for k, v in spec.params().items()) or "-"
    print(f"\n{'='*70}")
    print(f"📐 Topología: {spec.name} ({params}) | α = {args.alpha:g}"
          f"{' | roles S/R intercambiados' if args.swap_roles else ''}")
    print(f"{'='*70}")
    print(f"{'Enlace':<8} {'Distancia':>12} {'Ganancia':>14} {'Ganancia (dB)':>15}")
    print(f"{'-'*52}")
    for link, d, gain in (("S-D", g.d_sd, g.g_sd), ("S-R", g.d_sr, g.g_sr), ("R-D", g.d_rd, g.g_rd)):
        print(f"{link:<8} {d:>12.6f} {gain:>14.6f} {10 * math.log10(gain):>15.3f}")
    print(f"{'='*70}\n")
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    configs = load_sweep_configs(args.config, only=args.only)
    verbose = args.out is not None
    runner = SweepRunner(workers=args.workers, verbose=verbose)

    frames: List[pd.DataFrame] = []
    for name, config in configs:
        frames.append(records_to_frame(runner.run(config, label=name), scenario=name))

    if verbose:
        print(f"\n{'='*70}")
        print("📊 RESUMEN")
        print(f"{'='*70}")
        print(f"Escenarios: {len(configs)}")
        print(f"Puntos SNR: {runner.stats['points_run']}")
        print(f"Tramas simuladas: {runner.stats['frames_simulated']:,}")
        print(f"Bits simulados: {runner.stats['bits_simulated']:,}")
    emit(pd.concat(frames, ignore_index=True), args.out)
    return 0


def build_parser() -> ConfigArgumentParser:
    parser = ConfigArgumentParser(
        description="Simulador BER de comunicación cooperativa amplify-and-forward",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Ejemplos:
  # Barrido codificado en topología lineal (ρ = 0.5)
  python coop_sim.py sweep --topology linear --rho 0.5 --snr 0:2:20 --out results/linear.csv

  # Referencia sin codificación ni relay sobre AWGN
  python coop_sim.py sweep --uncoded --no-relay --direct-fading awgn --snr 0:2:8

  # Tabla de distancias/ganancias
  python coop_sim.py topology --topology isosceles-dest --theta 0.785398

  # Escenarios de un archivo de configuración
  python coop_sim.py compare configs/paper_figures.ini --only coded uncoded --out results/coding.csv
        """,
    )
    parser.add_argument("--version", action="version", version="%(prog)s 1.0.0")
    subparsers = parser.add_subparsers(dest="command", parser_class=ConfigArgumentParser)
    subparsers.required = True

    sweep = subparsers.add_parser("sweep", help="Barrido BER de un escenario")
    add_scenario_args(sweep)
    sweep.add_argument("--workers", type=int, default=1, help="Procesos en paralelo (default: 1)")
    sweep.add_argument("--out", type=Path, help="Archivo CSV de salida (default: stdout)")
    sweep.set_defaults(handler=cmd_sweep)

    topology = subparsers.add_parser("topology", help="Tabla de distancias y ganancias")
    add_geometry_args(topology)
    topology.set_defaults(handler=cmd_topology)

    compare = subparsers.add_parser("compare", help="Escenarios nombrados de un archivo")
    compare.add_argument("config", type=Path, help="Archivo de escenarios (INI o YAML)")
    compare.add_argument("--only", nargs="+", metavar="NAME", help="Escenarios a ejecutar")
    compare.add_argument("--workers", type=int, default=1, help="Procesos en paralelo (default: 1)")
    compare.add_argument("--out", type=Path, help="Archivo CSV de salida (default: stdout)")
    compare.set_defaults(handler=cmd_compare)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Función principal."""
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "workers", 1) < 1:
            raise ConfigError("--workers debe ser >= 1")
        return args.handler(args)
    except ConfigError as e:
        print("❌ Error de configuración:", file=sys.stderr)
        for message in e.errors:
            print(f"   - {message}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        print("\n⚠️  Simulación interrumpida", file=sys.stderr)
        return 2
    except Exception as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
