#!/usr/bin/env python3
"""
Script de análisis de curvas BER.

Lee uno o más CSV producidos por coop_sim.py, reconstruye las curvas por
escenario, calcula la SNR requerida para una BER objetivo y la ganancia de
cada escenario respecto de uno de referencia.
"""

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional

import pandas as pd

from utils.ber_metrics import BerCalculator, BerCurve

REQUIRED_COLUMNS = {"snr_db", "info_bits", "bit_errors", "ber"}


def load_results(filepaths: List[Path]) -> pd.DataFrame:
    """
    Carga y concatena CSVs de resultados.

    Los CSV de `sweep` no tienen columna `scenario`; se usa el nombre del archivo.

    Raises:
        ValueError: Si falta alguna columna requerida
    """
    frames = []
    for filepath in filepaths:
        df = pd.read_csv(filepath)
        missing = REQUIRED_COLUMNS - set(df.columns)
        if missing:
            raise ValueError(f"{filepath.name}: faltan columnas {sorted(missing)}")
        if "scenario" not in df.columns:
            df.insert(0, "scenario", filepath.stem)
        frames.append(df)
    return pd.concat(frames, ignore_index=True)


def extract_curves(df: pd.DataFrame) -> List[BerCurve]:
    """Una BerCurve por escenario, ordenada por SNR."""
    curves = []
    for name, group in df.groupby("scenario", sort=False):
        group = group.sort_values("snr_db")
        curves.append(BerCurve(
            label=str(name),
            snr_db=group["snr_db"].astype(float).tolist(),
            ber=group["ber"].astype(float).tolist(),
            info_bits=group["info_bits"].astype(int).tolist(),
        ))
    return curves


def print_curve(curve: BerCurve, verbose: bool = False) -> None:
    print(f"📡 {curve.label}")
    if not verbose:
        return
    for snr, ber, bits in zip(curve.snr_db, curve.ber, curve.info_bits):
        sigma = BerCalculator.binomial_sigma(ber, bits)
        print(f"    SNR {snr:6.2f} dB  BER {ber:.4e} ± {sigma:.1e}  ({bits:,} bits)")


def analyze(
    filepaths: List[Path],
    target: float,
    reference: Optional[str] = None,
    output_file: Optional[Path] = None,
    verbose: bool = False,
) -> int:
    """
    Analiza las curvas y muestra el ranking por SNR requerida.

    Returns:
        Código de salida (0 éxito, 1 entrada inválida)
    """
    try:
        df = load_results(filepaths)
    except (OSError, ValueError, pd.errors.ParserError) as e:
        print(f"❌ Error al cargar resultados: {e}", file=sys.stderr)
        return 1

    curves = extract_curves(df)
    labels = [c.label for c in curves]
    if reference and reference not in labels:
        print(f"❌ Escenario de referencia no encontrado: {reference}", file=sys.stderr)
        print(f"   Disponibles: {', '.join(labels)}", file=sys.stderr)
        return 1

    calculator = BerCalculator()
    results = calculator.compare_curves(curves, target=target, reference=reference)

    print(f"\n{'='*70}")
    print(f"ANÁLISIS BER - Objetivo {target:.0e}")
    print(f"{'='*70}\n")
    for curve in curves:
        print_curve(curve, verbose)

    print(f"\n{'='*70}")
    print("RANKING POR SNR REQUERIDA")
    print(f"{'='*70}\n")
    for i, result in enumerate(results, 1):
        if result["required_snr_db"] is None:
            print(f"{i}. {result['scenario']}: ⚠️  no alcanza {target:.0e} "
                  f"(BER mínima {result['min_ber']:.2e})")
            continue
        line = f"{i}. {result['scenario']}: {result['required_snr_db']:.2f} dB"
        if result["gain_db"] is not None and result["scenario"] != reference:
            line += f" | ganancia vs {reference}: {result['gain_db']:+.2f} dB"
        print(line)
    print(f"\n{'='*70}\n")

    if output_file:
        output_data = {
            "analysis_date": datetime.now(timezone.utc).isoformat().replace("+00:00", "Z"),
            "target_ber": target,
            "reference": reference,
            "sources": [str(p) for p in filepaths],
            "ranking": results,
        }
        output_file.parent.mkdir(parents=True, exist_ok=True)
        with open(output_file, "w", encoding="utf-8") as f:
            json.dump(output_data, f, indent=2, ensure_ascii=False)
        print(f"✅ Resultados guardados en: {output_file}\n")

    return 0


def main(argv: Optional[List[str]] = None) -> int:
    """Función principal del script."""
    parser = argparse.ArgumentParser(
        description="Analiza curvas BER: SNR requerida y ganancias entre escenarios",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Ejemplos de uso:
  %(prog)s results/coding.csv --reference uncoded
  %(prog)s results/linear.csv results/equilateral.csv --target 1e-3
  %(prog)s results/topologies.csv --output results/ranking.json --verbose
        """,
    )
    parser.add_argument("files", nargs="+", type=Path, help="CSV(s) de resultados")
    parser.add_argument(
        "--target",
        type=float,
        default=BerCalculator.DEFAULT_TARGET_BER,
        help=f"BER objetivo (default: {BerCalculator.DEFAULT_TARGET_BER:g})",
    )
    parser.add_argument("--reference", help="Escenario de referencia para las ganancias")
    parser.add_argument("--output", "-o", type=Path, help="Archivo JSON de salida")
    parser.add_argument("--verbose", "-v", action="store_true", help="Muestra cada punto con su σ")

    args = parser.parse_args(argv)
    if not 0 < args.target < 1:
        print("❌ --target debe estar en (0, 1)", file=sys.stderr)
        return 1
    return analyze(args.files, args.target, args.reference, args.output, args.verbose)


if __name__ == "__main__":
    sys.exit(main())
