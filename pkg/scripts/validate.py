#!/usr/bin/env python3
"""
Script de validación de archivos de escenarios.

Este script valida archivos de escenarios (INI o YAML) contra el schema de
configuración, verifica las reglas cruzadas entre claves y advierte sobre
ajustes que degradan la precisión estadística de las curvas.
"""

import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from utils.engine import ConfigError
from utils.scenario_config import ScenarioValidator, coerce_scenario, load_scenarios

# Por debajo de estos valores la BER estimada pierde precisión
MIN_RECOMMENDED_ERRORS = 100
MIN_RECOMMENDED_FRAMES = 1000


class ScenarioFileValidator:
    """Validador de archivos de escenarios con reporte en consola."""

    def __init__(self, verbose: bool = False):
        """
        Inicializa el validador.

        Args:
            verbose: Si es True, muestra información detallada
        """
        self.verbose = verbose
        self.validator = ScenarioValidator()
        self.errors: List[str] = []
        self.warnings: List[str] = []
        self.scenarios: List[str] = []

    def validate_file(self, filepath: Path) -> bool:
        """
        Valida todos los escenarios de un archivo.

        Args:
            filepath: Ruta al archivo de escenarios

        Returns:
            True si todos los escenarios son válidos, False en caso contrario
        """
        self.errors = []
        self.warnings = []
        self.scenarios = []

        try:
            results = self.validator.validate_file(filepath)
            raw_scenarios = load_scenarios(filepath)
        except ConfigError as e:
            self.errors.extend(e.errors)
            return False

        for name, errors in results.items():
            self.scenarios.append(name)
            self.errors.extend(f"[{name}] {error}" for error in errors)
            if not errors:
                self._check_precision(name, coerce_scenario(raw_scenarios[name]))

        return len(self.errors) == 0

    def _check_precision(self, name: str, typed: Dict[str, Any]) -> None:
        """Advertencias sobre ajustes válidos pero poco precisos."""
        min_errors = typed.get("min_errors", MIN_RECOMMENDED_ERRORS)
        if min_errors < MIN_RECOMMENDED_ERRORS:
            self.warnings.append(
                f"[{name}] min_errors = {min_errors}: error relativo de la BER "
                f"mayor a 10% (recomendado >= {MIN_RECOMMENDED_ERRORS})"
            )
        frames = typed.get("frames", MIN_RECOMMENDED_FRAMES)
        if frames < MIN_RECOMMENDED_FRAMES:
            self.warnings.append(
                f"[{name}] frames = {frames}: pocas realizaciones del canal por punto"
            )
        if typed.get("cophase") is False and typed.get("relay", True):
            self.warnings.append(
                f"[{name}] cophase = false: la rama del relay se combina sin "
                "compensar la fase de h_sr"
            )
        if typed.get("max_frames") is not None and typed["max_frames"] == frames:
            self.warnings.append(
                f"[{name}] max_frames = frames: el mínimo de errores nunca extiende el punto"
            )

    def print_results(self, filepath: Path, success: bool) -> None:
        """Imprime los resultados de la validación."""
        print(f"\n{'='*70}")
        print(f"Validación de: {filepath.name}")
        print(f"{'='*70}\n")

        if success:
            print(f"✅ Validación EXITOSA ({len(self.scenarios)} escenarios)")
        else:
            print("❌ Validación FALLIDA")

        if self.verbose and self.scenarios:
            print(f"\n📋 Escenarios: {', '.join(self.scenarios)}")

        if self.errors:
            print(f"\n🔴 Errores ({len(self.errors)}):")
            for i, error in enumerate(self.errors, 1):
                print(f"  {i}. {error}")

        if self.warnings:
            print(f"\n⚠️  Advertencias ({len(self.warnings)}):")
            for i, warning in enumerate(self.warnings, 1):
                print(f"  {i}. {warning}")

        if not self.errors and not self.warnings:
            print("\n✨ No se encontraron problemas")

        print(f"\n{'='*70}\n")


def validate_multiple_files(filepaths: List[Path], verbose: bool = False) -> Tuple[int, int]:
    """
    Valida múltiples archivos.

    Returns:
        Tupla con (archivos exitosos, archivos fallidos)
    """
    validator = ScenarioFileValidator(verbose=verbose)
    successful = 0
    failed = 0

    for filepath in filepaths:
        success = validator.validate_file(filepath)
        validator.print_results(filepath, success)
        if success:
            successful += 1
        else:
            failed += 1

    return successful, failed


def main(argv: Optional[List[str]] = None) -> int:
    """Función principal del script."""
    parser = argparse.ArgumentParser(
        description="Valida archivos de escenarios del simulador cooperativo",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Ejemplos de uso:
  %(prog)s configs/paper_figures.ini
  %(prog)s configs/*.ini configs/*.yaml
  %(prog)s --verbose configs/paper_figures.ini
        """,
    )
    parser.add_argument("files", nargs="+", type=Path, help="Archivo(s) de escenarios a validar")
    parser.add_argument("-v", "--verbose", action="store_true", help="Muestra información detallada")
    parser.add_argument("--version", action="version", version="%(prog)s 1.0.0")

    args = parser.parse_args(argv)

    successful, failed = validate_multiple_files(args.files, args.verbose)

    total = successful + failed
    print(f"{'='*70}")
    print("RESUMEN FINAL")
    print(f"{'='*70}")
    print(f"Total de archivos: {total}")
    print(f"✅ Exitosos: {successful}")
    print(f"❌ Fallidos: {failed}")
    print(f"{'='*70}\n")

    return 0 if failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
