"""
Tests para el motor de barridos BER

Valida:
- Convención SNR -> N₀
- Validación de SweepConfig
- Regla de parada de run_point
- Independencia del tamaño de lote y del número de workers
- Formato del CSV y procedencia
- SweepRunner: estadísticas y reporte en consola
"""

import dataclasses
import sys
from pathlib import Path

import pandas as pd
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent.parent / "scripts"))

from utils.channel import FadingSpec
from utils.engine import (
    CSV_COLUMNS,
    BerRecord,
    ConfigError,
    SweepConfig,
    SweepRunner,
    n0_for_snr,
    records_to_frame,
    run_point,
    run_sweep,
    write_csv,
)
from utils.topology import Linear

SPEC_HEADER = (
    "snr_db,frames,info_bits,bit_errors,ber,topology,theta,rho,f,alpha,psrc,prel,"
    "coded,interuser_model,k_factor,mrc_mode,swap_roles,seed"
)


def satisfies_stopping_rule(record: BerRecord, config: SweepConfig) -> bool:
    enough = record.frames >= config.min_frames and record.bit_errors >= config.min_bit_errors
    return enough or record.frames == config.max_frames


@pytest.mark.unit
class TestNoiseLevel:

    def test_reference_points(self):
        assert n0_for_snr(0.0) == pytest.approx(0.5)
        assert n0_for_snr(10.0) == pytest.approx(0.05)

    def test_monotone(self):
        assert n0_for_snr(3.0) < n0_for_snr(2.0)


@pytest.mark.validation
class TestSweepConfigValidation:

    @pytest.mark.parametrize("changes,fragment", [
        ({"max_frames": 5, "min_frames": 10}, "max_frames"),
        ({"min_frames": 0}, "min_frames"),
        ({"min_bit_errors": -1}, "min_bit_errors"),
        ({"snr_grid_db": (0.0, 0.0)}, "creciente"),
        ({"coded": False, "frame_info_bits": 63}, "par"),
        ({"master_seed": -1}, "master_seed"),
        ({"alpha": 0.0}, "alpha"),
        ({"topology": Linear(1.5)}, "rho"),
    ])
    def test_invalid_raises(self, quick_config, changes, fragment):
        config = dataclasses.replace(quick_config, **changes)
        with pytest.raises(ConfigError) as excinfo:
            config.validate()
        assert any(fragment in message for message in excinfo.value.errors)

    def test_collects_all_errors(self, quick_config):
        config = dataclasses.replace(quick_config, min_frames=0, alpha=-1.0)
        with pytest.raises(ConfigError) as excinfo:
            config.validate()
        assert len(excinfo.value.errors) == 2

    def test_valid_config_passes(self, quick_config):
        quick_config.validate()

    def test_mrc_mode_string_accepted(self, quick_config):
        assert dataclasses.replace(quick_config, mrc_mode="cascade").mrc_mode.value == "cascade"


@pytest.mark.unit
class TestRunPoint:

    def test_stopping_rule(self, quick_config):
        for snr in quick_config.snr_grid_db:
            record = run_point(quick_config, snr)
            assert satisfies_stopping_rule(record, quick_config)
            assert record.info_bits == record.frames * quick_config.frame_info_bits
            assert 0 <= record.bit_errors <= record.info_bits

    def test_zero_min_errors_stops_at_min_frames(self, quick_config):
        config = dataclasses.replace(quick_config, min_bit_errors=0)
        assert run_point(config, 4.0).frames == config.min_frames

    def test_high_snr_runs_to_cap(self, quick_config):
        config = dataclasses.replace(quick_config, snr_grid_db=(40.0,), min_bit_errors=50)
        assert run_point(config, 40.0).frames == config.max_frames

    def test_block_size_does_not_change_result(self, quick_config):
        a = run_point(quick_config, 4.0, block_size=1)
        b = run_point(quick_config, 4.0, block_size=7)
        c = run_point(quick_config, 4.0)
        assert a == b == c

    def test_grid_position_selects_substream(self, quick_config):
        assert run_point(quick_config, 4.0) == run_point(quick_config, 4.0, snr_index=1)

    def test_uncoded_point(self, quick_config):
        config = dataclasses.replace(quick_config, coded=False)
        record = run_point(config, 0.0)
        assert record.provenance["coded"] is False
        assert record.ber > 0

    def test_invalid_config_raises(self, quick_config):
        with pytest.raises(ConfigError):
            run_point(dataclasses.replace(quick_config, min_frames=0), 0.0)

    def test_off_grid_snr_requires_index(self, quick_config):
        with pytest.raises(ConfigError, match="snr_index"):
            run_point(quick_config, 5.0)
        record = run_point(quick_config, 5.0, snr_index=7)
        assert record.snr_db == 5.0

    def test_very_high_snr_coded_is_error_free(self, quick_config):
        config = dataclasses.replace(quick_config, snr_grid_db=(60.0,))
        record = run_point(config, 60.0)
        assert record.frames == config.max_frames
        assert record.ber == 0.0


@pytest.mark.unit
class TestRunSweep:

    def test_ber_decreases_along_grid(self, quick_config):
        config = dataclasses.replace(
            quick_config,
            snr_grid_db=(0.0, 10.0, 20.0),
            min_frames=1000,
            max_frames=1000,
            min_bit_errors=0,
        )
        bers = [r.ber for r in run_sweep(config)]
        assert bers[0] >= bers[1] >= bers[2]
        assert bers[0] > bers[2]

    def test_one_record_per_point_in_order(self, quick_config):
        records = run_sweep(quick_config)
        assert [r.snr_db for r in records] == list(quick_config.snr_grid_db)

    def test_empty_grid(self, quick_config):
        assert run_sweep(dataclasses.replace(quick_config, snr_grid_db=())) == []

    def test_worker_count_independent(self, quick_config):
        assert run_sweep(quick_config, workers=1) == run_sweep(quick_config, workers=2)

    def test_rerun_identical(self, quick_config):
        assert run_sweep(quick_config) == run_sweep(quick_config)

    def test_seed_changes_result(self, quick_config):
        other = dataclasses.replace(quick_config, master_seed=quick_config.master_seed + 1)
        assert [r.bit_errors for r in run_sweep(quick_config)] != [r.bit_errors for r in run_sweep(other)]

    def test_swap_roles_equilateral_identical(self, quick_config):
        swapped = dataclasses.replace(quick_config, swap_roles=True)
        plain = run_sweep(quick_config)
        assert [(r.frames, r.bit_errors) for r in run_sweep(swapped)] == [
            (r.frames, r.bit_errors) for r in plain
        ]


@pytest.mark.unit
class TestCsvOutput:

    def test_header(self, quick_config, tmp_path):
        path = write_csv(run_sweep(quick_config), tmp_path / "out" / "sweep.csv")
        header = path.read_text(encoding="utf-8").splitlines()[0]
        assert header.startswith(SPEC_HEADER)
        assert header.split(",") == CSV_COLUMNS

    def test_byte_identical_across_workers(self, quick_config, tmp_path):
        a = write_csv(run_sweep(quick_config, workers=1), tmp_path / "a.csv")
        b = write_csv(run_sweep(quick_config, workers=3), tmp_path / "b.csv")
        assert a.read_bytes() == b.read_bytes()

    def test_provenance_columns(self, quick_config, tmp_path):
        config = dataclasses.replace(
            quick_config,
            topology=Linear(0.3),
            fading_sr=FadingSpec.rician(15),
            swap_roles=True,
        )
        df = pd.read_csv(write_csv(run_sweep(config), tmp_path / "p.csv"))
        row = df.iloc[0]
        assert row["topology"] == "linear"
        assert row["rho"] == pytest.approx(0.3)
        assert pd.isna(row["theta"])
        assert row["interuser_model"] == "rician"
        assert row["k_factor"] == 15
        assert row["psrc"] + row["prel"] == pytest.approx(1.0)
        assert bool(row["swap_roles"]) is True
        assert row["seed"] == quick_config.master_seed
        assert row["ber"] == pytest.approx(row["bit_errors"] / row["info_bits"])

    def test_scenario_column_first(self, quick_config):
        df = records_to_frame(run_sweep(quick_config), scenario="coded")
        assert list(df.columns) == ["scenario"] + CSV_COLUMNS
        assert set(df["scenario"]) == {"coded"}


@pytest.mark.unit
class TestSweepRunner:

    def test_stats(self, quick_config):
        runner = SweepRunner(verbose=False)
        records = runner.run(quick_config)
        assert runner.stats["points_run"] == 3
        assert runner.stats["frames_simulated"] == sum(r.frames for r in records)
        assert runner.stats["bit_errors"] == sum(r.bit_errors for r in records)

    def test_console_report(self, quick_config, capsys):
        SweepRunner().run(quick_config, label="prueba")
        out = capsys.readouterr().out
        assert "prueba" in out
        assert out.count("SNR") >= 3
        assert "teórica" not in out

    def test_theoretical_reference_for_direct_uncoded(self, quick_config, capsys):
        config = dataclasses.replace(quick_config, coded=False, relay_enabled=False)
        SweepRunner().run(config)
        assert "teórica" in capsys.readouterr().out
