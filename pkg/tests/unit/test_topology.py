"""
Tests para la geometría de ubicación del relay

Valida:
- Distancias de las cinco variantes (equilátera, isósceles, lineal, escalena)
- Ganancias geométricas (d_sd/d)^α
- Intercambio de roles fuente/relay
- Construcción por nombre de CLI y validación de parámetros
"""

import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent.parent / "scripts"))

from utils.topology import (
    SCALENE_B_OFFSET,
    Equilateral,
    IsoscelesNearDest,
    IsoscelesNearSource,
    Linear,
    LinkDistances,
    Scalene,
    distances,
    gains,
    link_gains_for,
    make_topology,
    swap_source_relay,
)


@pytest.mark.unit
class TestDistances:

    def test_equilateral(self):
        assert distances(Equilateral()).as_tuple() == (1.0, 1.0, 1.0)

    def test_isosceles_near_destination(self):
        dist = distances(IsoscelesNearDest(math.pi / 4))
        assert dist.d_sr == 1.0
        assert dist.d_rd == pytest.approx(0.765367, abs=1e-6)

    def test_isosceles_near_source_mirrors(self):
        dist = distances(IsoscelesNearSource(math.pi / 4))
        assert dist.d_sr == pytest.approx(0.765367, abs=1e-6)
        assert dist.d_rd == 1.0

    def test_linear(self):
        assert distances(Linear(0.3)).as_tuple() == pytest.approx((1.0, 0.3, 0.7))

    def test_scalene_variant_a(self):
        dist = distances(Scalene(math.sqrt(3) / 2, 0.35))
        assert dist.d_sr == pytest.approx(0.93408, abs=1e-5)
        assert dist.d_rd == pytest.approx(1.08282, abs=1e-5)

    def test_scalene_variant_b(self):
        dist = distances(Scalene(SCALENE_B_OFFSET, 0.35))
        assert dist.d_sr == pytest.approx(0.82765, abs=1e-5)
        assert dist.d_rd == pytest.approx(0.99247, abs=1e-5)

    @pytest.mark.parametrize("spec", [
        IsoscelesNearDest(0.0),
        IsoscelesNearDest(math.pi / 3),
        IsoscelesNearSource(1.2),
        Linear(0.0),
        Linear(1.0),
        Scalene(0.0, 0.35),
        Scalene(0.75, 1.5),
    ])
    def test_out_of_range_raises(self, spec):
        with pytest.raises(ValueError):
            distances(spec)


@pytest.mark.unit
class TestGains:

    def test_equilateral_unit_gains(self):
        g = gains(distances(Equilateral()))
        assert (g.g_sd, g.g_sr, g.g_rd) == (1.0, 1.0, 1.0)

    def test_isosceles_relay_gain_closed_form(self):
        g = gains(distances(IsoscelesNearDest(math.pi / 4)))
        assert abs(g.g_rd - (1.5 + math.sqrt(2))) < 1e-12

    def test_scalene_variant_a(self):
        g = gains(distances(Scalene(math.sqrt(3) / 2, 0.35)))
        assert g.g_sr == pytest.approx(1.31363, abs=1e-5)
        assert g.g_rd == pytest.approx(0.72740, abs=1e-5)

    def test_linear_midpoint(self):
        g = gains(distances(Linear(0.5)))
        assert g.g_sr == pytest.approx(16.0)
        assert g.g_rd == pytest.approx(16.0)

    def test_alpha_exponent(self):
        g = gains(distances(Linear(0.5)), alpha=2.0)
        assert g.g_sr == pytest.approx(4.0)

    def test_nonpositive_distance_raises(self):
        with pytest.raises(ValueError):
            gains(LinkDistances(1.0, 0.0, 1.0))

    def test_nonpositive_alpha_raises(self):
        with pytest.raises(ValueError):
            gains(LinkDistances(1.0, 1.0, 1.0), alpha=0.0)


@pytest.mark.unit
class TestSwapSourceRelay:

    def test_linear_swap(self):
        swapped = swap_source_relay(distances(Linear(0.3)))
        assert swapped.as_tuple() == pytest.approx((1.0, 0.42857, 1.42857), abs=1e-5)
        g = gains(swapped)
        assert g.g_sr == pytest.approx(29.64, abs=0.01)
        assert g.g_rd == pytest.approx(0.2401, abs=1e-4)

    def test_equilateral_swap_is_identity(self):
        assert link_gains_for(Equilateral(), swap_roles=True) == link_gains_for(Equilateral())

    def test_zero_relay_distance_raises(self):
        with pytest.raises(ValueError):
            swap_source_relay(LinkDistances(1.0, 1.0, 0.0))


@pytest.mark.unit
class TestMakeTopology:

    def test_defaults(self):
        assert make_topology("isosceles-dest") == IsoscelesNearDest(math.pi / 4)
        assert make_topology("linear") == Linear(0.5)
        assert make_topology("scalene") == Scalene(math.sqrt(3) / 2, 0.35)

    def test_isosceles_source_accepts_theta(self):
        assert make_topology("isosceles-src", theta=0.5) == IsoscelesNearSource(0.5)
        assert make_topology("isosceles-src", theta=0.5, phi=0.6) == IsoscelesNearSource(0.6)

    def test_name_attribute(self):
        for name in ("equilateral", "isosceles-dest", "isosceles-src", "linear", "scalene"):
            assert make_topology(name).name == name

    def test_unknown_raises(self):
        with pytest.raises(ValueError, match="desconocida"):
            make_topology("hexagonal")

    def test_invalid_parameter_raises(self):
        with pytest.raises(ValueError):
            make_topology("linear", rho=1.2)


@pytest.mark.unit
class TestGeometryProperties:

    @pytest.mark.parametrize("rho", [0.1, 0.3, 0.35, 0.65])
    def test_linear_mirror_symmetry(self, rho):
        a = distances(Linear(rho))
        b = distances(Linear(1.0 - rho))
        assert (a.d_sr, a.d_rd) == pytest.approx((b.d_rd, b.d_sr))

    @pytest.mark.parametrize("f", [math.sqrt(3) / 2, SCALENE_B_OFFSET, 0.2])
    def test_scalene_mirror_symmetry(self, f):
        a = distances(Scalene(f, 0.35))
        b = distances(Scalene(f, 0.65))
        assert (a.d_sr, a.d_rd) == pytest.approx((b.d_rd, b.d_sr))

    def test_scalene_apex_is_equilateral(self):
        dist = distances(Scalene(math.sqrt(3) / 2, 0.5))
        assert dist.as_tuple() == pytest.approx((1.0, 1.0, 1.0))

    def test_isosceles_small_angle_limit(self):
        previous = gains(distances(IsoscelesNearDest(1e-1))).g_rd
        for theta in (1e-2, 1e-3, 1e-4):
            dist = distances(IsoscelesNearDest(theta))
            g = gains(dist)
            assert dist.d_rd < theta * 1.01
            assert g.g_rd > previous
            previous = g.g_rd
        assert previous > 1e15

    @pytest.mark.parametrize("rho", [0.2, 0.35, 0.8])
    def test_scalene_flat_limit_is_linear(self, rho):
        flat = distances(Scalene(1e-9, rho))
        assert flat.as_tuple() == pytest.approx(distances(Linear(rho)).as_tuple(), abs=1e-8)

    @pytest.mark.parametrize("spec", [
        Equilateral(),
        IsoscelesNearDest(0.3),
        IsoscelesNearDest(1.0),
        IsoscelesNearSource(0.7),
        Linear(0.05),
        Linear(0.5),
        Scalene(math.sqrt(3) / 2, 0.35),
        Scalene(SCALENE_B_OFFSET, 0.9),
        Scalene(0.01, 0.5),
    ])
    def test_triangle_inequality(self, spec):
        dist = distances(spec)
        assert dist.d_sr + dist.d_rd >= dist.d_sd - 1e-12

    @pytest.mark.parametrize("scale", [0.25, 3.0, 1000.0])
    def test_gains_are_scale_free(self, scale):
        base = distances(Scalene(SCALENE_B_OFFSET, 0.35))
        scaled = LinkDistances(base.d_sd * scale, base.d_sr * scale, base.d_rd * scale)
        a, b = gains(base), gains(scaled)
        assert (b.g_sd, b.g_sr, b.g_rd) == pytest.approx((a.g_sd, a.g_sr, a.g_rd), rel=1e-12)

    @pytest.mark.parametrize("spec", [
        Linear(0.3),
        IsoscelesNearDest(math.pi / 4),
        IsoscelesNearSource(0.5),
        Scalene(SCALENE_B_OFFSET, 0.35),
    ])
    def test_swap_twice_restores_triple(self, spec):
        dist = distances(spec)
        twice = swap_source_relay(swap_source_relay(dist))
        assert twice.as_tuple() == pytest.approx(dist.as_tuple(), rel=1e-12)
